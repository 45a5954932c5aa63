void warmup(long *acc, int reps) {
  for (int r = 0; r < reps; r++) acc[0] += r;
  for (int r = 0; r < reps; r++) acc[1] += r * 2;
  for (int r = 0; r < reps; r++) acc[2] ^= r;
}
