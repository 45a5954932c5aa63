void spawn_region(int *out, int n) {
#pragma omp parallel
  for (int i = 0; i < n; i++) {
    out[i] = 2 * i;
  }
}
