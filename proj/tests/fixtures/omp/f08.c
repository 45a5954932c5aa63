int drain(int n) {
#pragma omp parallel for
  while (n > 0) {
    n--;
  }
  for (int i = 0; i < 4; i++) {
    n += i;
  }
  return n;
}
