void passes(int *data, int n) {
  int a = 0, b = 0;
#pragma omp parallel for firstprivate(a) lastprivate(b)
  for (int i = 0; i < n; i++) {
    b = data[i] + a;
    data[i] = b;
  }
#pragma omp parallel for
  for (int i = 0; i < n; i++) {
    data[i] *= 2;
  }
  for (int i = 0; i < n; i++) {
    data[i] -= 1;
  }
}
