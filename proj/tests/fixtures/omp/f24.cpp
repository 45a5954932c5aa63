void device_fill(double *buf, int n, double v) {
#pragma omp target teams distribute parallel for
  for (int i = 0; i < n; i++) {
    buf[i] = v;
  }
}
