double mixed_pipeline(double *a, double *b, int n) {
#pragma omp target teams distribute parallel for
  for (int i = 0; i < n; i++) {
    a[i] = b[i] * 2.0;
  }
  for (int i = 0; i < n; i++) {
    b[i] = a[i] + 0.5;
  }
  double r2 = 0.0;
#pragma omp parallel for reduction(+:r2)
  for (int i = 0; i < n; i++) {
    r2 += a[i] * b[i];
  }
  for (int i = 0; i < n; i++) {
    a[i] = 0.0;
  }
  return r2;
}
