/* loops carrying OpenMP pragmas; exercises pragma-aware anonymization */

void vec_add(const double *a, const double *b, double *out, int n) {
  int i;
#pragma omp parallel for private(i)
  for (i = 0; i < n; i++) {
    out[i] = a[i] + b[i];
  }
}

double dot(const double *a, const double *b, int n) {
  double acc = 0.0;
  int i;
#pragma omp parallel for private(i) reduction(+ : acc)
  for (i = 0; i < n; i++) {
    acc += a[i] * b[i];
  }
  return acc;
}

void stencil3(const float *in, float *out, int n) {
#pragma omp parallel for
  for (int i = 1; i < n - 1; i++) {
    out[i] = (in[i - 1] + in[i] + in[i + 1]) / 3.0f;
  }
}

long histogram_serial(const int *vals, int n, int *bins, int nbins) {
  long placed = 0;
  for (int i = 0; i < n; i++) {
    int b = vals[i] % nbins;
    if (b < 0) b += nbins;
    bins[b]++;
    placed++;
  }
  return placed;
}
