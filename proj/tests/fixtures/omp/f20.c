void tiles(double *m, int rows, int cols) {
#pragma omp parallel for collapse(2)
  for (int i = 0; i < rows; i++) {
    for (int j = 0; j < cols; j++) {
      m[i * cols + j] = 0.0;
    }
  }
}
