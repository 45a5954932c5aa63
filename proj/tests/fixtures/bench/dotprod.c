#include <stdio.h>
#define N 1000000
static int a[N], b[N];
int main(void) {
  for (int i = 0; i < N; i++) {
    a[i] = i % 101;
    b[i] = (i * 3) % 103;
  }
  long long acc = 0;
#pragma omp parallel for reduction(+:acc)
  for (int i = 0; i < N; i++) {
    acc += (long long)a[i] * b[i];
  }
  printf("dotprod %lld\n", acc);
  return 0;
}
