#include <stdio.h>
#define N 8000000
static int v[N];
int main(void) {
  for (int i = 0; i < N; i++) v[i] = 1;
  long long sum = 0;
#pragma omp parallel for
  for (int i = 0; i < N; i++) {
    sum += v[i];
  }
  printf("racysum %lld\n", sum);
  return 0;
}
