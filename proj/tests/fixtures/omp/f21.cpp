#include <vector>
void bump_all(std::vector<int> &values) {
#pragma omp parallel for
  for (int i = 0; i < (int)values.size(); i++) {
    values[i] += 1;
  }
  for (int &v : values) {
    v *= 2;
  }
}
