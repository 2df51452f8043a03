#include "parspec/exec.hpp"

#include <omp.h>

#include <algorithm>

namespace parspec {

namespace {
Exec g_exec = Exec::Parallel;
}

Exec default_exec() { return g_exec; }
void set_default_exec(Exec e) { g_exec = e; }

void set_num_threads(int threads) {
  if (threads >= 1) omp_set_num_threads(threads);
}

int num_threads() { return omp_get_max_threads(); }

double pairwise_sum(const double* v, std::size_t n) {
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

}  // namespace parspec
