#pragma once

#include <cstddef>
#include <vector>

namespace parspec {

// Serial is the reference path; Parallel uses OpenMP worksharing.
enum class Exec { Serial, Parallel };

Exec default_exec();
void set_default_exec(Exec e);
void set_num_threads(int threads);
int num_threads();

// Pairwise summation of a short vector of partial sums.
double pairwise_sum(const double* v, std::size_t n);

inline constexpr std::size_t kReduceChunk = 4096;

// Sum of f(i) for i < n. Fixed chunking makes the result independent of the
// thread count, so serial and parallel runs agree bitwise.
template <class F>
double det_sum(std::size_t n, F&& f, Exec ex) {
  const std::size_t nch = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> part(nch, 0.0);
  const long long nc = static_cast<long long>(nch);
#pragma omp parallel for schedule(static) if (ex == Exec::Parallel)
  for (long long c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
    const std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
    double s = 0.0;
    for (std::size_t i = lo; i < hi; ++i) s += f(i);
    part[static_cast<std::size_t>(c)] = s;
  }
  return pairwise_sum(part.data(), nch);
}

template <class F>
double det_max(std::size_t n, F&& f, Exec ex) {
  const std::size_t nch = (n + kReduceChunk - 1) / kReduceChunk;
  std::vector<double> part(nch, 0.0);
  const long long nc = static_cast<long long>(nch);
#pragma omp parallel for schedule(static) if (ex == Exec::Parallel)
  for (long long c = 0; c < nc; ++c) {
    const std::size_t lo = static_cast<std::size_t>(c) * kReduceChunk;
    const std::size_t hi = lo + kReduceChunk < n ? lo + kReduceChunk : n;
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i) {
      const double v = f(i);
      if (v > m) m = v;
    }
    part[static_cast<std::size_t>(c)] = m;
  }
  double m = 0.0;
  for (double v : part) m = v > m ? v : m;
  return m;
}

}  // namespace parspec
