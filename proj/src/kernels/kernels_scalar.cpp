#include "dchaos/kernels.hpp"

namespace dchaos::kernels::scalar {
namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += a[i] * b[i];
  return sum;
}

double weighted_sum_squares(const double* v, const double* w, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += w[i] * v[i] * v[i];
  return sum;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void average(const double* a, const double* b, double* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = 0.5 * (a[i] + b[i]);
}

constexpr KernelTable kTable{dot, weighted_sum_squares, axpy, average};

}  // namespace

const KernelTable& table() { return kTable; }

}  // namespace dchaos::kernels::scalar
