#include <atomic>
#include <string>

#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"

namespace dchaos::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(DCHAOS_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

const KernelTable& table_for(Isa isa) {
#if defined(DCHAOS_HAVE_AVX2)
  if (isa == Isa::Avx2) return avx2::table();
#endif
  (void)isa;
  return scalar::table();
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{&table_for(best_available_isa())};
  return table;
}

void check_sizes(std::size_t a, std::size_t b, const char* name) {
  if (a != b) {
    fail(ErrorKind::Precondition, std::string(name) + ": span lengths differ (" + std::to_string(a) +
                                      " vs " + std::to_string(b) + ")");
  }
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

Isa best_available_isa() {
  static const Isa best = cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
  return best;
}

Isa active_isa() {
  return current().load() == &scalar::table() ? Isa::Scalar : Isa::Avx2;
}

void force_isa(Isa isa) {
  if (isa == Isa::Avx2 && best_available_isa() != Isa::Avx2) {
    fail(ErrorKind::Precondition, "AVX2 kernels are not available on this CPU/build");
  }
  current().store(&table_for(isa));
}

void reset_isa() { current().store(&table_for(best_available_isa())); }

double dot(std::span<const double> a, std::span<const double> b) {
  check_sizes(a.size(), b.size(), "dot");
  return current().load()->dot(a.data(), b.data(), a.size());
}

double weighted_sum_squares(std::span<const double> values, std::span<const double> weights) {
  check_sizes(values.size(), weights.size(), "weighted_sum_squares");
  return current().load()->weighted_sum_squares(values.data(), weights.data(), values.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  check_sizes(x.size(), y.size(), "axpy");
  current().load()->axpy(alpha, x.data(), y.data(), x.size());
}

void average(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_sizes(a.size(), b.size(), "average");
  check_sizes(a.size(), out.size(), "average");
  current().load()->average(a.data(), b.data(), out.data(), a.size());
}

}  // namespace dchaos::kernels
