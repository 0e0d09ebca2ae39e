#pragma once

// Data-parallel inner loops shared by the quadrature, grid and seminorm code.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2+FMA
// variant. The variant is picked once at runtime from CPUID; force_isa() pins a
// specific one (used by the equivalence tests). Reductions accumulate in a fixed
// order for a given ISA, so results are reproducible run to run on one machine.

#include <cstddef>
#include <span>
#include <string_view>

namespace dchaos::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view to_string(Isa isa);

/// Best ISA supported by both the build and the running CPU.
Isa best_available_isa();
/// ISA currently used by the dispatching entry points.
Isa active_isa();
/// Pins the dispatch target. Requesting an unavailable ISA throws.
void force_isa(Isa isa);
/// Reverts to best_available_isa().
void reset_isa();

// Dispatching entry points. Span lengths must match (checked).
double dot(std::span<const double> a, std::span<const double> b);
double weighted_sum_squares(std::span<const double> values, std::span<const double> weights);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void average(std::span<const double> a, std::span<const double> b, std::span<double> out);

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*weighted_sum_squares)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*average)(const double*, const double*, double*, std::size_t);
};

namespace scalar {
const KernelTable& table();
}

#if defined(DCHAOS_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

}  // namespace dchaos::kernels
