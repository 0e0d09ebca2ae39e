#pragma once

// Countable increasing seminorm families, the translation-invariant metric they
// induce, the max-product metric on tuples, and graph seminorms of spectral
// operators.

#include <functional>
#include <span>
#include <vector>

#include "dchaos/elements.hpp"

namespace dchaos {

enum class SpaceKind { Banach, Frechet };

class SeminormFamily {
 public:
  using Eval = std::function<double(int, const Element&)>;

  /// For Banach kind eval must ignore the index.
  SeminormFamily(SpaceKind kind, Eval eval, int n_max = 30);

  SpaceKind kind() const { return kind_; }
  int n_max() const { return n_max_; }
  /// p_n(x); n is 1-based.
  double operator()(int n, const Element& x) const;
  /// Same seminorms with a different truncation index.
  SeminormFamily with_n_max(int n_max) const;

 private:
  SpaceKind kind_;
  Eval eval_;
  int n_max_;
};

struct MetricValue {
  double value = 0.0;
  /// Bound on the omitted series tail, 2^{-n_max} for Frechet kind.
  double tail_bound = 0.0;
};

/// Frechet kind: sum_{n <= n_max} 2^{-n} p_n(x-y) / (1 + p_n(x-y)). Banach kind: ||x-y||.
MetricValue frechet_metric(const SeminormFamily& family, const Element& x, const Element& y);
MetricValue distance_to_zero(const SeminormFamily& family, const Element& x);

/// max_j d(x_j, y_j).
MetricValue product_metric(const SeminormFamily& family, std::span<const Element> xs,
                           std::span<const Element> ys);

/// One renorming constant: p_{a} weighted by c, entering p'_{l + k} at the step from
/// p'_{l+k-1}. Stored as (l, k) to mirror the double-indexed constants c_{l,k}, a_{l,k}.
struct RenormConstant {
  int l = 1;
  int k = 1;
  double c = 1.0;
  int a = 1;
};

/// p'_1 = p_1, p'_{n+1} = p'_n + sum_{l + k = n + 1} c_{l,k} p_{a_{l,k}} + p_{n+1}.
SeminormFamily renorm(const SeminormFamily& family, std::span<const RenormConstant> constants);

/// Banach norm as the increasing family p_n = n ||.||.
SeminormFamily banach_as_frechet(const SeminormFamily& banach);

// Families for the concrete representations. Frechet kind restricts to [-n, n]
// (spectral: to |mu| <= n); Banach kind uses the full line (all coefficients).
SeminormFamily grid_seminorms(SpaceKind kind, const Weight& weight, double p = 2.0, int n_max = 30);
SeminormFamily block_seminorms(SpaceKind kind, const Weight& weight, double p = 2.0, int n_max = 30);
/// Coefficient l^1 seminorms sum |c_mu|.
SeminormFamily spectral_seminorms(SpaceKind kind, int n_max = 30);

/// Diagonal operator on the spectral representation: A h_mu = eigenvalue(mu) h_mu.
using SpectralOperator = std::function<Complex(Complex)>;

/// p_{m,n}(x) = p_m(x) + p_m(Ax) + ... + p_m(A^n x).
double graph_seminorm(const SpectralOperator& op, const SeminormFamily& family, int m, int n,
                      const SpectralVector& x);

}  // namespace dchaos
