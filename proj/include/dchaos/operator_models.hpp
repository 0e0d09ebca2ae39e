#pragma once

// Orbit engines for the concrete operator families and residual checks of their
// defining identities.
//
// Spectral families act diagonally on eigen-coefficients: a first-order family
// multiplies c_mu by exp(lambda(mu) t) c(mu), a fractional family of order zeta by
// E_zeta(lambda(mu) t^zeta) c(mu), where c(mu) is the regularizer multiplier.
// Translation families act on block or grid functions by f -> f(. + v t).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dchaos/elements.hpp"
#include "dchaos/frechet.hpp"
#include "dchaos/mittag_leffler.hpp"
#include "dchaos/weights.hpp"

namespace dchaos {

/// sum_i coeffs[i] z^i.
struct Polynomial {
  std::vector<Complex> coeffs;

  Complex operator()(Complex z) const;
  int degree() const;
  /// Finite coefficients, not identically zero.
  void validate() const;
  std::string describe() const;
};

/// One multiplier factor of a regularizer: exp(-(-mu^2)^L), or a constant.
struct MultiplierFactor {
  enum class Kind { ExpNegPower, Constant };
  Kind kind = Kind::Constant;
  int L = 1;
  Complex value = 1.0;

  static MultiplierFactor exp_neg_power(int L);
  static MultiplierFactor constant(Complex value);
  Complex operator()(Complex mu) const;
};

/// Product of multiplier factors; no factors means the identity.
struct Regularizer {
  std::vector<MultiplierFactor> factors;

  bool is_identity() const { return factors.empty(); }
  /// Throws Overflow when the product is not a finite double.
  Complex operator()(Complex mu) const;
};

enum class FamilyKind { SpectralFirstOrder, SpectralFractional, Translation, Cosine, IntegratedBlock };

const char* family_kind_name(FamilyKind kind);

struct FamilySpec {
  std::string name;
  FamilyKind kind = FamilyKind::SpectralFirstOrder;
  /// Q_j for first-order families, P_j for fractional ones.
  Polynomial symbol{{0.0, 1.0}};
  double zeta = 1.0;
  double theta = 0.0;
  double speed = 1.0;
  Weight weight = Weight::exp_decay(1.0);
  double p = 2.0;
  SpaceKind space = SpaceKind::Banach;
  Regularizer regularizer;
  /// Sampling period t_j of the discrete family T_{j,k} = orbit at k t_j.
  double period = 1.0;
  MLParams ml;

  /// Q(mu) for first order, -e^{i theta} P(mu) for fractional.
  Complex eigenvalue(Complex mu) const;
  void validate() const;
  /// Seminorm family matching the representation the family acts on.
  SeminormFamily seminorms(const Element& like, int n_max = 30) const;
};

SpectralVector eigen_orbit_first_order(const FamilySpec& spec, const SpectralVector& x, double t);
SpectralVector eigen_orbit_fractional(const FamilySpec& spec, const SpectralVector& x, double t);

/// ||f(. + speed t)||_{L^p_rho}; closed form per block for exp weights and p = 2.
double translate_orbit_norm(const BlockFunction& f, const Weight& weight, double speed, double t,
                            double p = 2.0);

/// Exact index shift x -> f(x + speed t). TimeGrid error when speed t / h is not an
/// integer, Window error when nonzero samples leave the grid.
GridFunction grid_orbit(const GridFunction& f, double t, double speed = 1.0);
/// (f(. + speed t) + f(. - speed t)) / 2.
GridFunction cosine_orbit(const GridFunction& f, double t, double speed = 1.0);
BlockFunction cosine_orbit(const BlockFunction& f, double t, double speed = 1.0);

using GridPair = std::pair<GridFunction, GridFunction>;

/// 1-times integrated semigroup generated by [[0, I], [-A, 0]] where -A generates the
/// cosine function above: [[int C, int (t-s) C], [C(t) - I, int C]] applied to v,
/// trapezoidal quadrature at quad_step.
GridPair integrated_block(const GridPair& v, double t, double quad_step, double speed = 1.0);

/// Orbit of x at time t under the family (dispatch on kind and representation).
Element orbit(const FamilySpec& spec, const Element& x, double t);

struct IdentityResidual {
  double residual = 0.0;
  double step = 0.0;
  /// Step-doubling estimate of the quadrature error (spectral models only).
  double quadrature_error = 0.0;
  bool quadrature_ok = true;
};

/// || A int_0^t S_alpha(s) x ds - S_alpha(t) x + g_{alpha+1}(t) C x ||.
/// Spectral families: any alpha >= 0, S_alpha = g_alpha * orbit (product quadrature).
/// Translation families on grids: alpha in {0, 1}, A by central differences, trapezoid
/// at the given step. Domain error for unsupported alpha.
IdentityResidual check_integrated_identity(const FamilySpec& spec, const Element& x, double alpha, double t,
                                           double step);

/// sum_mu |E(lambda t^zeta) - 1 - lambda int_0^t g_zeta(t-s) E(lambda s^zeta) ds| |c_mu| |c(mu)|
/// with product-trapezoid weights exact for piecewise linear integrands against the
/// weakly singular kernel. quadrature_ok is false when the error estimate exceeds tol.
IdentityResidual check_resolvent_identity(const FamilySpec& spec, const SpectralVector& x, double t,
                                          double step, double tol = 1e-6);

/// Residual of the 1-times integrated identity for integrated_block:
/// || Acal int_0^t S_1(s) v ds - S_1(t) v + t v ||, Acal(u, w) = (w, speed^2 u''), u'' by
/// central differences; weighted L^2 norm of both components over the grid.
IdentityResidual block_identity_residual(const GridPair& v, double t, double quad_step, double speed = 1.0,
                                         const Weight& weight = Weight::exp_decay(1.0));

/// Every family gets the regularizer prod_i c_i, so R_j(t) prod_{i != j} C_i.
/// Precondition error for mixed or non-spectral kinds.
std::vector<FamilySpec> product_family(const std::vector<FamilySpec>& specs);

/// F(lambda) = [f(lambda^2), lambda f(lambda^2)] in the spectral model of X, keyed by
/// the eigen-parameter mu = lambda^2 of -A. Domain error unless |Re lambda| < a.
std::pair<SpectralVector, SpectralVector> matrix_eigenvector(Complex lambda, double a);
/// Acal(u, w) = (w, -A u) with -A acting as multiplication by mu.
std::pair<SpectralVector, SpectralVector> matrix_apply(const std::pair<SpectralVector, SpectralVector>& v);

struct RegularizedVector {
  SpectralVector value;
  /// Entries whose multiplier exp(-(-mu^2)^L) overflows; they are left out of value.
  std::vector<Complex> flagged;
};

RegularizedVector apply_regularizer(const SpectralVector& x, int L);

/// int_0^t g_order(t - s) f(s) ds from samples f(k h), k = 0 .. n (t = n h).
Complex fractional_integral(std::span<const Complex> samples, double h, double order);

}  // namespace dchaos
