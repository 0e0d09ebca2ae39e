#include "dchaos/operator_models.hpp"

#include <cmath>
#include <sstream>

#include "dchaos/errors.hpp"

namespace dchaos {
namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// (-mu^2)^L by repeated multiplication, so integer powers stay exact on the axes.
Complex neg_square_power(Complex mu, int L) {
  const Complex base = -mu * mu;
  Complex w = 1.0;
  for (int i = 0; i < L; ++i) w *= base;
  return w;
}

constexpr double kExpLimit = 709.0;

}  // namespace

Complex Polynomial::operator()(Complex z) const {
  Complex acc{};
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

int Polynomial::degree() const {
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) {
    if (coeffs[i] != Complex{}) return i;
  }
  return -1;
}

void Polynomial::validate() const {
  for (const Complex& c : coeffs) {
    if (!finite(c)) fail(ErrorKind::Domain, "polynomial coefficients must be finite");
  }
  if (degree() < 0) fail(ErrorKind::Domain, "polynomial must not be identically zero");
}

std::string Polynomial::describe() const {
  std::ostringstream out;
  out.precision(15);
  bool first = true;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == Complex{}) continue;
    if (!first) out << " + ";
    first = false;
    if (coeffs[i].imag() == 0.0) {
      out << coeffs[i].real();
    } else {
      out << "(" << coeffs[i].real() << (coeffs[i].imag() < 0 ? "-" : "+") << std::abs(coeffs[i].imag()) << "i)";
    }
    if (i == 1) out << " z";
    if (i > 1) out << " z^" << i;
  }
  return first ? "0" : out.str();
}

MultiplierFactor MultiplierFactor::exp_neg_power(int L) {
  if (L < 1) fail(ErrorKind::Domain, "regularizer exponent L must be >= 1");
  return {Kind::ExpNegPower, L, 1.0};
}

MultiplierFactor MultiplierFactor::constant(Complex value) { return {Kind::Constant, 1, value}; }

Complex MultiplierFactor::operator()(Complex mu) const {
  if (kind == Kind::Constant) return value;
  const Complex w = neg_square_power(mu, L);
  if (-w.real() > kExpLimit) {
    fail(ErrorKind::Overflow, "regularizer exp(-(-mu^2)^L) overflows at |mu| = " + std::to_string(std::abs(mu)));
  }
  return std::exp(-w);
}

Complex Regularizer::operator()(Complex mu) const {
  Complex product = 1.0;
  for (const auto& factor : factors) product *= factor(mu);
  if (!finite(product)) fail(ErrorKind::Overflow, "regularizer multiplier is not finite");
  return product;
}

const char* family_kind_name(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::SpectralFirstOrder: return "spectral_first_order";
    case FamilyKind::SpectralFractional: return "spectral_fractional";
    case FamilyKind::Translation: return "translation";
    case FamilyKind::Cosine: return "cosine";
    case FamilyKind::IntegratedBlock: return "integrated_block";
  }
  return "unknown";
}

Complex FamilySpec::eigenvalue(Complex mu) const {
  switch (kind) {
    case FamilyKind::SpectralFirstOrder: return symbol(mu);
    case FamilyKind::SpectralFractional: return -std::polar(1.0, theta) * symbol(mu);
    default: fail(ErrorKind::Precondition, "family '" + name + "' has no spectral symbol");
  }
}

void FamilySpec::validate() const {
  const std::string who = "family '" + name + "': ";
  if (kind == FamilyKind::SpectralFirstOrder || kind == FamilyKind::SpectralFractional) symbol.validate();
  if (kind == FamilyKind::SpectralFractional) {
    if (!(zeta > 0.0 && zeta < 2.0) || zeta == 1.0) fail(ErrorKind::Domain, who + "zeta must lie in (0,2) without 1");
    if (!std::isfinite(theta)) fail(ErrorKind::Domain, who + "theta must be finite");
  }
  if (kind == FamilyKind::Translation || kind == FamilyKind::Cosine || kind == FamilyKind::IntegratedBlock) {
    if (!std::isfinite(speed) || speed == 0.0) fail(ErrorKind::Domain, who + "speed must be finite and nonzero");
    weight.validate();
    if (!(p >= 1.0)) fail(ErrorKind::Domain, who + "p must be >= 1");
  }
  if (!(period > 0.0)) fail(ErrorKind::Domain, who + "period t_j must be positive");
}

SeminormFamily FamilySpec::seminorms(const Element& like, int n_max) const {
  if (std::holds_alternative<SpectralVector>(like)) return spectral_seminorms(space, n_max);
  if (std::holds_alternative<BlockFunction>(like)) return block_seminorms(space, weight, p, n_max);
  return grid_seminorms(space, weight, p, n_max);
}

SpectralVector eigen_orbit_first_order(const FamilySpec& spec, const SpectralVector& x, double t) {
  if (spec.kind != FamilyKind::SpectralFirstOrder) {
    fail(ErrorKind::Precondition, "first-order eigen orbit needs a spectral_first_order family");
  }
  if (!(t >= 0.0)) fail(ErrorKind::Domain, "orbit time must be >= 0");
  return x.mapped([&](Complex mu) {
    const Complex m = std::exp(spec.eigenvalue(mu) * t) * spec.regularizer(mu);
    if (!finite(m)) fail(ErrorKind::Overflow, "exp(lambda t) overflows at t = " + std::to_string(t));
    return m;
  });
}

SpectralVector eigen_orbit_fractional(const FamilySpec& spec, const SpectralVector& x, double t) {
  if (spec.kind != FamilyKind::SpectralFractional) {
    fail(ErrorKind::Precondition, "fractional eigen orbit needs a spectral_fractional family");
  }
  if (!(t >= 0.0)) fail(ErrorKind::Domain, "orbit time must be >= 0");
  MLParams params = spec.ml;
  params.beta = spec.zeta;
  const double t_zeta = std::pow(t, spec.zeta);
  return x.mapped([&](Complex mu) {
    return ml_eval(params, spec.eigenvalue(mu) * t_zeta).value * spec.regularizer(mu);
  });
}

double translate_orbit_norm(const BlockFunction& f, const Weight& weight, double speed, double t, double p) {
  return f.shifted(speed * t).weighted_norm(weight, p, HUGE_VAL);
}

BlockFunction cosine_orbit(const BlockFunction& f, double t, double speed) {
  return 0.5 * (f.shifted(speed * t) + f.shifted(-speed * t));
}

Element orbit(const FamilySpec& spec, const Element& x, double t) {
  switch (spec.kind) {
    case FamilyKind::SpectralFirstOrder:
      if (const auto* s = std::get_if<SpectralVector>(&x)) return eigen_orbit_first_order(spec, *s, t);
      break;
    case FamilyKind::SpectralFractional:
      if (const auto* s = std::get_if<SpectralVector>(&x)) return eigen_orbit_fractional(spec, *s, t);
      break;
    case FamilyKind::Translation:
      if (const auto* b = std::get_if<BlockFunction>(&x)) return b->shifted(spec.speed * t);
      if (const auto* g = std::get_if<GridFunction>(&x)) return grid_orbit(*g, t, spec.speed);
      break;
    case FamilyKind::Cosine:
      if (const auto* b = std::get_if<BlockFunction>(&x)) return cosine_orbit(*b, t, spec.speed);
      if (const auto* g = std::get_if<GridFunction>(&x)) return cosine_orbit(*g, t, spec.speed);
      break;
    case FamilyKind::IntegratedBlock:
      fail(ErrorKind::Precondition, "integrated_block families act on grid pairs; use integrated_block()");
  }
  fail(ErrorKind::Representation, std::string(family_kind_name(spec.kind)) + " family cannot act on a " +
                                      representation_name(x) + " element");
}

std::vector<FamilySpec> product_family(const std::vector<FamilySpec>& specs) {
  if (specs.empty()) fail(ErrorKind::Precondition, "product family needs at least one family");
  const FamilyKind kind = specs.front().kind;
  if (kind != FamilyKind::SpectralFirstOrder && kind != FamilyKind::SpectralFractional) {
    fail(ErrorKind::Precondition, "product family needs spectral families");
  }
  Regularizer all;
  for (const auto& spec : specs) {
    if (spec.kind != kind) fail(ErrorKind::Precondition, "product family needs families of one kind");
    all.factors.insert(all.factors.end(), spec.regularizer.factors.begin(), spec.regularizer.factors.end());
  }
  std::vector<FamilySpec> out = specs;
  for (auto& spec : out) spec.regularizer = all;
  return out;
}

std::pair<SpectralVector, SpectralVector> matrix_eigenvector(Complex lambda, double a) {
  if (!(a > 0.0)) fail(ErrorKind::Domain, "eigen-region parameter a must be positive");
  if (!(std::abs(lambda.real()) < a)) {
    fail(ErrorKind::Domain, "lambda^2 lies outside {z^2 : |Re z| < a}");
  }
  const Complex mu = lambda * lambda;
  return {SpectralVector::eigenvector(mu, 1.0), SpectralVector::eigenvector(mu, lambda)};
}

std::pair<SpectralVector, SpectralVector> matrix_apply(const std::pair<SpectralVector, SpectralVector>& v) {
  return {v.second, v.first.mapped([](Complex mu) { return mu; })};
}

RegularizedVector apply_regularizer(const SpectralVector& x, int L) {
  if (L < 1) fail(ErrorKind::Domain, "regularizer exponent L must be >= 1");
  RegularizedVector out;
  for (const auto& [mu, c] : x.entries()) {
    const Complex w = neg_square_power(mu, L);
    if (-w.real() > kExpLimit) {
      out.flagged.push_back(mu);
      continue;
    }
    out.value.set(mu, c * std::exp(-w));
  }
  return out;
}

}  // namespace dchaos
