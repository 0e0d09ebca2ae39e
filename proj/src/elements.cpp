#include "dchaos/elements.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"

namespace dchaos {

// ---------------------------------------------------------------- spectral

SpectralVector SpectralVector::eigenvector(Complex mu, Complex c) {
  SpectralVector v;
  v.set(mu, c);
  return v;
}

void SpectralVector::set(Complex mu, Complex c) {
  if (c == Complex{}) {
    entries_.erase(mu);
  } else {
    entries_[mu] = c;
  }
}

Complex SpectralVector::coefficient(Complex mu) const {
  auto it = entries_.find(mu);
  return it == entries_.end() ? Complex{} : it->second;
}

SpectralVector SpectralVector::mapped(const std::function<Complex(Complex)>& multiplier) const {
  SpectralVector out;
  for (const auto& [mu, c] : entries_) out.set(mu, c * multiplier(mu));
  return out;
}

SpectralVector operator+(const SpectralVector& a, const SpectralVector& b) {
  SpectralVector out = a;
  for (const auto& [mu, c] : b.entries_) out.set(mu, out.coefficient(mu) + c);
  return out;
}

SpectralVector operator-(const SpectralVector& a, const SpectralVector& b) {
  SpectralVector out = a;
  for (const auto& [mu, c] : b.entries_) out.set(mu, out.coefficient(mu) - c);
  return out;
}

SpectralVector operator*(Complex c, const SpectralVector& x) {
  SpectralVector out;
  for (const auto& [mu, v] : x.entries_) out.set(mu, c * v);
  return out;
}

// ---------------------------------------------------------------- blocks

namespace {

// Merges equal-amplitude touching pieces and drops zero pieces.
std::vector<Block> normalize(std::vector<Block> pieces) {
  std::vector<Block> out;
  for (const Block& b : pieces) {
    if (b.amplitude == 0.0 || !(b.start < b.end)) continue;
    if (!out.empty() && out.back().end == b.start && out.back().amplitude == b.amplitude) {
      out.back().end = b.end;
    } else {
      out.push_back(b);
    }
  }
  return out;
}

template <class Op>
BlockFunction combine(const BlockFunction& f, const BlockFunction& g, Op op) {
  std::vector<double> cuts;
  for (const Block& b : f.blocks()) {
    cuts.push_back(b.start);
    cuts.push_back(b.end);
  }
  for (const Block& b : g.blocks()) {
    cuts.push_back(b.start);
    cuts.push_back(b.end);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::vector<Block> pieces;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double lo = cuts[i];
    const double hi = cuts[i + 1];
    const double mid = lo + 0.5 * (hi - lo);
    pieces.push_back({lo, hi, op(f.value_at(mid), g.value_at(mid))});
  }
  return BlockFunction(normalize(std::move(pieces)));
}

}  // namespace

BlockFunction::BlockFunction(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& b = blocks_[k];
    if (!std::isfinite(b.start) || !std::isfinite(b.end) || !std::isfinite(b.amplitude)) {
      fail(ErrorKind::Domain, "block " + std::to_string(k) + " has non-finite data");
    }
    if (!(b.start < b.end)) {
      fail(ErrorKind::Domain, "block " + std::to_string(k) + ": end must exceed start");
    }
    if (k > 0 && blocks_[k - 1].end > b.start) {
      fail(ErrorKind::Domain, "block " + std::to_string(k) + " overlaps its predecessor");
    }
  }
}

void BlockFunction::validate_input() const {
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    const Block& b = blocks_[k];
    const std::string where = "blocks[" + std::to_string(k) + "]";
    if (b.start < 0.0) fail(ErrorKind::Schema, where + ".start must be >= 0");
    if (!(b.end > b.start)) fail(ErrorKind::Schema, where + ".end must exceed " + where + ".start");
    if (k + 1 < blocks_.size() && !(b.end < blocks_[k + 1].start)) {
      fail(ErrorKind::Schema, where + ".end must be below blocks[" + std::to_string(k + 1) + "].start");
    }
  }
}

double BlockFunction::value_at(double x) const {
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), x,
                             [](double v, const Block& b) { return v < b.start; });
  if (it == blocks_.begin()) return 0.0;
  --it;
  return x < it->end ? it->amplitude : 0.0;
}

BlockFunction BlockFunction::shifted(double delta) const {
  BlockFunction out;
  out.blocks_.reserve(blocks_.size());
  for (const Block& b : blocks_) out.blocks_.push_back({b.start - delta, b.end - delta, b.amplitude});
  return out;
}

double BlockFunction::weighted_norm(const Weight& weight, double p, double window) const {
  if (!(p >= 1.0)) fail(ErrorKind::Domain, "weighted norm needs p >= 1");
  double sum = 0.0;
  for (const Block& b : blocks_) {
    const double lo = std::max(b.start, -window);
    const double hi = std::min(b.end, window);
    if (lo >= hi) continue;
    const double mass = weight.integral(lo, hi);
    sum += (p == 2.0 ? b.amplitude * b.amplitude : std::pow(std::abs(b.amplitude), p)) * mass;
  }
  return p == 2.0 ? std::sqrt(sum) : std::pow(sum, 1.0 / p);
}

BlockFunction operator+(const BlockFunction& a, const BlockFunction& b) {
  return combine(a, b, [](double x, double y) { return x + y; });
}

BlockFunction operator-(const BlockFunction& a, const BlockFunction& b) {
  return combine(a, b, [](double x, double y) { return x - y; });
}

BlockFunction operator*(double c, const BlockFunction& f) {
  std::vector<Block> pieces;
  for (const Block& b : f.blocks_) pieces.push_back({b.start, b.end, c * b.amplitude});
  return BlockFunction(normalize(std::move(pieces)));
}

// ---------------------------------------------------------------- grid

GridFunction::GridFunction(double x_max, double h, std::vector<double> values)
    : x_max_(x_max), h_(h), values_(std::move(values)) {
  if (!(h > 0.0)) fail(ErrorKind::Domain, "grid step h must be positive");
  const double cells = x_max / h;
  const double rounded = std::round(cells);
  if (!(x_max > 0.0) || std::abs(cells - rounded) > 1e-9 * std::max(1.0, cells)) {
    fail(ErrorKind::Domain, "grid half-width x_max must be a positive integer multiple of h");
  }
  const auto expected = static_cast<std::size_t>(2 * rounded + 1);
  if (values_.size() != expected) {
    fail(ErrorKind::Domain, "grid has " + std::to_string(values_.size()) + " samples, expected " +
                                std::to_string(expected));
  }
}

GridFunction GridFunction::sample(double x_max, double h, const std::function<double(double)>& f) {
  const auto n = static_cast<std::size_t>(2 * std::llround(x_max / h) + 1);
  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = f(-x_max + static_cast<double>(i) * h);
  return GridFunction(x_max, h, std::move(values));
}

GridFunction GridFunction::zeros(double x_max, double h) {
  return sample(x_max, h, [](double) { return 0.0; });
}

bool GridFunction::same_grid(const GridFunction& other) const {
  return x_max_ == other.x_max_ && h_ == other.h_ && values_.size() == other.values_.size();
}

namespace {
void require_same_grid(const GridFunction& a, const GridFunction& b) {
  if (!a.same_grid(b)) fail(ErrorKind::Representation, "grid functions live on different grids");
}
}  // namespace

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction out = a;
  kernels::axpy(1.0, b.values(), out.values());
  return out;
}

GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  require_same_grid(a, b);
  GridFunction out = a;
  kernels::axpy(-1.0, b.values(), out.values());
  return out;
}

GridFunction operator*(double c, const GridFunction& f) {
  GridFunction out = f;
  for (double& v : out.values_) v *= c;
  return out;
}

// ---------------------------------------------------------------- variant helpers

const char* representation_name(const Element& x) {
  switch (x.index()) {
    case 0: return "spectral";
    case 1: return "block";
    default: return "grid";
  }
}

namespace {

void require_same_representation(const Element& x, const Element& y) {
  if (x.index() != y.index()) {
    fail(ErrorKind::Representation, std::string("cannot combine ") + representation_name(x) + " and " +
                                        representation_name(y) + " elements");
  }
}

double real_scalar(Complex c, const Element& x) {
  if (c.imag() != 0.0) {
    fail(ErrorKind::Representation,
         std::string("non-real scalar applied to real-valued ") + representation_name(x) + " element");
  }
  return c.real();
}

}  // namespace

Element subtract(const Element& x, const Element& y) {
  require_same_representation(x, y);
  return std::visit(
      [&y](const auto& a) -> Element {
        using T = std::decay_t<decltype(a)>;
        return a - std::get<T>(y);
      },
      x);
}

Element add(const Element& x, const Element& y) {
  require_same_representation(x, y);
  return std::visit(
      [&y](const auto& a) -> Element {
        using T = std::decay_t<decltype(a)>;
        return a + std::get<T>(y);
      },
      x);
}

Element scale(const Element& x, Complex c) {
  if (const auto* s = std::get_if<SpectralVector>(&x)) return c * *s;
  const double r = real_scalar(c, x);
  if (const auto* b = std::get_if<BlockFunction>(&x)) return r * *b;
  return r * std::get<GridFunction>(x);
}

Element zero_like(const Element& x) {
  if (std::holds_alternative<SpectralVector>(x)) return SpectralVector{};
  if (std::holds_alternative<BlockFunction>(x)) return BlockFunction{};
  const auto& g = std::get<GridFunction>(x);
  return GridFunction::zeros(g.x_max(), g.h());
}

}  // namespace dchaos
