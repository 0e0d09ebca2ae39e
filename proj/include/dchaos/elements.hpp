#pragma once

// The three element representations the orbit engines work on:
//  - SpectralVector: finite combination of eigenvectors, keyed by eigen-parameter mu;
//  - BlockFunction: finite sum of weighted indicator blocks on the real line;
//  - GridFunction: samples on a uniform symmetric grid.

#include <complex>
#include <functional>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "dchaos/weights.hpp"

namespace dchaos {

using Complex = std::complex<double>;

/// Lexicographic (real, imag) order so spectral maps iterate deterministically.
struct ComplexLess {
  bool operator()(const Complex& a, const Complex& b) const {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  }
};

class SpectralVector {
 public:
  using Map = std::map<Complex, Complex, ComplexLess>;

  SpectralVector() = default;
  /// Single eigenvector mu with coefficient c.
  static SpectralVector eigenvector(Complex mu, Complex c = 1.0);

  /// Sets c_mu; a zero coefficient erases the entry.
  void set(Complex mu, Complex c);
  Complex coefficient(Complex mu) const;
  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  /// Multiplies each coefficient by multiplier(mu).
  SpectralVector mapped(const std::function<Complex(Complex)>& multiplier) const;

  friend SpectralVector operator+(const SpectralVector& a, const SpectralVector& b);
  friend SpectralVector operator-(const SpectralVector& a, const SpectralVector& b);
  friend SpectralVector operator*(Complex c, const SpectralVector& x);
  friend bool operator==(const SpectralVector&, const SpectralVector&) = default;

 private:
  Map entries_;
};

struct Block {
  double start = 0.0;
  double end = 0.0;
  double amplitude = 0.0;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Piecewise-constant function sum_k c_k 1_[a_k, b_k). Blocks are ordered with
/// a_k < b_k <= a_{k+1}; touching blocks only arise from arithmetic (differences
/// of two block functions), user input is checked with validate_input().
class BlockFunction {
 public:
  BlockFunction() = default;
  explicit BlockFunction(std::vector<Block> blocks);

  /// Input-level invariant: 0 <= a_1 and strictly separated blocks.
  /// Throws Schema naming the offending block index.
  void validate_input() const;

  const std::vector<Block>& blocks() const { return blocks_; }
  bool empty() const { return blocks_.empty(); }
  double value_at(double x) const;

  /// x -> f(x + delta).
  BlockFunction shifted(double delta) const;

  /// (integral over [-window, window] of |f|^p rho)^{1/p}; window = inf for the full line.
  double weighted_norm(const Weight& weight, double p, double window) const;

  friend BlockFunction operator+(const BlockFunction& a, const BlockFunction& b);
  friend BlockFunction operator-(const BlockFunction& a, const BlockFunction& b);
  friend BlockFunction operator*(double c, const BlockFunction& f);
  friend bool operator==(const BlockFunction&, const BlockFunction&) = default;

 private:
  std::vector<Block> blocks_;
};

/// Samples f(x_i), x_i = -x_max + i h, i = 0 .. 2 x_max / h.
class GridFunction {
 public:
  GridFunction() = default;
  GridFunction(double x_max, double h, std::vector<double> values);
  static GridFunction sample(double x_max, double h, const std::function<double(double)>& f);
  static GridFunction zeros(double x_max, double h);

  double x_max() const { return x_max_; }
  double h() const { return h_; }
  std::size_t size() const { return values_.size(); }
  double x(std::size_t i) const { return -x_max_ + static_cast<double>(i) * h_; }
  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  bool same_grid(const GridFunction& other) const;

  friend GridFunction operator+(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator-(const GridFunction& a, const GridFunction& b);
  friend GridFunction operator*(double c, const GridFunction& f);
  friend bool operator==(const GridFunction&, const GridFunction&) = default;

 private:
  double x_max_ = 0.0;
  double h_ = 1.0;
  std::vector<double> values_;
};

using Element = std::variant<SpectralVector, BlockFunction, GridFunction>;

const char* representation_name(const Element& x);

/// x - y; Representation error when x and y use different representations or grids.
Element subtract(const Element& x, const Element& y);
Element add(const Element& x, const Element& y);
/// c x; real-valued representations reject non-real c.
Element scale(const Element& x, Complex c);
/// The zero element in the same representation (and grid) as x.
Element zero_like(const Element& x);

}  // namespace dchaos
