#include <algorithm>
#include <cmath>

#include "detail.hpp"
#include "dchaos/errors.hpp"
#include "dchaos/kernels.hpp"
#include "dchaos/operator_models.hpp"

namespace dchaos {

GridFunction grid_orbit(const GridFunction& f, double t, double speed) {
  const double shift = speed * t / f.h();
  const double rounded = std::round(shift);
  if (!std::isfinite(shift) || std::abs(shift - rounded) > 1e-9 * std::max(1.0, std::abs(shift))) {
    fail(ErrorKind::TimeGrid, "speed * t = " + std::to_string(speed * t) + " is not a multiple of h = " +
                                  std::to_string(f.h()));
  }
  const auto in = f.values();
  const auto n = static_cast<long long>(in.size());
  const auto k = static_cast<long long>(rounded);

  double peak = 0.0;
  for (double v : in) peak = std::max(peak, std::abs(v));
  double dropped = 0.0;
  GridFunction out = GridFunction::zeros(f.x_max(), f.h());
  auto values = out.values();
  for (long long j = 0; j < n; ++j) {
    const long long i = j - k;  // out(x_i) = f(x_i + k h) = f(x_j)
    if (i >= 0 && i < n) {
      values[i] = in[j];
    } else {
      dropped = std::max(dropped, std::abs(in[j]));
    }
  }
  if (dropped > 1e-14 * peak) {
    fail(ErrorKind::Window, "support left the grid window [-" + std::to_string(f.x_max()) + ", " +
                                std::to_string(f.x_max()) + "] at t = " + std::to_string(t));
  }
  return out;
}

GridFunction cosine_orbit(const GridFunction& f, double t, double speed) {
  GridFunction out = grid_orbit(f, t, speed);
  kernels::average(out.values(), grid_orbit(f, -t, speed).values(), out.values());
  return out;
}

GridPair integrated_block(const GridPair& v, double t, double quad_step, double speed) {
  const auto& [u, w] = v;
  if (!u.same_grid(w)) fail(ErrorKind::Representation, "block components must share a grid");
  const std::size_t n = detail::whole_steps(t, quad_step, "quadrature step");
  GridFunction first = GridFunction::zeros(u.x_max(), u.h());
  GridFunction second = GridFunction::zeros(u.x_max(), u.h());
  for (std::size_t k = 0; k <= n && n > 0; ++k) {
    const double s = static_cast<double>(k) * quad_step;
    const double tau = (k == 0 || k == n) ? 0.5 * quad_step : quad_step;
    const GridFunction cu = cosine_orbit(u, s, speed);
    const GridFunction cw = cosine_orbit(w, s, speed);
    kernels::axpy(tau, cu.values(), first.values());
    kernels::axpy(tau * (t - s), cw.values(), first.values());
    kernels::axpy(tau, cw.values(), second.values());
  }
  if (n > 0) {
    kernels::axpy(1.0, cosine_orbit(u, t, speed).values(), second.values());
    kernels::axpy(-1.0, u.values(), second.values());
  }
  return {std::move(first), std::move(second)};
}

}  // namespace dchaos
