#include "dchaos/regions.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "dchaos/errors.hpp"

namespace dchaos {
namespace {

std::string point(Complex z) {
  std::ostringstream out;
  out.precision(15);
  out << "(" << z.real() << ", " << z.imag() << ")";
  return out.str();
}

// Even-odd rule; points on an edge count as outside.
bool inside_polygon(const std::vector<Complex>& v, Complex z) {
  bool inside = false;
  for (std::size_t i = 0, j = v.size() - 1; i < v.size(); j = i++) {
    const double xi = v[i].real(), yi = v[i].imag();
    const double xj = v[j].real(), yj = v[j].imag();
    if ((yi > z.imag()) != (yj > z.imag())) {
      const double x_cross = xj + (z.imag() - yj) * (xi - xj) / (yi - yj);
      if (z.real() < x_cross - kSlack) inside = !inside;
    }
  }
  return inside;
}

}  // namespace

bool in_open_sector(Complex z, double alpha) {
  return z != Complex{} && std::abs(std::arg(z)) < alpha - kSlack;
}

bool in_closed_sector(Complex z, double alpha) {
  return z == Complex{} || std::abs(std::arg(z)) <= alpha + kSlack;
}

RegionPredicate RegionPredicate::half_plane_neg() {
  RegionPredicate r;
  r.kind = Kind::HalfPlaneNeg;
  r.cluster_point = -1.0;
  return r;
}

RegionPredicate RegionPredicate::half_plane_pos() {
  RegionPredicate r;
  r.kind = Kind::HalfPlanePos;
  r.cluster_point = 1.0;
  return r;
}

RegionPredicate RegionPredicate::sector(double alpha) {
  if (!(alpha > 0.0 && alpha <= std::numbers::pi)) fail(ErrorKind::Domain, "sector angle must lie in (0, pi]");
  RegionPredicate r;
  r.kind = Kind::Sector;
  r.alpha = alpha;
  r.cluster_point = 1.0;
  return r;
}

RegionPredicate RegionPredicate::closed_sector_complement(double alpha) {
  if (!(alpha >= 0.0 && alpha < std::numbers::pi)) fail(ErrorKind::Domain, "sector angle must lie in [0, pi)");
  RegionPredicate r;
  r.kind = Kind::ClosedSectorComplement;
  r.alpha = alpha;
  r.cluster_point = -1.0;
  return r;
}

RegionPredicate RegionPredicate::disk(Complex center, double radius) {
  if (!(radius > 0.0)) fail(ErrorKind::Domain, "disk radius must be positive");
  RegionPredicate r;
  r.kind = Kind::Disk;
  r.center = center;
  r.radius = radius;
  r.cluster_point = center;
  return r;
}

RegionPredicate RegionPredicate::polygon(std::vector<Complex> vertices) {
  if (vertices.size() < 3) fail(ErrorKind::Domain, "polygon needs at least 3 vertices");
  RegionPredicate r;
  r.kind = Kind::Polygon;
  Complex mean{};
  for (Complex v : vertices) mean += v;
  r.cluster_point = mean / static_cast<double>(vertices.size());
  r.vertices = std::move(vertices);
  return r;
}

RegionPredicate RegionPredicate::lambda_region(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0)) fail(ErrorKind::Domain, "lambda region needs a, b, c > 0");
  const double half = b * b / (2.0 * a);
  if (!(c < half && half < 1.0)) fail(ErrorKind::Domain, "lambda region needs c < b^2/(2a) < 1");
  RegionPredicate r;
  r.kind = Kind::LambdaRegion;
  r.a = a;
  r.b = b;
  r.c = c;
  r.cluster_point = -(c - half / 2.0);  // image of the disk center
  return r;
}

bool RegionPredicate::contains(Complex z) const {
  switch (kind) {
    case Kind::HalfPlaneNeg: return z.real() < -kSlack;
    case Kind::HalfPlanePos: return z.real() > kSlack;
    case Kind::Sector: return in_open_sector(z, alpha);
    case Kind::ClosedSectorComplement: return !in_closed_sector(z, alpha);
    case Kind::Disk: return std::abs(z - center) < radius - kSlack;
    case Kind::Polygon: return inside_polygon(vertices, z);
    case Kind::LambdaRegion: {
      const Complex l = -z;
      const double rho = b * b / (4.0 * a);
      if (std::abs(l - (c - rho)) > rho + kSlack) return false;
      return !(l.real() <= c - rho && l.imag() == 0.0);
    }
  }
  return false;
}

std::string RegionPredicate::describe() const {
  std::ostringstream out;
  out.precision(15);
  switch (kind) {
    case Kind::HalfPlaneNeg: out << "half_plane_neg"; break;
    case Kind::HalfPlanePos: out << "half_plane_pos"; break;
    case Kind::Sector: out << "sector(alpha=" << alpha << ")"; break;
    case Kind::ClosedSectorComplement: out << "closed_sector_complement(alpha=" << alpha << ")"; break;
    case Kind::Disk: out << "disk(center=" << point(center) << ", radius=" << radius << ")"; break;
    case Kind::Polygon: out << "polygon(" << vertices.size() << " vertices)"; break;
    case Kind::LambdaRegion: out << "lambda_region(a=" << a << ", b=" << b << ", c=" << c << ")"; break;
  }
  return out.str();
}

std::vector<Complex> RegionPredicate::accumulating_samples(Complex cluster, double r, int count) {
  if (!(r > 0.0) || count < 1) fail(ErrorKind::Domain, "accumulating samples need r > 0 and count >= 1");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  std::vector<Complex> out;
  for (int k = 1; k <= count; ++k) out.push_back(cluster + std::polar(r / k, golden * k));
  return out;
}

void RegionPredicate::validate_samples() const {
  if (!contains(cluster_point)) {
    fail(ErrorKind::Domain, "cluster point " + point(cluster_point) + " is not in " + describe());
  }
  for (Complex z : decay_samples) {
    if (!contains(z)) fail(ErrorKind::Domain, "decay sample " + point(z) + " is not in " + describe());
  }
  for (Complex z : witness_samples) {
    if (!contains(z)) fail(ErrorKind::Domain, "witness sample " + point(z) + " is not in " + describe());
  }
}

}  // namespace dchaos
