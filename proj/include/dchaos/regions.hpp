#pragma once

// Region predicates on the complex plane, each carrying the finite sample sets the
// sector-condition checks quantify over.

#include <string>
#include <vector>

#include "dchaos/elements.hpp"

namespace dchaos {

/// z != 0 and |arg z| < alpha - kSlack.
bool in_open_sector(Complex z, double alpha);
/// z = 0 or |arg z| <= alpha + kSlack.
bool in_closed_sector(Complex z, double alpha);

struct RegionPredicate {
  enum class Kind {
    HalfPlaneNeg,            // Re z < 0
    HalfPlanePos,            // Re z > 0
    Sector,                  // open sector |arg z| < alpha
    ClosedSectorComplement,  // complement of the closed sector
    Disk,                    // |z - center| < radius
    Polygon,                 // interior of a simple polygon
    LambdaRegion,            // the set -Lambda(a, b, c)
  };

  Kind kind = Kind::Disk;
  double alpha = 0.0;
  Complex center;
  double radius = 1.0;
  std::vector<Complex> vertices;
  double a = 1.0, b = 1.0, c = 0.5;

  /// Points the decay condition must hold on; they accumulate at cluster_point.
  std::vector<Complex> decay_samples;
  /// Candidates for the growth witness.
  std::vector<Complex> witness_samples;
  Complex cluster_point;

  static RegionPredicate half_plane_neg();
  static RegionPredicate half_plane_pos();
  static RegionPredicate sector(double alpha);
  static RegionPredicate closed_sector_complement(double alpha);
  static RegionPredicate disk(Complex center, double radius);
  static RegionPredicate polygon(std::vector<Complex> vertices);
  /// -Lambda with Lambda = {|l - c + b^2/(4a)| <= b^2/(4a), Im l != 0 if Re l <= c - b^2/(4a)}.
  /// Domain error unless c < b^2/(2a) < 1 with a, b, c > 0.
  static RegionPredicate lambda_region(double a, double b, double c);

  bool contains(Complex z) const;
  std::string describe() const;

  /// z_k = cluster + r e^{i k phi} / k, k = 1 .. count, phi the golden angle: a
  /// sequence inside the disk of radius r accumulating at the cluster point.
  static std::vector<Complex> accumulating_samples(Complex cluster, double r, int count);

  /// Every sample lies in the region, the cluster point too. Domain error naming the
  /// first offending point.
  void validate_samples() const;
};

}  // namespace dchaos
