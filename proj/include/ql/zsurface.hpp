#pragma once

// Conics on a quartic surface and the degree-16 surface Z swept out by the
// intersections of tangent planes and Hessian quadrics along a conic.  Z
// contains every line of the surface that meets the conic, which bounds the
// number of such lines.

#include <optional>
#include <string>
#include <vector>

#include "ql/pencil.hpp"
#include "ql/resultant.hpp"

namespace ql {

struct ConicOnSurface {
  Field field;
  Plane3 plane;
  std::array<Point3, 3> basis{};  // plane points for coordinates (z1, z2, z3)
  MVPoly conic;                   // in (z1, z2, z3)
  bool irreducible = false;       // geometric irreducibility witness
  Matrix M;                       // x = M w carries Q0 = {w4 = 0, w1 w2 = w3^2} onto the conic
  MVPoly normalized;              // f(M w)
};

/// f over the conic's field.  Throws if the conic is reducible or not on f.
ConicOnSurface normalize_conic(const MVPoly& f, const Plane3& plane, const std::array<Point3, 3>& basis,
                               const MVPoly& conic);

/// f(M w) vanishes on the parametrization [s^2, t^2, st, 0].
bool contains_standard_conic(const MVPoly& fn);

struct ConicFamilies {
  UPolyOver h;  // tangent planes: degree 6 in (s:t), linear in x
  UPolyOver q;  // Hessian quadrics: degree 4 in (s:t), quadratic in x
};

/// Substitutes P(s:t) = [t^2, s^2, st, 0] into the first Hasse derivatives
/// and into the order-2 Hasse jet of a quartic containing Q0.
ConicFamilies families_along_conic(const MVPoly& fn);

/// g = Res_(s:t)(q, h) at declared degrees (4, 6).
MVPoly z_polynomial(const ConicFamilies& fam);

struct ZDivisibility {
  bool divisible = false;
  std::string method;  // "point" or "division"
  std::optional<Point3> witness;
};
/// Decides whether f divides g: first by a point of {f = 0} with g != 0,
/// then by division with remainder (conclusive for a single divisor).
ZDivisibility z_divisibility(const MVPoly& fn, const MVPoly& g);

/// Lines (given in w-coordinates, over the conic's field) meeting Q0.
bool line_meets_standard_conic(const FieldCtx& F, const Line3& l);
bool line_in_standard_plane(const FieldCtx& F, const Line3& l);

/// Census line in x-coordinates to w-coordinates over the conic's field.
Line3 to_normalized(const ConicOnSurface& c, const Line3& census_line, const Embedding& census_to_conic);

struct ConicBoundReport {
  int meeting = 0;           // census lines meeting the conic
  int meeting_excluding = 0; // those not in the conic's plane
  int in_plane = 0;
  std::optional<int> m;
  std::vector<BoundCheck> checks;
  bool pass() const;
};

/// max over m >= 1 of min(a - 2m, b + 2m), with the maximizing m values.
std::pair<int, std::vector<int>> max_min_bound(int a, int b);

/// Counts census lines meeting the conic and checks 48 (and 44 when two
/// lines complete the plane section); with m known also min(64-2m, 32+2m)
/// and min(62-2m, 28+2m).
ConicBoundReport conic_line_bound(const ConicOnSurface& c, const std::vector<Line3>& census, const Embedding& census_to_conic,
                                  std::optional<int> m = std::nullopt);

struct MultiplicityResult {
  std::optional<int> m;
  int precision = 20;
  std::vector<int> valuations;  // per sample; precision means "at least"
};

/// Order of vanishing of g along Q0 inside {fn = 0}, read off from formal
/// arcs through points of Q0 transverse to it.
MultiplicityResult multiplicity_along_conic(const MVPoly& fn, const MVPoly& g, int precision = 20);

/// Irreducible conic components of I2 and III fibres across the reports,
/// deduplicated by plane and point set.  f over the census field.
std::vector<ConicOnSurface> conics_on_surface(const MVPoly& f, const std::vector<FibrationReport>& reports);

}  // namespace ql
