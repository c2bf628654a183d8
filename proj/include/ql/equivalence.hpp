#pragma once

// Projective equivalence of quartic surfaces: checking a given matrix and
// searching for one among maps determined by frames of line-intersection
// points.

#include <optional>
#include <vector>

#include "ql/linalg.hpp"
#include "ql/projgeom.hpp"

namespace ql {

/// f(M x) as a polynomial in x.
MVPoly transform(const MVPoly& f, const Matrix& M);

/// True iff f(M x) = lambda g(x) for a nonzero scalar lambda.  Throws if M
/// is singular.
bool check_equivalence(const MVPoly& f, const MVPoly& g, const Matrix& M);

/// Projectivity sending e1..e4 to p1..p4 and (1,1,1,1) to p5, or nullopt if
/// the points are not in general position.
std::optional<Matrix> frame_matrix(const FieldCtx& F, const std::array<Point3, 5>& frame);

struct EquivalenceSearch {
  std::optional<Matrix> M;  // f(M x) ~ g(x)
  std::uint64_t candidates = 0;
  std::size_t frame_points_f = 0, frame_points_g = 0;
};

/// f, g over a common field with their line censuses over the same field.
/// Tries frames of intersection points of census lines whose incidence
/// pattern matches a fixed frame on g.  Throws if a census is empty or no
/// frame in general position exists on g.
EquivalenceSearch find_equivalence(const MVPoly& f, const MVPoly& g, const std::vector<Line3>& census_f,
                                   const std::vector<Line3>& census_g,
                                   std::uint64_t max_candidates = 2'000'000);

}  // namespace ql
