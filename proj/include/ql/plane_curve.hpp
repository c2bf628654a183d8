#pragma once

// Plane curves of low degree: linear factors, conic irreducibility, rational
// points and local jets at singular points.

#include <array>
#include <vector>

#include "ql/mvpoly.hpp"

namespace ql {

using PlanePoint = std::array<Elem, 3>;

/// Scales so the first nonzero coordinate is 1.
PlanePoint normalize_point(const FieldCtx& F, PlanePoint p);
/// Coefficients (a, b, c) of the line a x1 + b x2 + c x3 through u and w.
std::array<Elem, 3> line_through(const FieldCtx& F, const PlanePoint& u, const PlanePoint& w);
/// Two distinct points spanning the line a x1 + b x2 + c x3 = 0.
std::array<PlanePoint, 2> points_on_line(const FieldCtx& F, const std::array<Elem, 3>& line);

struct LinearFactor {
  MVPoly form;  // normalized: first nonzero coefficient 1
  int multiplicity = 1;
};

struct Factorization {
  std::vector<LinearFactor> lines;
  MVPoly residual;  // no linear factor over the field
};

/// Every linear factor over the base field of a homogeneous ternary form of
/// degree <= 4, with multiplicity.  Product of factors^mult * residual
/// reproduces the input exactly.
Factorization linear_factors(const MVPoly& c);

/// Exhaustive variant: tests every line of P^2(F_q).  Requires q within the
/// enumeration cap.
Factorization linear_factors_exhaustive(const MVPoly& c, std::uint64_t cap = kDefaultEnumerationCap);

/// True iff the conic has no linear factor over F_{q^e} for e <= bound.
/// A degenerate conic splits over a quadratic extension, so bound = 2
/// decides geometric irreducibility.
bool conic_is_irreducible(const MVPoly& conic, unsigned bound = 2);

/// All points of P^2(F_q) on the curve, normalized, in enumeration order.
std::vector<PlanePoint> rational_points(const MVPoly& c);

/// All first Hasse derivatives and the form itself vanish at p.
bool is_singular_at(const MVPoly& c, const PlanePoint& p);

/// Degree-2 part of c at the singular point p, as a binary quadratic
/// (a, b, g) meaning a u^2 + b u v + g v^2 in directions complementary to p.
std::array<Elem, 3> second_order_jet(const MVPoly& c, const PlanePoint& p);

/// a u^2 + b u v + g v^2 is the square of a linear form over the algebraic
/// closure (discriminant zero; in characteristic 2 the middle coefficient is
/// zero).  The zero form counts as a square.
bool binary_quadratic_is_square(const FieldCtx& F, Elem a, Elem b, Elem g);

}  // namespace ql
