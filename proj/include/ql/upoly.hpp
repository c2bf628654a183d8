#pragma once

// Dense univariate polynomials over a finite field, coefficients low-to-high.

#include <vector>

#include "ql/gf.hpp"

namespace ql::upoly {

using UPoly = std::vector<Elem>;

void trim(UPoly& a);
int degree(const UPoly& a);  // -1 for zero
UPoly add(const FieldCtx& F, const UPoly& a, const UPoly& b);
UPoly sub(const FieldCtx& F, const UPoly& a, const UPoly& b);
UPoly mul(const FieldCtx& F, const UPoly& a, const UPoly& b);
UPoly scale(const FieldCtx& F, const UPoly& a, Elem c);
/// Quotient and remainder; b nonzero.
std::pair<UPoly, UPoly> divmod(const FieldCtx& F, const UPoly& a, const UPoly& b);
/// Exact quotient; throws if the division leaves a remainder.
UPoly exact_div(const FieldCtx& F, const UPoly& a, const UPoly& b);
/// Monic gcd (zero if both are zero).
UPoly gcd(const FieldCtx& F, UPoly a, UPoly b);
Elem eval(const FieldCtx& F, const UPoly& a, Elem x);
UPoly derivative(const FieldCtx& F, const UPoly& a);
/// Distinct roots in F by exhaustive evaluation.
std::vector<Elem> roots(const FieldCtx& F, const UPoly& a);
/// Multiplicity of x as a root of a (a nonzero).
int root_multiplicity(const FieldCtx& F, UPoly a, Elem x);

/// Roots in P^1 of a binary form given by coefficients c[i] of s^{d-i} t^i,
/// as (s, t) pairs normalized with the first nonzero coordinate 1, together
/// with multiplicities.  The form must be nonzero.
struct BinaryRoot {
  Elem s;
  Elem t;
  int multiplicity;
};
std::vector<BinaryRoot> binary_roots(const FieldCtx& F, const UPoly& form, int degree);

/// The polynomial of degree < xs.size() through the points (xs[i], ys[i]);
/// xs pairwise distinct.
UPoly interpolate(const FieldCtx& F, const std::vector<Elem>& xs, const std::vector<Elem>& ys);

/// Resultant of a binary form pair with formal degrees (da, db), computed by
/// dense Gaussian elimination of the Sylvester matrix.
Elem binary_resultant(const FieldCtx& F, const UPoly& a, int da, const UPoly& b, int db);

}  // namespace ql::upoly
