#pragma once

#include <vector>

#include "ql/mvpoly.hpp"
#include "ql/upoly.hpp"

namespace ql {

/// A binary form in (s:t) whose coefficients are polynomials in x:
/// coeffs[i] multiplies s^{degree-i} t^i.  The declared degree may exceed the
/// actual one; resultants always use the declared degree.
struct UPolyOver {
  int degree = 0;
  std::vector<MVPoly> coeffs;

  /// Largest i with a nonzero coefficient, or -1.
  int actual_degree() const;
  /// Specializes the coefficients at a point in x.
  upoly::UPoly eval(std::span<const Elem> x) const;
};

/// Determinant over the polynomial ring.  Small matrices use cofactor
/// expansion memoized on column subsets (division free); larger ones use
/// fraction-free Bareiss elimination with exact division.
MVPoly determinant(const std::vector<std::vector<MVPoly>>& m);

/// Res(A, B) with respect to (s:t) at the declared degrees.
MVPoly sylvester_resultant(const UPolyOver& a, const UPolyOver& b);

/// Resultant of two polynomials with respect to variable `var`, at their
/// actual degrees in that variable.  The result does not involve `var`.
MVPoly resultant_in(const MVPoly& a, const MVPoly& b, int var);

/// Determinant of a matrix of univariate polynomials (Bareiss).
upoly::UPoly determinant(const FieldCtx& F, std::vector<std::vector<upoly::UPoly>> m);

}  // namespace ql
