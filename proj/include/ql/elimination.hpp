#pragma once

// Certificate that homogeneous polynomials in four variables have no common
// zero over the algebraic closure.
//
// After a random invertible change of coordinates, P^3 splits into the
// charts {x1 != 0}, {x1 = 0, x2 != 0}, {x1 = x2 = 0, x3 != 0} and the point
// [0:0:0:1].  In each chart random combinations of the inputs are eliminated
// by iterated univariate resultants taken at declared (total-degree)
// degrees, so every resultant is an element of the ideal and specializes
// correctly.  Resultants are evaluated pointwise and recovered by
// interpolation.  A constant gcd of the final eliminants rules out common
// zeros in that chart.

#include <cstdint>
#include <string>
#include <vector>

#include "ql/mvpoly.hpp"

namespace ql {

struct EliminationOutcome {
  bool certified = false;
  int attempts = 0;
  std::string field;  // spec of the working field
  std::string failed_chart;  // last chart that failed, when not certified
};

/// polys: homogeneous, four variables, all over the same field.  The working
/// field is the smallest extension with at least `min_order` elements.
EliminationOutcome no_common_zero(const std::vector<MVPoly>& polys, int attempts, std::uint64_t seed,
                                  std::uint64_t min_order = 500);

}  // namespace ql
