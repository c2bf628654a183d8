#pragma once

// Sparse polynomials in up to four variables over a finite field.
//
// Terms are kept sorted in descending graded-lexicographic order with
// x1 > x2 > x3 > x4, and zero coefficients are never stored, so equal
// polynomials have identical term vectors and print identically.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ql/gf.hpp"

namespace ql {

using Exponents = std::array<std::uint8_t, 4>;

/// Exponents packed with x1 in the most significant byte, so that integer
/// comparison of keys of equal degree is lexicographic comparison.
inline std::uint32_t pack(const Exponents& e) {
  return (std::uint32_t{e[0]} << 24) | (std::uint32_t{e[1]} << 16) | (std::uint32_t{e[2]} << 8) | e[3];
}
inline Exponents unpack(std::uint32_t k) {
  return {static_cast<std::uint8_t>(k >> 24), static_cast<std::uint8_t>(k >> 16),
          static_cast<std::uint8_t>(k >> 8), static_cast<std::uint8_t>(k)};
}
inline int key_degree(std::uint32_t k) {
  return static_cast<int>((k >> 24) + ((k >> 16) & 0xff) + ((k >> 8) & 0xff) + (k & 0xff));
}

struct Term {
  std::uint32_t key;
  Elem coeff;
};

/// Binomial coefficient C(n, k) reduced mod p (Lucas).
unsigned binomial_mod(unsigned n, unsigned k, unsigned p);

class MVPoly {
 public:
  MVPoly() = default;
  MVPoly(Field f, int nvars);

  static MVPoly constant(Field f, int nvars, Elem c);
  static MVPoly variable(Field f, int nvars, int index);
  static MVPoly monomial(Field f, int nvars, const Exponents& e, Elem c = 1);
  /// sum coeffs[i] * x_{i+1}; nvars = coeffs.size().
  static MVPoly linear_form(Field f, std::span<const Elem> coeffs);
  /// Parses the text format "2*x1^3*x4 + x2^4", coefficients as field literals.
  static MVPoly parse(Field f, int nvars, std::string_view text);

  const Field& field() const { return field_; }
  const FieldCtx& ctx() const { return *field_; }
  int nvars() const { return nvars_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  /// -1 for the zero polynomial.
  int total_degree() const;
  bool is_homogeneous() const;
  int degree_in(int var) const;
  Elem coefficient(const Exponents& e) const;
  const Term& leading_term() const { return terms_.front(); }

  MVPoly operator+(const MVPoly& o) const;
  MVPoly operator-(const MVPoly& o) const;
  MVPoly operator*(const MVPoly& o) const;
  MVPoly operator-() const;
  MVPoly& operator+=(const MVPoly& o) { return *this = *this + o; }
  MVPoly& operator-=(const MVPoly& o) { return *this = *this - o; }
  MVPoly& operator*=(const MVPoly& o) { return *this = *this * o; }
  MVPoly scaled(Elem c) const;
  MVPoly pow(unsigned e) const;
  bool operator==(const MVPoly& o) const;

  Elem eval(std::span<const Elem> point) const;
  /// D^(alpha) f: the coefficient of y^alpha in f(x + y).
  MVPoly hasse_derivative(const Exponents& alpha) const;
  MVPoly partial(int var) const;
  /// Replaces x_i by images[i]; images share a field and variable count.
  MVPoly substitute(std::span<const MVPoly> images) const;
  /// coefficients_in(v)[k] is the coefficient of x_v^k, a polynomial in the
  /// remaining variables (same nvars, exponent of x_v zero).
  std::vector<MVPoly> coefficients_in(int var) const;
  /// Sets x_var = value.
  MVPoly specialize(int var, Elem value) const;
  /// Reinterpret with a different variable count (unused variables must be absent).
  MVPoly with_nvars(int nvars) const;
  /// Drops variable `var`, shifting later variables down; the polynomial must
  /// not involve it.
  MVPoly drop_variable(int var) const;

  MVPoly map_field(const Embedding& e) const;
  /// Coefficients pulled back through `e`, if all of them lie in its image.
  std::optional<MVPoly> pull_back(const Embedding& e) const;

  /// Multivariate division by one divisor in graded-lex order:
  /// *this = q * d + r with no term of r divisible by the leading term of d.
  std::pair<MVPoly, MVPoly> divmod(const MVPoly& d) const;
  std::optional<MVPoly> exact_div(const MVPoly& d) const;

  /// Binary form f(sP + tQ) of a homogeneous polynomial: c[i] is the
  /// coefficient of s^{d-i} t^i.
  std::vector<Elem> restrict_to_line(std::span<const Elem> P, std::span<const Elem> Q) const;

  /// All exponents divisible by p (so the polynomial is a p-th power over a
  /// perfect field).
  bool is_pth_power() const;

  /// Scales so that the leading coefficient is 1.
  MVPoly monic() const;

  std::string to_string() const;

 private:
  void normalize(std::vector<Term>& raw);
  Field field_;
  int nvars_ = 0;
  std::vector<Term> terms_;
};

/// Graded-lex "greater than" on packed keys.
inline bool grlex_greater(std::uint32_t a, std::uint32_t b) {
  const int da = key_degree(a), db = key_degree(b);
  return da != db ? da > db : a > b;
}

}  // namespace ql
