#pragma once

// Points, lines and planes of P^3 over a finite field, line enumeration and
// the local geometry of a quartic at a point.

#include <array>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ql/linalg.hpp"
#include "ql/mvpoly.hpp"

namespace ql {

using Point3 = std::array<Elem, 4>;

/// Scales so the first nonzero coordinate is 1; throws on the zero vector.
Point3 normalize_point(const FieldCtx& F, Point3 p);
bool is_zero_vector(const Point3& p);

/// A plane a.x = 0, normalized like a point.
struct Plane3 {
  std::array<Elem, 4> c{};
  bool contains(const FieldCtx& F, const Point3& p) const;
  auto operator<=>(const Plane3&) const = default;
};

/// A line of P^3 stored by the reduced row echelon form of a 2x4 spanning
/// matrix, which is unique per line.
class Line3 {
 public:
  Line3() = default;
  /// Line spanned by two distinct points.
  static Line3 through(const FieldCtx& F, const Point3& a, const Point3& b);
  /// Trusts that rows are already in reduced row echelon form.
  static Line3 from_rref(const FieldCtx& F, const std::array<Elem, 8>& rows);

  const std::array<Elem, 8>& key() const { return rows_; }
  Point3 row(int i) const { return {rows_[4 * i], rows_[4 * i + 1], rows_[4 * i + 2], rows_[4 * i + 3]}; }
  /// p01, p02, p03, p12, p13, p23 of the two rows.
  const std::array<Elem, 6>& plucker() const { return plucker_; }
  std::array<int, 2> pivots() const;

  bool contains(const FieldCtx& F, const Point3& p) const;
  /// The point s*row0 + t*row1.
  Point3 point(const FieldCtx& F, Elem s, Elem t) const;

  Line3 map_field(const FieldCtx& big, const Embedding& e) const;
  std::optional<Line3> pull_back(const FieldCtx& small, const Embedding& e) const;
  /// Entrywise p-power Frobenius (again in reduced echelon form).
  Line3 frobenius(const FieldCtx& F) const;

  bool operator==(const Line3& o) const { return rows_ == o.rows_; }
  bool operator<(const Line3& o) const { return rows_ < o.rows_; }

 private:
  void compute_plucker(const FieldCtx& F);
  std::array<Elem, 8> rows_{};
  std::array<Elem, 6> plucker_{};
};

/// (q^2 + 1)(q^2 + q + 1).
std::uint64_t line_count(std::uint64_t q);

/// Calls fn once per line of P^3(F_q) in canonical order; fn returns false to
/// stop early.
void enumerate_lines(const FieldCtx& F, const std::function<bool(const Line3&)>& fn,
                     std::uint64_t cap = kDefaultEnumerationCap);

/// Plucker pairing; a line meets itself by convention.
bool lines_meet(const FieldCtx& F, const Line3& a, const Line3& b);
/// Rank test on the stacked 4x4 matrix.
bool lines_meet_by_rank(const FieldCtx& F, const Line3& a, const Line3& b);
/// The common point of two distinct meeting lines.
std::optional<Point3> intersection_point(const FieldCtx& F, const Line3& a, const Line3& b);
/// The plane containing two distinct meeting lines.
Plane3 plane_through(const FieldCtx& F, const Line3& a, const Line3& b);
bool line_in_plane(const FieldCtx& F, const Line3& l, const Plane3& h);
/// Intersection point of a line not contained in the plane.
Point3 line_plane_intersection(const FieldCtx& F, const Line3& l, const Plane3& h);

/// All five coefficients of f(s*P + t*Q) vanish.  f must be a nonzero quartic.
bool line_in_surface(const MVPoly& f, const Line3& l);

/// Every line of P^3(F) on {f = 0}, in canonical order.  A line lies on the
/// surface iff both of its echelon rows and the whole binary restriction do,
/// so rows are filtered first.
std::vector<Line3> lines_on_surface(const MVPoly& f, unsigned threads = 1,
                                    std::uint64_t cap = kDefaultEnumerationCap);
/// Reference scan: tests line_in_surface on every enumerated line.
std::vector<Line3> lines_on_surface_exhaustive(const MVPoly& f, std::uint64_t cap = kDefaultEnumerationCap);

/// Plane with dual coordinates (D^(e_i) f(P)); throws if P is a singular point.
Plane3 tangent_plane(const MVPoly& f, const Point3& P);
/// q_P(x) = sum over |alpha| = 2 of D^(alpha) f(P) x^alpha.
MVPoly hessian_quadric(const MVPoly& f, const Point3& P);

inline constexpr int kInfiniteContact = std::numeric_limits<int>::max();
/// Vanishing order at P of f restricted to l, or kInfiniteContact if l lies on
/// the surface.  Throws if P is not on l.
int contact_order(const MVPoly& f, const Line3& l, const Point3& P);

std::string point_to_string(const FieldCtx& F, const Point3& p);
std::vector<std::string> line_to_strings(const FieldCtx& F, const Line3& l);

}  // namespace ql
