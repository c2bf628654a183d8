#include "ql/projgeom.hpp"

#include <algorithm>
#include <mutex>

#include "ql/parallel.hpp"

namespace ql {

Point3 normalize_point(const FieldCtx& F, Point3 p) {
  for (int i = 0; i < 4; ++i)
    if (p[i] != 0) {
      const Elem inv = F.inv(p[i]);
      for (auto& x : p) x = F.mul(x, inv);
      return p;
    }
  throw Error("zero vector is not a projective point");
}

bool is_zero_vector(const Point3& p) {
  return std::all_of(p.begin(), p.end(), [](Elem e) { return e == 0; });
}

namespace {

Elem dot(const FieldCtx& F, const std::array<Elem, 4>& a, const Point3& p) {
  Elem acc = 0;
  for (int i = 0; i < 4; ++i) acc = F.add(acc, F.mul(a[i], p[i]));
  return acc;
}

constexpr std::array<std::array<int, 2>, 6> kPairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};

}  // namespace

bool Plane3::contains(const FieldCtx& F, const Point3& p) const { return dot(F, c, p) == 0; }

Line3 Line3::through(const FieldCtx& F, const Point3& a, const Point3& b) {
  Matrix m{{a.begin(), a.end()}, {b.begin(), b.end()}};
  if (rref(F, m).size() != 2) throw Error("points do not span a line");
  std::array<Elem, 8> rows{};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 4; ++j) rows[4 * i + j] = m[i][j];
  return from_rref(F, rows);
}

Line3 Line3::from_rref(const FieldCtx& F, const std::array<Elem, 8>& rows) {
  Line3 l;
  l.rows_ = rows;
  l.compute_plucker(F);
  return l;
}

void Line3::compute_plucker(const FieldCtx& F) {
  for (int k = 0; k < 6; ++k) {
    const auto [i, j] = kPairs[k];
    plucker_[k] = F.sub(F.mul(rows_[i], rows_[4 + j]), F.mul(rows_[j], rows_[4 + i]));
  }
}

std::array<int, 2> Line3::pivots() const {
  std::array<int, 2> p{};
  for (int r = 0; r < 2; ++r) {
    int c = 0;
    while (rows_[4 * r + c] == 0) ++c;
    p[r] = c;
  }
  return p;
}

bool Line3::contains(const FieldCtx& F, const Point3& p) const {
  Matrix m{{rows_.begin(), rows_.begin() + 4}, {rows_.begin() + 4, rows_.end()}, {p.begin(), p.end()}};
  return rank(F, m) == 2;
}

Point3 Line3::point(const FieldCtx& F, Elem s, Elem t) const {
  Point3 p{};
  for (int i = 0; i < 4; ++i) p[i] = F.add(F.mul(s, rows_[i]), F.mul(t, rows_[4 + i]));
  return p;
}

Line3 Line3::map_field(const FieldCtx& big, const Embedding& e) const {
  std::array<Elem, 8> r{};
  for (int i = 0; i < 8; ++i) r[i] = e(rows_[i]);
  return from_rref(big, r);
}

std::optional<Line3> Line3::pull_back(const FieldCtx& small, const Embedding& e) const {
  std::array<Elem, 8> r{};
  for (int i = 0; i < 8; ++i) {
    auto v = e.preimage(rows_[i]);
    if (!v) return std::nullopt;
    r[i] = *v;
  }
  return from_rref(small, r);
}

Line3 Line3::frobenius(const FieldCtx& F) const {
  std::array<Elem, 8> r{};
  for (int i = 0; i < 8; ++i) r[i] = F.frobenius(rows_[i]);
  return from_rref(F, r);
}

std::uint64_t line_count(std::uint64_t q) { return (q * q + 1) * (q * q + q + 1); }

namespace {

// Positions filled freely in each echelon row for pivot pattern (i, j).
struct Pattern {
  int i, j;
  std::vector<int> free0, free1;
};

std::vector<Pattern> patterns() {
  std::vector<Pattern> out;
  for (const auto& [i, j] : kPairs) {
    Pattern p{i, j, {}, {}};
    for (int c = i + 1; c < 4; ++c)
      if (c != j) p.free0.push_back(c);
    for (int c = j + 1; c < 4; ++c) p.free1.push_back(c);
    out.push_back(std::move(p));
  }
  return out;
}

std::uint64_t ipow(std::uint64_t b, std::size_t e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

Point3 row_from_index(const Elem q, int pivot, const std::vector<int>& free, std::uint64_t idx) {
  Point3 v{0, 0, 0, 0};
  v[pivot] = 1;
  for (int c : free) {
    v[c] = static_cast<Elem>(idx % q);
    idx /= q;
  }
  return v;
}

}  // namespace

void enumerate_lines(const FieldCtx& F, const std::function<bool(const Line3&)>& fn, std::uint64_t cap) {
  F.require_enumerable(cap);
  const Elem q = F.order();
  for (const auto& pat : patterns()) {
    const std::uint64_t n0 = ipow(q, pat.free0.size()), n1 = ipow(q, pat.free1.size());
    for (std::uint64_t a = 0; a < n0; ++a) {
      const Point3 r0 = row_from_index(q, pat.i, pat.free0, a);
      for (std::uint64_t b = 0; b < n1; ++b) {
        const Point3 r1 = row_from_index(q, pat.j, pat.free1, b);
        std::array<Elem, 8> rows{r0[0], r0[1], r0[2], r0[3], r1[0], r1[1], r1[2], r1[3]};
        if (!fn(Line3::from_rref(F, rows))) return;
      }
    }
  }
}

bool lines_meet(const FieldCtx& F, const Line3& a, const Line3& b) {
  const auto& p = a.plucker();
  const auto& r = b.plucker();
  // p01 r23 - p02 r13 + p03 r12 + p12 r03 - p13 r02 + p23 r01
  Elem acc = F.mul(p[0], r[5]);
  acc = F.sub(acc, F.mul(p[1], r[4]));
  acc = F.add(acc, F.mul(p[2], r[3]));
  acc = F.add(acc, F.mul(p[3], r[2]));
  acc = F.sub(acc, F.mul(p[4], r[1]));
  acc = F.add(acc, F.mul(p[5], r[0]));
  return acc == 0;
}

bool lines_meet_by_rank(const FieldCtx& F, const Line3& a, const Line3& b) {
  Matrix m;
  for (const Line3* l : {&a, &b})
    for (int r = 0; r < 2; ++r) {
      const Point3 p = l->row(r);
      m.emplace_back(p.begin(), p.end());
    }
  return rank(F, m) < 4;
}

std::optional<Point3> intersection_point(const FieldCtx& F, const Line3& a, const Line3& b) {
  if (a == b || !lines_meet(F, a, b)) return std::nullopt;
  // Solve u0 a0 + u1 a1 = v0 b0 + v1 b1 via the kernel of the 4x4 system.
  Matrix m(4, std::vector<Elem>(4));
  const Point3 a0 = a.row(0), a1 = a.row(1), b0 = b.row(0), b1 = b.row(1);
  for (int i = 0; i < 4; ++i) m[i] = {a0[i], a1[i], F.neg(b0[i]), F.neg(b1[i])};
  auto ker = kernel(F, m, 4);
  if (ker.size() != 1) throw Error("internal: meeting lines without a unique common point");
  return normalize_point(F, a.point(F, ker[0][0], ker[0][1]));
}

Plane3 plane_through(const FieldCtx& F, const Line3& a, const Line3& b) {
  if (a == b || !lines_meet(F, a, b)) throw Error("lines do not span a plane");
  Matrix m;
  for (const Line3* l : {&a, &b})
    for (int r = 0; r < 2; ++r) {
      const Point3 p = l->row(r);
      m.emplace_back(p.begin(), p.end());
    }
  auto ker = kernel(F, m, 4);
  if (ker.size() != 1) throw Error("internal: plane through two lines is not unique");
  Point3 c{ker[0][0], ker[0][1], ker[0][2], ker[0][3]};
  return Plane3{normalize_point(F, c)};
}

bool line_in_plane(const FieldCtx& F, const Line3& l, const Plane3& h) {
  return h.contains(F, l.row(0)) && h.contains(F, l.row(1));
}

Point3 line_plane_intersection(const FieldCtx& F, const Line3& l, const Plane3& h) {
  const Elem a = dot(F, h.c, l.row(0)), b = dot(F, h.c, l.row(1));
  if (a == 0 && b == 0) throw Error("line lies in the plane");
  // (s, t) = (b, -a) kills the form.
  return normalize_point(F, l.point(F, b, F.neg(a)));
}

bool line_in_surface(const MVPoly& f, const Line3& l) {
  if (f.is_zero() || f.total_degree() != 4 || !f.is_homogeneous())
    throw Error("line_in_surface expects a nonzero homogeneous quartic");
  const Point3 a = l.row(0), b = l.row(1);
  const auto form = f.restrict_to_line(a, b);
  return std::all_of(form.begin(), form.end(), [](Elem e) { return e == 0; });
}

std::vector<Line3> lines_on_surface(const MVPoly& f, unsigned threads, std::uint64_t cap) {
  if (f.is_zero() || f.total_degree() != 4 || !f.is_homogeneous() || f.nvars() != 4)
    throw Error("expected a nonzero homogeneous quartic in four variables");
  const auto& F = f.ctx();
  F.require_enumerable(cap);
  const Elem q = F.order();
  std::vector<Line3> found;
  std::mutex found_mutex;
  for (const auto& pat : patterns()) {
    const std::uint64_t n0 = ipow(q, pat.free0.size()), n1 = ipow(q, pat.free1.size());
    std::vector<Point3> second;
    for (std::uint64_t b = 0; b < n1; ++b) {
      const Point3 r1 = row_from_index(q, pat.j, pat.free1, b);
      if (f.eval(r1) == 0) second.push_back(r1);
    }
    if (second.empty()) continue;
    parallel_for(n0, threads, [&](std::size_t a) {
      const Point3 r0 = row_from_index(q, pat.i, pat.free0, a);
      if (f.eval(r0) != 0) return;
      std::vector<Line3> local;
      for (const auto& r1 : second) {
        const auto form = f.restrict_to_line(r0, r1);
        if (std::all_of(form.begin(), form.end(), [](Elem e) { return e == 0; }))
          local.push_back(Line3::from_rref(F, {r0[0], r0[1], r0[2], r0[3], r1[0], r1[1], r1[2], r1[3]}));
      }
      if (!local.empty()) {
        std::lock_guard lock(found_mutex);
        found.insert(found.end(), local.begin(), local.end());
      }
    });
  }
  std::sort(found.begin(), found.end());
  return found;
}

std::vector<Line3> lines_on_surface_exhaustive(const MVPoly& f, std::uint64_t cap) {
  std::vector<Line3> found;
  enumerate_lines(
      f.ctx(),
      [&](const Line3& l) {
        if (line_in_surface(f, l)) found.push_back(l);
        return true;
      },
      cap);
  std::sort(found.begin(), found.end());
  return found;
}

Plane3 tangent_plane(const MVPoly& f, const Point3& P) {
  const auto& F = f.ctx();
  if (f.eval(P) != 0) throw Error("point is not on the surface");
  Point3 c{};
  for (int i = 0; i < 4; ++i) c[i] = f.partial(i).eval(P);
  if (is_zero_vector(c)) throw Error("surface is singular at " + point_to_string(F, P));
  return Plane3{normalize_point(F, c)};
}

MVPoly hessian_quadric(const MVPoly& f, const Point3& P) {
  const Field& fld = f.field();
  MVPoly q(fld, 4);
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Exponents alpha{0, 0, 0, 0};
      alpha[i] += 1;
      alpha[j] += 1;
      const Elem c = f.hasse_derivative(alpha).eval(P);
      if (c != 0) q += MVPoly::monomial(fld, 4, alpha, c);
    }
  return q;
}

int contact_order(const MVPoly& f, const Line3& l, const Point3& P) {
  const auto& F = f.ctx();
  if (!l.contains(F, P)) throw Error("point is not on the line");
  const Point3 Pn = normalize_point(F, P);
  Point3 other = l.row(0);
  if (normalize_point(F, other) == Pn) other = l.row(1);
  const auto form = f.restrict_to_line(Pn, other);
  for (std::size_t i = 0; i < form.size(); ++i)
    if (form[i] != 0) return static_cast<int>(i);
  return kInfiniteContact;
}

std::string point_to_string(const FieldCtx& F, const Point3& p) {
  std::string s = "[";
  for (int i = 0; i < 4; ++i) {
    if (i) s += ", ";
    s += F.literal(p[i]);
  }
  return s + "]";
}

std::vector<std::string> line_to_strings(const FieldCtx& F, const Line3& l) {
  std::vector<std::string> out;
  for (Elem e : l.key()) out.push_back(F.literal(e));
  return out;
}

}  // namespace ql
