#include "ql/plane_curve.hpp"

#include <algorithm>

#include "ql/upoly.hpp"

namespace ql {

PlanePoint normalize_point(const FieldCtx& F, PlanePoint p) {
  for (int i = 0; i < 3; ++i)
    if (p[i] != 0) {
      const Elem inv = F.inv(p[i]);
      for (auto& x : p) x = F.mul(x, inv);
      return p;
    }
  throw Error("zero vector is not a projective point");
}

std::array<Elem, 3> line_through(const FieldCtx& F, const PlanePoint& u, const PlanePoint& w) {
  std::array<Elem, 3> l{F.sub(F.mul(u[1], w[2]), F.mul(u[2], w[1])),
                        F.sub(F.mul(u[2], w[0]), F.mul(u[0], w[2])),
                        F.sub(F.mul(u[0], w[1]), F.mul(u[1], w[0]))};
  return normalize_point(F, l);
}

std::array<PlanePoint, 2> points_on_line(const FieldCtx& F, const std::array<Elem, 3>& l) {
  // Kernel of the 1x3 matrix l.
  int piv = -1;
  for (int i = 0; i < 3; ++i)
    if (l[i] != 0) {
      piv = i;
      break;
    }
  if (piv < 0) throw Error("zero linear form");
  std::array<PlanePoint, 2> out{};
  int k = 0;
  const Elem inv = F.inv(l[piv]);
  for (int j = 0; j < 3; ++j) {
    if (j == piv) continue;
    PlanePoint v{0, 0, 0};
    v[j] = 1;
    v[piv] = F.neg(F.mul(l[j], inv));
    out[k++] = normalize_point(F, v);
  }
  return out;
}

namespace {

MVPoly form_of(const Field& f, const std::array<Elem, 3>& l) { return MVPoly::linear_form(f, l); }

bool vanishes_on_line(const MVPoly& c, const std::array<Elem, 3>& l) {
  const auto& F = c.ctx();
  auto pts = points_on_line(F, l);
  auto form = c.restrict_to_line(pts[0], pts[1]);
  return std::all_of(form.begin(), form.end(), [](Elem e) { return e == 0; });
}

std::optional<std::array<Elem, 3>> find_factor(const MVPoly& c) {
  const auto& F = c.ctx();
  // Coordinate triangle sides x_v = 0.  A linear factor other than a side
  // meets the sides in roots of the restrictions, and at least two of those
  // intersection points are distinct, so it is the line through them.
  std::vector<PlanePoint> candidates;
  for (int v = 0; v < 3; ++v) {
    std::array<Elem, 3> side{0, 0, 0};
    side[v] = 1;
    const int a = (v + 1) % 3, b = (v + 2) % 3;
    PlanePoint P{0, 0, 0}, Q{0, 0, 0};
    P[std::min(a, b)] = 1;
    Q[std::max(a, b)] = 1;
    auto form = c.restrict_to_line(P, Q);
    if (std::all_of(form.begin(), form.end(), [](Elem e) { return e == 0; })) return side;
    for (const auto& r : upoly::binary_roots(F, form, c.total_degree())) {
      PlanePoint pt{0, 0, 0};
      for (int i = 0; i < 3; ++i) pt[i] = F.add(F.mul(r.s, P[i]), F.mul(r.t, Q[i]));
      pt = normalize_point(F, pt);
      if (std::find(candidates.begin(), candidates.end(), pt) == candidates.end()) candidates.push_back(pt);
    }
  }
  for (std::size_t i = 0; i < candidates.size(); ++i)
    for (std::size_t j = i + 1; j < candidates.size(); ++j) {
      auto l = line_through(F, candidates[i], candidates[j]);
      if (vanishes_on_line(c, l)) return l;
    }
  return std::nullopt;
}

void divide_out(Factorization& out, MVPoly& residual, const std::array<Elem, 3>& l) {
  const MVPoly form = form_of(residual.field(), l);
  int mult = 0;
  while (residual.total_degree() > 0) {
    auto q = residual.exact_div(form);
    if (!q) break;
    residual = std::move(*q);
    ++mult;
  }
  if (mult == 0) throw Error("internal: linear factor failed to divide");
  out.lines.push_back({form, mult});
}

}  // namespace

Factorization linear_factors(const MVPoly& c) {
  if (c.nvars() != 3 || !c.is_homogeneous() || c.is_zero())
    throw Error("linear_factors expects a nonzero ternary form");
  Factorization out{{}, c};
  while (out.residual.total_degree() > 0) {
    auto l = find_factor(out.residual);
    if (!l) break;
    MVPoly residual = out.residual;
    divide_out(out, residual, *l);
    out.residual = std::move(residual);
  }
  return out;
}

Factorization linear_factors_exhaustive(const MVPoly& c, std::uint64_t cap) {
  if (c.nvars() != 3 || !c.is_homogeneous() || c.is_zero())
    throw Error("linear_factors expects a nonzero ternary form");
  const auto& F = c.ctx();
  F.require_enumerable(cap);
  const Elem q = F.order();
  Factorization out{{}, c};
  // Lines a x1 + b x2 + c x3 with first nonzero coefficient 1.
  std::vector<std::array<Elem, 3>> all;
  for (Elem b = 0; b < q; ++b)
    for (Elem cc = 0; cc < q; ++cc) all.push_back({1, b, cc});
  for (Elem cc = 0; cc < q; ++cc) all.push_back({0, 1, cc});
  all.push_back({0, 0, 1});
  for (const auto& l : all) {
    if (out.residual.total_degree() <= 0) break;
    if (vanishes_on_line(out.residual, l)) {
      MVPoly residual = out.residual;
      divide_out(out, residual, l);
      out.residual = std::move(residual);
    }
  }
  return out;
}

bool conic_is_irreducible(const MVPoly& conic, unsigned bound) {
  if (conic.total_degree() != 2 || !conic.is_homogeneous() || conic.nvars() != 3)
    throw Error("conic_is_irreducible expects a ternary quadratic form");
  for (unsigned e = 1; e <= bound; ++e) {
    const Field big = extension_field(conic.field(), e);
    const MVPoly c = e == 1 ? conic : conic.map_field(embed(conic.field(), big));
    if (!linear_factors(c).lines.empty()) return false;
  }
  return true;
}

std::vector<PlanePoint> rational_points(const MVPoly& c) {
  const auto& F = c.ctx();
  const Elem q = F.order();
  std::vector<PlanePoint> out;
  const int d = std::max(0, c.total_degree());
  if (c.is_zero()) throw Error("rational points of the zero form");
  // For fixed (x2, x3) = (y, 1), c is a univariate polynomial in x1.
  std::vector<std::pair<int, std::pair<int, Elem>>> terms;  // (e1, (e2, coeff))
  for (const auto& t : c.terms()) {
    const auto e = unpack(t.key);
    terms.push_back({e[0], {e[1], t.coeff}});
  }
  std::vector<Elem> ypow(d + 1);
  std::vector<Elem> coeffs(d + 1);
  std::vector<std::pair<Elem, PlanePoint>> found;
  for (Elem y = 0; y < q; ++y) {
    ypow[0] = 1;
    for (int k = 1; k <= d; ++k) ypow[k] = F.mul(ypow[k - 1], y);
    std::fill(coeffs.begin(), coeffs.end(), 0);
    for (const auto& [e1, rest] : terms) coeffs[e1] = F.add(coeffs[e1], F.mul(rest.second, ypow[rest.first]));
    for (Elem x = 0; x < q; ++x) {
      Elem acc = 0;
      for (int k = d; k >= 0; --k) acc = F.add(F.mul(acc, x), coeffs[k]);
      if (acc == 0) out.push_back(normalize_point(F, {x, y, 1}));
    }
  }
  // x3 = 0.
  for (Elem x = 0; x < q; ++x) {
    const PlanePoint p{x, 1, 0};
    if (c.eval(p) == 0) out.push_back(normalize_point(F, p));
  }
  if (c.eval(PlanePoint{1, 0, 0}) == 0) out.push_back({1, 0, 0});
  return out;
}

bool is_singular_at(const MVPoly& c, const PlanePoint& p) {
  if (c.eval(p) != 0) return false;
  for (int v = 0; v < 3; ++v)
    if (c.partial(v).eval(p) != 0) return false;
  return true;
}

std::array<Elem, 3> second_order_jet(const MVPoly& c, const PlanePoint& p) {
  const auto& F = c.ctx();
  int piv = 0;
  while (p[piv] == 0) ++piv;
  std::array<PlanePoint, 2> dirs{};
  int k = 0;
  for (int j = 0; j < 3; ++j)
    if (j != piv) {
      PlanePoint v{0, 0, 0};
      v[j] = 1;
      dirs[k++] = v;
    }
  // Coefficient of lambda^2 in c(p + lambda w): index 2 of the binary form
  // restricted to the line through p and w.
  auto jet = [&](const PlanePoint& w) {
    auto form = c.restrict_to_line(p, w);
    return form.size() > 2 ? form[2] : Elem{0};
  };
  PlanePoint both{};
  for (int i = 0; i < 3; ++i) both[i] = F.add(dirs[0][i], dirs[1][i]);
  const Elem a = jet(dirs[0]);
  const Elem g = jet(dirs[1]);
  const Elem b = F.sub(F.sub(jet(both), a), g);
  return {a, b, g};
}

bool binary_quadratic_is_square(const FieldCtx& F, Elem a, Elem b, Elem g) {
  if (F.p() == 2) return b == 0;
  const Elem disc = F.sub(F.mul(b, b), F.mul(F.from_int(4), F.mul(a, g)));
  return disc == 0;
}

}  // namespace ql
