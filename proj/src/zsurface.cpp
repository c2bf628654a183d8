#include "ql/zsurface.hpp"

#include <algorithm>
#include <set>

namespace ql {

namespace {

MVPoly plane_section(const MVPoly& f, const std::array<Point3, 3>& basis) {
  std::vector<MVPoly> images;
  for (int c = 0; c < 4; ++c)
    images.push_back(MVPoly::linear_form(f.field(), std::array<Elem, 3>{basis[0][c], basis[1][c], basis[2][c]}));
  return f.substitute(images);
}

MVPoly apply_matrix(const MVPoly& f, const Matrix& M) {
  std::vector<MVPoly> images;
  for (int i = 0; i < 4; ++i) images.push_back(MVPoly::linear_form(f.field(), M[i]));
  return f.substitute(images);
}

Point3 plane_to_space(const FieldCtx& F, const std::array<Point3, 3>& basis, const PlanePoint& z) {
  Point3 x{0, 0, 0, 0};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 4; ++i) x[i] = F.add(x[i], F.mul(z[k], basis[k][i]));
  return x;
}

std::optional<int> unit_index(const Point3& p) {
  int idx = -1;
  for (int i = 0; i < 4; ++i) {
    if (p[i] == 0) continue;
    if (p[i] != 1 || idx >= 0) return std::nullopt;
    idx = i;
  }
  return idx < 0 ? std::nullopt : std::optional<int>(idx);
}

// Conic equal to lambda (z_a z_b - z_c^2) on a coordinate plane: the
// normalizing map is a coordinate permutation.
std::optional<Matrix> permutation_normalizer(const ConicOnSurface& c) {
  std::array<int, 3> idx{};
  for (int k = 0; k < 3; ++k) {
    auto u = unit_index(c.basis[k]);
    if (!u) return std::nullopt;
    idx[k] = *u;
  }
  int missing = 0 + 1 + 2 + 3 - idx[0] - idx[1] - idx[2];
  const Field& fld = c.field;
  for (int cc = 2; cc >= 0; --cc) {
    const int a = cc == 0 ? 1 : 0, b = cc == 2 ? 1 : 2;
    Exponents eab{0, 0, 0, 0};
    eab[a] += 1;
    eab[b] += 1;
    const Elem lambda = c.conic.coefficient(eab);
    if (lambda == 0) continue;
    Exponents ecc{0, 0, 0, 0};
    ecc[cc] = 2;
    const MVPoly model = (MVPoly::monomial(fld, 3, eab) - MVPoly::monomial(fld, 3, ecc)).scaled(lambda);
    if (!(model == c.conic)) continue;
    Matrix M(4, std::vector<Elem>(4, 0));
    const std::array<int, 4> cols{idx[a], idx[b], idx[cc], missing};
    for (int j = 0; j < 4; ++j) M[cols[j]][j] = 1;
    return M;
  }
  return std::nullopt;
}

}  // namespace

bool contains_standard_conic(const MVPoly& fn) {
  const Field& fld = fn.field();
  const MVPoly s = MVPoly::variable(fld, 2, 0), t = MVPoly::variable(fld, 2, 1);
  const std::vector<MVPoly> images{s * s, t * t, s * t, MVPoly(fld, 2)};
  return fn.substitute(images).is_zero();
}

ConicOnSurface normalize_conic(const MVPoly& f, const Plane3& plane, const std::array<Point3, 3>& basis,
                               const MVPoly& conic) {
  const auto& F = f.ctx();
  if (!same_field(F, conic.ctx())) throw Error("conic and surface over different fields");
  ConicOnSurface c;
  c.field = f.field();
  c.plane = plane;
  c.basis = basis;
  c.conic = conic;
  c.irreducible = conic_is_irreducible(conic);
  if (!c.irreducible) throw Error("conic is reducible");
  for (const auto& b : basis)
    if (!plane.contains(F, b)) throw Error("basis point off the plane");
  if (!plane_section(f, basis).exact_div(conic)) throw Error("conic does not lie on the surface");

  if (auto M = permutation_normalizer(c)) {
    c.M = *M;
  } else {
    const auto pts = rational_points(conic);
    if (pts.size() < 3) throw Error("conic has fewer than three rational points");
    auto gradient = [&](const PlanePoint& p) {
      std::array<Elem, 3> g{};
      for (int v = 0; v < 3; ++v) g[v] = conic.partial(v).eval(p);
      return g;
    };
    const PlanePoint A = pts[0], B = pts[1];
    // Tangent lines at A and B meet in N (the nucleus in characteristic 2).
    const PlanePoint N = line_through(F, gradient(A), gradient(B));
    Matrix cols{{A[0], B[0], N[0]}, {A[1], B[1], N[1]}, {A[2], B[2], N[2]}};
    auto inv = inverse(F, cols);
    if (!inv) throw Error("internal: conic frame is degenerate");
    std::optional<std::array<Elem, 3>> scale;
    for (std::size_t k = 2; k < pts.size() && !scale; ++k) {
      const auto abc = mat_vec(F, *inv, {pts[k][0], pts[k][1], pts[k][2]});
      if (abc[0] != 0 && abc[1] != 0 && abc[2] != 0) scale = std::array<Elem, 3>{abc[0], abc[1], abc[2]};
    }
    if (!scale) throw Error("internal: no unit point for the conic frame");
    std::array<PlanePoint, 3> frame{};
    for (int i = 0; i < 3; ++i) {
      frame[0][i] = F.mul((*scale)[0], A[i]);
      frame[1][i] = F.mul((*scale)[1], B[i]);
      frame[2][i] = F.mul((*scale)[2], N[i]);
    }
    Point3 E{0, 0, 0, 0};
    for (int i = 0; i < 4; ++i)
      if (plane.c[i] != 0) {
        E[i] = 1;
        break;
      }
    c.M.assign(4, std::vector<Elem>(4, 0));
    for (int j = 0; j < 3; ++j) {
      const Point3 x = plane_to_space(F, basis, frame[j]);
      for (int i = 0; i < 4; ++i) c.M[i][j] = x[i];
    }
    for (int i = 0; i < 4; ++i) c.M[i][3] = E[i];
  }
  if (determinant(F, c.M) == 0) throw Error("internal: normalizing map is singular");
  c.normalized = apply_matrix(f, c.M);
  if (!contains_standard_conic(c.normalized)) throw Error("internal: normalized surface misses the standard conic");
  return c;
}

ConicFamilies families_along_conic(const MVPoly& fn) {
  if (!contains_standard_conic(fn)) throw Error("surface does not contain the standard conic");
  const Field& fld = fn.field();
  const MVPoly s = MVPoly::variable(fld, 2, 0), t = MVPoly::variable(fld, 2, 1);
  const std::vector<MVPoly> P{t * t, s * s, s * t, MVPoly(fld, 2)};
  auto binary = [&](const MVPoly& d, int degree) {
    const MVPoly b = d.substitute(P);
    std::vector<Elem> c(degree + 1, 0);
    for (int k = 0; k <= degree; ++k)
      c[k] = b.coefficient(Exponents{static_cast<std::uint8_t>(degree - k), static_cast<std::uint8_t>(k), 0, 0});
    return c;
  };
  ConicFamilies fam;
  fam.h.degree = 6;
  fam.h.coeffs.assign(7, MVPoly(fld, 4));
  for (int i = 0; i < 4; ++i) {
    const auto c = binary(fn.partial(i), 6);
    const MVPoly xi = MVPoly::variable(fld, 4, i);
    for (int k = 0; k <= 6; ++k)
      if (c[k]) fam.h.coeffs[k] += xi.scaled(c[k]);
  }
  fam.q.degree = 4;
  fam.q.coeffs.assign(5, MVPoly(fld, 4));
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Exponents alpha{0, 0, 0, 0};
      alpha[i] += 1;
      alpha[j] += 1;
      const auto c = binary(fn.hasse_derivative(alpha), 4);
      for (int k = 0; k <= 4; ++k)
        if (c[k]) fam.q.coeffs[k] += MVPoly::monomial(fld, 4, alpha, c[k]);
    }
  // The ends (s:t) = (1:0), (0:1) are the points [0,1,0,0] and [1,0,0,0].
  if (fam.h.coeffs[0].is_zero() || fam.h.coeffs[6].is_zero())
    throw Error("tangent plane family degenerates: surface singular on the conic");
  if (fam.q.actual_degree() < 0) throw Error("Hessian family vanishes identically: contradicts smoothness");
  return fam;
}

MVPoly z_polynomial(const ConicFamilies& fam) {
  MVPoly g = sylvester_resultant(fam.q, fam.h);
  if (g.is_zero()) throw Error("resultant vanishes identically: tangent and Hessian families share a factor");
  return g;
}

ZDivisibility z_divisibility(const MVPoly& fn, const MVPoly& g) {
  ZDivisibility out;
  const auto& F = fn.ctx();
  const Elem q = F.order();
  std::uint64_t budget = 2'000'000;
  for (int lead = 0; lead < 4 && budget; ++lead) {
    std::uint64_t count = 1;
    for (int i = lead + 1; i < 4; ++i) count *= q;
    for (std::uint64_t idx = 0; idx < count && budget; ++idx, --budget) {
      Point3 pt{0, 0, 0, 0};
      pt[lead] = 1;
      std::uint64_t r = idx;
      for (int c = lead + 1; c < 4; ++c) {
        pt[c] = static_cast<Elem>(r % q);
        r /= q;
      }
      if (fn.eval(pt) == 0 && g.eval(pt) != 0) {
        out.method = "point";
        out.witness = pt;
        return out;
      }
    }
  }
  out.method = "division";
  out.divisible = g.divmod(fn).second.is_zero();
  return out;
}

bool line_in_standard_plane(const FieldCtx&, const Line3& l) { return l.row(0)[3] == 0 && l.row(1)[3] == 0; }

bool line_meets_standard_conic(const FieldCtx& F, const Line3& l) {
  if (line_in_standard_plane(F, l)) return true;  // meets the conic over the closure
  const Point3 r = line_plane_intersection(F, l, Plane3{{0, 0, 0, 1}});
  return F.sub(F.mul(r[0], r[1]), F.mul(r[2], r[2])) == 0;
}

Line3 to_normalized(const ConicOnSurface& c, const Line3& census_line, const Embedding& e) {
  const auto& F = *c.field;
  const Line3 l = census_line.map_field(F, e);
  auto inv = inverse(F, c.M);
  if (!inv) throw Error("normalizing map is singular");
  const Point3 a = l.row(0), b = l.row(1);
  const auto wa = mat_vec(F, *inv, {a.begin(), a.end()});
  const auto wb = mat_vec(F, *inv, {b.begin(), b.end()});
  return Line3::through(F, {wa[0], wa[1], wa[2], wa[3]}, {wb[0], wb[1], wb[2], wb[3]});
}

bool ConicBoundReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

std::pair<int, std::vector<int>> max_min_bound(int a, int b) {
  int best = std::numeric_limits<int>::min();
  std::vector<int> arg;
  for (int m = 1; 2 * m <= a; ++m) {
    const int v = std::min(a - 2 * m, b + 2 * m);
    if (v > best) {
      best = v;
      arg = {m};
    } else if (v == best) {
      arg.push_back(m);
    }
  }
  return {best, arg};
}

ConicBoundReport conic_line_bound(const ConicOnSurface& c, const std::vector<Line3>& census, const Embedding& e,
                                  std::optional<int> m) {
  const auto& F = *c.field;
  ConicBoundReport rep;
  rep.m = m;
  for (const auto& l : census) {
    const Line3 w = to_normalized(c, l, e);
    if (line_in_standard_plane(F, w)) {
      ++rep.in_plane;
      ++rep.meeting;
    } else if (line_meets_standard_conic(F, w)) {
      ++rep.meeting;
      ++rep.meeting_excluding;
    }
  }
  auto add = [&](std::string name, long observed, long bound) {
    rep.checks.push_back({std::move(name), observed, bound, observed <= bound});
  };
  add("conic_meeting_lines", rep.meeting, max_min_bound(64, 32).first);
  if (rep.in_plane == 2) add("conic_meeting_lines_refined", rep.meeting_excluding, max_min_bound(62, 28).first);
  if (m) {
    add("conic_meeting_lines_at_m", rep.meeting, std::min(64 - 2 * *m, 32 + 2 * *m));
    if (rep.in_plane == 2)
      add("conic_meeting_lines_refined_at_m", rep.meeting_excluding, std::min(62 - 2 * *m, 28 + 2 * *m));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Formal arcs.

namespace {

using Series = std::vector<Elem>;  // truncated power series in eps

class SeriesRing {
 public:
  SeriesRing(const FieldCtx& F, int n) : F_(F), n_(n) {}
  Series zero() const { return Series(n_, 0); }
  Series mul(const Series& a, const Series& b) const {
    Series c(n_, 0);
    for (int i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j < n_; ++j) c[i + j] = F_.add(c[i + j], F_.mul(a[i], b[j]));
    }
    return c;
  }
  Series eval(const MVPoly& p, const std::array<Series, 4>& x) const {
    const int d = std::max(0, p.total_degree());
    std::array<std::vector<Series>, 4> pw;
    for (int v = 0; v < 4; ++v) {
      pw[v].push_back(unit());
      for (int e = 1; e <= d; ++e) pw[v].push_back(mul(pw[v].back(), x[v]));
    }
    Series acc = zero();
    for (const auto& t : p.terms()) {
      const auto e = unpack(t.key);
      Series term = pw[0][e[0]];
      for (int v = 1; v < 4; ++v)
        if (e[v]) term = mul(term, pw[v][e[v]]);
      for (int i = 0; i < n_; ++i) acc[i] = F_.add(acc[i], F_.mul(t.coeff, term[i]));
    }
    return acc;
  }
  Series unit() const {
    Series s = zero();
    s[0] = 1;
    return s;
  }
  int valuation(const Series& s) const {
    for (int i = 0; i < n_; ++i)
      if (s[i] != 0) return i;
    return n_;
  }

 private:
  const FieldCtx& F_;
  int n_;
};

}  // namespace

MultiplicityResult multiplicity_along_conic(const MVPoly& fn_in, const MVPoly& g_in, int precision) {
  if (!contains_standard_conic(fn_in)) throw Error("surface does not contain the standard conic");
  // Sample over an extension so that the points avoid special loci of g.
  const Field work = extension_with_order(fn_in.field(), 64);
  const Embedding& emb = embed(fn_in.field(), work);
  const MVPoly fn = fn_in.map_field(emb), g = g_in.map_field(emb);
  const auto& F = *work;
  MultiplicityResult res;
  res.precision = precision;
  const SeriesRing R(F, precision);
  std::array<MVPoly, 4> grad;
  for (int i = 0; i < 4; ++i) grad[i] = fn.partial(i);

  std::vector<std::pair<Elem, Elem>> params;
  for (int j = 0; j < 16; ++j) params.push_back({F.pow(F.primitive(), 5 * j + 1), 1});
  int samples = 0;
  for (const auto& [s0, t0] : params) {
    if (samples >= 3) break;
    const Point3 P{F.mul(t0, t0), F.mul(s0, s0), F.mul(s0, t0), 0};
    std::array<Elem, 4> gr{};
    for (int i = 0; i < 4; ++i) gr[i] = grad[i].eval(P);
    if (is_zero_vector(gr)) throw Error("surface singular at a point of the conic");
    // Tangent directions leaving the plane of the conic.
    const auto ker = kernel(F, Matrix{{gr.begin(), gr.end()}}, 4);
    std::vector<Point3> dirs;
    for (const auto& v : ker)
      if (v[3] != 0) {
        dirs.push_back({v[0], v[1], v[2], v[3]});
        break;
      }
    if (dirs.empty()) continue;  // tangent plane equals the plane of the conic
    for (const auto& v : ker) {
      Point3 w{F.add(dirs[0][0], v[0]), F.add(dirs[0][1], v[1]), F.add(dirs[0][2], v[2]), F.add(dirs[0][3], v[3])};
      if (w[3] != 0 && !(w == dirs[0])) {
        dirs.push_back(w);
        break;
      }
    }
    int ni = 0;
    while (gr[ni] == 0) ++ni;
    const Elem c_inv = F.inv(gr[ni]);
    ++samples;
    for (const auto& v : dirs) {
      // gamma = P + eps v + w(eps) e_ni with f(gamma) = 0.
      std::array<Series, 4> gamma;
      for (int i = 0; i < 4; ++i) {
        gamma[i] = R.zero();
        gamma[i][0] = P[i];
        if (precision > 1) gamma[i][1] = v[i];
      }
      for (int iter = 0; iter <= precision; ++iter) {
        const Series phi = R.eval(fn, gamma);
        if (R.valuation(phi) >= precision) break;
        for (int k = 0; k < precision; ++k) gamma[ni][k] = F.sub(gamma[ni][k], F.mul(phi[k], c_inv));
      }
      if (R.valuation(R.eval(fn, gamma)) < precision) throw Error("internal: arc lifting did not converge");
      res.valuations.push_back(R.valuation(R.eval(g, gamma)));
    }
  }
  if (res.valuations.empty()) throw Error("no transverse arc available on the conic");
  const int best = *std::min_element(res.valuations.begin(), res.valuations.end());
  if (best < precision) res.m = best;
  if (res.m && *res.m < 1) throw Error("g does not vanish on the conic");
  return res;
}

// ---------------------------------------------------------------------------

std::vector<ConicOnSurface> conics_on_surface(const MVPoly& f, const std::vector<FibrationReport>& reports) {
  std::vector<ConicOnSurface> out;
  std::set<std::pair<Plane3, std::vector<Point3>>> seen;
  for (const auto& rep : reports) {
    const Field ff = parse_field_spec(rep.fiber_field);
    const auto& F = *ff;
    const Embedding& e = embed(f.field(), ff);
    const MVPoly fF = f.map_field(e);
    const Line3 lF = rep.line.map_field(F, e);
    if (!line_in_surface(fF, lF)) throw Error("report line not on the surface (f must be over the census field)");
    const LineFrame frame = line_frame(lF);
    for (const auto& rec : rep.fibers) {
      if (rec.kodaira != Kodaira::I2 && rec.kodaira != Kodaira::III) continue;
      for (const auto& comp : rec.components) {
        if (comp.degree != 2 || comp.over_extension) continue;
        std::array<Point3, 3> basis{frame.P, frame.Q, {}};
        for (int i = 0; i < 4; ++i) basis[2][i] = F.add(F.mul(rec.s, frame.R[i]), F.mul(rec.t, frame.T[i]));
        Matrix rows{{basis[0].begin(), basis[0].end()}, {basis[1].begin(), basis[1].end()}, {basis[2].begin(), basis[2].end()}};
        const auto ker = kernel(F, rows, 4);
        const Plane3 plane{normalize_point(F, Point3{ker[0][0], ker[0][1], ker[0][2], ker[0][3]})};
        std::vector<Point3> pts;
        for (const auto& z : rational_points(comp.curve)) pts.push_back(normalize_point(F, plane_to_space(F, basis, z)));
        std::sort(pts.begin(), pts.end());
        if (!seen.insert({plane, pts}).second) continue;
        out.push_back(normalize_conic(fF, plane, basis, comp.curve));
      }
    }
  }
  return out;
}

}  // namespace ql
