#include "ql/pencil.hpp"

#include <algorithm>
#include <set>

#include "ql/elimination.hpp"
#include "ql/parallel.hpp"
#include "ql/upoly.hpp"

namespace ql {

namespace {

void require_quartic(const MVPoly& f) {
  if (f.nvars() != 4 || f.is_zero() || f.total_degree() != 4 || !f.is_homogeneous())
    throw Error("expected a nonzero homogeneous quartic in x1..x4");
}

bool all_zero(const std::vector<Elem>& v) {
  return std::all_of(v.begin(), v.end(), [](Elem e) { return e == 0; });
}

}  // namespace

// ---------------------------------------------------------------------------
// Smoothness.

SmoothnessCertificate certify_smooth(const MVPoly& f, const SmoothnessOptions& opt) {
  require_quartic(f);
  SmoothnessCertificate cert;
  std::vector<MVPoly> system{f};
  for (int i = 0; i < 4; ++i) system.push_back(f.partial(i));

  for (unsigned k = 1; k <= opt.scan_depth; ++k) {
    const Field ext = extension_field(f.field(), k);
    ext->require_enumerable(opt.cap);
    const auto& F = *ext;
    const Embedding& e = embed(f.field(), ext);
    std::vector<MVPoly> sys;
    for (const auto& p : system) sys.push_back(p.map_field(e));
    const Elem q = F.order();
    auto check = [&](const Point3& pt) {
      for (const auto& p : sys)
        if (p.eval(pt) != 0) return false;
      return true;
    };
    std::optional<Point3> hit;
    for (int lead = 0; lead < 4 && !hit; ++lead) {
      const int free = 3 - lead;
      std::uint64_t count = 1;
      for (int i = 0; i < free; ++i) count *= q;
      for (std::uint64_t idx = 0; idx < count && !hit; ++idx) {
        Point3 pt{0, 0, 0, 0};
        pt[lead] = 1;
        std::uint64_t r = idx;
        for (int c = lead + 1; c < 4; ++c) {
          pt[c] = static_cast<Elem>(r % q);
          r /= q;
        }
        if (check(pt)) hit = pt;
      }
    }
    cert.scanned_degrees.push_back(k);
    if (hit) {
      cert.verdict = "singular";
      cert.witness = hit;
      cert.witness_field = F.spec();
      return cert;
    }
  }

  const auto outcome = no_common_zero(system, opt.attempts, opt.seed);
  cert.elimination_certified = outcome.certified;
  cert.elimination_attempts = outcome.attempts;
  cert.elimination_field = outcome.field;
  cert.verdict = outcome.certified ? "smooth" : "smooth-up-to-scan-depth";
  return cert;
}

QuarticSurface::QuarticSurface(MVPoly poly) : f(std::move(poly)) { require_quartic(f); }

// ---------------------------------------------------------------------------
// Census and incidence.

std::vector<Line3> find_lines(const MVPoly& f, unsigned k, unsigned threads, std::uint64_t cap) {
  require_quartic(f);
  if (k == 0) throw Error("extension degree must be positive");
  const Field census = extension_field(f.field(), k);
  return lines_on_surface(f.map_field(embed(f.field(), census)), threads, cap);
}

unsigned definition_degree(const FieldCtx& census, const FieldCtx& base, const Line3& l) {
  if (census.p() != base.p() || census.n() % base.n() != 0) throw Error("incompatible fields");
  const unsigned k = census.n() / base.n();
  for (unsigned j = 1; j <= k; ++j) {
    if (k % j) continue;
    Line3 image = l;
    for (unsigned r = 0; r < base.n() * j; ++r) image = image.frobenius(census);
    if (image == l) return j;
  }
  return k;
}

IncidenceGraph incidence_graph(const FieldCtx& F, const std::vector<Line3>& lines) {
  IncidenceGraph g;
  const int n = static_cast<int>(lines.size());
  g.adjacency.assign(n, {});
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (lines_meet(F, lines[i], lines[j])) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
        g.edges.emplace_back(i, j);
      }
  for (auto& adj : g.adjacency) std::sort(adj.begin(), adj.end());
  for (const auto& adj : g.adjacency) ++g.degree_histogram[static_cast<int>(adj.size())];
  return g;
}

// ---------------------------------------------------------------------------
// Fibre types.

std::string kodaira_name(Kodaira k) {
  switch (k) {
    case Kodaira::smooth: return "smooth";
    case Kodaira::I1: return "I1";
    case Kodaira::I2: return "I2";
    case Kodaira::I3: return "I3";
    case Kodaira::II: return "II";
    case Kodaira::III: return "III";
    case Kodaira::IV: return "IV";
    case Kodaira::unclassified: return "unclassified";
  }
  return "unclassified";
}

int quasi_elliptic_contribution(Kodaira k) {
  switch (k) {
    case Kodaira::II: return 0;
    case Kodaira::III: return 1;
    case Kodaira::IV: return 2;
    default: throw Error("fibre type " + kodaira_name(k) + " on a quasi-elliptic fibration");
  }
}

int minimal_euler_contribution(Kodaira k) {
  switch (k) {
    case Kodaira::smooth: return 0;
    case Kodaira::I1: return 1;
    case Kodaira::I2: return 2;
    case Kodaira::I3: return 3;
    case Kodaira::II: return 2;
    case Kodaira::III: return 3;
    case Kodaira::IV: return 4;
    case Kodaira::unclassified: break;
  }
  throw Error("unclassified fibre has no Euler contribution");
}

namespace {

std::array<Elem, 3> line_coeffs(const MVPoly& form) {
  std::array<Elem, 3> c{};
  for (int v = 0; v < 3; ++v) {
    Exponents e{0, 0, 0, 0};
    e[v] = 1;
    c[v] = form.coefficient(e);
  }
  return c;
}

bool concurrent(const FieldCtx& F, const std::array<std::array<Elem, 3>, 3>& l) {
  Matrix m{{l[0].begin(), l[0].end()}, {l[1].begin(), l[1].end()}, {l[2].begin(), l[2].end()}};
  return determinant(F, m) == 0;
}

PlanePoint meet(const FieldCtx& F, const std::array<Elem, 3>& a, const std::array<Elem, 3>& b) {
  return line_through(F, a, b);  // the cross product is symmetric in points and lines
}

void classify_three_lines(const FieldCtx& F, const std::array<std::array<Elem, 3>, 3>& l, FiberRecord& rec,
                          bool record_points) {
  if (concurrent(F, l)) {
    rec.kodaira = Kodaira::IV;
    if (record_points) rec.singular_points.push_back({meet(F, l[0], l[1]), "triple"});
  } else {
    rec.kodaira = Kodaira::I3;
    if (record_points)
      for (int i = 0; i < 3; ++i)
        rec.singular_points.push_back({meet(F, l[i], l[(i + 1) % 3]), "crossing"});
  }
}

}  // namespace

FiberRecord classify_fiber(const MVPoly& cubic) {
  if (cubic.nvars() != 3 || cubic.is_zero() || cubic.total_degree() != 3 || !cubic.is_homogeneous())
    throw Error("classify_fiber expects a nonzero ternary cubic");
  const auto& F = cubic.ctx();
  FiberRecord rec;
  rec.cubic = cubic;
  const auto fac = linear_factors(cubic);
  for (const auto& lf : fac.lines) rec.components.push_back({lf.form, 1, lf.multiplicity, false});
  if (fac.residual.total_degree() > 0) rec.components.push_back({fac.residual, fac.residual.total_degree(), 1, false});
  for (const auto& lf : fac.lines)
    if (lf.multiplicity > 1) return rec;  // non-reduced: not in the table

  if (fac.lines.size() == 3) {
    classify_three_lines(F, {line_coeffs(fac.lines[0].form), line_coeffs(fac.lines[1].form),
                             line_coeffs(fac.lines[2].form)},
                         rec, true);
    return rec;
  }

  if (fac.lines.size() == 1) {
    const MVPoly& conic = fac.residual;
    const auto lc = line_coeffs(fac.lines[0].form);
    if (conic_is_irreducible(conic)) {
      const auto pts = points_on_line(F, lc);
      const auto form = conic.restrict_to_line(pts[0], pts[1]);
      if (all_zero(form)) return rec;
      const bool tangent = binary_quadratic_is_square(F, form[0], form[1], form[2]);
      rec.kodaira = tangent ? Kodaira::III : Kodaira::I2;
      for (const auto& r : upoly::binary_roots(F, form, 2)) {
        PlanePoint p{};
        for (int i = 0; i < 3; ++i) p[i] = F.add(F.mul(r.s, pts[0][i]), F.mul(r.t, pts[1][i]));
        rec.singular_points.push_back({normalize_point(F, p), tangent ? "tangency" : "crossing"});
      }
      return rec;
    }
    // The conic is a pair of lines conjugate over the quadratic extension.
    const Field big = extension_field(cubic.field(), 2);
    const Embedding& e = embed(cubic.field(), big);
    const auto split = linear_factors(conic.map_field(e));
    rec.components.pop_back();
    for (const auto& lf : split.lines) rec.components.push_back({lf.form, 1, lf.multiplicity, true});
    if (split.lines.size() != 2 || split.lines[0].multiplicity != 1 || split.lines[1].multiplicity != 1) return rec;
    const std::array<Elem, 3> lc_big{e(lc[0]), e(lc[1]), e(lc[2])};
    classify_three_lines(*big, {lc_big, line_coeffs(split.lines[0].form), line_coeffs(split.lines[1].form)}, rec,
                         false);
    if (rec.kodaira == Kodaira::IV) {
      // The centre lies on the rational line and is Galois invariant.
      const PlanePoint c = meet(*big, line_coeffs(split.lines[0].form), line_coeffs(split.lines[1].form));
      PlanePoint small{};
      bool ok = true;
      for (int i = 0; i < 3; ++i) {
        auto v = e.preimage(c[i]);
        ok = ok && v.has_value();
        if (v) small[i] = *v;
      }
      if (ok) rec.singular_points.push_back({small, "triple"});
    }
    return rec;
  }

  if (!fac.lines.empty()) return rec;

  // No line over the field.  A singular irreducible cubic has its unique
  // singular point over the field; three lines permuted by Frobenius either
  // meet in a rational point or carry no rational point at all.  A smooth
  // cubic always has a rational point.
  const auto pts = rational_points(cubic);
  if (pts.empty()) {
    rec.kodaira = Kodaira::I3;
    return rec;
  }
  std::vector<PlanePoint> sing;
  for (const auto& p : pts)
    if (is_singular_at(cubic, p)) sing.push_back(p);
  if (sing.empty()) {
    rec.kodaira = Kodaira::smooth;
    return rec;
  }
  if (sing.size() > 1) return rec;
  const auto jet = second_order_jet(cubic, sing[0]);
  if (jet[0] == 0 && jet[1] == 0 && jet[2] == 0) {
    rec.kodaira = Kodaira::IV;
    rec.singular_points.push_back({sing[0], "triple"});
  } else if (binary_quadratic_is_square(F, jet[0], jet[1], jet[2])) {
    rec.kodaira = Kodaira::II;
    rec.singular_points.push_back({sing[0], "cusp"});
  } else {
    rec.kodaira = Kodaira::I1;
    rec.singular_points.push_back({sing[0], "node"});
  }
  return rec;
}

// ---------------------------------------------------------------------------
// Pencil of a line.

LineFrame line_frame(const Line3& l) {
  LineFrame fr;
  fr.line = l;
  fr.P = l.row(0);
  fr.Q = l.row(1);
  const auto piv = l.pivots();
  std::vector<int> rest;
  for (int c = 0; c < 4; ++c)
    if (c != piv[0] && c != piv[1]) rest.push_back(c);
  fr.R = {0, 0, 0, 0};
  fr.T = {0, 0, 0, 0};
  fr.R[rest[0]] = 1;
  fr.T[rest[1]] = 1;
  return fr;
}

Point3 LineFrame::to_space(const FieldCtx& F, Elem s, Elem t, const PlanePoint& y) const {
  Point3 x{};
  for (int i = 0; i < 4; ++i) {
    Elem v = F.add(F.mul(y[0], P[i]), F.mul(y[1], Q[i]));
    v = F.add(v, F.mul(y[2], F.add(F.mul(s, R[i]), F.mul(t, T[i]))));
    x[i] = v;
  }
  return x;
}

namespace {

// f in frame coordinates, with each term remembered so that residual cubics
// for many (s:t) are cheap.
class ResidualPencil {
 public:
  ResidualPencil(const MVPoly& f, const Line3& l) : field_(f.field()), frame_(line_frame(l)) {
    const auto& F = f.ctx();
    std::vector<MVPoly> images;
    for (int i = 0; i < 4; ++i)
      images.push_back(MVPoly::linear_form(field_, std::array<Elem, 4>{frame_.P[i], frame_.Q[i], frame_.R[i], frame_.T[i]}));
    const MVPoly g = f.substitute(images);
    for (const auto& term : g.terms()) {
      const auto e = unpack(term.key);
      if (e[2] + e[3] == 0) throw Error("line does not lie on the surface");
      terms_.push_back({e, term.coeff});
    }
    (void)F;
  }

  MVPoly at(Elem s, Elem t) const {
    const auto& F = *field_;
    MVPoly c(field_, 3);
    for (const auto& [e, coeff] : terms_) {
      const Elem w = F.mul(coeff, F.mul(F.pow(s, e[2]), F.pow(t, e[3])));
      if (w == 0) continue;
      Exponents ce{e[0], e[1], static_cast<std::uint8_t>(e[2] + e[3] - 1), 0};
      c += MVPoly::monomial(field_, 3, ce, w);
    }
    return c;
  }

  const LineFrame& frame() const { return frame_; }

 private:
  Field field_;
  LineFrame frame_;
  std::vector<std::pair<Exponents, Elem>> terms_;
};

}  // namespace

MVPoly residual_cubic(const MVPoly& f, const Line3& l, Elem s, Elem t) {
  require_quartic(f);
  if (s == 0 && t == 0) throw Error("(0:0) is not a point of P^1");
  return ResidualPencil(f, l).at(s, t);
}

std::string fibration_kind_name(FibrationKind k) {
  switch (k) {
    case FibrationKind::elliptic: return "elliptic";
    case FibrationKind::quasi_elliptic: return "quasi-elliptic";
    case FibrationKind::deferred: return "deferred";
  }
  return "deferred";
}

FibrationReport classify_fibration(const MVPoly& f, const Line3& l, const FibrationOptions& opt) {
  require_quartic(f);
  if (!line_in_surface(f, l)) throw Error("line does not lie on the surface");
  const Field& census = f.field();
  const Field fiber_field = extension_with_order(census, std::max(1u, opt.qe_threshold) - 1);
  const auto& FF = *fiber_field;
  const Embedding& e = embed(census, fiber_field);
  const Line3 lf = l.map_field(FF, e);
  const ResidualPencil pencil(f.map_field(e), lf);

  FibrationReport rep;
  rep.line = l;
  rep.fiber_field = FF.spec();
  std::vector<std::pair<Elem, Elem>> base;
  for (Elem t = 0; t < FF.order(); ++t) base.emplace_back(1, t);
  base.emplace_back(0, 1);
  rep.fibers.resize(base.size());

  parallel_for(base.size(), opt.threads, [&](std::size_t i) {
    const auto [s, t] = base[i];
    FiberRecord rec = classify_fiber(pencil.at(s, t));
    rec.s = s;
    rec.t = t;
    rec.census_point = e.preimage(s).has_value() && e.preimage(t).has_value();
    for (const auto& comp : rec.components) {
      if (comp.degree != 1 || comp.over_extension) continue;
      const auto pts = points_on_line(FF, line_coeffs(comp.curve));
      const Line3 space = Line3::through(FF, pencil.frame().to_space(FF, s, t, pts[0]),
                                         pencil.frame().to_space(FF, s, t, pts[1]));
      if (auto small = space.pull_back(*census, e)) rec.census_lines.push_back(*small);
    }
    rep.fibers[i] = std::move(rec);
  });

  bool any_smooth = false;
  for (const auto& rec : rep.fibers) {
    if (rec.kodaira == Kodaira::unclassified)
      throw Error("fibre outside the table of singular fibres (surface not smooth along the line?)");
    ++rep.type_counts[kodaira_name(rec.kodaira)];
    if (rec.kodaira == Kodaira::smooth) any_smooth = true;
    else ++rep.singular_fibers;
    rep.lines_meeting += static_cast<int>(rec.census_lines.size());
  }

  if (rep.singular_fibers >= static_cast<int>(opt.qe_threshold)) {
    rep.kind = FibrationKind::quasi_elliptic;
    rep.contradiction = any_smooth;
    rep.euler_sum = 4;
    for (const auto& rec : rep.fibers) {
      if (rec.kodaira == Kodaira::smooth) continue;
      if (rec.kodaira != Kodaira::II && rec.kodaira != Kodaira::III && rec.kodaira != Kodaira::IV) {
        rep.notes.push_back("fibre type " + kodaira_name(rec.kodaira) + " on a quasi-elliptic fibration");
        rep.contradiction = true;
        continue;
      }
      rep.euler_sum += quasi_elliptic_contribution(rec.kodaira);
    }
    rep.euler_balanced = rep.euler_sum == 24;
    if (rep.euler_sum < 24) rep.notes.push_back("some reducible fibres lie over points outside the scanned field");
  } else if (any_smooth) {
    rep.kind = FibrationKind::elliptic;
    for (const auto& rec : rep.fibers) rep.euler_sum += minimal_euler_contribution(rec.kodaira);
    rep.euler_balanced = rep.euler_sum <= 24;
  } else {
    rep.kind = FibrationKind::deferred;
    rep.notes.push_back("every scanned fibre is singular but fewer than the threshold; scan a larger field");
  }
  return rep;
}

TangencyAudit triple_tangency_audit(const FibrationReport& report) {
  if (report.kind != FibrationKind::quasi_elliptic) throw Error("triple tangency audit needs a quasi-elliptic fibration");
  TangencyAudit audit;
  audit.line = report.line;
  audit.pass = true;
  for (const auto& rec : report.fibers) {
    TangencyAuditEntry entry;
    entry.s = rec.s;
    entry.t = rec.t;
    entry.census_point = rec.census_point;
    const auto& F = rec.cubic.ctx();
    const PlanePoint a{1, 0, 0}, b{0, 1, 0};
    const auto form = rec.cubic.restrict_to_line(a, b);
    if (!all_zero(form)) {
      const auto roots = upoly::binary_roots(F, form, 3);
      entry.single_point = roots.size() == 1;
      int best = 0;
      for (const auto& r : roots) best = std::max(best, r.multiplicity);
      entry.contact = best;
      if (entry.single_point) {
        const PlanePoint p{roots[0].s, roots[0].t, 0};
        entry.at_singular_point = is_singular_at(rec.cubic, p);
      }
    }
    entry.pass = entry.single_point && entry.contact == 3 && entry.at_singular_point;
    audit.pass = audit.pass && entry.pass;
    audit.entries.push_back(entry);
  }
  return audit;
}

bool gauss_inseparability_probe(const MVPoly& f) {
  require_quartic(f);
  for (int i = 0; i < 4; ++i)
    if (!f.partial(i).is_pth_power()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Bounds.

std::vector<PlaneSection> split_planes(const MVPoly& f, const std::vector<Line3>& lines, const IncidenceGraph& graph) {
  const auto& F = f.ctx();
  std::set<Plane3> seen;
  std::vector<PlaneSection> out;
  for (const auto& [i, j] : graph.edges) {
    const Plane3 h = plane_through(F, lines[i], lines[j]);
    if (!seen.insert(h).second) continue;
    PlaneSection sec;
    sec.plane = h;
    Matrix m{{h.c.begin(), h.c.end()}};
    const auto ker = kernel(F, m, 4);
    for (int k = 0; k < 3; ++k) sec.basis[k] = {ker[k][0], ker[k][1], ker[k][2], ker[k][3]};
    for (int idx = 0; idx < static_cast<int>(lines.size()); ++idx)
      if (line_in_plane(F, lines[idx], h)) sec.lines.push_back(idx);
    std::vector<MVPoly> images;
    for (int c = 0; c < 4; ++c)
      images.push_back(MVPoly::linear_form(f.field(), std::array<Elem, 3>{sec.basis[0][c], sec.basis[1][c], sec.basis[2][c]}));
    const MVPoly section = f.substitute(images);
    if (section.is_zero()) {
      // the whole plane lies on a (necessarily singular) surface
      sec.kind = "contained";
      out.push_back(std::move(sec));
      continue;
    }
    const auto fac = linear_factors(section);
    bool reduced = true;
    for (const auto& lf : fac.lines) reduced = reduced && lf.multiplicity == 1;
    sec.kind = "other";
    if (reduced && fac.lines.size() == 4) sec.kind = "four_lines";
    else if (reduced && fac.lines.size() == 2 && fac.residual.total_degree() == 2 && conic_is_irreducible(fac.residual)) {
      sec.kind = "two_lines_conic";
      sec.conic = fac.residual;
    }
    out.push_back(std::move(sec));
  }
  std::sort(out.begin(), out.end(), [](const PlaneSection& a, const PlaneSection& b) { return a.plane < b.plane; });
  return out;
}

std::vector<int> lines_meeting_conic(const FieldCtx& F, const std::vector<Line3>& lines, const PlaneSection& sec) {
  if (!sec.conic) throw Error("plane section has no conic");
  // Plane coordinates of a point: the basis vectors are unit vectors on the
  // non-pivot columns of the plane equation.
  std::array<int, 3> cols{};
  for (int k = 0; k < 3; ++k) {
    int c = 0;
    while (!(sec.basis[k][c] == 1 && [&] {
      for (int o = 0; o < 3; ++o)
        if (o != k && sec.basis[o][c] != 0) return false;
      return true;
    }()))
      ++c;
    cols[k] = c;
  }
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(lines.size()); ++i) {
    if (line_in_plane(F, lines[i], sec.plane)) continue;
    const Point3 r = line_plane_intersection(F, lines[i], sec.plane);
    const PlanePoint z{r[cols[0]], r[cols[1]], r[cols[2]]};
    if (sec.conic->eval(z) == 0) out.push_back(i);
  }
  return out;
}

bool BoundVerdicts::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

BoundVerdicts verify_line_bounds(unsigned characteristic, const std::vector<Line3>& lines, const IncidenceGraph& graph,
                                 const std::vector<PlaneSection>& planes,
                                 const std::vector<std::optional<FibrationKind>>& kinds, const FieldCtx& census) {
  BoundVerdicts v;
  const long total = static_cast<long>(lines.size());
  long max_degree = 0;
  for (const auto& adj : graph.adjacency) max_degree = std::max<long>(max_degree, static_cast<long>(adj.size()));
  auto add = [&](std::string name, long observed, long bound) {
    v.checks.push_back({std::move(name), observed, bound, observed <= bound});
  };

  bool four = false, conic = false;
  for (const auto& p : planes) {
    four = four || p.kind == "four_lines";
    conic = conic || p.kind == "two_lines_conic";
  }
  if (lines.empty()) v.case_name = "no_lines";
  else if (graph.edges.empty()) v.case_name = "all_skew";
  else if (four) v.case_name = "four_lines";
  else if (conic) v.case_name = "two_lines_conic";
  else v.case_name = "other";

  if (v.case_name == "all_skew") add("all_skew_total", total, 21);

  // Lines meeting an irreducible conic that is residual to two lines.
  long worst_conic = 0;
  for (const auto& p : planes) {
    if (p.kind != "two_lines_conic") continue;
    worst_conic = std::max<long>(worst_conic, static_cast<long>(lines_meeting_conic(census, lines, p).size()));
  }
  if (conic) {
    add("plane_conic_meeting_lines", worst_conic, 48);
    add("plane_conic_meeting_lines_refined", worst_conic, 44);
  }

  if (characteristic == 3) {
    add("total_lines", total, 112);
    add("max_lines_meeting_a_line", max_degree, 30);
    long worst_elliptic = -1;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (i < kinds.size() && kinds[i] == FibrationKind::elliptic)
        worst_elliptic = std::max<long>(worst_elliptic, static_cast<long>(graph.adjacency[i].size()));
    if (worst_elliptic >= 0) add("max_lines_meeting_an_elliptic_line", worst_elliptic, 24);
    if (v.case_name == "four_lines") add("four_line_hyperplane_total", total, 4 + 4 * (30 - 3));
    if (v.case_name == "two_lines_conic") {
      add("max_lines_meeting_a_line_without_four_line_hyperplane", max_degree, 12);
      add("two_lines_conic_total", total, 70);
    }
  } else if (characteristic == 2) {
    add("total_lines", total, 84);
    add("max_lines_meeting_a_line", max_degree, 20);
    if (v.case_name == "four_lines") add("four_line_hyperplane_total", total, 4 + 4 * (20 - 3));
    if (v.case_name == "two_lines_conic") add("two_lines_conic_total", total, 2 + 2 * (20 - 1) + 44);
  }
  return v;
}

}  // namespace ql
