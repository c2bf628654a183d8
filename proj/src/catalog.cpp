#include "ql/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ql/catalog_data.hpp"
#include "ql/equivalence.hpp"

namespace ql {

using nlohmann::json;

const CatalogEntry& Catalog::get(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return e;
  throw Error("unknown catalog entry: " + name);
}

std::vector<std::string> Catalog::names() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.push_back(e.name);
  return out;
}

Catalog parse_catalog(const json& j) {
  Catalog cat;
  cat.version = j.value("version", 1);
  std::set<std::string> seen;
  for (const auto& je : j.at("entries")) {
    CatalogEntry e;
    e.name = je.at("name").get<std::string>();
    if (!seen.insert(e.name).second) throw Error("duplicate catalog entry: " + e.name);
    e.kind = je.value("kind", "quartic");
    e.field = je.value("field", "");
    e.k = je.value("k", 2u);
    e.quartic = je.value("quartic", "");
    e.description = je.value("description", "");
    e.equivalent_to = je.value("equivalent_to", "");
    e.origin = je.value("origin", "");
    if (e.kind != "quartic" && e.kind != "weierstrass") throw Error(e.name + ": unknown kind " + e.kind);
    if (e.kind == "quartic") {
      const Field F = parse_field_spec(e.field);
      if (unsigned p = je.value("characteristic", F->p()); p != F->p())
        throw Error(e.name + ": characteristic does not match the field");
      entry_quartic(e);
    }
    const json expected = je.value("expected", json::object());
    for (const auto& [name, jf] : expected.items()) {
      if (!jf.is_object() || !jf.contains("value") || !jf.contains("tag"))
        throw Error(e.name + "." + name + ": expected fact needs a value and a tag");
      const auto tag = jf.at("tag").get<std::string>();
      if (tag != "theorem" && tag != "golden") throw Error(e.name + "." + name + ": unrecognized tag " + tag);
      e.expected.push_back({name, jf.at("value"), tag});
    }
    cat.entries.push_back(std::move(e));
  }
  return cat;
}

const Catalog& builtin_catalog() {
  static const Catalog cat = parse_catalog(json::parse(kCatalogJson));
  return cat;
}

Catalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read catalog file " + path);
  try {
    return parse_catalog(json::parse(in));
  } catch (const json::exception& ex) {
    throw Error("malformed catalog file " + path + ": " + ex.what());
  }
}

MVPoly entry_quartic(const CatalogEntry& e) {
  const MVPoly f = MVPoly::parse(parse_field_spec(e.field), 4, e.quartic);
  if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != 4) throw Error(e.name + ": not a quartic form");
  return f;
}

bool EntryResult::clean() const {
  return std::all_of(diff.begin(), diff.end(), [](const FactDiff& d) { return d.match; });
}

json EntryResult::to_json() const {
  json d = json::array();
  for (const auto& x : diff)
    d.push_back({{"fact", x.name}, {"expected", x.expected}, {"actual", x.actual}, {"tag", x.tag}, {"match", x.match}});
  json j = report;
  j["entry"] = name;
  j["facts"] = facts;
  j["diff"] = d;
  j["diff_clean"] = clean();
  return j;
}

// ---------------------------------------------------------------------------

namespace {

template <class T>
json uniform_or_null(const std::vector<T>& v) {
  if (v.empty()) return nullptr;
  for (const auto& x : v)
    if (!(x == v.front())) return nullptr;
  return json(v.front());
}

}  // namespace

json compute_facts(const SurfaceReport& r) {
  json f;
  if (r.smoothness) {
    f["smoothness"] = r.smoothness->verdict;
    f["elimination_certified"] = r.smoothness->elimination_certified;
  }
  f["line_count"] = r.lines.size();
  f["lines_over_base"] = std::count(r.definition_degrees.begin(), r.definition_degrees.end(), 1u);
  f["edge_count"] = r.graph.edges.size();
  json hist = json::object();
  for (const auto& [d, n] : r.graph.degree_histogram) hist[std::to_string(d)] = n;
  f["degree_histogram"] = hist;
  f["max_degree"] = r.graph.degree_histogram.empty() ? 0 : r.graph.degree_histogram.rbegin()->first;

  std::vector<std::map<std::string, int>> type_counts;
  std::vector<int> iv_counts;
  std::map<std::string, int> kinds;
  bool iv_at_census = true, balanced = true, consistent = true, audits = true;
  int missing = 0, contradictions = 0, qe = 0;
  for (std::size_t i = 0; i < r.fibrations.size(); ++i) {
    if (!r.fibrations[i]) {
      ++missing;
      continue;
    }
    const auto& fr = *r.fibrations[i];
    ++kinds[fibration_kind_name(fr.kind)];
    type_counts.push_back(fr.type_counts);
    int iv = 0;
    for (const auto& rec : fr.fibers)
      if (rec.kodaira == Kodaira::IV) {
        ++iv;
        iv_at_census = iv_at_census && rec.census_point;
      }
    iv_counts.push_back(iv);
    contradictions += fr.contradiction;
    consistent = consistent && fr.lines_meeting == static_cast<int>(r.graph.adjacency[i].size());
    if (fr.kind == FibrationKind::quasi_elliptic) {
      ++qe;
      balanced = balanced && fr.euler_balanced;
      audits = audits && r.audits[i] && r.audits[i]->pass;
    }
  }
  if (!r.fibrations.empty() && missing < static_cast<int>(r.fibrations.size())) {
    f["fibration_kinds"] = kinds;
    f["lines_without_fibration"] = missing;
    f["per_line_type_counts"] = uniform_or_null(type_counts);
    f["iv_fibers_per_line"] = uniform_or_null(iv_counts);
    f["iv_fibers_all_at_census_points"] = iv_at_census;
    f["census_fibration_consistent"] = consistent;
    f["quasi_elliptic_contradictions"] = contradictions;
    if (qe) {
      f["euler_balanced_all"] = balanced;
      f["triple_tangency_all_pass"] = audits;
    }
  }
  if (r.verdicts) {
    f["bound_case"] = r.verdicts->case_name;
    f["bounds_all_pass"] = r.verdicts->all_pass();
  }
  if (r.gauss_inseparable) f["gauss_inseparable"] = *r.gauss_inseparable;

  f["conic_count"] = r.conics.size();
  if (!r.conics.empty()) {
    std::set<int> degrees, ms;
    int worst = 0;
    bool all_pass = true, standard_plane = false;
    for (const auto& c : r.conics) {
      degrees.insert(c.g_degree);
      if (c.multiplicity && c.multiplicity->m) ms.insert(*c.multiplicity->m);
      worst = std::max(worst, c.bound.meeting);
      all_pass = all_pass && c.pass();
      const auto& h = c.conic.plane.c;
      standard_plane = standard_plane || (h[0] == 0 && h[1] == 0 && h[2] == 0 && h[3] == 1);
    }
    f["conics_all_pass"] = all_pass;
    f["z_degrees"] = degrees;
    f["z_multiplicities"] = ms;
    f["max_lines_meeting_a_conic"] = worst;
    f["conic_in_plane_x4"] = standard_plane;
  }
  return f;
}

namespace {

json weierstrass_facts(const WeierstrassScan& w) {
  int singular = 0;
  for (const auto& fb : w.fibers) singular += fb.kodaira != Kodaira::smooth;
  return {{"fibers_scanned", w.fibers.size()},
          {"singular_fibers", singular},
          {"all_cuspidal", w.all_cuspidal},
          {"derivative_root_count", w.derivative_roots.size()},
          {"derivative_roots_are_f9", w.roots_are_f9},
          {"total_space_singular_points", w.total_space_singular.size()},
          {"singular_points_over_roots", w.singular_points_over_roots},
          {"quasi_elliptic_certificate", w.quasi_elliptic_certificate}};
}

// Witness carrying `other` onto `e`, re-verified here: the equivalence
// check and the bijection of censuses under the map.
json equivalence_block(const Catalog& cat, const CatalogEntry& e, const SurfaceReport& r, const RunOptions& opt,
                       json& facts) {
  const CatalogEntry& other = cat.get(e.equivalent_to);
  AnalysisOptions ao;
  ao.k = other.k;
  ao.threads = opt.threads;
  ao.cap = opt.cap;
  const SurfaceReport ro = census_report(entry_quartic(other), ao);
  if (!same_field(*ro.census, *r.census)) throw Error("equivalence needs a common census field");
  const auto& F = *r.census;
  const MVPoly f = r.f.map_field(embed(r.base, r.census));
  const MVPoly g = ro.f.map_field(embed(ro.base, ro.census));
  json j{{"target", other.name}};
  const auto search = find_equivalence(f, g, r.lines, ro.lines);
  j["candidates"] = search.candidates;
  j["frame_points"] = {search.frame_points_f, search.frame_points_g};
  bool verified = false, bijection = false;
  if (search.M) {
    json M = json::array();
    for (const auto& row : *search.M) {
      json jr = json::array();
      for (Elem x : row) jr.push_back(F.literal(x));
      M.push_back(jr);
    }
    j["matrix"] = M;
    j["convention"] = "f(M x) = lambda g(x), f this entry, g the target";
    verified = check_equivalence(f, g, *search.M);
    std::set<Line3> image;
    for (const auto& l : ro.lines) {
      const Point3 a = l.row(0), b = l.row(1);
      const auto ma = mat_vec(F, *search.M, {a.begin(), a.end()});
      const auto mb = mat_vec(F, *search.M, {b.begin(), b.end()});
      image.insert(Line3::through(F, {ma[0], ma[1], ma[2], ma[3]}, {mb[0], mb[1], mb[2], mb[3]}));
    }
    bijection = ro.lines.size() == r.lines.size() && image == std::set<Line3>(r.lines.begin(), r.lines.end());
  }
  facts["equivalence_witness_found"] = search.M.has_value();
  facts["equivalence_verified"] = verified;
  facts["equivalence_census_bijection"] = bijection;
  return j;
}

}  // namespace

EntryResult run_entry(const Catalog& cat, const std::string& name, const RunOptions& opt) {
  const CatalogEntry& e = cat.get(name);
  EntryResult res;
  res.name = name;
  if (e.kind == "weierstrass") {
    const auto w = weierstrass_scan(e.k);
    res.report = w.to_json();
    res.facts = weierstrass_facts(w);
  } else {
    AnalysisOptions ao;
    ao.k = e.k;
    ao.threads = opt.threads;
    ao.seed = opt.seed;
    ao.cap = opt.cap;
    const SurfaceReport r = analyze_surface(entry_quartic(e), ao);
    res.report = report_to_json(r);
    res.facts = compute_facts(r);
    if (!e.equivalent_to.empty()) res.report["equivalence"] = equivalence_block(cat, e, r, opt, res.facts);
  }
  for (const auto& x : e.expected) {
    FactDiff d{x.name, x.value, res.facts.contains(x.name) ? res.facts.at(x.name) : json(nullptr), x.tag, false};
    d.match = d.actual == d.expected;
    res.diff.push_back(std::move(d));
  }
  return res;
}

// ---------------------------------------------------------------------------

json WeierstrassScan::to_json() const {
  const auto& F = *field;
  json fibers_j = json::array();
  for (const auto& fb : fibers) {
    json sp = json::array();
    for (const auto& p : fb.singular_points)
      sp.push_back("[" + F.literal(p[0]) + ", " + F.literal(p[1]) + ", " + F.literal(p[2]) + "]");
    fibers_j.push_back({{"t", fb.at_infinity ? "inf" : F.literal(fb.t)}, {"type", kodaira_name(fb.kodaira)}, {"singular_points", sp}});
  }
  json roots = json::array();
  for (Elem r : derivative_roots) roots.push_back(F.literal(r));
  json tsp = json::array();
  for (const auto& p : total_space_singular) tsp.push_back({F.literal(p[0]), F.literal(p[1]), F.literal(p[2])});
  return {{"schema", kReportSchema},
          {"family", "y^2 z = x^3 + (t^10 + t^2) z^3"},
          {"field", F.spec()},
          {"fibers", fibers_j},
          {"derivative_roots", roots},
          {"derivative_roots_are_f9", roots_are_f9},
          {"total_space_singular", tsp},
          {"singular_points_over_roots", singular_points_over_roots},
          {"all_cuspidal", all_cuspidal},
          {"quasi_elliptic_certificate", quasi_elliptic_certificate}};
}

WeierstrassScan weierstrass_scan(unsigned k, unsigned qe_threshold) {
  if (k % 2) throw Error("the scan field must contain F_9 (even k)");
  WeierstrassScan w;
  const Field F3 = make_field(3, 1);
  w.field = extension_field(F3, k);
  const auto& F = *w.field;
  const Field& fld = w.field;
  // t^10 + t^2 and its formal derivative, coefficients low to high.
  std::vector<Elem> a(11, 0);
  a[10] = 1;
  a[2] = 1;
  std::vector<Elem> da(10, 0);
  for (std::size_t i = 1; i < a.size(); ++i) da[i - 1] = F.mul(F.from_int(static_cast<std::int64_t>(i)), a[i]);
  auto horner = [&](const std::vector<Elem>& c, Elem t) {
    Elem v = 0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) v = F.add(F.mul(v, t), *it);
    return v;
  };
  const MVPoly y2z = MVPoly::parse(fld, 3, "x2^2*x3 - x1^3");
  const MVPoly z3 = MVPoly::parse(fld, 3, "x3^3");
  int singular = 0;
  bool cusps = true;
  auto add_fiber = [&](Elem t, bool inf, Elem c) {
    const FiberRecord rec = classify_fiber(y2z - z3.scaled(c));
    WeierstrassFiber fb{t, inf, rec.kodaira, {}};
    for (const auto& sp : rec.singular_points) fb.singular_points.push_back(sp.point);
    singular += rec.kodaira != Kodaira::smooth;
    cusps = cusps && rec.kodaira == Kodaira::II;
    w.fibers.push_back(std::move(fb));
  };
  for (Elem t = 0; t < F.order(); ++t) add_fiber(t, false, horner(a, t));
  // At infinity, t = 1/s and (x, y) scaled by s^4, s^6 give the same family
  // with s^2 + s^10, so the fibre is the one over s = 0.
  add_fiber(0, true, 0);
  w.all_cuspidal = cusps;
  w.quasi_elliptic_certificate = singular >= static_cast<int>(qe_threshold);

  for (Elem t = 0; t < F.order(); ++t)
    if (horner(da, t) == 0) w.derivative_roots.push_back(t);
  const Field F9 = extension_field(F3, 2);
  std::set<Elem> f9;
  const Embedding& e9 = embed(F9, fld);
  for (Elem x = 0; x < F9->order(); ++x) f9.insert(e9(x));
  w.roots_are_f9 = std::set<Elem>(w.derivative_roots.begin(), w.derivative_roots.end()) == f9;

  // Jacobian criterion on y^2 - x^3 - t^10 - t^2 in (x, y, t) = (x1, x2, x3).
  const MVPoly G = MVPoly::parse(fld, 3, "x2^2 - x1^3 - x3^10 - x3^2");
  const std::array<MVPoly, 3> dG{G.partial(0), G.partial(1), G.partial(2)};
  std::set<Elem> over;
  for (Elem t = 0; t < F.order(); ++t)
    for (Elem x = 0; x < F.order(); ++x)
      for (Elem y = 0; y < F.order(); ++y) {
        const std::array<Elem, 3> pt{x, y, t};
        if (G.eval(pt) || dG[0].eval(pt) || dG[1].eval(pt) || dG[2].eval(pt)) continue;
        w.total_space_singular.push_back(pt);
        over.insert(t);
      }
  w.singular_points_over_roots = over == std::set<Elem>(w.derivative_roots.begin(), w.derivative_roots.end());
  return w;
}

// ---------------------------------------------------------------------------

MVPoly random_form(const Field& F, int degree, std::mt19937_64& rng, bool plane_only) {
  MVPoly p(F, 4);
  for (int a = 0; a <= degree; ++a)
    for (int b = 0; a + b <= degree; ++b)
      for (int c = 0; a + b + c <= degree; ++c) {
        const int d = degree - a - b - c;
        if (plane_only && d) continue;
        const Elem v = static_cast<Elem>(rng() % F->order());
        if (v)
          p += MVPoly::monomial(F, 4, Exponents{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
                                                static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)}, v);
      }
  return p;
}

namespace {

bool certified_smooth(const MVPoly& f) { return certify_smooth(f).verdict == "smooth"; }

MVPoly line_pencil_form(const Field& F, std::mt19937_64& rng) {
  const MVPoly A = random_form(F, 3, rng);
  const MVPoly B = random_form(F, 3, rng);
  return MVPoly::variable(F, 4, 2) * A + MVPoly::variable(F, 4, 3) * B;
}

}  // namespace

FixtureSearch search_conic_fixture(std::uint64_t seed, int iterations) {
  const Field F3 = make_field(3, 1);
  const Field F9 = extension_field(F3, 2);
  std::mt19937_64 rng(seed);
  const MVPoly Q0 = MVPoly::parse(F3, 4, "x1*x2 - x3^2");
  const MVPoly x4 = MVPoly::variable(F3, 4, 3);
  const std::array<Point3, 3> basis{Point3{1, 0, 0, 0}, Point3{0, 1, 0, 0}, Point3{0, 0, 1, 0}};
  FixtureSearch out;
  int best = -1;
  for (int it = 0; it < iterations; ++it) {
    const MVPoly c2 = random_form(F3, 2, rng, true);
    const MVPoly c3 = random_form(F3, 3, rng);
    const MVPoly f = Q0 * c2 + x4 * c3;
    if (f.is_zero() || !f.is_homogeneous()) continue;
    const auto lines = find_lines(f, 2);
    const auto c = normalize_conic(f.map_field(embed(F3, F9)), Plane3{{0, 0, 0, 1}}, basis,
                                   MVPoly::parse(F9, 3, "x1*x2 - x3^2"));
    const auto rep = conic_line_bound(c, lines, embed(F9, F9));
    const int score = rep.in_plane == 2 ? rep.meeting_excluding : -1;
    if (score <= best || !certified_smooth(f)) continue;
    best = score;
    out.f = f;
    out.iteration = it;
    out.summary = std::to_string(lines.size()) + " lines, " + std::to_string(score) + " meeting the conic outside its plane";
  }
  return out;
}

FixtureSearch search_line_fixture(unsigned p, std::uint64_t seed, int iterations, std::size_t min_lines,
                                  const std::string& bound_case) {
  const Field F = make_field(p, 1);
  const Field Fk = extension_field(F, 2);
  std::mt19937_64 rng(seed);
  FixtureSearch out;
  for (int it = 0; it < iterations; ++it) {
    const MVPoly f = line_pencil_form(F, rng);
    if (f.is_zero()) continue;
    const auto lines = find_lines(f, 2);
    if (lines.size() < min_lines || !certified_smooth(f)) continue;
    const MVPoly fk = f.map_field(embed(F, Fk));
    const auto graph = incidence_graph(*Fk, lines);
    const auto v = verify_line_bounds(p, lines, graph, split_planes(fk, lines, graph), {}, *Fk);
    if (!bound_case.empty() && v.case_name != bound_case) continue;
    out.f = f;
    out.iteration = it;
    out.summary = std::to_string(lines.size()) + " lines, case " + v.case_name;
    return out;
  }
  return out;
}

FixtureSearch search_elliptic_fixture(std::uint64_t seed, int iterations, std::size_t min_lines) {
  const Field F3 = make_field(3, 1);
  const Field F9 = extension_field(F3, 2);
  const Line3 l = Line3::through(*F9, {1, 0, 0, 0}, {0, 1, 0, 0});
  std::mt19937_64 rng(seed);
  FixtureSearch out;
  for (int it = 0; it < iterations; ++it) {
    const MVPoly f = line_pencil_form(F3, rng);
    if (f.is_zero()) continue;
    const auto lines = find_lines(f, 2);
    if (lines.size() < min_lines || !certified_smooth(f)) continue;
    const auto rep = classify_fibration(f.map_field(embed(F3, F9)), l);
    if (rep.kind != FibrationKind::elliptic) continue;
    out.f = f;
    out.iteration = it;
    out.summary = std::to_string(lines.size()) + " lines, line x3=x4=0 elliptic with " +
                  std::to_string(rep.singular_fibers) + " singular fibres";
    return out;
  }
  return out;
}

}  // namespace ql
