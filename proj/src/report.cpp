#include "ql/report.hpp"

#include <algorithm>
#include <sstream>

#include "ql/parallel.hpp"

namespace ql {

using nlohmann::json;

bool ConicAnalysis::pass() const {
  return error.empty() && g_degree == 16 && divisibility && !divisibility->divisible && containment_failures == 0 &&
         bound.pass();
}

int SurfaceReport::line_index(const Line3& l) const {
  auto it = std::lower_bound(lines.begin(), lines.end(), l);
  return it != lines.end() && *it == l ? static_cast<int>(it - lines.begin()) : -1;
}

std::optional<BoundCheck> census_total_bound(unsigned characteristic, std::size_t count) {
  const long n = static_cast<long>(count);
  if (characteristic == 3) return BoundCheck{"total_lines", n, 112, n <= 112};
  if (characteristic == 2) return BoundCheck{"total_lines", n, 84, n <= 84};
  return std::nullopt;
}

namespace {

void census_stage(SurfaceReport& r, const AnalysisOptions& opt) {
  r.census = extension_field(r.base, opt.k);
  if (opt.census) {
    r.lines = *opt.census;
    std::sort(r.lines.begin(), r.lines.end());
    r.lines.erase(std::unique(r.lines.begin(), r.lines.end()), r.lines.end());
  } else {
    r.lines = find_lines(r.f, opt.k, opt.threads, opt.cap);
  }
  for (const auto& l : r.lines) r.definition_degrees.push_back(definition_degree(*r.census, *r.base, l));
  r.graph = incidence_graph(*r.census, r.lines);
}

ConicAnalysis analyze_conic(const ConicOnSurface& c, const SurfaceReport& r, bool with_m) {
  ConicAnalysis a;
  a.conic = c;
  const auto& F = *c.field;
  const Embedding& e = embed(r.census, c.field);
  try {
    const auto fam = families_along_conic(c.normalized);
    a.g = z_polynomial(fam);
    a.g_degree = a.g.total_degree();
    a.divisibility = z_divisibility(c.normalized, a.g);
    for (const auto& l : r.lines) {
      const Line3 w = to_normalized(c, l, e);
      if (!line_meets_standard_conic(F, w)) continue;
      ++a.containment_checked;
      const auto restricted = a.g.restrict_to_line(w.row(0), w.row(1));
      if (std::any_of(restricted.begin(), restricted.end(), [](Elem x) { return x != 0; })) ++a.containment_failures;
    }
    if (with_m) a.multiplicity = multiplicity_along_conic(c.normalized, a.g);
  } catch (const Error& ex) {
    a.error = ex.what();
  }
  std::optional<int> m;
  if (a.multiplicity) m = a.multiplicity->m;
  a.bound = conic_line_bound(c, r.lines, e, m);
  return a;
}

}  // namespace

SurfaceReport census_report(const MVPoly& f, const AnalysisOptions& opt) {
  SurfaceReport r;
  r.base = f.field();
  r.k = opt.k;
  r.f = f;
  census_stage(r, opt);
  return r;
}

SurfaceReport analyze_surface(const MVPoly& f, const AnalysisOptions& opt) {
  SurfaceReport r;
  r.base = f.field();
  r.k = opt.k;
  r.f = f;
  const unsigned p = r.base->p();
  if (opt.smoothness) {
    SmoothnessOptions so;
    so.scan_depth = opt.scan_depth;
    so.attempts = opt.attempts;
    so.seed = opt.seed;
    so.cap = opt.cap;
    r.smoothness = certify_smooth(f, so);
  }
  census_stage(r, opt);
  const MVPoly fc = f.map_field(embed(r.base, r.census));
  if (opt.gauss_probe) r.gauss_inseparable = gauss_inseparability_probe(f);

  const bool singular = r.smoothness && r.smoothness->verdict == "singular";
  r.fibrations.resize(r.lines.size());
  r.audits.resize(r.lines.size());
  if (opt.fibrations && singular) r.notes.push_back("surface is singular: fibrations skipped");
  if (opt.fibrations && !singular) {
    std::vector<std::string> errors(r.lines.size());
    FibrationOptions fo;
    fo.qe_threshold = opt.qe_threshold;
    parallel_for(r.lines.size(), opt.threads, [&](std::size_t i) {
      try {
        r.fibrations[i] = classify_fibration(fc, r.lines[i], fo);
        if (opt.audits && r.fibrations[i]->kind == FibrationKind::quasi_elliptic)
          r.audits[i] = triple_tangency_audit(*r.fibrations[i]);
      } catch (const Error& ex) {
        errors[i] = ex.what();
      }
    });
    for (std::size_t i = 0; i < errors.size(); ++i)
      if (!errors[i].empty()) r.notes.push_back("line " + std::to_string(i) + ": " + errors[i]);
  }

  r.planes = split_planes(fc, r.lines, r.graph);
  std::vector<std::optional<FibrationKind>> kinds;
  for (const auto& fr : r.fibrations) kinds.push_back(fr ? std::optional<FibrationKind>(fr->kind) : std::nullopt);
  r.verdicts = verify_line_bounds(p, r.lines, r.graph, r.planes, kinds, *r.census);

  if (opt.zsurfaces && !singular) {
    std::vector<FibrationReport> reps;
    for (const auto& fr : r.fibrations)
      if (fr) reps.push_back(*fr);
    try {
      const auto conics = conics_on_surface(fc, reps);
      r.conics.resize(conics.size());
      parallel_for(conics.size(), opt.threads,
                   [&](std::size_t i) { r.conics[i] = analyze_conic(conics[i], r, opt.multiplicity); });
    } catch (const Error& ex) {
      r.notes.push_back(std::string("conic harvest failed: ") + ex.what());
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string plane_to_string(const FieldCtx& F, const Plane3& h) { return point_to_string(F, h.c); }

json checks_to_json(const std::vector<BoundCheck>& checks) {
  json a = json::array();
  for (const auto& c : checks) a.push_back({{"name", c.name}, {"observed", c.observed}, {"bound", c.bound}, {"pass", c.pass}});
  return a;
}

json conic_to_json(const ConicAnalysis& c) {
  const auto& F = *c.conic.field;
  json j;
  j["field"] = F.spec();
  j["plane"] = plane_to_string(F, c.conic.plane);
  json basis = json::array();
  for (const auto& b : c.conic.basis) basis.push_back(point_to_string(F, b));
  j["basis"] = basis;
  j["conic"] = c.conic.conic.to_string();
  json M = json::array();
  for (const auto& row : c.conic.M) {
    json jr = json::array();
    for (Elem x : row) jr.push_back(F.literal(x));
    M.push_back(jr);
  }
  j["normalizing_matrix"] = M;
  j["g_degree"] = c.g_degree;
  j["g"] = c.g.nvars() ? c.g.to_string() : "";
  if (c.divisibility) {
    j["f_divides_g"] = c.divisibility->divisible;
    j["divisibility_method"] = c.divisibility->method;
    if (c.divisibility->witness) j["divisibility_witness"] = point_to_string(F, *c.divisibility->witness);
  }
  j["lines_meeting"] = c.bound.meeting;
  j["lines_meeting_outside_plane"] = c.bound.meeting_excluding;
  j["lines_in_plane"] = c.bound.in_plane;
  j["containment_checked"] = c.containment_checked;
  j["containment_failures"] = c.containment_failures;
  j["checks"] = checks_to_json(c.bound.checks);
  if (c.multiplicity) {
    j["m"] = c.multiplicity->m ? json(*c.multiplicity->m) : json(nullptr);
    j["m_precision"] = c.multiplicity->precision;
    j["m_valuations"] = c.multiplicity->valuations;
  }
  if (!c.error.empty()) j["error"] = c.error;
  j["pass"] = c.pass();
  return j;
}

json report_to_json(const SurfaceReport& r) {
  const auto& C = *r.census;
  json j;
  j["schema"] = kReportSchema;
  j["field"] = r.base->spec();
  j["census_field"] = C.spec();
  j["k"] = r.k;
  j["quartic"] = r.f.to_string();

  if (r.smoothness) {
    const auto& s = *r.smoothness;
    json js{{"verdict", s.verdict}, {"scanned_degrees", s.scanned_degrees},
            {"elimination_certified", s.elimination_certified}, {"elimination_attempts", s.elimination_attempts},
            {"elimination_field", s.elimination_field}};
    if (s.witness_field) js["witness_field"] = *s.witness_field;
    if (s.witness && s.witness_field) js["witness"] = point_to_string(*parse_field_spec(*s.witness_field), *s.witness);
    j["smoothness"] = js;
  }

  json lines = json::array();
  for (std::size_t i = 0; i < r.lines.size(); ++i)
    lines.push_back({{"index", i}, {"rref", line_to_strings(C, r.lines[i])}, {"definition_degree", r.definition_degrees[i]}});
  j["lines"] = lines;

  json hist = json::object();
  for (const auto& [d, n] : r.graph.degree_histogram) hist[std::to_string(d)] = n;
  j["incidence"] = {{"edges", r.graph.edges}, {"edge_count", r.graph.edges.size()}, {"degree_histogram", hist}};

  json fibs = json::array();
  for (std::size_t i = 0; i < r.fibrations.size(); ++i) {
    if (!r.fibrations[i]) continue;
    const auto& fr = *r.fibrations[i];
    const auto& FF = *parse_field_spec(fr.fiber_field);
    json reducible = json::array();
    for (const auto& rec : fr.fibers) {
      if (rec.components.size() < 2 && rec.census_lines.empty()) continue;
      std::vector<int> idx;
      for (const auto& l : rec.census_lines) idx.push_back(r.line_index(l));
      std::sort(idx.begin(), idx.end());
      reducible.push_back({{"s", FF.literal(rec.s)}, {"t", FF.literal(rec.t)}, {"census_point", rec.census_point},
                           {"type", kodaira_name(rec.kodaira)}, {"census_lines", idx}});
    }
    json jf{{"line", i},
            {"fiber_field", fr.fiber_field},
            {"fibers", fr.fibers.size()},
            {"kind", fibration_kind_name(fr.kind)},
            {"singular_fibers", fr.singular_fibers},
            {"type_counts", fr.type_counts},
            {"lines_meeting", fr.lines_meeting},
            {"euler_sum", fr.euler_sum},
            {"euler_balanced", fr.euler_balanced},
            {"contradiction", fr.contradiction},
            {"reducible_fibers", reducible},
            {"notes", fr.notes}};
    if (r.audits[i]) {
      const auto& a = *r.audits[i];
      int failures = 0;
      for (const auto& e : a.entries) failures += !e.pass;
      jf["triple_tangency"] = {{"pass", a.pass}, {"fibers", a.entries.size()}, {"failures", failures}};
    }
    fibs.push_back(jf);
  }
  j["fibrations"] = fibs;

  json planes = json::array();
  for (const auto& p : r.planes)
    planes.push_back({{"plane", plane_to_string(C, p.plane)}, {"lines", p.lines}, {"kind", p.kind}});
  j["planes"] = planes;

  json verdicts;
  if (r.verdicts) {
    verdicts["case"] = r.verdicts->case_name;
    verdicts["checks"] = checks_to_json(r.verdicts->checks);
    verdicts["all_pass"] = r.verdicts->all_pass();
  }
  j["verdicts"] = verdicts;
  if (r.gauss_inseparable) j["gauss_inseparable"] = *r.gauss_inseparable;

  json zs = json::array();
  for (const auto& c : r.conics) zs.push_back(conic_to_json(c));
  j["z_surfaces"] = zs;
  j["notes"] = r.notes;
  return j;
}

std::string degree_histogram_csv(const SurfaceReport& r) {
  std::ostringstream os;
  os << "degree,count\n";
  for (const auto& [d, n] : r.graph.degree_histogram) os << d << ',' << n << '\n';
  return os.str();
}

std::string fiber_types_csv(const SurfaceReport& r) {
  std::ostringstream os;
  os << "line,type,count\n";
  for (std::size_t i = 0; i < r.fibrations.size(); ++i) {
    if (!r.fibrations[i]) continue;
    for (const auto& [t, n] : r.fibrations[i]->type_counts) os << i << ',' << t << ',' << n << '\n';
  }
  return os.str();
}

}  // namespace ql
