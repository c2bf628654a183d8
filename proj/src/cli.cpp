#include "ql/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

namespace ql {

using nlohmann::json;
namespace fs = std::filesystem;

ResolvedSurface resolve_surface(const RunConfig& cfg, const Catalog& cat) {
  const int sources = !cfg.quartic.empty() + !cfg.quartic_file.empty() + !cfg.catalog_name.empty();
  if (sources != 1) throw Error("give exactly one of --quartic, --quartic-file, --catalog");
  ResolvedSurface rs;
  std::optional<unsigned> entry_k;
  if (!cfg.catalog_name.empty()) {
    const auto& e = cat.get(cfg.catalog_name);
    if (e.kind != "quartic") throw Error(e.name + " is not a quartic surface");
    rs.name = e.name;
    rs.f = entry_quartic(e);
    entry_k = e.k;
  } else {
    std::string text = cfg.quartic;
    if (!cfg.quartic_file.empty()) {
      std::ifstream in(cfg.quartic_file);
      if (!in) throw Error("cannot read " + cfg.quartic_file);
      std::stringstream ss;
      ss << in.rdbuf();
      text = ss.str();
    }
    const std::string base = !cfg.base.empty() ? cfg.base : cfg.field;
    if (base.empty()) throw Error("an inline quartic needs --base or --field");
    rs.name = "inline";
    rs.f = MVPoly::parse(parse_field_spec(base), 4, text);
    if (rs.f.is_zero() || !rs.f.is_homogeneous() || rs.f.total_degree() != 4) throw Error("not a quartic form");
  }
  const FieldCtx& B = rs.f.ctx();
  if (!cfg.field.empty()) {
    const Field C = parse_field_spec(cfg.field);
    if (C->p() != B.p() || C->n() % B.n()) throw Error("--field " + cfg.field + " is not an extension of " + B.spec());
    rs.k = C->n() / B.n();
    if (cfg.k && *cfg.k != rs.k) throw Error("--k disagrees with --field");
  } else {
    rs.k = cfg.k.value_or(entry_k.value_or(1));
  }
  if (rs.k == 0) throw Error("extension degree must be positive");
  long double q = 1;
  for (unsigned i = 0; i < B.n() * rs.k; ++i) q *= B.p();
  if (q > static_cast<long double>(cfg.cap)) {
    std::ostringstream os;
    os << "census field of order " << static_cast<double>(q) << " exceeds the enumeration cap " << cfg.cap << " (about "
       << static_cast<double>(q * q * q * q) << " candidate lines)";
    throw Error(os.str());
  }
  return rs;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string census_cache_key(const MVPoly& f, unsigned k) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0')
     << fnv1a(f.ctx().spec() + "|" + std::to_string(k) + "|" + f.to_string());
  return os.str();
}

namespace {

fs::path cache_path(const std::string& dir, const MVPoly& f, unsigned k) {
  return fs::path(dir) / ("census-" + census_cache_key(f, k) + ".json");
}

}  // namespace

std::optional<std::vector<Line3>> load_cached_census(const std::string& dir, const MVPoly& f, unsigned k) {
  const auto path = cache_path(dir, f, k);
  std::ifstream in(path);
  if (!in) return std::nullopt;
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception&) {
    return std::nullopt;
  }
  if (j.value("field", "") != f.ctx().spec() || j.value("quartic", "") != f.to_string() || j.value("k", 0u) != k)
    return std::nullopt;
  const Field C = extension_field(f.field(), k);
  std::vector<Line3> lines;
  for (const auto& jl : j.at("lines")) {
    std::array<Elem, 8> rows{};
    for (int i = 0; i < 8; ++i) rows[i] = C->parse_literal(jl.at(i).get<std::string>());
    lines.push_back(Line3::from_rref(*C, rows));
  }
  return lines;
}

void store_cached_census(const std::string& dir, const MVPoly& f, unsigned k, const std::vector<Line3>& lines) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const Field C = extension_field(f.field(), k);
  json jl = json::array();
  for (const auto& l : lines) jl.push_back(line_to_strings(*C, l));
  std::ofstream out(cache_path(dir, f, k));
  out << json{{"schema", kReportSchema}, {"field", f.ctx().spec()}, {"quartic", f.to_string()}, {"k", k}, {"lines", jl}}.dump()
      << '\n';
}

// ---------------------------------------------------------------------------

namespace {

struct Checklist {
  json items = json::array();
  bool all = true;
  void add(const std::string& name, bool pass, json observed = nullptr, json bound = nullptr) {
    json it{{"name", name}, {"pass", pass}};
    if (!observed.is_null()) it["observed"] = observed;
    if (!bound.is_null()) it["bound"] = bound;
    items.push_back(it);
    all = all && pass;
  }
  void add(const BoundCheck& c, const std::string& prefix = "") { add(prefix + c.name, c.pass, c.observed, c.bound); }
};

void pencil_checks(Checklist& cl, const SurfaceReport& r) {
  if (r.smoothness) cl.add("not_singular", r.smoothness->verdict != "singular", r.smoothness->verdict);
  if (r.verdicts)
    for (const auto& c : r.verdicts->checks) cl.add(c);
  int missing = 0, contradictions = 0, audit_fail = 0, unbalanced = 0, inconsistent = 0;
  for (std::size_t i = 0; i < r.fibrations.size(); ++i) {
    if (!r.fibrations[i]) {
      ++missing;
      continue;
    }
    const auto& fr = *r.fibrations[i];
    contradictions += fr.contradiction;
    inconsistent += fr.lines_meeting != static_cast<int>(r.graph.adjacency[i].size());
    if (fr.kind == FibrationKind::quasi_elliptic) {
      unbalanced += !fr.euler_balanced;
      audit_fail += !(r.audits[i] && r.audits[i]->pass);
    }
  }
  cl.add("every_fibration_classified", missing == 0, missing, 0);
  cl.add("quasi_elliptic_soundness", contradictions == 0, contradictions, 0);
  cl.add("census_fibration_consistency", inconsistent == 0, inconsistent, 0);
  cl.add("quasi_elliptic_euler_bookkeeping", unbalanced == 0, unbalanced, 0);
  cl.add("triple_tangency", audit_fail == 0, audit_fail, 0);
}

void conic_checks(Checklist& cl, const SurfaceReport& r) {
  for (std::size_t i = 0; i < r.conics.size(); ++i) {
    const auto& c = r.conics[i];
    const std::string pre = "conic" + std::to_string(i) + ".";
    if (!c.error.empty()) {
      cl.add(pre + "families", false, c.error);
      continue;
    }
    cl.add(pre + "z_degree", c.g_degree == 16, c.g_degree, 16);
    cl.add(pre + "f_does_not_divide_g", c.divisibility && !c.divisibility->divisible,
           c.divisibility ? json(c.divisibility->method) : json(nullptr));
    cl.add(pre + "g_vanishes_on_meeting_lines", c.containment_failures == 0, c.containment_failures, 0);
    for (const auto& b : c.bound.checks) cl.add(b, pre);
  }
}

}  // namespace

json verify_theorem(const std::string& theorem, const SurfaceReport& r, bool& violation) {
  const unsigned p = r.base->p();
  Checklist cl;
  if (theorem == "main112") {
    if (p != 3) throw Error("main112 applies in characteristic 3");
    pencil_checks(cl, r);
  } else if (theorem == "conic48") {
    if (p != 3) throw Error("conic48 applies in characteristic 3");
    if (r.conics.empty()) throw Error("no conic found on the surface");
    cl.add("max_min_64_32", max_min_bound(64, 32).first == 48, max_min_bound(64, 32).first, 48);
    conic_checks(cl, r);
  } else if (theorem == "char2_84") {
    if (p != 2) throw Error("char2_84 applies in characteristic 2");
    cl.add("max_min_62_28", max_min_bound(62, 28).first == 44, max_min_bound(62, 28).first, 44);
    pencil_checks(cl, r);
    conic_checks(cl, r);
  } else {
    throw Error("unknown theorem " + theorem);
  }
  violation = !cl.all;
  return {{"theorem", theorem}, {"checks", cl.items}, {"all_pass", cl.all}};
}

// ---------------------------------------------------------------------------

namespace {

void emit(const json& j, const RunConfig& cfg, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (!cfg.out.empty()) {
    std::ofstream f(cfg.out);
    if (!f) throw Error("cannot write " + cfg.out);
    f << text;
    if (cfg.to_stdout) out << text;
    else out << cfg.out << '\n';
  } else {
    out << text;
  }
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

AnalysisOptions analysis_options(const RunConfig& cfg, unsigned k) {
  AnalysisOptions o;
  o.k = k;
  o.cap = cfg.cap;
  o.scan_depth = cfg.scan_depth;
  o.qe_threshold = cfg.qe_threshold;
  o.threads = cfg.threads;
  o.seed = cfg.seed;
  return o;
}

// Census through the cache when QL_CACHE_DIR is set.
void attach_cache(AnalysisOptions& o, const ResolvedSurface& rs, std::ostream& err, bool& loaded) {
  loaded = false;
  const char* dir = std::getenv("QL_CACHE_DIR");
  if (!dir || !*dir) return;
  if (auto lines = load_cached_census(dir, rs.f, rs.k)) {
    err << "census loaded from cache (" << lines->size() << " lines)\n";
    o.census = std::move(*lines);
    loaded = true;
  }
}

void store_cache(const ResolvedSurface& rs, const SurfaceReport& r, bool loaded) {
  const char* dir = std::getenv("QL_CACHE_DIR");
  if (dir && *dir && !loaded) store_cached_census(dir, rs.f, rs.k, r.lines);
}

const Catalog& pick_catalog(const RunConfig& cfg, std::optional<Catalog>& storage) {
  if (cfg.catalog_file.empty()) return builtin_catalog();
  storage = load_catalog_file(cfg.catalog_file);
  return *storage;
}

int cmd_lines(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<Catalog> storage;
  const auto rs = resolve_surface(cfg, pick_catalog(cfg, storage));
  AnalysisOptions o = analysis_options(cfg, rs.k);
  bool loaded = false;
  attach_cache(o, rs, err, loaded);
  const SurfaceReport r = census_report(rs.f, o);
  store_cache(rs, r, loaded);
  json j = report_to_json(r);
  j["source"] = rs.name;
  bool violation = false;
  json checks = json::array();
  if (auto b = census_total_bound(r.base->p(), r.lines.size())) {
    checks = checks_to_json({*b});
    violation = !b->pass;
  }
  j["verdicts"] = {{"checks", checks}, {"all_pass", !violation}};
  emit(j, cfg, out);
  write_text(cfg.csv_degrees, degree_histogram_csv(r));
  if (violation) err << "line count exceeds the bound for characteristic " << r.base->p() << '\n';
  return violation ? kExitViolation : kExitOk;
}

int cmd_verify(const std::string& theorem, const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::optional<Catalog> storage;
  const auto rs = resolve_surface(cfg, pick_catalog(cfg, storage));
  AnalysisOptions o = analysis_options(cfg, rs.k);
  o.zsurfaces = theorem != "main112";
  o.audits = theorem != "conic48";
  bool loaded = false;
  attach_cache(o, rs, err, loaded);
  const SurfaceReport r = analyze_surface(rs.f, o);
  store_cache(rs, r, loaded);
  bool violation = false;
  json j = report_to_json(r);
  j["source"] = rs.name;
  j["verdict"] = verify_theorem(theorem, r, violation);
  emit(j, cfg, out);
  write_text(cfg.csv_degrees, degree_histogram_csv(r));
  write_text(cfg.csv_fibers, fiber_types_csv(r));
  if (violation) err << theorem << ": a check failed\n";
  return violation ? kExitViolation : kExitOk;
}

int cmd_catalog(const std::string& action, const std::string& name, const RunConfig& cfg, std::ostream& out,
                std::ostream& err) {
  std::optional<Catalog> storage;
  const Catalog& cat = pick_catalog(cfg, storage);
  if (action == "list") {
    for (const auto& e : cat.entries) out << e.name << '\n';
    return kExitOk;
  }
  RunOptions ro;
  ro.threads = cfg.threads;
  ro.seed = cfg.seed;
  ro.cap = cfg.cap;
  if (action == "run") {
    if (name.empty()) throw Error("catalog run needs an entry name");
    const auto res = run_entry(cat, name, ro);
    emit(res.to_json(), cfg, out);
    for (const auto& d : res.diff)
      if (!d.match) err << name << ": " << d.name << " expected " << d.expected.dump() << " got " << d.actual.dump() << '\n';
    return res.clean() ? kExitOk : kExitError;
  }
  if (action == "run-all") {
    json matrix = json::array();
    bool clean = true;
    for (const auto& e : cat.entries) {
      const auto res = run_entry(cat, e.name, ro);
      json failed = json::array();
      for (const auto& d : res.diff)
        if (!d.match) failed.push_back(d.name);
      matrix.push_back({{"entry", e.name}, {"facts", res.diff.size()}, {"diff_clean", res.clean()}, {"failed", failed}});
      clean = clean && res.clean();
      err << e.name << ": " << (res.clean() ? "clean" : "DIFF") << '\n';
    }
    emit({{"schema", kReportSchema}, {"entries", matrix}, {"all_clean", clean}}, cfg, out);
    return clean ? kExitOk : kExitError;
  }
  throw Error("unknown catalog action " + action);
}

int cmd_search(const std::string& which, std::uint64_t seed, int iterations, std::size_t min_lines, const RunConfig& cfg,
               std::ostream& out) {
  FixtureSearch s;
  if (which == "conic3") s = search_conic_fixture(seed, iterations);
  else if (which == "char2-conic") s = search_line_fixture(2, seed, iterations, min_lines, "two_lines_conic");
  else if (which == "char2-four") s = search_line_fixture(2, seed, iterations, min_lines, "four_lines");
  else if (which == "elliptic3") s = search_elliptic_fixture(seed, iterations, min_lines);
  else throw Error("unknown fixture " + which);
  json j{{"fixture", which}, {"seed", seed}, {"iterations", iterations}, {"min_lines", min_lines}, {"found", s.f.has_value()}};
  if (s.f) {
    j["field"] = s.f->ctx().spec();
    j["quartic"] = s.f->to_string();
    j["iteration"] = s.iteration;
    j["summary"] = s.summary;
  }
  emit(j, cfg, out);
  return s.f ? kExitOk : kExitError;
}

void add_source_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--field", cfg.field, "field to search lines over, e.g. p=3,n=2");
  sub->add_option("--base", cfg.base, "coefficient field of an inline quartic");
  sub->add_option("--quartic", cfg.quartic, "quartic form in x1..x4");
  sub->add_option("--quartic-file", cfg.quartic_file, "file holding the quartic form");
  sub->add_option("--catalog", cfg.catalog_name, "catalog entry name");
  sub->add_option("--k", cfg.k, "extension degree of the census field");
  sub->add_option("--scan-depth", cfg.scan_depth, "extension degrees scanned for singular points");
  sub->add_option("--qe-threshold", cfg.qe_threshold, "singular fibres certifying a quasi-elliptic pencil");
  sub->add_option("--csv-degrees", cfg.csv_degrees, "write the degree histogram as CSV");
  sub->add_option("--csv-fibers", cfg.csv_fibers, "write fibre type counts as CSV");
}

void add_common_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--cap", cfg.cap, "largest field order enumerated");
  sub->add_option("--threads", cfg.threads, "worker threads (0 = hardware)");
  sub->add_option("--seed", cfg.seed, "seed for randomized certificates");
  sub->add_option("--out", cfg.out, "report path");
  sub->add_flag("--stdout", cfg.to_stdout, "print the report even with --out");
  sub->add_option("--catalog-file", cfg.catalog_file, "catalog JSON replacing the built-in one");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lines on quartic surfaces over finite fields", "ql"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto* lines = app.add_subcommand("lines", "line census and incidence graph");
  add_source_options(lines, cfg);
  add_common_options(lines, cfg);

  std::string theorem;
  auto* verify = app.add_subcommand("verify", "check a line-count bound with itemized sub-checks");
  verify->add_option("theorem", theorem, "conic48, main112 or char2_84")
      ->required()
      ->check(CLI::IsMember({"conic48", "main112", "char2_84"}));
  add_source_options(verify, cfg);
  add_common_options(verify, cfg);

  std::string action, entry;
  auto* catalog = app.add_subcommand("catalog", "named surfaces and their expected facts");
  catalog->add_option("action", action, "list, run or run-all")->required()->check(CLI::IsMember({"list", "run", "run-all"}));
  catalog->add_option("name", entry, "entry for run");
  add_common_options(catalog, cfg);

  std::string fixture;
  int iterations = 6000;
  std::uint64_t search_seed = 1;
  std::size_t min_lines = 8;
  auto* search = app.add_subcommand("search-fixture", "rerun the seeded search for a fixture surface");
  search->add_option("fixture", fixture, "conic3, char2-conic, char2-four or elliptic3")->required();
  search->add_option("--iterations", iterations, "candidates to try");
  search->add_option("--search-seed", search_seed, "seed of the search");
  search->add_option("--min-lines", min_lines, "fewest lines over the quadratic extension");
  add_common_options(search, cfg);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    std::ostringstream os;
    const int code = app.exit(e, os, os);
    err << os.str();
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    if (*lines) return cmd_lines(cfg, out, err);
    if (*verify) return cmd_verify(theorem, cfg, out, err);
    if (*catalog) return cmd_catalog(action, entry, cfg, out, err);
    if (*search) return cmd_search(fixture, search_seed, iterations, min_lines, cfg, out);
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << '\n';
    return kExitError;
  }
  return kExitError;
}

}  // namespace ql
