#pragma once

// Named surfaces with expected facts, the runner that diffs them against a
// fresh analysis, the Weierstrass-family scan, and the seeded searches that
// produced the fixture surfaces.

#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "ql/report.hpp"

namespace ql {

struct ExpectedFact {
  std::string name;
  nlohmann::json value;
  std::string tag;  // "theorem" (known result) or "golden" (frozen computed value)
};

struct CatalogEntry {
  std::string name;
  std::string kind = "quartic";  // or "weierstrass"
  std::string field;             // base field spec
  unsigned k = 2;
  std::string quartic;
  std::string description;
  std::string equivalent_to;  // another entry, for the frame search
  std::string origin;         // how a fixture was found
  std::vector<ExpectedFact> expected;
};

struct Catalog {
  int version = 1;
  std::vector<CatalogEntry> entries;
  const CatalogEntry& get(const std::string& name) const;
  std::vector<std::string> names() const;
};

/// Throws on malformed entries, including facts without a recognized tag.
Catalog parse_catalog(const nlohmann::json& j);
/// The catalog compiled into the library.
const Catalog& builtin_catalog();
Catalog load_catalog_file(const std::string& path);

MVPoly entry_quartic(const CatalogEntry& e);

struct FactDiff {
  std::string name;
  nlohmann::json expected, actual;
  std::string tag;
  bool match = false;
};

struct EntryResult {
  std::string name;
  nlohmann::json report;  // SurfaceReport JSON (or Weierstrass scan JSON)
  nlohmann::json facts;   // every computed fact
  std::vector<FactDiff> diff;
  bool clean() const;
  nlohmann::json to_json() const;
};

struct RunOptions {
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Facts computed from a report, keyed by name.
nlohmann::json compute_facts(const SurfaceReport& r);

EntryResult run_entry(const Catalog& cat, const std::string& name, const RunOptions& opt = {});

// ---------------------------------------------------------------------------

struct WeierstrassFiber {
  Elem t = 0;
  bool at_infinity = false;
  Kodaira kodaira = Kodaira::unclassified;
  std::vector<PlanePoint> singular_points;
};

struct WeierstrassScan {
  Field field;
  std::vector<WeierstrassFiber> fibers;  // affine t, then t = infinity
  std::vector<Elem> derivative_roots;    // roots of the formal t-derivative in the field
  bool roots_are_f9 = false;
  std::vector<std::array<Elem, 3>> total_space_singular;  // (x, y, t) of the affine threefold
  bool singular_points_over_roots = false;
  bool all_cuspidal = false;
  bool quasi_elliptic_certificate = false;
  nlohmann::json to_json() const;
};

/// y^2 z = x^3 + (t^10 + t^2) z^3 over t in P^1(F_{3^k}).
WeierstrassScan weierstrass_scan(unsigned k = 4, unsigned qe_threshold = 25);

// ---------------------------------------------------------------------------
// Fixture searches.  Deterministic for a given seed.

/// Random form of the given degree; restricted to x1..x3 when `plane_only`.
MVPoly random_form(const Field& F, int degree, std::mt19937_64& rng, bool plane_only = false);

struct FixtureSearch {
  std::optional<MVPoly> f;
  int iteration = -1;
  std::string summary;
};

/// (x1 x2 - x3^2) c2(x1,x2,x3) + x4 c3(x) over F_3, smooth, with the plane
/// x4 = 0 split into the conic and two lines; maximizes the number of other
/// census lines meeting the conic.
FixtureSearch search_conic_fixture(std::uint64_t seed, int iterations);

/// x3 A + x4 B over F_p, smooth, with at least min_lines lines over F_{p^2}
/// and the requested bound case ("two_lines_conic", "four_lines", or "" for any).
FixtureSearch search_line_fixture(unsigned p, std::uint64_t seed, int iterations, std::size_t min_lines,
                                  const std::string& bound_case);

/// x3 A + x4 B over F_3, smooth, whose line x3 = x4 = 0 has an elliptic
/// pencil, with at least min_lines lines over F_9.
FixtureSearch search_elliptic_fixture(std::uint64_t seed, int iterations, std::size_t min_lines);

}  // namespace ql
