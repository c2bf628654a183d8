#pragma once

// Command-line front end shared by the `ql` tool and the Python module.
//
//   ql lines   [source] [--field SPEC | --k N] ...
//   ql verify  {conic48|main112|char2_84} [source] ...
//   ql catalog {list | run NAME | run-all}
//   ql search-fixture {conic3|char2-conic|char2-four|elliptic3} [--seed S]
//
// Exit codes: 0 verified, 1 operational error, 2 violated bound.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ql/catalog.hpp"

namespace ql {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitViolation = 2;

struct RunConfig {
  std::string field;  // census field
  std::string base;   // coefficient field of an inline quartic
  std::string quartic, quartic_file, catalog_name, catalog_file;
  std::optional<unsigned> k;
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned scan_depth = 2;
  unsigned qe_threshold = 25;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  std::string out, csv_degrees, csv_fibers;
  bool to_stdout = false;
};

struct ResolvedSurface {
  std::string name;  // catalog entry or "inline"
  MVPoly f;
  unsigned k = 1;
};

/// Picks the quartic and extension degree from a config; validates the
/// enumeration cap against the census field.
ResolvedSurface resolve_surface(const RunConfig& cfg, const Catalog& cat);

/// 64-bit FNV-1a.
std::uint64_t fnv1a(std::string_view s);

/// Census cache under QL_CACHE_DIR, keyed by field, quartic and k.
std::string census_cache_key(const MVPoly& f, unsigned k);
std::optional<std::vector<Line3>> load_cached_census(const std::string& dir, const MVPoly& f, unsigned k);
void store_cached_census(const std::string& dir, const MVPoly& f, unsigned k, const std::vector<Line3>& lines);

/// Verdict block of `verify`; `violation` is set when any check fails.
nlohmann::json verify_theorem(const std::string& theorem, const SurfaceReport& r, bool& violation);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ql
