#pragma once

// Full analysis of one quartic surface and its JSON / CSV serialization.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ql/pencil.hpp"
#include "ql/zsurface.hpp"

namespace ql {

inline constexpr const char* kReportSchema = "quartic-lines/1";

struct ConicAnalysis {
  ConicOnSurface conic;
  MVPoly g;  // in the normalized coordinates w
  int g_degree = -1;
  std::optional<ZDivisibility> divisibility;
  int containment_checked = 0;   // census lines meeting the conic
  int containment_failures = 0;  // ... on which g does not vanish identically
  ConicBoundReport bound;
  std::optional<MultiplicityResult> multiplicity;
  std::string error;  // degenerate families or resultant
  bool pass() const;
};

struct AnalysisOptions {
  unsigned k = 2;
  std::uint64_t cap = kDefaultEnumerationCap;
  unsigned scan_depth = 2;
  unsigned qe_threshold = 25;
  unsigned threads = 1;
  std::uint64_t seed = 1;
  int attempts = 3;
  bool smoothness = true;
  bool fibrations = true;
  bool audits = true;
  bool zsurfaces = true;
  bool multiplicity = true;
  bool gauss_probe = true;
  std::optional<std::vector<Line3>> census;  // skips the line scan (cache or injected)
};

struct SurfaceReport {
  Field base, census;
  unsigned k = 1;
  MVPoly f;  // over the base field
  std::optional<SmoothnessCertificate> smoothness;
  std::vector<Line3> lines;  // over the census field
  std::vector<unsigned> definition_degrees;
  IncidenceGraph graph;
  std::vector<std::optional<FibrationReport>> fibrations;  // per line, when computed
  std::vector<std::optional<TangencyAudit>> audits;       // quasi-elliptic lines only
  std::vector<PlaneSection> planes;
  std::optional<BoundVerdicts> verdicts;
  std::optional<bool> gauss_inseparable;
  std::vector<ConicAnalysis> conics;
  std::vector<std::string> notes;

  /// Census index of a line over the census field, or -1.
  int line_index(const Line3& l) const;
};

/// f over its base field; the census runs over the degree-k extension.
SurfaceReport analyze_surface(const MVPoly& f, const AnalysisOptions& opt = {});

/// Census and incidence only, plus the total-count bound for the characteristic.
SurfaceReport census_report(const MVPoly& f, const AnalysisOptions& opt = {});

/// Itemized line-count bound for the census size alone (112 / 84), if the
/// characteristic has one.
std::optional<BoundCheck> census_total_bound(unsigned characteristic, std::size_t count);

nlohmann::json report_to_json(const SurfaceReport& r);
nlohmann::json conic_to_json(const ConicAnalysis& c);
nlohmann::json checks_to_json(const std::vector<BoundCheck>& checks);

/// degree,count
std::string degree_histogram_csv(const SurfaceReport& r);
/// line,type,count
std::string fiber_types_csv(const SurfaceReport& r);

std::string plane_to_string(const FieldCtx& F, const Plane3& h);

}  // namespace ql
