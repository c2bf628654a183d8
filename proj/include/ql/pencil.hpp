#pragma once

// Smooth quartic surfaces: smoothness certificate, line census, incidence
// graph, the genus-one pencil of plane cubics residual to a line, fibre
// types, and the line-count bounds.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ql/plane_curve.hpp"
#include "ql/projgeom.hpp"

namespace ql {

struct SmoothnessCertificate {
  std::string verdict;  // "smooth", "singular" or "smooth-up-to-scan-depth"
  std::vector<unsigned> scanned_degrees;  // extension degrees k of P^3(F_{q^k}) scanned
  std::optional<std::string> witness_field;
  std::optional<Point3> witness;
  bool elimination_certified = false;
  int elimination_attempts = 0;
  std::string elimination_field;
};

struct SmoothnessOptions {
  unsigned scan_depth = 2;
  int attempts = 3;
  std::uint64_t seed = 1;
  std::uint64_t cap = kDefaultEnumerationCap;
};

/// Point scan over P^3(F_{q^k}), k = 1..scan_depth, then the elimination
/// certificate.  Depths whose field exceeds the cap raise an error.
SmoothnessCertificate certify_smooth(const MVPoly& f, const SmoothnessOptions& opt = {});

struct QuarticSurface {
  MVPoly f;
  SmoothnessCertificate smoothness;

  explicit QuarticSurface(MVPoly poly);
  const Field& field() const { return f.field(); }
};

/// Lines of P^3(F_{q^k}) on the surface, where F_q is the field of f.
std::vector<Line3> find_lines(const MVPoly& f, unsigned k, unsigned threads = 1,
                              std::uint64_t cap = kDefaultEnumerationCap);

/// Smallest j dividing k such that the line is fixed by the q^j-power
/// Frobenius, i.e. its field of definition is F_{q^j}.
unsigned definition_degree(const FieldCtx& census, const FieldCtx& base, const Line3& l);

struct IncidenceGraph {
  std::vector<std::vector<int>> adjacency;  // sorted neighbour indices
  std::vector<std::pair<int, int>> edges;   // i < j
  std::map<int, int> degree_histogram;      // degree -> number of lines
};
IncidenceGraph incidence_graph(const FieldCtx& F, const std::vector<Line3>& lines);

// ---------------------------------------------------------------------------
// Genus-one pencil of a line.

enum class Kodaira { smooth, I1, I2, I3, II, III, IV, unclassified };
std::string kodaira_name(Kodaira k);
/// e(F) - 2 on a quasi-elliptic fibration: II 0, III 1, IV 2.
int quasi_elliptic_contribution(Kodaira k);
/// Euler number without wild ramification: I_n n, II 2, III 3, IV 4.
int minimal_euler_contribution(Kodaira k);

struct FiberComponent {
  MVPoly curve;      // over the field named by `over_extension`
  int degree = 0;
  int multiplicity = 1;
  bool over_extension = false;  // defined only over the quadratic extension
};

struct FiberSingularPoint {
  PlanePoint point;
  std::string kind;  // "node", "cusp", "triple", "crossing", "tangency"
};

struct FiberRecord {
  Elem s = 0, t = 0;          // base point over the fibre field
  bool census_point = false;  // (s:t) is defined over the census field
  MVPoly cubic;               // in plane coordinates (y1, y2, u); the line is u = 0
  std::vector<FiberComponent> components;
  std::vector<FiberSingularPoint> singular_points;
  Kodaira kodaira = Kodaira::unclassified;
  std::vector<Line3> census_lines;  // line components defined over the census field
};

/// Kodaira type of a plane cubic read off from its components and their
/// intersections.  Works over the cubic's field and its quadratic extension.
FiberRecord classify_fiber(const MVPoly& cubic);

/// Coordinates in which a line becomes {y3 = y4 = 0}: x = y1 P + y2 Q + y3 R + y4 T
/// with P, Q the echelon rows and R, T unit vectors off the pivots.
struct LineFrame {
  Line3 line;
  Point3 P, Q, R, T;
  Point3 to_space(const FieldCtx& F, Elem s, Elem t, const PlanePoint& y) const;
};
LineFrame line_frame(const Line3& l);

/// Plane cubic residual to l in the plane through l with parameter (s:t),
/// i.e. the plane y4 s = y3 t, in coordinates (y1, y2, u) with y3 = s u,
/// y4 = t u.  f must be over the same field as l.
MVPoly residual_cubic(const MVPoly& f, const Line3& l, Elem s, Elem t);

enum class FibrationKind { elliptic, quasi_elliptic, deferred };
std::string fibration_kind_name(FibrationKind k);

struct FibrationReport {
  Line3 line;
  std::string fiber_field;
  std::vector<FiberRecord> fibers;
  FibrationKind kind = FibrationKind::deferred;
  int singular_fibers = 0;
  std::map<std::string, int> type_counts;
  int lines_meeting = 0;  // census line components over all fibres
  // Quasi-elliptic: 4 + sum (e - 2) over classified fibres.
  int euler_sum = 0;
  bool euler_balanced = false;
  bool contradiction = false;  // quasi-elliptic certificate alongside a smooth fibre
  std::vector<std::string> notes;
};

struct FibrationOptions {
  unsigned qe_threshold = 25;
  unsigned threads = 1;
};

/// f and l over the census field.  Fibres run over P^1 of the smallest
/// extension with at least qe_threshold - 1 elements.
FibrationReport classify_fibration(const MVPoly& f, const Line3& l, const FibrationOptions& opt = {});

struct TangencyAuditEntry {
  Elem s = 0, t = 0;
  bool census_point = false;
  bool single_point = false;
  int contact = 0;
  bool at_singular_point = false;
  bool pass = false;
};

struct TangencyAudit {
  Line3 line;
  std::vector<TangencyAuditEntry> entries;
  bool pass = false;
};

/// Requires a quasi-elliptic report; every fibre must meet the line in one
/// point with multiplicity 3, and that point must be singular on the fibre.
TangencyAudit triple_tangency_audit(const FibrationReport& report);

/// Every first Hasse derivative is a p-th power.
bool gauss_inseparability_probe(const MVPoly& f);

// ---------------------------------------------------------------------------
// Bounds.

struct PlaneSection {
  Plane3 plane;
  std::vector<int> lines;  // census indices lying in the plane
  std::string kind;        // "four_lines", "two_lines_conic", "other"
  std::optional<MVPoly> conic;  // irreducible residual conic in plane coordinates
  std::array<Point3, 3> basis{};  // plane points for coordinates (z1, z2, z3)
};

/// Planes spanned by pairs of meeting census lines, with their sections.
std::vector<PlaneSection> split_planes(const MVPoly& f, const std::vector<Line3>& lines,
                                       const IncidenceGraph& graph);

/// Census lines, other than those in the plane, meeting a conic that lies
/// in the plane.
std::vector<int> lines_meeting_conic(const FieldCtx& F, const std::vector<Line3>& lines, const PlaneSection& sec);

struct BoundCheck {
  std::string name;
  long observed = 0;
  long bound = 0;
  bool pass = true;
};

struct BoundVerdicts {
  std::string case_name;  // "four_lines", "two_lines_conic", "all_skew", "no_lines", "other"
  std::vector<BoundCheck> checks;
  bool all_pass() const;
};

/// kinds: per census line, the fibration kind if computed.
BoundVerdicts verify_line_bounds(unsigned characteristic, const std::vector<Line3>& lines,
                                 const IncidenceGraph& graph, const std::vector<PlaneSection>& planes,
                                 const std::vector<std::optional<FibrationKind>>& kinds,
                                 const FieldCtx& census);

}  // namespace ql
