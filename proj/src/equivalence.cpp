#include "ql/equivalence.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace ql {

MVPoly transform(const MVPoly& f, const Matrix& M) {
  std::vector<MVPoly> images;
  for (int i = 0; i < 4; ++i) images.push_back(MVPoly::linear_form(f.field(), M[i]));
  return f.substitute(images);
}

bool check_equivalence(const MVPoly& f, const MVPoly& g, const Matrix& M) {
  const auto& F = f.ctx();
  if (!same_field(F, g.ctx())) throw Error("surfaces over different fields");
  if (M.size() != 4 || determinant(F, M) == 0) throw Error("matrix is singular");
  const MVPoly h = transform(f, M);
  if (g.is_zero() || h.is_zero()) return g.is_zero() && h.is_zero();
  const auto& gt = g.terms().front();
  const Elem hc = h.coefficient(unpack(gt.key));
  if (hc == 0) return false;
  return h == g.scaled(F.div(hc, gt.coeff));
}

std::optional<Matrix> frame_matrix(const FieldCtx& F, const std::array<Point3, 5>& frame) {
  Matrix A(4, std::vector<Elem>(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A[i][j] = frame[j][i];
  auto inv = inverse(F, A);
  if (!inv) return std::nullopt;
  const auto c = mat_vec(F, *inv, {frame[4].begin(), frame[4].end()});
  if (std::any_of(c.begin(), c.end(), [](Elem x) { return x == 0; })) return std::nullopt;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) A[i][j] = F.mul(A[i][j], c[j]);
  return A;
}

namespace {

struct FramePoint {
  Point3 p;
  std::vector<int> lines;
};

std::vector<FramePoint> intersection_points(const FieldCtx& F, const std::vector<Line3>& census) {
  std::map<Point3, std::set<int>> through;
  for (std::size_t i = 0; i < census.size(); ++i)
    for (std::size_t j = i + 1; j < census.size(); ++j) {
      if (!lines_meet(F, census[i], census[j])) continue;
      auto& s = through[*intersection_point(F, census[i], census[j])];
      s.insert(static_cast<int>(i));
      s.insert(static_cast<int>(j));
    }
  std::vector<FramePoint> out;
  for (auto& [p, s] : through) out.push_back({p, {s.begin(), s.end()}});
  return out;
}

bool share_line(const FramePoint& a, const FramePoint& b) {
  auto i = a.lines.begin(), j = b.lines.begin();
  while (i != a.lines.end() && j != b.lines.end()) {
    if (*i == *j) return true;
    *i < *j ? ++i : ++j;
  }
  return false;
}

int rank_of(const FieldCtx& F, const std::vector<Point3>& pts) {
  Matrix m;
  for (const auto& p : pts) m.push_back({p.begin(), p.end()});
  return rank(F, m);
}

// Partial general position: the first i points are independent for i <= 4,
// and the fifth completes a frame.
bool admissible(const FieldCtx& F, const std::vector<Point3>& pts) {
  if (pts.size() <= 4) return rank_of(F, pts) == static_cast<int>(pts.size());
  return frame_matrix(F, {pts[0], pts[1], pts[2], pts[3], pts[4]}).has_value();
}

}  // namespace

EquivalenceSearch find_equivalence(const MVPoly& f, const MVPoly& g, const std::vector<Line3>& census_f,
                                   const std::vector<Line3>& census_g, std::uint64_t max_candidates) {
  const auto& F = f.ctx();
  if (!same_field(F, g.ctx())) throw Error("surfaces over different fields");
  if (census_f.empty() || census_g.empty()) throw Error("empty line census");
  EquivalenceSearch out;
  const auto pf = intersection_points(F, census_f);
  const auto pg = intersection_points(F, census_g);
  out.frame_points_f = pf.size();
  out.frame_points_g = pg.size();

  // Frame on g: greedily prefer points sharing census lines with the
  // points already chosen, since those constrain the search on f most.
  std::vector<int> fg;
  std::vector<Point3> fg_pts;
  while (fg.size() < 5) {
    int best = -1, best_score = -1;
    for (std::size_t c = 0; c < pg.size(); ++c) {
      if (std::find(fg.begin(), fg.end(), static_cast<int>(c)) != fg.end()) continue;
      int score = static_cast<int>(pg[c].lines.size());
      for (int j : fg) score += 100 * share_line(pg[c], pg[j]);
      if (score <= best_score) continue;
      auto trial = fg_pts;
      trial.push_back(pg[c].p);
      if (!admissible(F, trial)) continue;
      best = static_cast<int>(c);
      best_score = score;
    }
    if (best < 0) throw Error("no frame in general position among intersection points");
    fg.push_back(best);
    fg_pts.push_back(pg[best].p);
  }
  const Matrix Mg = *frame_matrix(F, {fg_pts[0], fg_pts[1], fg_pts[2], fg_pts[3], fg_pts[4]});
  const Matrix Mg_inv = *inverse(F, Mg);
  const std::set<Line3> target(census_f.begin(), census_f.end());

  std::vector<int> chosen;
  std::vector<Point3> chosen_pts;
  bool done = false;
  auto screen = [&]() {
    ++out.candidates;
    const auto Mf = frame_matrix(F, {chosen_pts[0], chosen_pts[1], chosen_pts[2], chosen_pts[3], chosen_pts[4]});
    if (!Mf) return;
    const Matrix M = mat_mul(F, *Mf, Mg_inv);
    for (const auto& l : census_g) {
      const Point3 r0 = l.row(0), r1 = l.row(1);
      const auto a = mat_vec(F, M, {r0.begin(), r0.end()});
      const auto b = mat_vec(F, M, {r1.begin(), r1.end()});
      if (!target.count(Line3::through(F, {a[0], a[1], a[2], a[3]}, {b[0], b[1], b[2], b[3]}))) return;
    }
    if (check_equivalence(f, g, M)) {
      out.M = M;
      done = true;
    }
  };
  auto recurse = [&](auto&& self, std::size_t pos) -> void {
    if (done || out.candidates >= max_candidates) return;
    if (pos == 5) {
      screen();
      return;
    }
    const auto& want = pg[fg[pos]];
    for (std::size_t c = 0; c < pf.size() && !done && out.candidates < max_candidates; ++c) {
      if (pf[c].lines.size() != want.lines.size()) continue;
      if (std::find(chosen.begin(), chosen.end(), static_cast<int>(c)) != chosen.end()) continue;
      bool ok = true;
      for (std::size_t j = 0; j < pos && ok; ++j) ok = share_line(pf[c], pf[chosen[j]]) == share_line(want, pg[fg[j]]);
      if (!ok) continue;
      chosen.push_back(static_cast<int>(c));
      chosen_pts.push_back(pf[c].p);
      if (admissible(F, chosen_pts)) self(self, pos + 1);
      chosen.pop_back();
      chosen_pts.pop_back();
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace ql
