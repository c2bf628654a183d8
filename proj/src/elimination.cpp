#include "ql/elimination.hpp"

#include <algorithm>
#include <random>

#include "ql/linalg.hpp"
#include "ql/upoly.hpp"

namespace ql {

namespace {

using upoly::UPoly;

// A polynomial viewed as a univariate polynomial in x4 whose coefficients
// are evaluated at a point of the remaining coordinates.
struct LastVariableView {
  std::vector<MVPoly> coeffs;  // coeffs[k] multiplies x4^k

  explicit LastVariableView(const MVPoly& p) : coeffs(p.coefficients_in(3)) {}

  UPoly at(const FieldCtx& F, Elem a, Elem b, Elem c, int declared) const {
    const std::array<Elem, 4> pt{a, b, c, 0};
    UPoly out(declared + 1, 0);
    for (std::size_t k = 0; k < coeffs.size() && static_cast<int>(k) <= declared; ++k)
      out[k] = coeffs[k].eval(pt);
    (void)F;
    return out;
  }
};

class Eliminator {
 public:
  Eliminator(const Field& work, int declared, std::mt19937_64& rng)
      : work_(work), F_(*work), D_(declared), rng_(rng) {}

  Elem random_elem() { return static_cast<Elem>(rng_() % F_.order()); }

  MVPoly random_linear_form() {
    std::array<Elem, 4> c{};
    for (auto& x : c) x = random_elem();
    return MVPoly::linear_form(work_, c);
  }

  // Random members of the degree-D system spanned by the inputs times forms
  // of complementary degree.  Mixing degrees instead would make the top
  // homogeneous parts of all members proportional and create common zeros
  // at infinity.
  std::vector<MVPoly> combos(const std::vector<MVPoly>& polys, int count) {
    std::vector<MVPoly> out;
    for (int j = 0; j < count; ++j) {
      MVPoly g(work_, 4);
      for (const auto& p : polys) {
        if (p.is_zero()) continue;
        MVPoly term = p.scaled(random_elem());
        for (int e = p.total_degree(); e < D_; ++e) term *= random_linear_form();
        g += term;
      }
      out.push_back(std::move(g));
    }
    return out;
  }

  static bool unit(const UPoly& g) { return upoly::degree(g) == 0; }

  // Chart x1 = 1, free (x2, x3, x4).
  bool chart3(const std::vector<MVPoly>& polys) {
    auto g = combos(polys, 4);
    std::vector<LastVariableView> views(g.begin(), g.end());
    const int d2 = D_ * D_;
    const int d4 = d2 * d2;
    if (static_cast<std::uint64_t>(d4) + 1 > F_.order()) throw Error("elimination field too small");
    std::vector<Elem> inner_nodes, outer_nodes;
    for (int i = 0; i <= d2; ++i) inner_nodes.push_back(static_cast<Elem>(i));
    for (int i = 0; i <= d4; ++i) outer_nodes.push_back(static_cast<Elem>(i));
    std::array<std::vector<Elem>, 3> final_vals;
    for (Elem a : outer_nodes) {
      std::array<std::vector<Elem>, 3> r_vals;
      for (Elem b : inner_nodes) {
        const UPoly g1 = views[0].at(F_, 1, a, b, D_);
        for (int i = 0; i < 3; ++i)
          r_vals[i].push_back(upoly::binary_resultant(F_, g1, D_, views[i + 1].at(F_, 1, a, b, D_), D_));
      }
      std::array<UPoly, 3> r;
      for (int i = 0; i < 3; ++i) r[i] = upoly::interpolate(F_, inner_nodes, r_vals[i]);
      final_vals[0].push_back(upoly::binary_resultant(F_, r[0], d2, r[1], d2));
      final_vals[1].push_back(upoly::binary_resultant(F_, r[0], d2, r[2], d2));
      final_vals[2].push_back(upoly::binary_resultant(F_, r[1], d2, r[2], d2));
    }
    UPoly acc;
    for (int i = 0; i < 3; ++i) acc = upoly::gcd(F_, acc, upoly::interpolate(F_, outer_nodes, final_vals[i]));
    return unit(acc);
  }

  // Chart x1 = 0, x2 = 1, free (x3, x4).
  bool chart2(const std::vector<MVPoly>& polys) {
    auto g = combos(polys, 3);
    std::vector<LastVariableView> views(g.begin(), g.end());
    const int d2 = D_ * D_;
    std::vector<Elem> nodes;
    for (int i = 0; i <= d2; ++i) nodes.push_back(static_cast<Elem>(i));
    std::array<std::vector<Elem>, 3> vals;
    for (Elem b : nodes) {
      const UPoly g1 = views[0].at(F_, 0, 1, b, D_);
      const UPoly g2 = views[1].at(F_, 0, 1, b, D_);
      const UPoly g3 = views[2].at(F_, 0, 1, b, D_);
      vals[0].push_back(upoly::binary_resultant(F_, g1, D_, g2, D_));
      vals[1].push_back(upoly::binary_resultant(F_, g1, D_, g3, D_));
      vals[2].push_back(upoly::binary_resultant(F_, g2, D_, g3, D_));
    }
    UPoly acc;
    for (int i = 0; i < 3; ++i) acc = upoly::gcd(F_, acc, upoly::interpolate(F_, nodes, vals[i]));
    return unit(acc);
  }

  // Chart x1 = x2 = 0, x3 = 1, free x4.
  bool chart1(const std::vector<MVPoly>& polys) {
    UPoly acc;
    for (const auto& p : polys) acc = upoly::gcd(F_, acc, LastVariableView(p).at(F_, 0, 0, 1, D_));
    return unit(acc);
  }

  // The point [0:0:0:1].
  bool chart0(const std::vector<MVPoly>& polys) {
    const std::array<Elem, 4> pt{0, 0, 0, 1};
    return std::any_of(polys.begin(), polys.end(), [&](const MVPoly& p) { return p.eval(pt) != 0; });
  }

 private:
  Field work_;
  const FieldCtx& F_;
  int D_;
  std::mt19937_64& rng_;
};

}  // namespace

EliminationOutcome no_common_zero(const std::vector<MVPoly>& polys, int attempts, std::uint64_t seed,
                                  std::uint64_t min_order) {
  if (polys.empty()) throw Error("no polynomials to eliminate");
  const Field base = polys.front().field();
  int declared = 0;
  for (const auto& p : polys) {
    if (p.nvars() != 4 || (!p.is_zero() && !p.is_homogeneous())) throw Error("expected homogeneous polynomials in four variables");
    if (!same_field(p.ctx(), *base)) throw Error("polynomials over different fields");
    declared = std::max(declared, p.total_degree());
  }
  EliminationOutcome out;
  if (declared <= 0) {
    // Only constants: a nonzero constant has no zeros at all.
    out.certified = std::any_of(polys.begin(), polys.end(), [](const MVPoly& p) { return !p.is_zero(); });
    return out;
  }
  const std::uint64_t needed = std::max<std::uint64_t>(min_order, std::uint64_t(declared) * declared * declared * declared + 1);
  const Field work = extension_with_order(base, needed);
  const auto& F = *work;
  const Embedding& emb = embed(base, work);
  out.field = F.spec();
  std::vector<MVPoly> mapped;
  for (const auto& p : polys) mapped.push_back(p.map_field(emb));

  std::mt19937_64 rng(seed);
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    out.attempts = attempt;
    Eliminator el(work, declared, rng);
    // Random invertible change of coordinates.
    std::vector<MVPoly> images;
    for (;;) {
      Matrix m(4, std::vector<Elem>(4));
      for (auto& row : m)
        for (auto& x : row) x = el.random_elem();
      if (determinant(F, m) == 0) continue;
      images.clear();
      for (int i = 0; i < 4; ++i) images.push_back(MVPoly::linear_form(work, m[i]));
      break;
    }
    std::vector<MVPoly> changed;
    for (const auto& p : mapped) changed.push_back(p.substitute(images));
    if (!el.chart0(changed)) {
      out.failed_chart = "point";
      continue;
    }
    if (!el.chart1(changed)) {
      out.failed_chart = "x1=x2=0";
      continue;
    }
    if (!el.chart2(changed)) {
      out.failed_chart = "x1=0";
      continue;
    }
    if (!el.chart3(changed)) {
      out.failed_chart = "x1!=0";
      continue;
    }
    out.certified = true;
    out.failed_chart.clear();
    return out;
  }
  return out;
}

}  // namespace ql
