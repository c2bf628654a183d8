#include <doctest.h>

#include "oracles.hpp"
#include "ql/catalog.hpp"
#include "ql/equivalence.hpp"
#include "ql/report.hpp"
#include "ql/upoly.hpp"
#include "ql/zsurface.hpp"

using namespace ql;

namespace {

const SurfaceReport& fixture(const std::string& name) {
  static std::map<std::string, SurfaceReport> cache;
  auto it = cache.find(name);
  if (it == cache.end()) {
    AnalysisOptions o;
    o.threads = 4;
    o.audits = false;
    it = cache.emplace(name, analyze_surface(entry_quartic(builtin_catalog().get(name)), o)).first;
  }
  return it->second;
}

// Binary forms with coefficients of s^{d-i} t^i share a root in P^1 over
// the algebraic closure.
bool common_root(const FieldCtx& F, upoly::UPoly a, int da, upoly::UPoly b, int db) {
  a.resize(da + 1, 0);
  b.resize(db + 1, 0);
  if (a[0] == 0 && b[0] == 0) return true;  // (1:0)
  upoly::UPoly ua(da + 1), ub(db + 1);
  for (int i = 0; i <= da; ++i) ua[da - i] = a[i];
  for (int i = 0; i <= db; ++i) ub[db - i] = b[i];
  upoly::trim(ua);
  upoly::trim(ub);
  return upoly::degree(upoly::gcd(F, ua, ub)) >= 1;
}

// Lowest power of x1 in a polynomial of x1 alone.
int order_at_zero(const MVPoly& r) {
  int best = -1;
  for (const auto& t : r.terms()) {
    const int e = unpack(t.key)[0];
    if (best < 0 || e < best) best = e;
  }
  return best;
}

// Order of vanishing of g along the standard conic, measured as the
// intersection multiplicity at P0 of the plane curves {fn = 0} and {g = 0}
// cut by a random plane through P0, read off from Res_b.
std::optional<int> section_order(const MVPoly& fn_small, const MVPoly& g_small, std::mt19937_64& rng) {
  const Field E = extension_field(fn_small.field(), 2);
  const FieldCtx& F = *E;
  const Embedding& emb = embed(fn_small.field(), E);
  const MVPoly fn = fn_small.map_field(emb), g = g_small.map_field(emb);
  for (int attempt = 0; attempt < 20; ++attempt) {
    const Elem s0 = 1 + static_cast<Elem>(rng() % (F.order() - 1));
    const Point3 P0{1, F.mul(s0, s0), s0, 0};
    bool tangent_is_plane = true;
    for (int i = 0; i < 3; ++i) tangent_is_plane = tangent_is_plane && fn.partial(i).eval(P0) == 0;
    if (tangent_is_plane) continue;
    Point3 A{}, B{};
    for (int i = 0; i < 4; ++i) {
      A[i] = oracle::random_elem(F, rng);
      B[i] = oracle::random_elem(F, rng);
    }
    if (fn.eval(B) == 0 || g.eval(B) == 0) continue;
    std::vector<MVPoly> imgs;
    for (int i = 0; i < 4; ++i)
      imgs.push_back(MVPoly::constant(E, 2, P0[i]) + MVPoly::variable(E, 2, 0).scaled(A[i]) +
                     MVPoly::variable(E, 2, 1).scaled(B[i]));
    const MVPoly Fs = fn.substitute(imgs), Gs = g.substitute(imgs);
    // the line a = 0 of the section plane must meet both curves only at P0
    upoly::UPoly f0, g0;
    for (const auto& [poly, out] : {std::pair{&Fs, &f0}, {&Gs, &g0}}) {
      const MVPoly r = poly->specialize(0, 0);
      out->assign(r.degree_in(1) + 1, 0);
      for (const auto& t : r.terms()) (*out)[unpack(t.key)[1]] = t.coeff;
    }
    const auto gc = upoly::gcd(F, f0, g0);
    bool pure_power = true;
    for (int i = 0; i + 1 < static_cast<int>(gc.size()); ++i) pure_power = pure_power && gc[i] == 0;
    if (!pure_power) continue;
    const MVPoly res = resultant_in(Fs, Gs, 1);
    if (res.is_zero()) continue;
    return order_at_zero(res);
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("max-min arithmetic") {
  for (auto [a, b] : {std::pair{64, 32}, {62, 28}, {20, 4}, {7, 0}}) {
    int best = -1000;
    std::vector<int> arg;
    for (int m = 1; m <= a; ++m) {
      const int v = std::min(a - 2 * m, b + 2 * m);
      if (v > best) {
        best = v;
        arg = {m};
      } else if (v == best) {
        arg.push_back(m);
      }
    }
    const auto [value, ms] = max_min_bound(a, b);
    CHECK(value == best);
    CHECK(ms == arg);
  }
  CHECK(max_min_bound(64, 32).first == 48);
  CHECK(max_min_bound(64, 32).second == std::vector<int>{8});
  CHECK(max_min_bound(62, 28).first == 44);
  CHECK(max_min_bound(62, 28).second == std::vector<int>{8, 9});
}

TEST_CASE("normalization carries the standard conic onto the surface") {
  for (const char* name : {"conic3", "char2_conic", "char2_four"}) {
    CAPTURE(name);
    const auto& r = fixture(name);
    REQUIRE_FALSE(r.conics.empty());
    for (const auto& ca : r.conics) {
      const auto& c = ca.conic;
      CHECK(c.irreducible);
      CHECK(contains_standard_conic(c.normalized));
      const MVPoly fE = r.f.map_field(embed(r.f.field(), c.field));
      CHECK(transform(fE, c.M) == c.normalized);
      const FieldCtx& F = *c.field;
      for (Elem s = 0; s < 12 && s < F.order(); ++s) {
        const std::vector<Elem> w{1, F.mul(s, s), s, 0};
        const auto x = mat_vec(F, c.M, w);
        CHECK(c.plane.contains(F, {x[0], x[1], x[2], x[3]}));
        CHECK(fE.eval(x) == 0);
      }
    }
  }
}

TEST_CASE("Z polynomial: degree 16, not a multiple of f, vanishing on meeting lines") {
  for (const char* name : {"conic3", "char2_conic", "char2_four"}) {
    CAPTURE(name);
    const auto& r = fixture(name);
    for (const auto& ca : r.conics) {
      REQUIRE(ca.error.empty());
      CHECK(ca.g_degree == 16);
      CHECK(ca.g.total_degree() == 16);
      CHECK(ca.g.is_homogeneous());
      REQUIRE(ca.divisibility.has_value());
      CHECK_FALSE(ca.divisibility->divisible);
      // independent of the report: restrict g to each normalized census line
      const Embedding& e = embed(r.census, ca.conic.field);
      const FieldCtx& F = *ca.conic.field;
      int meeting = 0;
      for (const auto& l : r.lines) {
        const Line3 w = to_normalized(ca.conic, l, e);
        if (!line_meets_standard_conic(F, w)) continue;
        ++meeting;
        const auto row0 = w.row(0), row1 = w.row(1);
        for (Elem v : ca.g.restrict_to_line(row0, row1)) CHECK(v == 0);
      }
      CHECK(meeting == ca.containment_checked);
      CHECK(ca.containment_failures == 0);
      CHECK(ca.bound.pass());
    }
  }
}

TEST_CASE("meeting the standard conic") {
  const Field F = make_field(3, 2);
  // through [1:0:0:0], which lies on w1 w2 = w3^2, w4 = 0
  CHECK(line_meets_standard_conic(*F, Line3::through(*F, {1, 0, 0, 0}, {0, 0, 0, 1})));
  // through [0:0:1:0] and [0:0:0:1]: meets w4 = 0 at a point off the conic
  CHECK_FALSE(line_meets_standard_conic(*F, Line3::through(*F, {0, 0, 1, 0}, {0, 0, 0, 1})));
  CHECK(line_in_standard_plane(*F, Line3::through(*F, {1, 0, 0, 0}, {0, 1, 0, 0})));
}

TEST_CASE("resultant vanishes exactly where the two families share a parameter") {
  std::mt19937_64 rng(31);
  const auto& ca = fixture("conic3").conics.front();
  const auto fam = families_along_conic(ca.conic.normalized);
  CHECK(fam.q.degree == 4);
  CHECK(fam.h.degree == 6);
  const FieldCtx& F = *ca.conic.field;
  int zeros = 0;
  auto check_point = [&](const std::array<Elem, 4>& x) {
    const bool vanishes = ca.g.eval(x) == 0;
    zeros += vanishes;
    REQUIRE(vanishes == common_root(F, fam.q.eval(x), 4, fam.h.eval(x), 6));
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::array<Elem, 4> x{};
    for (auto& c : x) c = oracle::random_elem(F, rng);
    check_point(x);
  }
  // points of the conic itself lie on Z
  for (Elem s = 1; s < 20; ++s) check_point({1, F.mul(s, s), s, 0});
  CHECK(zeros >= 19);
}

TEST_CASE("multiplicity along the conic matches intersection order on a plane section") {
  std::mt19937_64 rng(77);
  for (const char* name : {"conic3", "char2_conic", "char2_four"}) {
    CAPTURE(name);
    const auto& r = fixture(name);
    for (const auto& ca : r.conics) {
      REQUIRE(ca.multiplicity.has_value());
      REQUIRE(ca.multiplicity->m.has_value());
      const int m = *ca.multiplicity->m;
      CHECK(m >= 1);
      for (int k = 0; k < 2; ++k) {
        const auto ord = section_order(ca.conic.normalized, ca.g, rng);
        REQUIRE(ord.has_value());
        CHECK(*ord == m);
      }
    }
  }
}

TEST_CASE("multiplicity oracle on hand-built g") {
  // fn contains Q0; g = Q^k u vanishes to order k along Q0 inside fn = 0 when
  // u does not vanish on Q0
  const Field F = make_field(3, 2);
  const MVPoly Q = MVPoly::parse(F, 4, "x1*x2 - x3^2");
  const MVPoly fn = MVPoly::parse(F, 4, "(x1*x2 - x3^2)*(x1^2 + x2^2 + x3^2) + x4*(x1^3 + x2^3 + x3^3 + x4^3 + x1*x2*x4)");
  REQUIRE(contains_standard_conic(fn));
  const MVPoly u = MVPoly::parse(F, 4, "x1 + x2 + [0,1]*x3");
  CHECK(multiplicity_along_conic(fn, Q * u).m == 1);
  CHECK(multiplicity_along_conic(fn, Q * Q * u).m == 2);
  CHECK(multiplicity_along_conic(fn, Q.pow(3)).m == 3);
  CHECK(multiplicity_along_conic(fn, MVPoly::variable(F, 4, 3) * u).m == 1);
  std::mt19937_64 rng(5);
  CHECK(section_order(fn, Q * Q * u, rng) == 2);
  CHECK_THROWS_AS(multiplicity_along_conic(fn, u), Error);
}
