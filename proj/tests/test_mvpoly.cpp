#include <doctest.h>

#include "oracles.hpp"
#include "ql/catalog.hpp"
#include "ql/mvpoly.hpp"
#include "ql/resultant.hpp"
#include "ql/upoly.hpp"

using namespace ql;

namespace {

MVPoly P(const Field& F, std::string_view s) { return MVPoly::parse(F, 4, s); }

// All exponent vectors of total degree <= d.
std::vector<Exponents> exponents_up_to(int d) {
  std::vector<Exponents> out;
  for (int a = 0; a <= d; ++a)
    for (int b = 0; a + b <= d; ++b)
      for (int c = 0; a + b + c <= d; ++c)
        for (int e = 0; a + b + c + e <= d; ++e)
          out.push_back({static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b), static_cast<std::uint8_t>(c),
                         static_cast<std::uint8_t>(e)});
  return out;
}

}  // namespace

TEST_CASE("binomials mod p agree with Pascal's triangle") {
  for (unsigned p : {2u, 3u, 5u, 7u}) {
    std::vector<std::vector<unsigned>> row{{1}};
    for (unsigned n = 1; n <= 40; ++n) {
      std::vector<unsigned> next(n + 1, 1);
      for (unsigned k = 1; k < n; ++k) next[k] = (row[n - 1][k - 1] + row[n - 1][k]) % p;
      row.push_back(next);
    }
    for (unsigned n = 0; n <= 40; ++n)
      for (unsigned k = 0; k <= n; ++k) REQUIRE(binomial_mod(n, k, p) == row[n][k]);
    CHECK(binomial_mod(3, 5, p) == 0);
  }
}

TEST_CASE("Taylor expansion through Hasse derivatives on random quartics") {
  std::mt19937_64 rng(2024);
  const std::vector<Field> fields{make_field(2, 2), make_field(3, 2), make_field(3, 1), make_field(5, 1)};
  const auto alphas = exponents_up_to(4);
  for (int trial = 0; trial < 1000; ++trial) {
    const Field& F = fields[trial % fields.size()];
    const MVPoly f = random_form(F, 4, rng);
    std::array<Elem, 4> x{}, v{}, xv{};
    for (int i = 0; i < 4; ++i) {
      x[i] = oracle::random_elem(*F, rng);
      v[i] = oracle::random_elem(*F, rng);
      xv[i] = F->add(x[i], v[i]);
    }
    Elem sum = 0;
    for (const auto& a : alphas) {
      Elem mono = 1;
      for (int i = 0; i < 4; ++i) mono = F->mul(mono, F->pow(v[i], a[i]));
      sum = F->add(sum, F->mul(f.hasse_derivative(a).eval(x), mono));
    }
    REQUIRE(sum == f.eval(xv));
  }
}

TEST_CASE("first Hasse derivatives are the partial derivatives") {
  std::mt19937_64 rng(5);
  const Field F = make_field(3, 2);
  for (int trial = 0; trial < 20; ++trial) {
    const MVPoly f = random_form(F, 4, rng);
    for (int i = 0; i < 4; ++i) {
      Exponents e{};
      e[i] = 1;
      CHECK(f.hasse_derivative(e) == f.partial(i));
    }
  }
  // D^(2) x^4 = 6 x^2 = 0 in characteristic 3, D^(3) x^4 = 4 x
  const MVPoly x4 = P(F, "x1^4");
  CHECK(x4.hasse_derivative({2, 0, 0, 0}).is_zero());
  CHECK(x4.hasse_derivative({3, 0, 0, 0}) == P(F, "x1"));
}

TEST_CASE("parse and print round-trip in graded lex order") {
  const Field F = make_field(3, 1);
  const MVPoly f = P(F, "x4^4 + 2*x1*x2^3 - x1^4 + x3*(x3^3 - x4^3)");
  CHECK(f.to_string() == "2*x1^4 + 2*x1*x2^3 + x3^4 + 2*x3*x4^3 + x4^4");
  CHECK(P(F, f.to_string()) == f);
  CHECK(f.is_homogeneous());
  CHECK(f.total_degree() == 4);
  CHECK(f.degree_in(1) == 3);
  CHECK(P(F, "x1 - x1").is_zero());
  CHECK(P(F, "0").total_degree() == -1);
  CHECK_THROWS_AS(P(F, "x5"), Error);
  CHECK_THROWS_AS(P(F, "x1 +"), Error);
  const Field F9 = make_field(3, 2);
  const MVPoly g = P(F9, "[0,1]*x1^2 + x2^2");
  CHECK(P(F9, g.to_string()) == g);
}

TEST_CASE("ring operations agree with evaluation") {
  std::mt19937_64 rng(7);
  const Field F = make_field(2, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const MVPoly a = random_form(F, 3, rng), b = random_form(F, 2, rng);
    std::array<Elem, 4> x{};
    for (auto& c : x) c = oracle::random_elem(*F, rng);
    CHECK((a * b).eval(x) == F->mul(a.eval(x), b.eval(x)));
    CHECK((a + a * b).eval(x) == F->add(a.eval(x), F->mul(a.eval(x), b.eval(x))));
    CHECK(b.pow(3).eval(x) == F->pow(b.eval(x), 3));
    CHECK(a.scaled(5).eval(x) == F->mul(5, a.eval(x)));
    // substitution is composition
    std::vector<MVPoly> imgs;
    std::array<Elem, 4> y{};
    for (int i = 0; i < 4; ++i) {
      imgs.push_back(random_form(F, 1, rng));
      y[i] = imgs.back().eval(x);
    }
    CHECK(a.substitute(imgs).eval(x) == a.eval(y));
    CHECK(a.specialize(2, x[2]).eval(x) == a.eval(x));
  }
}

TEST_CASE("division with remainder reconstructs the dividend") {
  std::mt19937_64 rng(11);
  const Field F = make_field(3, 2);
  for (int trial = 0; trial < 30; ++trial) {
    const MVPoly a = random_form(F, 4, rng), d = random_form(F, 2, rng);
    if (d.is_zero()) continue;
    const auto [q, r] = a.divmod(d);
    CHECK(q * d + r == a);
    for (const auto& t : r.terms()) {
      const auto e = unpack(t.key), l = unpack(d.leading_term().key);
      bool divisible = true;
      for (int i = 0; i < 4; ++i) divisible = divisible && e[i] >= l[i];
      CHECK_FALSE(divisible);
    }
    CHECK((a * d).exact_div(d) == a);
  }
}

TEST_CASE("field maps and p-th powers") {
  const Field F3 = make_field(3, 1), F9 = make_field(3, 2);
  const MVPoly f = P(F3, "x1^4 + 2*x2*x3^3");
  const MVPoly g = f.map_field(embed(F3, F9));
  CHECK(g.pull_back(embed(F3, F9)) == f);
  CHECK_FALSE(P(F9, "[0,1]*x1").pull_back(embed(F3, F9)).has_value());
  CHECK(P(F3, "x1^3 + x2^6*x3^3").is_pth_power());
  CHECK_FALSE(P(F3, "x1^3 + x2").is_pth_power());
}

TEST_CASE("binary restriction to a line") {
  std::mt19937_64 rng(3);
  const Field F = make_field(5, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const MVPoly f = random_form(F, 4, rng);
    std::array<Elem, 4> a{}, b{};
    for (int i = 0; i < 4; ++i) {
      a[i] = oracle::random_elem(*F, rng);
      b[i] = oracle::random_elem(*F, rng);
    }
    const auto c = f.restrict_to_line(a, b);
    REQUIRE(c.size() == 5);
    for (Elem s = 0; s < 5; ++s)
      for (Elem t = 0; t < 5; ++t) {
        std::array<Elem, 4> x{};
        for (int i = 0; i < 4; ++i) x[i] = F->add(F->mul(s, a[i]), F->mul(t, b[i]));
        Elem v = 0;
        for (int i = 0; i <= 4; ++i) v = F->add(v, F->mul(c[i], F->mul(F->pow(s, 4 - i), F->pow(t, i))));
        REQUIRE(v == f.eval(x));
      }
  }
}

TEST_CASE("univariate helpers") {
  const Field F = make_field(7, 1);
  const FieldCtx& K = *F;
  const upoly::UPoly a{1, 2, 1};  // (x + 1)^2
  const upoly::UPoly b{6, 1};     // x - 1
  CHECK(upoly::root_multiplicity(K, a, 6) == 2);
  CHECK(upoly::gcd(K, upoly::mul(K, a, b), upoly::mul(K, b, b)) == upoly::UPoly{6, 1});
  const auto [q, r] = upoly::divmod(K, upoly::mul(K, a, b), b);
  CHECK(q == a);
  CHECK(upoly::degree(r) == -1);
  CHECK_THROWS_AS(upoly::exact_div(K, a, b), Error);
  const std::vector<Elem> xs{0, 1, 2, 3}, ys{5, 0, 3, 1};
  const auto p = upoly::interpolate(K, xs, ys);
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(upoly::eval(K, p, xs[i]) == ys[i]);
  // s t (s - t)
  const auto roots = upoly::binary_roots(K, {0, 1, 6, 0}, 3);
  CHECK(roots.size() == 3);
}

TEST_CASE("resultants specialize at random points") {
  std::mt19937_64 rng(99);
  const Field F = make_field(3, 2);
  // Random binary forms in (s:t) of degrees 2 and 3 with coefficients
  // linear / quadratic in x.
  UPolyOver a{2, {}}, b{3, {}};
  for (int i = 0; i <= 2; ++i) a.coeffs.push_back(random_form(F, 1, rng));
  for (int i = 0; i <= 3; ++i) b.coeffs.push_back(random_form(F, 2, rng));
  const MVPoly r = sylvester_resultant(a, b);
  CHECK(r.is_homogeneous());
  CHECK(r.total_degree() == 3 * 1 + 2 * 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<Elem, 4> x{};
    for (auto& c : x) c = oracle::random_elem(*F, rng);
    std::vector<Elem> av, bv;
    for (const auto& c : a.coeffs) av.push_back(c.eval(x));
    for (const auto& c : b.coeffs) bv.push_back(c.eval(x));
    REQUIRE(r.eval(x) == oracle::sylvester(*F, av, 2, bv, 3));
    REQUIRE(upoly::binary_resultant(*F, av, 2, bv, 3) == oracle::sylvester(*F, av, 2, bv, 3));
  }
}

TEST_CASE("resultant in one variable eliminates it") {
  const Field F = make_field(5, 1);
  const MVPoly a = P(F, "x1^2 - x2"), b = P(F, "x1 - x3");
  // Res_x1(x1^2 - x2, x1 - x3) = x3^2 - x2 up to sign
  const MVPoly r = resultant_in(a, b, 0);
  CHECK(r.degree_in(0) <= 0);
  CHECK((r == P(F, "x3^2 - x2") || r == P(F, "x2 - x3^2")));
}
