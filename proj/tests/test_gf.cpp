#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ql/gf.hpp"

using namespace ql;

namespace {

std::vector<Field> small_fields() {
  std::vector<Field> out;
  for (unsigned p : {2u, 3u, 5u, 7u})
    for (unsigned n = 1;; ++n) {
      std::uint64_t q = 1;
      for (unsigned i = 0; i < n; ++i) q *= p;
      if (q > 81) break;
      out.push_back(make_field(p, n));
    }
  return out;
}

}  // namespace

TEST_CASE("field axioms hold exhaustively up to order 81") {
  for (const auto& Fp : small_fields()) {
    const FieldCtx& F = *Fp;
    const Elem q = F.order();
    CAPTURE(F.spec());
    for (Elem a = 0; a < q; ++a) {
      REQUIRE(F.add(a, 0) == a);
      REQUIRE(F.mul(a, 1) == a);
      REQUIRE(F.add(a, F.neg(a)) == 0);
      if (a) REQUIRE(F.mul(a, F.inv(a)) == 1);
      for (Elem b = 0; b < q; ++b) {
        REQUIRE(F.add(a, b) == F.add(b, a));
        REQUIRE(F.mul(a, b) == F.mul(b, a));
        if (a && b) REQUIRE(F.mul(a, b) != 0);
        for (Elem c = 0; c < q; c += (q > 27 ? 7 : 1)) {
          REQUIRE(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)));
          REQUIRE(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)));
          REQUIRE(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)));
        }
      }
    }
  }
}

TEST_CASE("products agree with schoolbook reduction modulo the defining polynomial") {
  for (const auto& Fp : small_fields()) {
    const FieldCtx& F = *Fp;
    CAPTURE(F.spec());
    for (Elem a = 0; a < F.order(); ++a)
      for (Elem b = 0; b < F.order(); ++b) {
        const auto da = oracle::digits(a, F.p(), F.n()), db = oracle::digits(b, F.p(), F.n());
        REQUIRE(F.mul(a, b) == oracle::undigits(oracle::polymul_mod(da, db, F.modulus(), F.p()), F.p()));
        REQUIRE(F.add(a, b) == oracle::undigits(oracle::polyadd(da, db, F.p()), F.p()));
      }
  }
}

TEST_CASE("Frobenius is an automorphism of order n fixing exactly the prime field") {
  for (const auto& Fp : small_fields()) {
    const FieldCtx& F = *Fp;
    CAPTURE(F.spec());
    int fixed = 0;
    for (Elem a = 0; a < F.order(); ++a) {
      Elem x = a;
      for (unsigned i = 0; i < F.n(); ++i) x = F.frobenius(x);
      REQUIRE(x == a);
      fixed += F.frobenius(a) == a;
      for (Elem b = 0; b < F.order(); ++b) {
        REQUIRE(F.frobenius(F.add(a, b)) == F.add(F.frobenius(a), F.frobenius(b)));
        REQUIRE(F.frobenius(F.mul(a, b)) == F.mul(F.frobenius(a), F.frobenius(b)));
      }
    }
    CHECK(fixed == static_cast<int>(F.p()));
  }
}

TEST_CASE("primitive element generates the multiplicative group") {
  for (const auto& Fp : small_fields()) {
    const FieldCtx& F = *Fp;
    std::set<Elem> seen;
    Elem x = 1;
    for (Elem i = 0; i + 1 < F.order(); ++i) {
      seen.insert(x);
      x = F.mul(x, F.primitive());
    }
    CHECK(x == 1);
    CHECK(seen.size() == F.order() - 1);
    CHECK(F.pow(F.primitive(), F.order() - 1) == 1);
    CHECK(F.pow(F.primitive(), -1) == F.inv(F.primitive()));
  }
}

TEST_CASE("irreducibility test matches the necklace count") {
  for (unsigned p : {2u, 3u, 5u})
    for (unsigned n = 1; n <= (p == 2 ? 6u : p == 3 ? 4u : 3u); ++n) {
      std::vector<unsigned> poly(n + 1, 0);
      poly[n] = 1;
      long count = 0;
      for (;;) {
        count += is_irreducible(p, poly);
        std::size_t i = 0;
        while (i < n && ++poly[i] == p) poly[i++] = 0;
        if (i == n) break;
      }
      CAPTURE(p);
      CAPTURE(n);
      CHECK(count == oracle::irreducible_count(p, n));
      CHECK(is_irreducible(p, first_irreducible(p, n)));
    }
}

TEST_CASE("field specs parse, intern and reject bad input") {
  const Field a = parse_field_spec("p=3,n=2");
  const Field b = make_field(3, 2);
  CHECK(a == b);
  CHECK(parse_field_spec(a->spec()) == a);
  CHECK(a->order() == 9);
  CHECK_THROWS_AS(parse_field_spec("p=4,n=1"), Error);
  CHECK_THROWS_AS(parse_field_spec("p=3,n=2,mod=1,0,0"), Error);  // x^2 is reducible
  CHECK_THROWS_AS(parse_field_spec("garbage"), Error);
  for (Elem x = 0; x < a->order(); ++x) CHECK(a->parse_literal(a->literal(x)) == x);
  CHECK(make_field(3, 1)->from_int(-1) == 2);
}

TEST_CASE("embeddings are injective homomorphisms with working preimages") {
  const std::vector<std::pair<Field, Field>> pairs{
      {make_field(3, 1), make_field(3, 4)}, {make_field(3, 2), make_field(3, 4)}, {make_field(2, 2), make_field(2, 6)},
      {make_field(2, 3), make_field(2, 6)}, {make_field(2, 1), make_field(2, 2)}};
  for (const auto& [S, B] : pairs) {
    CAPTURE(S->spec());
    const Embedding& e = embed(S, B);
    std::set<Elem> image;
    for (Elem a = 0; a < S->order(); ++a) {
      image.insert(e(a));
      REQUIRE(e.preimage(e(a)) == a);
      for (Elem b = 0; b < S->order(); ++b) {
        REQUIRE(e(S->add(a, b)) == B->add(e(a), e(b)));
        REQUIRE(e(S->mul(a, b)) == B->mul(e(a), e(b)));
      }
    }
    CHECK(image.size() == S->order());
    // the image is the fixed field of the |S|-power map
    int fixed = 0;
    for (Elem x = 0; x < B->order(); ++x) {
      const bool in = B->pow(x, S->order()) == x;
      fixed += in;
      CHECK(in == e.preimage(x).has_value());
    }
    CHECK(fixed == static_cast<int>(S->order()));
  }
  CHECK_THROWS_AS(Embedding(make_field(3, 2), make_field(3, 3)), Error);
}

TEST_CASE("extension fields by order") {
  CHECK(extension_with_order(make_field(3, 2), 24)->order() == 81);
  CHECK(extension_with_order(make_field(2, 2), 24)->order() == 64);
  CHECK(extension_with_order(make_field(2, 1), 2)->order() == 2);
  CHECK(extension_field(make_field(3, 1), 2) == make_field(3, 2));
}

TEST_CASE("value-type elements refuse mixed fields") {
  const Field F9 = make_field(3, 2), F3 = make_field(3, 1);
  const FieldElement x(F9, 4);
  CHECK((x * x.inv()).value() == 1);
  CHECK((x - x).is_zero());
  CHECK_THROWS_AS(x + FieldElement(F3, 1), Error);
  CHECK(enumerate_elements(F9).size() == 9);
  CHECK_THROWS_AS(enumerate_elements(make_field(3, 8), 100), Error);
}
