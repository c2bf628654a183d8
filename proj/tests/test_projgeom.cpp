#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ql/catalog.hpp"
#include "ql/linalg.hpp"
#include "ql/projgeom.hpp"

using namespace ql;

namespace {

std::vector<Line3> all_lines(const FieldCtx& F) {
  std::vector<Line3> out;
  enumerate_lines(F, [&](const Line3& l) {
    out.push_back(l);
    return true;
  });
  return out;
}

std::set<Point3> points_of(const FieldCtx& F, const Line3& l) {
  std::set<Point3> pts;
  for (Elem s = 0; s < F.order(); ++s)
    for (Elem t = 0; t < F.order(); ++t)
      if (s || t) pts.insert(normalize_point(F, l.point(F, s, t)));
  return pts;
}

}  // namespace

TEST_CASE("enumeration visits each line once") {
  for (auto [p, n] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    const Field F = make_field(p, n);
    const auto lines = all_lines(*F);
    CHECK(lines.size() == line_count(F->order()));
    CHECK(std::set<Line3>(lines.begin(), lines.end()).size() == lines.size());
    for (const auto& l : lines) {
      REQUIRE(Line3::through(*F, l.row(0), l.row(1)) == l);
      // every line has q + 1 points
      REQUIRE(points_of(*F, l).size() == F->order() + 1);
    }
  }
  CHECK(line_count(3) == 130);
  CHECK(line_count(9) == 7462);
}

TEST_CASE("Plucker incidence matches the rank test and shared points on all pairs over F_3") {
  const Field F = make_field(3, 1);
  const auto lines = all_lines(*F);
  REQUIRE(lines.size() == 130);
  std::vector<std::set<Point3>> pts;
  for (const auto& l : lines) pts.push_back(points_of(*F, l));
  int pairs = 0, meeting = 0;
  for (std::size_t i = 0; i < lines.size(); ++i)
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      ++pairs;
      const bool plucker = lines_meet(*F, lines[i], lines[j]);
      REQUIRE(plucker == lines_meet_by_rank(*F, lines[i], lines[j]));
      bool shared = false;
      for (const auto& p : pts[i]) shared = shared || pts[j].count(p);
      REQUIRE(plucker == shared);
      if (plucker) {
        ++meeting;
        const auto x = intersection_point(*F, lines[i], lines[j]);
        REQUIRE(x.has_value());
        REQUIRE(pts[i].count(normalize_point(*F, *x)));
        REQUIRE(pts[j].count(normalize_point(*F, *x)));
        const Plane3 h = plane_through(*F, lines[i], lines[j]);
        REQUIRE(line_in_plane(*F, lines[i], h));
        REQUIRE(line_in_plane(*F, lines[j], h));
      } else {
        REQUIRE_FALSE(intersection_point(*F, lines[i], lines[j]).has_value());
      }
    }
  CHECK(pairs == 8385);
  // a line meets (q + 1) * q * (q + 1) others: 4 * 3 * 4 per line over F_3
  CHECK(meeting == 130 * 48 / 2);
}

TEST_CASE("Plucker coordinates satisfy the Klein relation") {
  const Field F = make_field(2, 2);
  for (const auto& l : all_lines(*F)) {
    const auto& c = l.plucker();
    const Elem rel = F->add(F->sub(F->mul(c[0], c[5]), F->mul(c[1], c[4])), F->mul(c[2], c[3]));
    REQUIRE(rel == 0);
  }
}

TEST_CASE("line-plane incidence and intersection") {
  const Field F = make_field(3, 1);
  std::mt19937_64 rng(1);
  const auto lines = all_lines(*F);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& l = lines[rng() % lines.size()];
    Plane3 h;
    do {
      for (auto& c : h.c) c = oracle::random_elem(*F, rng);
    } while (is_zero_vector(h.c));
    const bool inside = h.contains(*F, l.row(0)) && h.contains(*F, l.row(1));
    REQUIRE(line_in_plane(*F, l, h) == inside);
    if (!inside) {
      const Point3 x = line_plane_intersection(*F, l, h);
      REQUIRE(h.contains(*F, x));
      REQUIRE(l.contains(*F, x));
    }
  }
}

TEST_CASE("pruned census agrees with the exhaustive scan") {
  std::mt19937_64 rng(17);
  for (const Field& F : {make_field(2, 1), make_field(3, 1), make_field(2, 2)}) {
    for (int trial = 0; trial < 6; ++trial) {
      // x3 A + x4 B always contains x3 = x4 = 0, so the census is never empty
      const MVPoly f = MVPoly::variable(F, 4, 2) * random_form(F, 3, rng) + MVPoly::variable(F, 4, 3) * random_form(F, 3, rng);
      if (f.is_zero()) continue;
      const auto fast = lines_on_surface(f, 1);
      CHECK(fast == lines_on_surface_exhaustive(f));
      CHECK(lines_on_surface(f, 4) == fast);
      for (const auto& l : fast) CHECK(line_in_surface(f, l));
    }
  }
  const Field F9 = make_field(3, 2);
  const MVPoly fermat = MVPoly::parse(F9, 4, "x1^4 + x2^4 + x3^4 + x4^4");
  CHECK(lines_on_surface(fermat, 8) == lines_on_surface_exhaustive(fermat));
}

TEST_CASE("enumeration respects the cap") {
  const Field F = make_field(3, 8);
  CHECK_THROWS_AS(enumerate_lines(*F, [](const Line3&) { return true; }, 1000), Error);
}

TEST_CASE("frobenius and field maps of lines") {
  const Field F3 = make_field(3, 1), F9 = make_field(3, 2);
  const Embedding& e = embed(F3, F9);
  for (const auto& l : all_lines(*F3)) {
    const Line3 big = l.map_field(*F9, e);
    REQUIRE(big.frobenius(*F9) == big);
    REQUIRE(big.pull_back(*F3, e) == l);
  }
  int fixed = 0;
  for (const auto& l : all_lines(*F9)) fixed += l.frobenius(*F9) == l;
  CHECK(fixed == 130);
}

TEST_CASE("local geometry at a point") {
  const Field F = make_field(3, 2);
  const MVPoly f = MVPoly::parse(F, 4, "x1^4 + x2^4 + x3^4 + x4^4");
  const auto lines = lines_on_surface(f, 4);
  REQUIRE(lines.size() == 112);
  for (std::size_t i = 0; i < lines.size(); i += 7) {
    const Point3 P = lines[i].row(0);
    const Plane3 T = tangent_plane(f, P);
    CHECK(line_in_plane(*F, lines[i], T));
    CHECK(contact_order(f, lines[i], P) == kInfiniteContact);
    // q_P vanishes along every line of the surface through P
    const MVPoly q = hessian_quadric(f, P);
    CHECK(q.total_degree() <= 2);
    for (Elem s = 0; s < 9; ++s) CHECK(q.eval(lines[i].point(*F, s, 1)) == 0);
  }
  // the point has to lie on the line
  const Line3 l = Line3::through(*F, {1, 0, 0, 0}, {0, 1, 0, 0});
  CHECK_THROWS_AS(contact_order(f, l, Point3{0, 0, 1, 0}), Error);
  CHECK(contact_order(f, l, Point3{1, 2, 0, 0}) >= 0);
  CHECK_THROWS_AS(tangent_plane(MVPoly::parse(F, 4, "x1^2*x2^2"), Point3{0, 0, 1, 0}), Error);
}

TEST_CASE("dense linear algebra") {
  const Field F = make_field(5, 1);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(4, std::vector<Elem>(4));
    for (auto& r : a)
      for (auto& c : r) c = oracle::random_elem(*F, rng);
    CHECK(determinant(*F, a) == oracle::det(*F, a));
    const auto inv = inverse(*F, a);
    CHECK(inv.has_value() == (oracle::det(*F, a) != 0));
    if (inv) CHECK(mat_mul(*F, a, *inv) == identity_matrix(4));
    const auto ker = kernel(*F, a, 4);
    CHECK(static_cast<int>(ker.size()) == 4 - rank(*F, a));
    for (const auto& v : ker) CHECK(mat_vec(*F, a, v) == std::vector<Elem>(4, 0));
  }
}
