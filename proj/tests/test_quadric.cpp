#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "qavg/quadric.hpp"

using namespace qavg;

namespace {

std::vector<std::int64_t> pat(std::initializer_list<std::int64_t> v) {
  return v;
}

}  // namespace

TEST_CASE("surface construction validates") {
  auto f3 = make_field(3);
  CHECK_THROWS_AS(make_surface(f3, pat({1, 0, 1, 1})), DegenerateFormError);
  CHECK_THROWS_AS(make_surface(f3, pat({3, 1})), DegenerateFormError);  // 3 = 0
  CHECK_THROWS_AS(make_surface(f3, pat({1})), RangeError);
  CHECK(make_surface(make_field(5), pat({1, 1})).d == 2);
  CHECK_THROWS_AS(make_surface(f3, std::vector<std::int64_t>(30, 1)),
                  GridBudgetError);
}

TEST_CASE("point counts: enumeration oracle vs closed form") {
  struct Case {
    std::uint32_t q;
    std::vector<std::int64_t> coeffs;
    std::uint64_t count;
  };
  const Case cases[] = {
      {3, {1, -1}, 5},            // pairs x1 = +-x2: 2q - 1
      {3, {1, -1, 1, -1}, 33},
      {3, {1, 1, 1, 2}, 21},
  };
  for (const auto& c : cases) {
    const auto s = make_surface(make_field_q(c.q), c.coeffs);
    const auto [ind, count] = enumerate_surface(s);
    CHECK(count == c.count);
    CHECK(count_points_closed_form(s) == c.count);
    // indicator properties: {0,1}-valued, 0 in S, S = -S
    CHECK(ind[0] == Complex(1.0));
    double sum = 0;
    for (std::size_t i = 0; i < ind.size(); ++i) {
      CHECK((ind[i] == Complex(0.0) || ind[i] == Complex(1.0)));
      sum += ind[i].real();
    }
    CHECK(std::uint64_t(sum) == count);
  }
}

TEST_CASE("closed form matches enumeration over the d=4 sign matrix") {
  for (std::uint32_t q : {3u, 5u}) {
    auto f = make_field_q(q);
    for (int mask = 0; mask < 16; ++mask) {
      std::vector<std::int64_t> coeffs(4);
      for (int i = 0; i < 4; ++i) coeffs[i] = (mask >> i) & 1 ? -1 : 1;
      const auto s = make_surface(f, coeffs);
      CHECK(enumerate_surface(s).count == count_points_closed_form(s));
    }
  }
}

TEST_CASE("closed form rejects odd dimension") {
  const auto s = make_surface(make_field(3), pat({1, 1, 1}));
  CHECK_THROWS_AS(count_points_closed_form(s), UnsupportedError);
}

TEST_CASE("dual surface inverts coefficients") {
  auto f5 = make_field(5);
  const auto s = make_surface(f5, pat({2, 3}));
  const auto dual = dual_surface(s);
  CHECK(dual.coeffs[0].idx == 3);  // 1/2 = 3 mod 5
  CHECK(dual.coeffs[1].idx == 2);  // 1/3 = 2 mod 5
  const auto self = make_surface(make_field(3), pat({1, -1, 1, -1}));
  CHECK(dual_surface(self).coeffs == self.coeffs);
  // dual point count satisfies the closed form too
  const auto sd = dual_surface(make_surface(make_field(3), pat({1, 1, 1, 2})));
  CHECK(enumerate_surface(sd).count == count_points_closed_form(sd));
}

TEST_CASE("hyperbolicity criterion against exhaustive subspace search") {
  auto f3 = make_field(3);
  for (int mask = 0; mask < 16; ++mask) {
    std::vector<std::int64_t> coeffs(4);
    for (int i = 0; i < 4; ++i) coeffs[i] = (mask >> i) & 1 ? -1 : 1;
    const auto s = make_surface(f3, coeffs);
    const bool criterion = hyperbolicity_test(s);
    const auto found = isotropic_subspace(s, SubspaceMode::Search);
    CHECK(criterion == found.has_value());
    if (found) CHECK(verify_isotropic(s, *found));
  }
  CHECK(hyperbolicity_test(make_surface(f3, pat({1, -1, 1, -1}))));
  CHECK(hyperbolicity_test(make_surface(make_field(5), pat({1, -1, 1, -1}))));
  CHECK_FALSE(hyperbolicity_test(make_surface(f3, pat({1, 1, 1, 2}))));
  CHECK(hyperbolicity_test(make_surface(f3, pat({1, 1, 1, 1}))));
  CHECK_THROWS_AS(hyperbolicity_test(make_surface(f3, pat({1, 1, 1}))),
                  UnsupportedError);
}

TEST_CASE("subspace enumeration visits each subspace once") {
  auto f3 = make_field(3);
  std::uint64_t n = for_each_subspace(*f3, 4, 2, [](const auto&) { return false; });
  CHECK(n == 130);  // Gaussian binomial [4 choose 2]_3
  n = for_each_subspace(*make_field(5), 4, 2, [](const auto&) { return false; });
  CHECK(n == 806);  // [4 choose 2]_5
}

TEST_CASE("constructive isotropic subspace for paired patterns") {
  auto f3 = make_field(3);
  const auto s = make_surface(f3, pat({1, -1, 1, -1}));
  const auto h = isotropic_subspace(s, SubspaceMode::Construct);
  REQUIRE(h.has_value());
  REQUIRE(h->dim() == 2);
  CHECK(h->basis[0] == std::vector<Elem>{{1}, {1}, {0}, {0}});
  CHECK(h->basis[1] == std::vector<Elem>{{0}, {0}, {1}, {1}});
  CHECK(verify_isotropic(s, *h));

  // mass q^{d/2}, contained in S pointwise
  const auto ind = subspace_indicator(s, *h);
  const auto sen = enumerate_surface(s);
  double mass = 0;
  for (std::size_t i = 0; i < ind.size(); ++i) {
    mass += ind[i].real();
    if (ind[i] != Complex(0.0)) CHECK(sen.indicator[i] == Complex(1.0));
  }
  CHECK(std::uint64_t(mass) == 9);

  const auto s6 = make_surface(f3, pat({1, -1, 1, -1, 1, -1}));
  const auto h6 = isotropic_subspace(s6, SubspaceMode::Construct);
  REQUIRE(h6.has_value());
  CHECK(h6->dim() == 3);
  CHECK(verify_isotropic(s6, *h6));

  CHECK_THROWS_AS(
      isotropic_subspace(make_surface(f3, pat({1, 1, 1, 2})),
                         SubspaceMode::Construct),
      NoConstructivePatternError);
  CHECK_FALSE(isotropic_subspace(make_surface(f3, pat({1, 1, 1, 2})),
                                 SubspaceMode::Search)
                  .has_value());
  // no pairing but a subspace exists: search finds it
  const auto s1111 = make_surface(make_field(5), pat({1, 1, 1, 1}));
  CHECK_THROWS_AS(isotropic_subspace(s1111, SubspaceMode::Construct),
                  NoConstructivePatternError);
  const auto hs = isotropic_subspace(s1111, SubspaceMode::Search);
  REQUIRE(hs.has_value());
  CHECK(verify_isotropic(s1111, *hs));
}

TEST_CASE("exponent region vertices and membership") {
  const auto r4 = region_for(4, true);
  const RatPoint a{{5, 6}, {1, 3}}, b{{2, 3}, {1, 6}};
  CHECK(std::count(r4.vertices.begin(), r4.vertices.end(), a) == 1);
  CHECK(std::count(r4.vertices.begin(), r4.vertices.end(), b) == 1);
  CHECK(region_classify(r4, a) == RegionLocation::Vertex);
  CHECK(region_classify(r4, {{0, 1}, {0, 1}}) == RegionLocation::Vertex);
  CHECK(region_contains(r4, {{1, 2}, {1, 2}}));  // interior
  CHECK_FALSE(region_contains(r4, {{4, 5}, {1, 5}}));
  // midpoint of the critical edge y = x - 1/2
  CHECK(region_classify(r4, {{3, 4}, {1, 4}}) == RegionLocation::Boundary);
  CHECK(region_classify(r4, {{3, 4}, {1, 5}}) == RegionLocation::Outside);

  const auto r6 = region_for(6, true);
  const RatPoint c{{13, 15}, {1, 5}}, e{{4, 5}, {2, 15}};
  CHECK(region_classify(r6, c) == RegionLocation::Vertex);
  CHECK(region_classify(r6, e) == RegionLocation::Vertex);

  const auto g4 = region_for(4, false);
  CHECK(region_classify(g4, {{4, 5}, {1, 5}}) == RegionLocation::Vertex);
  CHECK(g4.hull.size() == 4);
}

TEST_CASE("points just beyond the critical edge are excluded (d=4)") {
  // the lower-right edge through (2/3, 1/6) and (5/6, 1/3) is y = x - 1/2
  const auto r = region_for(4, true);
  const Rational tiny(1, 1000);
  for (std::int64_t num = 68; num <= 82; num += 2) {
    const Rational x(num, 100);
    const RatPoint on_edge{x, x - Rational(1, 2)};
    const RatPoint below{x, x - Rational(1, 2) - tiny};
    CHECK(region_contains(r, on_edge));
    CHECK_FALSE(region_contains(r, below));
  }
}

TEST_CASE("region membership is invariant under vertex permutation") {
  auto r = region_for(4, true);
  std::vector<RatPoint> shuffled = r.vertices;
  std::rotate(shuffled.begin(), shuffled.begin() + 2, shuffled.end());
  std::swap(shuffled[0], shuffled[1]);
  const auto r2 = make_region(shuffled);
  const RatPoint probes[] = {{{5, 6}, {1, 3}}, {{4, 5}, {1, 5}},
                             {{1, 2}, {1, 3}}, {{3, 4}, {1, 4}},
                             {{0, 1}, {0, 1}}, {{1, 1}, {1, 1}}};
  for (const auto& pt : probes)
    CHECK(region_classify(r, pt) == region_classify(r2, pt));
  // every hull vertex is contained; halfplanes match hull edges
  for (const auto& v : r.hull) CHECK(region_contains(r, v));
  CHECK(r.halfplanes.size() == r.hull.size());
}

TEST_CASE("rational arithmetic is exact") {
  CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
  CHECK(Rational(5, 6) - Rational(1, 2) == Rational(1, 3));
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-1, -2) == Rational(1, 2));
  CHECK(Rational(1, -2) < Rational(0));
  CHECK(Rational::parse("4/5") == Rational(4, 5));
  CHECK(Rational::parse("7") == Rational(7));
  CHECK_THROWS_AS(Rational(1, 0), RangeError);
  CHECK(Rational(4, 5).str() == "4/5");
}
