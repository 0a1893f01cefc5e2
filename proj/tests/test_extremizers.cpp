#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qavg/extremizers.hpp"

using namespace qavg;

namespace {

SurfaceData make_sd(std::uint32_t q, std::vector<std::int64_t> coeffs) {
  return make_surface_data(make_surface(make_field_q(q), coeffs));
}

}  // namespace

TEST_CASE("family parsing") {
  CHECK(parse_family("delta").kind == FamilyKind::Delta);
  CHECK(parse_family("random_set:32").param == 32);
  CHECK(parse_family("dyadic_random").param == 4);  // default levels
  CHECK(parse_family("sublevel").param == 1);
  CHECK_THROWS_AS(parse_family("bogus"), ConfigError);
  CHECK_THROWS_AS(parse_family("random_set:x"), ConfigError);
  CHECK(family_name(parse_family("random_set:8")) == "random_set:8");
}

TEST_CASE("delta and subspace extremizers") {
  const auto sd = make_sd(3, {1, -1, 1, -1});
  const auto h = find_isotropic_subspace(sd.surface);
  REQUIRE(h.has_value());

  const auto delta = make_extremizer({FamilyKind::Delta, 0}, sd, h, 0);
  CHECK(delta[0] == Complex(1.0));
  CHECK(std::llround(delta.values().real().sum()) == 1);

  // H = {(t1, t1, t2, t2)} for the alternating form, mass q^2
  const auto hs = make_extremizer({FamilyKind::Subspace, 0}, sd, h, 0);
  CHECK(std::llround(hs.values().real().sum()) == 9);
  const Field& f = *sd.surface.field;
  for (std::uint32_t t1 = 0; t1 < 3; ++t1)
    for (std::uint32_t t2 = 0; t2 < 3; ++t2) {
      const std::vector<Elem> pt = {f.element(t1), f.element(t1),
                                    f.element(t2), f.element(t2)};
      CHECK(hs.at(pt) == Complex(1.0));
    }

  const auto elliptic = make_sd(3, {1, 1, 1, 2});
  CHECK_THROWS_AS(
      make_extremizer({FamilyKind::Subspace, 0}, elliptic, std::nullopt, 0),
      HypothesisError);
}

TEST_CASE("random families are deterministic under a seed") {
  const auto sd = make_sd(3, {1, -1, 1, -1});
  const auto a = make_extremizer({FamilyKind::RandomSet, 20}, sd, {}, 7);
  const auto b = make_extremizer({FamilyKind::RandomSet, 20}, sd, {}, 7);
  CHECK(a.values() == b.values());
  CHECK(std::llround(a.values().real().sum()) == 20);
  const auto c = make_extremizer({FamilyKind::RandomSet, 20}, sd, {}, 8);
  CHECK(a.values() != c.values());

  const auto d1 = make_extremizer({FamilyKind::DyadicRandom, 3}, sd, {}, 7);
  const auto d2 = make_extremizer({FamilyKind::DyadicRandom, 3}, sd, {}, 7);
  CHECK(d1.values() == d2.values());
  // genuine non-characteristic function with dyadic values
  bool has_half = false;
  for (std::size_t i = 0; i < d1.size(); ++i) {
    const double v = d1[i].real();
    CHECK((v == 0.0 || v == 1.0 || v == 0.5 || v == 0.25));
    has_half |= v == 0.5 || v == 0.25;
  }
  CHECK(has_half);
}

TEST_CASE("sublevel family includes the surface itself") {
  const auto sd = make_sd(3, {1, -1, 1, -1});
  const auto s1 = make_extremizer({FamilyKind::Sublevel, 1}, sd, {}, 0);
  CHECK(s1.values() == sd.indicator.values());
  const auto s2 = make_extremizer({FamilyKind::Sublevel, 2}, sd, {}, 0);
  CHECK(s2.values().real().sum() > s1.values().real().sum());
}

TEST_CASE("sharpness probe rejects points inside the region") {
  const std::vector<std::int64_t> pattern = {1, -1, 1, -1};
  const std::vector<std::uint32_t> qs = {3, 5};
  CHECK_THROWS_AS(
      sharpness_probe(4, pattern, {{5, 6}, {1, 3}}, qs),  // vertex
      ProbeMeaninglessError);
  CHECK_THROWS_AS(
      sharpness_probe(4, pattern, {{1, 1}, {1, 1}}, qs),  // hull vertex
      ProbeMeaninglessError);
  CHECK_THROWS_AS(sharpness_probe(4, pattern, {{3, 2}, {1, 2}}, qs),
                  RangeError);  // outside [0,1]^2
}

TEST_CASE("sharpness probe at (4/5, 1/5) shows growth for H") {
  const std::vector<std::int64_t> pattern = {1, -1, 1, -1};
  const std::vector<std::uint32_t> qs = {3, 5, 7};
  const auto rep = sharpness_probe(4, pattern, {{4, 5}, {1, 5}}, qs);
  REQUIRE(rep.rows.size() == 3);
  // ratios grow with q for the subspace family
  CHECK(rep.rows[1].ratio_subspace > rep.rows[0].ratio_subspace);
  CHECK(rep.rows[2].ratio_subspace > rep.rows[1].ratio_subspace);
  // analytic slope is 1/5; small-q fit lands near it
  CHECK(rep.slope_subspace > 0.05);
  CHECK(rep.slope_subspace < 0.35);
  // delta exponent is 0 at this point
  CHECK(std::abs(rep.slope_delta) < 0.1);
}
