#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qavg/levelset.hpp"
#include "qavg/norms.hpp"
#include "qavg/rng.hpp"

using namespace qavg;

TEST_CASE("L^p norms under both measure conventions") {
  auto f = make_field(3);
  const int d = 2;
  const auto ones = GridFunction::constant(f, d, Side::SpaceDx, 1.0);
  for (double p : {1.0, 1.5, 2.0, 6.0, kInfExponent})
    CHECK(lp_norm(ones, p) == doctest::Approx(1.0).epsilon(1e-12));

  GridFunction delta(f, d, Side::SpaceDx);
  delta[0] = 1.0;
  const double n = double(delta.size());
  for (double p : {1.0, 2.0, 3.0})
    CHECK(lp_norm(delta, p) == doctest::Approx(std::pow(n, -1.0 / p)));

  // indicator E on the dx side has norm (q^{-d} |E|)^{1/p}
  GridFunction e(f, d, Side::SpaceDx);
  e[0] = e[3] = e[7] = 1.0;
  CHECK(lp_norm(e, 2.0) == doctest::Approx(std::sqrt(3.0 / n)));

  // counting measure on the dm side
  const auto dm = GridFunction::constant(f, d, Side::FreqDm, 1.0);
  CHECK(lp_norm(dm, 2.0) == doctest::Approx(std::sqrt(n)));
  CHECK(lp_norm(dm, kInfExponent) == doctest::Approx(1.0));

  // homogeneity
  GridFunction g = e;
  g.values() *= Complex(0.0, -2.5);
  CHECK(lp_norm(g, 1.7) == doctest::Approx(2.5 * lp_norm(e, 1.7)));

  CHECK_THROWS_AS(lp_norm(e, 0.9), RangeError);
}

TEST_CASE("averaging ratio basics") {
  auto f = make_field(3);
  const auto s = make_surface(f, std::vector<std::int64_t>{1, -1, 1, -1});
  const auto sd = make_surface_data(s);
  const auto ones = GridFunction::constant(f, 4, Side::SpaceDx, 1.0);
  CHECK(averaging_ratio(ones, sd, 1.5, 3.0) == doctest::Approx(1.0));

  GridFunction delta(f, 4, Side::SpaceDx);
  delta[0] = 1.0;
  // q^{d/p} |S|^{1/r - 1} q^{-d/r} at (p, r) = (6/5, 3): 9 * 33^{-2/3}
  const double expected = 9.0 * std::pow(33.0, -2.0 / 3.0);
  CHECK(averaging_ratio(delta, sd, 6.0 / 5.0, 3.0) ==
        doctest::Approx(expected).epsilon(1e-9));

  // scale invariance
  GridFunction scaled = delta;
  scaled.values() *= 17.0;
  CHECK(averaging_ratio(scaled, sd, 6.0 / 5.0, 3.0) ==
        doctest::Approx(expected).epsilon(1e-9));

  GridFunction zero(f, 4, Side::SpaceDx);
  CHECK_THROWS_AS(averaging_ratio(zero, sd, 2.0, 2.0), ZeroFunctionError);
}

TEST_CASE("subspace ratio at the critical vertex stays O(1)") {
  for (std::uint32_t q : {3u, 5u, 7u}) {
    auto f = make_field_q(q);
    const auto s = make_surface(f, std::vector<std::int64_t>{1, -1, 1, -1});
    const auto sd = make_surface_data(s);
    const auto h = isotropic_subspace(s, SubspaceMode::Construct);
    REQUIRE(h.has_value());
    const double ratio =
        averaging_ratio(subspace_indicator(s, *h), sd, 6.0 / 5.0, 3.0);
    CHECK(ratio >= 0.5);
    CHECK(ratio <= 2.0);
  }
}

TEST_CASE("level decomposition: dyadic example and invariants") {
  auto f = make_field(3);
  GridFunction g(f, 2, Side::SpaceDx);
  g[0] = 1.0;
  g[1] = 0.5;
  g[2] = 0.25;
  const auto dec = level_decompose(g, 6.0 / 5.0);
  REQUIRE(dec.levels.size() == 3);
  // three consecutive singleton levels, in value order
  CHECK(dec.levels[1] == dec.levels[0] + 1);
  CHECK(dec.levels[2] == dec.levels[1] + 1);
  for (const auto& e : dec.sets)
    CHECK(std::llround(e.values().real().sum()) == 1);
  CHECK(dec.dropped_mass == 0.0);

  // indicator input: a single level
  GridFunction ind(f, 2, Side::SpaceDx);
  ind[2] = ind[5] = 1.0;
  const auto single = level_decompose(ind, 2.0);
  CHECK(single.levels.size() == 1);
}

TEST_CASE("level decomposition sandwich on random positive grids") {
  auto f = make_field(5);
  DetRng rng(99);
  for (int t = 0; t < 20; ++t) {
    GridFunction g(f, 2, Side::SpaceDx);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = rng.unit();
    const double p = 1.0 + 2.0 * rng.unit();
    const auto dec = level_decompose(g, p);
    const auto recon = reconstruct(dec);
    const double scale = std::pow(dec.normalization, 1.0 / p);

    double mass = 0.0;
    for (std::size_t t2 = 0; t2 < dec.sets.size(); ++t2)
      mass += std::pow(2.0, -p * dec.levels[t2]) *
              dec.sets[t2].values().real().sum();
    CHECK(mass <= 1.0 + 1e-9);
    CHECK(mass >= std::pow(2.0, -p) - 1e-9);

    // pairwise disjoint level sets
    GridFunction overlap(f, 2, Side::SpaceDx);
    for (const auto& e : dec.sets) overlap.values() += e.values();
    for (std::size_t i = 0; i < overlap.size(); ++i)
      CHECK(overlap[i].real() <= 1.0);

    for (std::size_t i = 0; i < g.size(); ++i) {
      const double normalized = g[i].real() / scale;
      const double approx = recon[i].real();
      if (normalized == 0.0) continue;
      CHECK(approx <= normalized * (1 + 1e-12));
      CHECK(approx >= normalized / 2 * (1 - 1e-12));
      // |E_k| <= 2^{pk} (with the dyadic-rounding slack)
    }
    for (std::size_t t2 = 0; t2 < dec.sets.size(); ++t2)
      CHECK(dec.sets[t2].values().real().sum() <=
            std::pow(2.0, p * dec.levels[t2]) * std::pow(2.0, p) + 1e-9);
  }
}

TEST_CASE("level decomposition floor drops tiny values and reports mass") {
  auto f = make_field(3);
  GridFunction g(f, 2, Side::SpaceDx);
  g[0] = 1.0;
  g[1] = 0x1.0p-70;  // far below the 2^{-60} floor after normalization
  const auto dec = level_decompose(g, 1.0);
  CHECK(dec.dropped_mass > 0.0);
  CHECK(dec.levels.size() == 1);

  GridFunction bad(f, 2, Side::SpaceDx);
  bad[0] = -1.0;
  CHECK_THROWS_AS(level_decompose(bad, 2.0), NegativeValueError);
  GridFunction zero(f, 2, Side::SpaceDx);
  CHECK_THROWS_AS(level_decompose(zero, 2.0), ZeroFunctionError);
}

TEST_CASE("regime classification thresholds") {
  CHECK(regime_classify(6, 3, 5) == Regime::J1);
  CHECK(regime_classify(6, 3, 9) == Regime::J1);   // boundary inclusive
  CHECK(regime_classify(4, 3, 4) == Regime::J2);
  CHECK(regime_classify(4, 3, 9) == Regime::J2);
  CHECK(regime_classify(4, 3, 10) == Regime::J3);
  CHECK(regime_classify(4, 3, 81) == Regime::J3);
  CHECK_THROWS_AS(regime_classify(4, 3, 0), RangeError);
  CHECK_THROWS_AS(regime_classify(4, 3, 82), RangeError);
  CHECK_THROWS_AS(regime_classify(3, 3, 1), UnsupportedError);
  CHECK(regime_range(4, 3, Regime::J2) ==
        std::pair<std::uint64_t, std::uint64_t>{4, 9});
}
