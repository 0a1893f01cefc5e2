#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "qavg/config.hpp"
#include "qavg/csv.hpp"

using namespace qavg;

TEST_CASE("full config document round-trips") {
  const std::string doc = R"({
    "q_list": [3, 5, 7, 11],
    "d": 4,
    "coeffs": [1, -1, 1, -1],
    "families": ["delta", "subspace", "random_set:32"],
    "seeds": [1, 2],
    "tolerances": {"identity": 1e-9, "ratio_ceiling": 3.5},
    "output_dir": "results",
    "grid_budget": 4194304,
    "trials": 50,
    "sets_per_regime": 100
  })";
  const auto cfg = parse_config_json(doc);
  CHECK(cfg.q_list == std::vector<std::uint32_t>{3, 5, 7, 11});
  CHECK(cfg.d == 4);
  CHECK(cfg.coeffs == std::vector<std::int64_t>{1, -1, 1, -1});
  CHECK(cfg.families.size() == 3);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2});
  CHECK(cfg.tol.identity == 1e-9);
  CHECK(cfg.tol.ratio_ceiling == 3.5);
  CHECK(cfg.tol.consec_hi == 2.0);  // untouched default
  CHECK(cfg.output_dir == "results");
  CHECK(cfg.trials == 50);
  CHECK(cfg.sets_per_regime == 100);
}

TEST_CASE("unknown keys are rejected") {
  CHECK_THROWS_AS(parse_config_json(R"({"qlist": [3]})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"tolerances": {"identit": 1}})"),
                  ConfigError);
  CHECK_THROWS_AS(parse_config_json("not json"), ConfigError);
  CHECK_THROWS_AS(parse_config_json("[1,2]"), ConfigError);
}

TEST_CASE("config invariants") {
  CHECK_THROWS_AS(parse_config_json(R"({"q_list": [4]})"),
                  EvenCharacteristicError);
  CHECK_THROWS_AS(parse_config_json(R"({"q_list": [12]})"), NonPrimeError);
  CHECK_THROWS_AS(parse_config_json(R"({"q_list": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"d": 4, "coeffs": [1, 2]})"),
                  ConfigError);
  CHECK_THROWS_AS(
      parse_config_json(R"({"q_list": [3], "d": 4, "coeffs": [1, 3, 1, 1]})"),
      DegenerateFormError);
  CHECK_THROWS_AS(parse_config_json(R"({"q_list": [3], "d": 30})"),
                  GridBudgetError);
  CHECK_THROWS_AS(parse_config_json(R"({"families": ["nope"]})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"seeds": []})"), ConfigError);
  CHECK_THROWS_AS(parse_config_json(R"({"q_list": [3, 9], "n": 2})"),
                  ConfigError);
  CHECK(parse_config_json(R"({"q_list": [9, 25], "n": 2, "d": 2})").d == 2);
}

TEST_CASE("base config carries the environment budget") {
  ExperimentConfig base;
  base.grid_budget = 1 << 24;
  const auto cfg = parse_config_json(R"({"q_list": [3], "d": 14})", base);
  CHECK(cfg.grid_budget == std::uint64_t(1) << 24);  // 3^14 < 2^24
}

TEST_CASE("grid dump format: semicolon coordinates, 17 significant digits") {
  auto f = make_field(3);
  GridFunction g(f, 2, Side::SpaceDx);
  g[5] = Complex(1.0 / 3.0, -2.0);  // point (2, 1)
  std::ostringstream os;
  dump_csv(g, os);
  const std::string text = os.str();
  CHECK(text.rfind("index,x_coords,re,im\n", 0) == 0);
  CHECK(text.find("5,2;1,0.33333333333333331,-2\n") != std::string::npos);
  CHECK(text.find("0,0;0,0,0\n") != std::string::npos);
}

TEST_CASE("CSV writer is atomic and deterministic") {
  Table t;
  t.header = {"a", "b"};
  t.rows = {{"1", format_double(1.0 / 3.0)}, {"2", format_double(2.0)}};
  const auto dir = std::filesystem::temp_directory_path() / "qavg_csv_test";
  std::filesystem::remove_all(dir);
  write_csv_atomic(dir, "t.csv", t);
  write_csv_atomic(dir, "t2.csv", t);
  std::ifstream a(dir / "t.csv"), b(dir / "t2.csv");
  std::string sa((std::istreambuf_iterator<char>(a)), {});
  std::string sb((std::istreambuf_iterator<char>(b)), {});
  CHECK(sa == sb);
  CHECK(sa == "a,b\n1,0.33333333333333331\n2,2\n");
  CHECK_FALSE(std::filesystem::exists(dir / "t.csv.tmp"));
  std::filesystem::remove_all(dir);
}
