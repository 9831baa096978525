#include <cmath>
#include <filesystem>

#include "doctest.h"
#include "dlm/harness.hpp"

using namespace dlm;

TEST_CASE("scenario names round trip") {
  for (auto s : all_scenarios()) CHECK(parse_scenario(scenario_name(s)) == s);
  CHECK_THROWS_AS(parse_scenario("laser"), ConfigError);
}

TEST_CASE("config parsing") {
  const auto cfg = parse_config(R"(
# comment line
scenario = mach-zehnder
alpha = 0.995   # trailing comment
events = 500
blocks = 4
seed = 12
backend = slm
psi0 = 30
phi0 = 10
phi1 = random
phi0_step = 5
)");
  CHECK(cfg.scenario == Scenario::mach_zehnder);
  CHECK(cfg.alpha == 0.995);
  CHECK(cfg.events == 500);
  CHECK(cfg.blocks == 4);
  CHECK(cfg.seed == 12);
  CHECK(cfg.backend == Backend::slm);
  CHECK(cfg.psi0.mode == AngleSpec::Mode::fixed);
  CHECK(cfg.psi0.degrees == 30.0);
  CHECK(cfg.phi[1].mode == AngleSpec::Mode::per_block);
  CHECK(cfg.phi0_step == 5.0);
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse_config("alpha = 0.9"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = polarizer\nalpha = 1.0"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = polarizer\nalpha = 0.9\nalpha = 0.8"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = polarizer\nfrobnicate = 1"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = polarizer\nevents = -3"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = polarizer\nevents = 10\nwarmup = 10"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = beam-splitter\np0 = 1.5"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = interval-learner\ny = 1.0"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = polarizer\nno equals sign"), ConfigError);
  CHECK_THROWS_AS(parse_config("scenario = custom"), ConfigError);
  CHECK_THROWS_AS(load_config("/nonexistent/file.cfg"), ConfigError);
}

TEST_CASE("every default config validates") {
  for (auto s : all_scenarios()) {
    if (s == Scenario::custom) continue;
    CHECK_NOTHROW(default_config(s).validate());
  }
}

TEST_CASE("result table and CSV round trip") {
  ResultTable t({"a", "b"});
  t.add_row({1.0 / 3.0, std::nan("")});
  t.add_row({-2.5e-17, 12345678901234.5});
  CHECK(t.at(0, "a") == round_to_12_digits(1.0 / 3.0));
  CHECK_THROWS_AS(t.add_row({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(t.column_index("c"), std::out_of_range);

  const auto back = parse_csv(to_csv(t));
  CHECK(back == t);
  CHECK(std::isnan(back.at(0, "b")));

  const auto path = std::filesystem::temp_directory_path() / "dlm_roundtrip.csv";
  emit_csv(t, path);
  CHECK(read_csv(path) == t);
  std::filesystem::remove(path);

  CHECK(parse_csv("x,y\r\n1,2\r\n").at(0, "y") == 2.0);
  CHECK_THROWS_AS(parse_csv(""), std::runtime_error);
  CHECK_THROWS_AS(parse_csv("x,y\n1\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_csv("x\nabc\n"), std::runtime_error);

  ResultTable other({"z"});
  CHECK_THROWS_AS(t.append(other), std::invalid_argument);
}

TEST_CASE("same seed gives identical CSV, different seed does not") {
  for (auto s : all_scenarios()) {
    if (s == Scenario::custom) continue;
    auto cfg = default_config(s);
    cfg.blocks = std::min<std::size_t>(cfg.blocks, 3);
    cfg.events = std::min<std::size_t>(cfg.events, 2000);
    if (s == Scenario::classifier) cfg.warmup = 200;
    else cfg.warmup = std::min(cfg.warmup, cfg.events / 2);
    if (s == Scenario::three_level) cfg.average_window = 500;
    CAPTURE(scenario_name(s));
    const auto a = to_csv(run_scenario(cfg));
    CHECK(a == to_csv(run_scenario(cfg)));
    if (s != Scenario::position_learner) {
      cfg.seed += 1;
      CHECK(a != to_csv(run_scenario(cfg)));
    }
  }
}

TEST_CASE("stochastic outputs do not disturb the block parameters") {
  auto cfg = default_config(Scenario::mach_zehnder);
  cfg.events = 500;
  cfg.blocks = 5;
  cfg.phi[1] = AngleSpec::per_block();
  const auto det = run_scenario(cfg);
  cfg.backend = Backend::slm;
  const auto slm = run_scenario(cfg);
  for (const char* col : {"psi0", "phi0", "phi1"}) CHECK(det.column(col) == slm.column(col));
}

TEST_CASE("conservation is reported per block") {
  auto cfg = default_config(Scenario::mach_zehnder);
  cfg.events = 1000;
  cfg.blocks = 4;
  for (double c : run_scenario(cfg).column("conserved")) CHECK(c == 1.0);
}

TEST_CASE("custom topology") {
  const auto cfg = parse_config(R"(
scenario = custom
events = 4000
warmup = 1000
blocks = 2
p0 = 1
psi0 = 30
node = bs beam-splitter
node = pol polarizer 30
edge = bs 0 pol
sink = a
sink = b
sink = c
edge = bs 1 c
edge = pol 0 a
edge = pol 1 b
entry = in0 bs 0
entry = in1 bs 1
tap = t0 bs 0
)");
  const auto t = run_scenario(cfg);
  CHECK(t.size() == 2);
  for (std::size_t r = 0; r < t.size(); ++r) {
    CHECK(t.at(r, "frac_a") + t.at(r, "frac_b") + t.at(r, "frac_c") == doctest::Approx(1.0));
    CHECK(t.at(r, "tap_t0") == doctest::Approx(t.at(r, "frac_a") + t.at(r, "frac_b")));
    // Single input port: the splitter halves the beam.
    CHECK(std::abs(t.at(r, "frac_c") - 0.5) <= 0.03);
  }
  auto net = build_network(cfg);
  CHECK(net.node_count() == 2);
  CHECK(net.sink_count() == 3);

  CHECK_THROWS(parse_config("scenario = custom\nnode = x laser\nsink = s\nentry = in x"));
  CHECK_THROWS_AS(build_network(default_config(Scenario::circle_learner)), ConfigError);
}

TEST_CASE("presets") {
  CHECK(presets().size() >= 15);
  CHECK_THROWS_AS(find_preset("fig99"), ConfigError);
  for (const auto& p : presets()) {
    CAPTURE(p.id);
    CHECK(!p.runs.empty());
    for (const auto& c : p.runs) CHECK_NOTHROW(c.validate());
  }
  const auto t = run_preset(find_preset("fig6-30deg"));
  CHECK(t.at(0, "ratio_theta0_to_theta1") == doctest::Approx(1.0 / 3.0).epsilon(0.09));
}
