#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "regretlab/harness.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

using namespace regretlab;

namespace {

std::string minimal = R"({"learner": "ftl", "set": {"kind": "ball", "d": 2}})";

ExperimentConfig parse(const std::string& text,
                       std::vector<std::string> overrides = {}) {
  return parse_config(text, overrides);
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(bool(in));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// drop the trailing wall-clock column so timing noise never fails a compare
std::string strip_wall_clock(const std::string& csv) {
  std::istringstream in(csv);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    out << line.substr(0, line.rfind(',')) << '\n';
  return out.str();
}

bool rows_equal_outside_wall_clock(const ResultRow& a, const ResultRow& b) {
  return a.config_hash == b.config_hash && a.learner == b.learner &&
         a.mode == b.mode && a.T == b.T && a.d == b.d && a.seed == b.seed &&
         a.regret == b.regret && a.forward_regret == b.forward_regret &&
         a.stability == b.stability && a.bound_name == b.bound_name &&
         a.bound_theoretical == b.bound_theoretical &&
         a.bound_empirical == b.bound_empirical && a.slack == b.slack &&
         a.pass == b.pass;
}

}  // namespace

TEST_CASE("a default config materializes every field canonically") {
  ExperimentConfig cfg = parse(minimal);
  CHECK(cfg.learner.kind == LearnerKind::Ftl);
  CHECK(cfg.set.kind == SetKind::Ball);
  CHECK(cfg.seeds == std::vector<std::uint64_t>{1});
  CHECK(cfg.horizons == std::vector<int>{64});
  CHECK(cfg.format == "csv");
  CHECK_FALSE(cfg.slope.enabled);

  std::string canon = canonical_config(cfg);
  CHECK(canon.find("\"name\":\"experiment\"") != std::string::npos);
  CHECK(canon.find("\"regularizer\":\"half_squared_l2\"") != std::string::npos);
  CHECK(canon.find("\"delta\":{\"c\":0.0,\"kind\":\"exact\"}") != std::string::npos);

  // canonical text is itself a valid config and a fixed point
  CHECK(canonical_config(parse(canon)) == canon);

  std::string hash = config_hash(cfg);
  CHECK(hash.size() == 16);
  CHECK(hash.find_first_not_of("0123456789abcdef") == std::string::npos);
  CHECK(config_hash(cfg) == hash);
  ExperimentConfig other = cfg;
  other.name = "renamed";
  CHECK(config_hash(other) != hash);
}

TEST_CASE("unknown and malformed fields fail with their json path") {
  auto bad = [](const std::string& text, const char* needle) {
    CHECK_THROWS_WITH_AS(parse_config(text), doctest::Contains(needle), ConfigError);
  };
  bad(R"({"learner": "ftl", "set": {"kind": "ball"}, "bogus": 1})",
      "bogus: unknown field");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"}, "adversary": {"bogus": 1}})",
      "adversary.bogus: unknown field");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"}, "eta": {"kind": "warp"}})",
      "eta.kind: unknown schedule kind 'warp'");
  bad(R"({"learner": "warp", "set": {"kind": "ball"}})", "learner: unknown learner");
  bad(R"({"set": {"kind": "ball"}})", "learner: required");
  bad(R"({"learner": "ftl"})", "set: required");
  bad(R"({"learner": "ftl", "set": {"kind": "box"}})", "set.lo: required for a box");
  bad(R"({"learner": "ftl", "set": {"kind": "box", "lo": [0, 0], "hi": [1]}})",
      "set.hi: length must match set.lo");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"}, "format": "yaml"})",
      "format: must be csv or json");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"}, "seeds": []})",
      "seeds: expected a nonempty array");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"},
          "adversary": {"bias": 1.5}})",
      "adversary.bias: must lie in [0, 1)");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"},
          "adversary": {"composite": {"kind": "l1"}}})",
      "adversary.composite.weight: required");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"},
          "slope": {"value": "margin"}})",
      "slope.value: must be regret, forward_regret, or stability");
  bad(R"({"learner": "ftl", "set": {"kind": "ball"}, "delta": {"kind": "constant",
          "c": -1}})",
      "delta.c: must be positive");
  bad("not json at all", "config:");
}

TEST_CASE("overrides rewrite nested fields before validation") {
  ExperimentConfig cfg = parse(minimal, {"adversary.bias=0.5", "horizons=[8,16]",
                                         "name=swept", "learner=rda",
                                         "slope.value=stability", "slope.limit=1.25"});
  CHECK(cfg.adversary.bias == 0.5);
  CHECK(cfg.horizons == std::vector<int>{8, 16});
  CHECK(cfg.name == "swept");  // unquoted strings pass through verbatim
  CHECK(cfg.learner.kind == LearnerKind::Rda);
  CHECK(cfg.slope.enabled);
  CHECK(cfg.slope.value == "stability");
  CHECK(cfg.slope.limit == 1.25);

  // overridden values still face the same validation as file values
  CHECK_THROWS_WITH_AS(parse(minimal, {"adversary.bias=2"}),
                       doctest::Contains("adversary.bias"), ConfigError);
  CHECK_THROWS_WITH_AS(parse(minimal, {"nopath"}),
                       doctest::Contains("--set expects path=value"), ConfigError);
}

TEST_CASE("mode names distinguish exact and approximate runs") {
  CHECK(mode_name(DeltaSchedule::exact()) == "exact");
  DeltaSchedule d{DeltaSchedule::Kind::InverseT2, 0.5};
  CHECK(mode_name(d) == "approx:c/t^2");
}

TEST_CASE("a small run emits theorem rows and the learner registry") {
  ExperimentConfig cfg = parse(R"({
    "learner": "ftl",
    "adversary": {"kind": "quadratic"},
    "set": {"kind": "ball", "d": 2},
    "seeds": [7],
    "horizons": [40]
  })");
  std::vector<ResultRow> rows = run_experiment(cfg);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].bound_name == "theorem1_regret");
  CHECK(rows[1].bound_name == "theorem1_forward_regret");
  CHECK(rows[2].bound_name == "ftl_regret");
  CHECK(rows[3].bound_name == "ftl_stability");
  CHECK(rows[4].bound_name == "ftl_step_stability");
  CHECK(rows[5].bound_name == "ftl_forward_regret");
  for (const ResultRow& r : rows) {
    CAPTURE(r.bound_name);
    CHECK(r.pass);
    CHECK(r.config_hash == config_hash(cfg));
    CHECK(r.learner == "ftl");
    CHECK(r.mode == "exact");
    CHECK(r.T == 40);
    CHECK(r.d == 2);
    CHECK(r.seed == 7);
    CHECK(r.wall_clock_ms >= 0.0);
  }

  // the measurement columns are the same numbers a direct run produces
  auto set = std::make_shared<const FeasibleSet>(cfg.set.build());
  auto seq = std::make_shared<const AdversarySequence>(
      AdversarySequence(7, 40, *set, cfg.adversary));
  Measured m = measure(run(cfg.learner, seq, set));
  CHECK(rows[0].regret == m.regret);
  CHECK(rows[0].forward_regret == m.forward_regret);
  CHECK(rows[0].stability == m.stability);
}

TEST_CASE("explicit bound lists are honored verbatim") {
  ExperimentConfig cfg = parse(minimal, {"bounds=[\"ftl_stability\",\"theorem1_regret\"]",
                                         "horizons=[16]", "adversary.kind=quadratic"});
  std::vector<ResultRow> rows = run_experiment(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].bound_name == "ftl_stability");
  CHECK(rows[1].bound_name == "theorem1_regret");

  ExperimentConfig bad = parse(minimal, {"bounds=[\"no_such_bound\"]",
                                         "adversary.kind=quadratic"});
  CHECK_THROWS_WITH_AS(run_experiment(bad), doctest::Contains("unknown bound name"),
                       ConfigError);
}

TEST_CASE("csv output pins the header and formats doubles round-trip") {
  ExperimentConfig cfg = parse(minimal, {"horizons=[25]", "seeds=[3]",
                                         "adversary.kind=quadratic"});
  std::vector<ResultRow> rows = run_experiment(cfg);
  std::string csv = to_csv(rows);

  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header ==
        "config_hash,learner,mode,T,d,seed,regret,forward_regret,stability,"
        "bound_name,bound_theoretical,bound_empirical,slack,pass,wall_clock_ms");

  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  REQUIRE(lines.size() == rows.size());

  // column 7 (regret) parses back to the exact double that produced it
  std::istringstream fields(lines[0]);
  std::string cell;
  for (int i = 0; i < 7; ++i) std::getline(fields, cell, ',');
  CHECK(std::strtod(cell.c_str(), nullptr) == rows[0].regret);

  for (const std::string& l : lines)
    CHECK(l.find(",1,") != std::string::npos);  // pass column prints as 1/0

  CHECK(to_csv({}) ==
        "config_hash,learner,mode,T,d,seed,regret,forward_regret,stability,"
        "bound_name,bound_theoretical,bound_empirical,slack,pass,wall_clock_ms\n");
}

TEST_CASE("json output round-trips rows bit-identically") {
  ExperimentConfig cfg = parse(minimal, {"horizons=[30]", "seeds=[5]",
                                         "adversary.kind=quadratic"});
  std::vector<ResultRow> rows = run_experiment(cfg);
  std::vector<ResultRow> back = rows_from_json(to_json(rows));
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CAPTURE(i);
    CHECK(rows_equal_outside_wall_clock(rows[i], back[i]));
    CHECK(rows[i].wall_clock_ms == back[i].wall_clock_ms);
  }
  CHECK_THROWS_WITH_AS(rows_from_json("{}"), doctest::Contains("rows:"), ConfigError);
}

TEST_CASE("slope rows aggregate each seed's horizon sweep") {
  ExperimentConfig cfg = parse(R"({
    "learner": "ftl",
    "adversary": {"kind": "quadratic"},
    "set": {"kind": "ball", "d": 2},
    "seeds": [3, 4],
    "horizons": [8, 16, 32, 64],
    "bounds": ["ftl_regret"],
    "slope": {"value": "regret", "limit": 0.6}
  })");
  std::vector<ResultRow> rows = run_experiment(cfg);
  REQUIRE(rows.size() == 8 + 2);
  const ResultRow& s3 = rows[8];
  const ResultRow& s4 = rows[9];
  CHECK(s3.bound_name == "regret_slope");
  CHECK(s3.T == 0);
  CHECK(s3.seed == 3);
  CHECK(s4.seed == 4);
  CHECK(s3.bound_theoretical == 0.6);
  CHECK(s3.pass);  // quadratic ftl regret grows only logarithmically
  CHECK(s4.pass);
}

TEST_CASE("worker counts do not change the result") {
  ExperimentConfig cfg = parse(R"({
    "learner": "rda",
    "adversary": {"kind": "linear", "composite": {"kind": "l1", "weight": 0.3}},
    "set": {"kind": "box", "lo": [-1, -1], "hi": [1, 1]},
    "seeds": [1, 2, 3],
    "horizons": [16, 32]
  })");
  setenv("REGRETLAB_THREADS", "1", 1);
  std::vector<ResultRow> serial = run_experiment(cfg);
  setenv("REGRETLAB_THREADS", "3", 1);
  std::vector<ResultRow> parallel = run_experiment(cfg);
  unsetenv("REGRETLAB_THREADS");
  REQUIRE(serial.size() == parallel.size());
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CAPTURE(i);
    CHECK(rows_equal_outside_wall_clock(serial[i], parallel[i]));
  }
}

TEST_CASE("dyadic horizons span lo to hi") {
  CHECK(dyadic_horizons(64, 4096) ==
        std::vector<int>{64, 128, 256, 512, 1024, 2048, 4096});
  CHECK(dyadic_horizons(8, 8) == std::vector<int>{8});
}

TEST_CASE("configs load from disk and results write to disk") {
  std::string dir = "harness_io_scratch";
  std::string cfg_path = dir + ".json";
  write_file(cfg_path, minimal);
  ExperimentConfig cfg = load_config(cfg_path);
  CHECK(canonical_config(cfg) == canonical_config(parse(minimal)));

  std::string out_path = dir + ".csv";
  write_file(out_path, to_csv({}));
  CHECK(slurp(out_path).rfind("config_hash,", 0) == 0);

  CHECK_THROWS_WITH_AS(load_config("no/such/config.json"),
                       doctest::Contains("cannot open"), ConfigError);
  std::remove(cfg_path.c_str());
  std::remove(out_path.c_str());
}

TEST_CASE("the golden sweep reproduces byte for byte outside wall clock") {
  ExperimentConfig cfg = load_config(REGRETLAB_DATA_DIR "/golden_sweep.json");
  std::string fresh = strip_wall_clock(to_csv(run_experiment(cfg)));
  std::string golden = strip_wall_clock(slurp(REGRETLAB_DATA_DIR "/golden_sweep.csv"));
  CHECK(fresh == golden);
}
