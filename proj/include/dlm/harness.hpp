#pragma once

// Experiment configuration, scenario runners, CSV tables and the figure
// presets used by the command-line tool.

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dlm/optics.hpp"
#include "dlm/plane_classifier.hpp"
#include "dlm/slm.hpp"

namespace dlm {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario {
  position_learner,
  interval_learner,
  three_level,
  circle_learner,
  classifier,
  polarizer,
  three_polarizers,
  beam_splitter,
  mach_zehnder,
  chained_mz,
  custom,
};

std::string_view scenario_name(Scenario s);
/// Throws ConfigError for an unknown name.
Scenario parse_scenario(std::string_view name);
const std::vector<Scenario>& all_scenarios();
std::string_view scenario_summary(Scenario s);

/// An angle parameter in degrees, or an instruction for drawing it uniformly
/// from [0, 360).
struct AngleSpec {
  enum class Mode { fixed, per_run, per_block, per_event };
  Mode mode = Mode::fixed;
  double degrees = 0.0;

  static AngleSpec fixed(double deg) { return {Mode::fixed, deg}; }
  static AngleSpec per_run() { return {Mode::per_run, 0.0}; }
  static AngleSpec per_block() { return {Mode::per_block, 0.0}; }
  static AngleSpec per_event() { return {Mode::per_event, 0.0}; }
};

/// A probability in [0, 1], or drawn uniformly per block.
struct ProbSpec {
  bool random = false;
  double value = 1.0;
};

/// A scalar input level in (-1, 1), a list cycled block by block (or drawn
/// per event), or drawn uniformly per block.
struct LevelSpec {
  enum class Mode { list_per_block, list_per_event, random_per_block };
  Mode mode = Mode::list_per_block;
  std::vector<double> values;
};

/// Explicit node/edge list for Scenario::custom. Node types: "rotator <deg>",
/// "polarizer <deg>", "beam-splitter".
struct Topology {
  struct NodeDecl {
    std::string name, type;
    double degrees = 0.0;
  };
  struct EdgeDecl {
    std::string from;
    std::size_t from_port;
    std::string to;
    std::size_t to_port;
  };
  struct PortDecl {
    std::string name, node;
    std::size_t port;
  };
  std::vector<NodeDecl> nodes;
  std::vector<EdgeDecl> edges;
  std::vector<std::string> sinks;
  /// First entry receives the psi0 events, second the psi1 events.
  std::vector<PortDecl> entries;
  std::vector<PortDecl> taps;
};

struct ExperimentConfig {
  Scenario scenario = Scenario::polarizer;
  double alpha = kDefaultAlpha;
  std::size_t events = 1000;
  std::size_t blocks = 1;
  std::uint64_t seed = 1;
  /// Events at the start of each block that are processed but not counted.
  /// For the classifier: events processed before the first window.
  std::size_t warmup = 0;
  Backend backend = Backend::dlm;
  SlmRule slm_rule = SlmRule::weight_above_draw;

  AngleSpec psi0, psi1;
  std::array<AngleSpec, 4> phi;
  /// Added to phi0 after every block (degrees).
  double phi0_step = 0.0;
  ProbSpec p0;

  LevelSpec y;
  /// Input sets of the three-level network, one per block.
  std::vector<std::vector<double>> level_sets;
  /// Trailing events of each three-level block over which x is averaged.
  std::size_t average_window = 1000;

  double gamma = 1.0 / 5000.0;
  PointRule point_rule = PointRule::distance_weighted;
  /// Classifier: one row per event instead of one per window.
  bool trace = false;

  Topology topology;

  /// Throws ConfigError.
  void validate() const;
};

/// Protocol defaults for one scenario.
ExperimentConfig default_config(Scenario s);

/// Flat "key = value" text; '#' starts a comment. The scenario key selects
/// the defaults that the remaining keys override. Throws ConfigError.
ExperimentConfig parse_config(std::string_view text);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Numeric table with named columns. Values are rounded to 12 significant
/// digits on insertion, so a CSV round trip is exact.
class ResultTable {
 public:
  ResultTable() = default;
  explicit ResultTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  std::size_t size() const { return rows_.size(); }
  bool empty() const { return rows_.empty(); }

  /// Throws std::invalid_argument on a width mismatch.
  void add_row(std::vector<double> values);
  /// Appends rows of a table with identical columns.
  void append(const ResultTable& other);

  std::size_t column_index(std::string_view name) const;
  double at(std::size_t row, std::string_view column) const;
  std::vector<double> column(std::string_view name) const;

  friend bool operator==(const ResultTable& a, const ResultTable& b);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<double>> rows_;
};

double round_to_12_digits(double v);

std::string to_csv(const ResultTable& t);
/// Throws std::runtime_error on malformed input.
ResultTable parse_csv(std::string_view text);
/// Throws std::runtime_error on I/O failure.
void emit_csv(const ResultTable& t, const std::filesystem::path& path);
ResultTable read_csv(const std::filesystem::path& path);

/// Network for an optics scenario, built from the block-0 angles.
OpticsNetwork build_network(const ExperimentConfig& cfg);

/// Validates the config, then runs every block. Throws ConfigError or NetworkError.
ResultTable run_scenario(const ExperimentConfig& cfg);

struct Preset {
  std::string id;
  std::string summary;
  std::vector<ExperimentConfig> runs;
};

const std::vector<Preset>& presets();
/// Throws ConfigError for an unknown id.
const Preset& find_preset(std::string_view id);
ResultTable run_preset(const Preset& p);

}  // namespace dlm
