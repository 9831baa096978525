#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "dlm/harness.hpp"

namespace dlm {

namespace {

struct ScenarioEntry {
  Scenario id;
  std::string_view name;
  std::string_view summary;
};

constexpr std::array<ScenarioEntry, 11> kScenarios{{
    {Scenario::position_learner, "position-learner", "scalar learner tracking the running mean of its inputs"},
    {Scenario::interval_learner, "interval-learner", "scalar learner whose up/down frequency encodes y"},
    {Scenario::three_level, "three-level", "binary tree of seven position learners sorting a discrete input set"},
    {Scenario::circle_learner, "circle-learner", "unit-circle learner driven by a fixed direction"},
    {Scenario::classifier, "classifier", "blind segment classifier on a rotating two-cluster stream"},
    {Scenario::polarizer, "polarizer", "single polarizer, random orientation per block"},
    {Scenario::three_polarizers, "three-polarizers", "polarizer at 0 feeding two polarizers at phi"},
    {Scenario::beam_splitter, "beam-splitter", "single beam splitter with two input channels"},
    {Scenario::mach_zehnder, "mach-zehnder", "two beam splitters with phase rotators, phi0 swept"},
    {Scenario::chained_mz, "chained-mz", "two chained interferometers, seven random parameters per block"},
    {Scenario::custom, "custom", "explicit node/edge list"},
}};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (std::isspace(static_cast<unsigned char>(s[i])) || s[i] == ',')) ++i;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) && s[j] != ',') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

class LineError {
 public:
  LineError(std::size_t line, std::string_view key) : prefix_("line " + std::to_string(line) + " (" + std::string(key) + "): ") {}
  [[noreturn]] void fail(const std::string& msg) const { throw ConfigError(prefix_ + msg); }

 private:
  std::string prefix_;
};

double to_double(std::string_view s, const LineError& err) {
  const std::string tmp(s);
  char* end = nullptr;
  const double v = std::strtod(tmp.c_str(), &end);
  if (tmp.empty() || end != tmp.c_str() + tmp.size() || !std::isfinite(v)) err.fail("expected a number, got '" + tmp + "'");
  return v;
}

std::uint64_t to_uint(std::string_view s, const LineError& err) {
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) err.fail("expected a non-negative integer, got '" + std::string(s) + "'");
  return v;
}

std::size_t to_size(std::string_view s, const LineError& err) { return static_cast<std::size_t>(to_uint(s, err)); }

AngleSpec to_angle(std::string_view s, const LineError& err) {
  if (s == "random") return AngleSpec::per_block();
  if (s == "random-once") return AngleSpec::per_run();
  if (s == "per-event") return AngleSpec::per_event();
  return AngleSpec::fixed(to_double(s, err));
}

bool to_bool(std::string_view s, const LineError& err) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  err.fail("expected true or false");
}

struct KeyValue {
  std::size_t line;
  std::string key;
  std::string value;
};

void apply(ExperimentConfig& cfg, const KeyValue& kv, bool& first_set) {
  const LineError err(kv.line, kv.key);
  const std::string_view k = kv.key;
  const std::string_view v = kv.value;
  const auto words = split_ws(v);

  if (k == "alpha") {
    cfg.alpha = to_double(v, err);
  } else if (k == "events") {
    cfg.events = to_size(v, err);
  } else if (k == "blocks") {
    cfg.blocks = to_size(v, err);
  } else if (k == "seed") {
    cfg.seed = to_uint(v, err);
  } else if (k == "warmup") {
    cfg.warmup = to_size(v, err);
  } else if (k == "backend") {
    if (v == "dlm") cfg.backend = Backend::dlm;
    else if (v == "slm") cfg.backend = Backend::slm;
    else err.fail("expected dlm or slm");
  } else if (k == "slm_rule") {
    if (v == "weight-above-draw") cfg.slm_rule = SlmRule::weight_above_draw;
    else if (v == "weight-below-draw") cfg.slm_rule = SlmRule::weight_below_draw;
    else err.fail("expected weight-above-draw or weight-below-draw");
  } else if (k == "psi" || k == "psi0") {
    cfg.psi0 = to_angle(v, err);
  } else if (k == "psi1") {
    cfg.psi1 = to_angle(v, err);
  } else if (k == "phi" || k == "phi0") {
    cfg.phi[0] = to_angle(v, err);
  } else if (k == "phi1" || k == "phi2" || k == "phi3") {
    cfg.phi[static_cast<std::size_t>(k[3] - '0')] = to_angle(v, err);
  } else if (k == "phi0_step") {
    cfg.phi0_step = to_double(v, err);
  } else if (k == "p0") {
    cfg.p0 = v == "random" ? ProbSpec{true, 0.0} : ProbSpec{false, to_double(v, err)};
  } else if (k == "y") {
    cfg.y.values.clear();
    if (v == "random") {
      cfg.y.mode = LevelSpec::Mode::random_per_block;
    } else {
      if (cfg.y.mode == LevelSpec::Mode::random_per_block) cfg.y.mode = LevelSpec::Mode::list_per_block;
      for (auto w : words) cfg.y.values.push_back(to_double(w, err));
      if (cfg.y.values.empty()) err.fail("empty list");
    }
  } else if (k == "y_draw") {
    if (cfg.y.mode == LevelSpec::Mode::random_per_block) err.fail("y_draw needs a list of y values");
    if (v == "block") cfg.y.mode = LevelSpec::Mode::list_per_block;
    else if (v == "event") cfg.y.mode = LevelSpec::Mode::list_per_event;
    else err.fail("expected block or event");
  } else if (k == "set") {
    if (first_set) cfg.level_sets.clear();
    first_set = false;
    std::vector<double> s;
    for (auto w : words) s.push_back(to_double(w, err));
    if (s.empty()) err.fail("empty set");
    cfg.level_sets.push_back(std::move(s));
  } else if (k == "average_window") {
    cfg.average_window = to_size(v, err);
  } else if (k == "gamma") {
    cfg.gamma = to_double(v, err);
  } else if (k == "rule") {
    if (v == "distance-weighted") cfg.point_rule = PointRule::distance_weighted;
    else if (v == "linear") cfg.point_rule = PointRule::linear;
    else err.fail("expected distance-weighted or linear");
  } else if (k == "trace") {
    cfg.trace = to_bool(v, err);
  } else if (k == "node") {
    // node = <name> <type> [degrees]
    if (words.size() < 2 || words.size() > 3) err.fail("expected: <name> <type> [degrees]");
    Topology::NodeDecl d{std::string(words[0]), std::string(words[1]), 0.0};
    if (d.type != "rotator" && d.type != "polarizer" && d.type != "beam-splitter") err.fail("unknown node type '" + d.type + "'");
    if (d.type == "beam-splitter" && words.size() == 3) err.fail("beam-splitter takes no angle");
    if (d.type != "beam-splitter") {
      if (words.size() != 3) err.fail(d.type + " needs an angle");
      d.degrees = to_double(words[2], err);
    }
    cfg.topology.nodes.push_back(std::move(d));
  } else if (k == "edge") {
    // edge = <from> <port> <to> [port]
    if (words.size() < 3 || words.size() > 4) err.fail("expected: <from> <port> <to> [port]");
    cfg.topology.edges.push_back({std::string(words[0]), to_size(words[1], err), std::string(words[2]),
                                  words.size() == 4 ? to_size(words[3], err) : 0});
  } else if (k == "sink") {
    if (words.size() != 1) err.fail("expected a single sink name");
    cfg.topology.sinks.emplace_back(words[0]);
  } else if (k == "entry" || k == "tap") {
    // entry = <name> <node> [port]; tap = <name> <node> <port>
    const bool tap = k == "tap";
    if (words.size() < 2 || words.size() > 3 || (tap && words.size() != 3)) err.fail("expected: <name> <node> <port>");
    Topology::PortDecl d{std::string(words[0]), std::string(words[1]), words.size() == 3 ? to_size(words[2], err) : 0};
    (tap ? cfg.topology.taps : cfg.topology.entries).push_back(std::move(d));
  } else {
    err.fail("unknown key");
  }
}

}  // namespace

std::string_view scenario_name(Scenario s) {
  for (const auto& e : kScenarios)
    if (e.id == s) return e.name;
  return "unknown";
}

std::string_view scenario_summary(Scenario s) {
  for (const auto& e : kScenarios)
    if (e.id == s) return e.summary;
  return "";
}

Scenario parse_scenario(std::string_view name) {
  for (const auto& e : kScenarios)
    if (e.name == name) return e.id;
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

const std::vector<Scenario>& all_scenarios() {
  static const std::vector<Scenario> all = [] {
    std::vector<Scenario> v;
    for (const auto& e : kScenarios) v.push_back(e.id);
    return v;
  }();
  return all;
}

ExperimentConfig default_config(Scenario s) {
  ExperimentConfig c;
  c.scenario = s;
  const auto random = AngleSpec::per_block();
  switch (s) {
    case Scenario::position_learner:
      c.events = 1000;
      c.blocks = 2;
      c.y = {LevelSpec::Mode::list_per_block, {-0.5, 0.5}};
      break;
    case Scenario::interval_learner:
      c.events = 1000;
      c.blocks = 100;
      c.warmup = 500;
      c.y = {LevelSpec::Mode::random_per_block, {}};
      break;
    case Scenario::three_level:
      c.events = 5000;
      c.blocks = 3;
      c.level_sets = {{-0.75, -0.25, 0.25, 0.75}, {-0.75, -0.25, 0.25, 0.50}, {-0.60, -0.75, -0.25, 0.25, 0.50}};
      break;
    case Scenario::circle_learner:
      c.events = 1000;
      c.blocks = 100;
      c.warmup = 500;
      c.phi[0] = random;
      break;
    case Scenario::classifier:
      c.events = 100;
      c.blocks = 200;
      c.warmup = 2000;
      break;
    case Scenario::polarizer:
      c.events = 1000;
      c.blocks = 100;
      c.psi0 = AngleSpec::fixed(25.0);
      c.phi[0] = random;
      break;
    case Scenario::three_polarizers:
      c.events = 1000;
      c.blocks = 100;
      c.psi0 = AngleSpec::per_event();
      c.phi[0] = random;
      break;
    case Scenario::beam_splitter:
      c.events = 10000;
      c.blocks = 100;
      c.psi0 = c.psi1 = random;
      break;
    case Scenario::mach_zehnder:
      c.events = 10000;
      c.blocks = 37;
      c.psi0 = AngleSpec::per_run();
      c.phi0_step = 10.0;
      break;
    case Scenario::chained_mz:
      c.events = 10000;
      c.blocks = 100;
      c.p0 = {true, 0.0};
      c.psi0 = c.psi1 = random;
      c.phi = {random, random, random, random};
      break;
    case Scenario::custom:
      c.events = 1000;
      c.blocks = 1;
      break;
  }
  return c;
}

void ExperimentConfig::validate() const {
  auto fail = [](const std::string& m) { throw ConfigError(m); };
  if (!(alpha > 0.0 && alpha < 1.0)) fail("alpha must lie in (0, 1)");
  if (events < 1) fail("events must be >= 1");
  if (blocks < 1) fail("blocks must be >= 1");
  if (scenario != Scenario::classifier && warmup >= events) fail("warmup must be smaller than events");
  if (!p0.random && !(p0.value >= 0.0 && p0.value <= 1.0)) fail("p0 must lie in [0, 1]");
  if (trace && scenario != Scenario::classifier) fail("trace applies to the classifier only");

  switch (scenario) {
    case Scenario::position_learner:
    case Scenario::interval_learner: {
      if (y.mode != LevelSpec::Mode::random_per_block && y.values.empty()) fail("y needs at least one value");
      const bool open = scenario == Scenario::interval_learner;
      for (double v : y.values)
        if (open ? !(std::abs(v) < 1.0) : !(std::abs(v) <= 1.0))
          fail(open ? "interval-learner needs |y| < 1" : "position-learner needs |y| <= 1");
      break;
    }
    case Scenario::three_level:
      if (level_sets.empty()) fail("three-level needs at least one set");
      for (const auto& s : level_sets)
        for (double v : s)
          if (!(std::abs(v) <= 1.0)) fail("three-level inputs need |y| <= 1");
      if (average_window < 1 || average_window > events) fail("average_window must lie in [1, events]");
      break;
    case Scenario::classifier:
      if (!std::isfinite(gamma)) fail("gamma must be finite");
      if (warmup < 1) fail("classifier warmup must be >= 1 (the first event seeds the segment)");
      break;
    case Scenario::custom:
      if (topology.nodes.empty()) fail("custom scenario needs at least one node");
      if (topology.sinks.empty()) fail("custom scenario needs at least one sink");
      if (topology.entries.empty() || topology.entries.size() > 2) fail("custom scenario needs one or two entries");
      break;
    default:
      break;
  }
}

ExperimentConfig parse_config(std::string_view text) {
  std::vector<KeyValue> kvs;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t nl = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("line " + std::to_string(line_no) + ": empty key");
    if (value.empty()) throw ConfigError("line " + std::to_string(line_no) + " (" + std::string(key) + "): empty value");
    kvs.push_back({line_no, std::string(key), std::string(value)});
  }

  static const std::set<std::string, std::less<>> repeatable{"set", "node", "edge", "sink", "entry", "tap"};
  std::set<std::string, std::less<>> seen;
  const KeyValue* scenario = nullptr;
  for (const auto& kv : kvs) {
    if (!repeatable.contains(kv.key) && !seen.insert(kv.key).second)
      throw ConfigError("line " + std::to_string(kv.line) + ": duplicate key '" + kv.key + "'");
    if (kv.key == "scenario") scenario = &kv;
  }
  if (scenario == nullptr) throw ConfigError("missing 'scenario' key");

  ExperimentConfig cfg = default_config(parse_scenario(scenario->value));
  bool first_set = true;
  // y_draw refers to the y list, so it is applied last.
  for (const auto& kv : kvs)
    if (kv.key != "scenario" && kv.key != "y_draw") apply(cfg, kv, first_set);
  for (const auto& kv : kvs)
    if (kv.key == "y_draw") apply(cfg, kv, first_set);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

}  // namespace dlm
