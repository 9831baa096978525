#include <cmath>
#include <limits>

#include "dlm/harness.hpp"
#include "dlm/quantum_oracle.hpp"
#include "dlm/scalar_dlm.hpp"

namespace dlm {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double ratio(double a, double b) { return b > 0.0 ? a / b : kNaN; }

/// Draws block parameters from the "params" stream. Draw order per block is
/// p0, psi0, psi1, phi0..phi3, restricted to what the scenario uses.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(Rng::derive(seed, "params")) {}

  double resolve_run(const AngleSpec& a) { return a.mode == AngleSpec::Mode::per_run ? rng_.uniform(0.0, 360.0) : a.degrees; }

  /// Degrees; NaN when the angle is drawn per event.
  double angle(const AngleSpec& a, double run_value) {
    switch (a.mode) {
      case AngleSpec::Mode::fixed:
        return a.degrees;
      case AngleSpec::Mode::per_run:
        return run_value;
      case AngleSpec::Mode::per_block:
        return rng_.uniform(0.0, 360.0);
      case AngleSpec::Mode::per_event:
        return kNaN;
    }
    return kNaN;
  }

  double probability(const ProbSpec& p) { return p.random ? rng_.uniform() : p.value; }

  double level_uniform_open() {
    double y;
    do {
      y = rng_.uniform(-1.0, 1.0);
    } while (y == -1.0);
    return y;
  }

 private:
  Rng rng_;
};

/// Block-level angle with its per-run value fixed up front.
struct AngleParam {
  AngleSpec spec;
  double run_value;
};

double event_angle(double block_degrees, Rng& src) {
  return std::isnan(block_degrees) ? src.uniform(0.0, 2.0 * kPi) : deg_to_rad(block_degrees);
}

/// Probability of the first detector of a two-port device. With an angle drawn
/// per event the relative phase is uniform and the two inputs add incoherently.
template <class Device>
double detector0_probability(Device device, double p0, double psi0, double psi1) {
  using oracle::Amplitudes;
  if (std::isnan(psi0) || std::isnan(psi1)) {
    const double from0 = device(Amplitudes{1.0, 0.0}).p0();
    const double from1 = device(Amplitudes{0.0, 1.0}).p0();
    return p0 * from0 + (1.0 - p0) * from1;
  }
  return device(oracle::input_amplitudes(p0, deg_to_rad(psi0), deg_to_rad(psi1))).p0();
}

OpticsParams optics_params(const ExperimentConfig& cfg) { return {cfg.alpha, cfg.seed, cfg.backend, cfg.slm_rule}; }

/// Source for two-input networks: entry e0 with probability p0, else e1.
auto two_input_source(Rng& src, double p0, double psi0, double psi1, std::size_t e0, std::size_t e1) {
  return [&src, p0, psi0, psi1, e0, e1](std::size_t) {
    const bool first = src.uniform() < p0;
    const double a = event_angle(first ? psi0 : psi1, src);
    return SourceEvent<Message>{first ? e0 : e1, Message::from_angle(a)};
  };
}

std::size_t counted(const ExperimentConfig& cfg) { return cfg.events - cfg.warmup; }

// ---------------------------------------------------------------------------

ResultTable run_position(const ExperimentConfig& cfg) {
  ResultTable t({"block", "y", "y_mean", "frac_plus", "x_end", "oracle_x", "abs_diff"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  PositionDlm m(0.0, cfg.alpha);
  std::vector<double> ys(cfg.events);
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    double level = kNaN;
    if (cfg.y.mode == LevelSpec::Mode::random_per_block) level = prm.level_uniform_open();
    if (cfg.y.mode == LevelSpec::Mode::list_per_block) level = cfg.y.values[b % cfg.y.values.size()];
    const double x_start = m.x();
    std::size_t plus = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < cfg.events; ++k) {
      double y = level;
      if (std::isnan(y)) {
        const auto i = static_cast<std::size_t>(src.uniform() * static_cast<double>(cfg.y.values.size()));
        y = cfg.y.values[i];
      }
      ys[k] = y;
      sum += y;
      const int d = m.step(y).delta;
      if (k >= cfg.warmup && d > 0) ++plus;
    }
    const double oracle = closed_form_position(x_start, ys, cfg.alpha);
    t.add_row({double(b), level, sum / double(cfg.events), double(plus) / double(counted(cfg)), m.x(), oracle,
               std::abs(m.x() - oracle)});
  }
  return t;
}

ResultTable run_interval(const ExperimentConfig& cfg) {
  ResultTable t({"block", "y", "frac_plus", "oracle_frac", "abs_diff"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    double y = kNaN;
    if (cfg.y.mode == LevelSpec::Mode::random_per_block) y = prm.level_uniform_open();
    if (cfg.y.mode == LevelSpec::Mode::list_per_block) y = cfg.y.values[b % cfg.y.values.size()];
    IntervalDlm m(0.0, cfg.alpha);
    std::size_t plus = 0;
    double sum = 0.0;
    for (std::size_t k = 0; k < cfg.events; ++k) {
      double yk = y;
      if (std::isnan(yk)) yk = cfg.y.values[static_cast<std::size_t>(src.uniform() * double(cfg.y.values.size()))];
      if (k >= cfg.warmup) sum += yk;
      if (m.step(yk).delta > 0 && k >= cfg.warmup) ++plus;
    }
    const double frac = double(plus) / double(counted(cfg));
    const double oracle = (1.0 + sum / double(counted(cfg))) / 2.0;
    t.add_row({double(b), y, frac, oracle, std::abs(frac - oracle)});
  }
  return t;
}

ResultTable run_three_level(const ExperimentConfig& cfg) {
  std::vector<std::string> cols{"block"};
  for (int i = 1; i <= 7; ++i) cols.push_back("m" + std::to_string(i));
  for (int i = 1; i <= 7; ++i) cols.push_back("oracle_m" + std::to_string(i));
  cols.push_back("max_abs_diff");
  ResultTable t(cols);

  Rng src = Rng::derive(cfg.seed, "source");
  ScalarNetwork net = build_three_level_classifier(cfg.alpha, 0.0);
  std::array<double, 7> oracle{};
  const std::size_t avg_from = cfg.events - cfg.average_window;
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const auto& set = cfg.level_sets[b % cfg.level_sets.size()];
    std::array<double, 7> sums{};
    for (std::size_t k = 0; k < cfg.events; ++k) {
      const auto i = static_cast<std::size_t>(src.uniform() * double(set.size()));
      net.process_event(0, set[i]);
      if (k >= avg_from)
        for (int m = 1; m <= 7; ++m) sums[m - 1] += three_level_value(net, m);
    }
    oracle = three_level_oracle(oracle, set);
    std::vector<double> row{double(b)};
    double worst = 0.0;
    for (int m = 0; m < 7; ++m) {
      const double v = sums[m] / double(cfg.average_window);
      row.push_back(v);
      worst = std::max(worst, std::abs(v - oracle[m]));
    }
    row.insert(row.end(), oracle.begin(), oracle.end());
    row.push_back(worst);
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable run_circle(const ExperimentConfig& cfg) {
  ResultTable t({"block", "phi", "frac_theta1", "oracle_cos2", "abs_diff", "ratio_theta0_to_theta1"});
  ParamSampler prm(cfg.seed);
  Rng init = Rng::derive(cfg.seed, "init");
  Rng src = Rng::derive(cfg.seed, "source");
  const double phi_run = prm.resolve_run(cfg.phi[0]);
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double phi = prm.angle(cfg.phi[0], phi_run);
    CircleDlm m = CircleDlm::random(cfg.alpha, init);
    std::size_t ones = 0;
    double oracle_sum = 0.0;
    for (std::size_t k = 0; k < cfg.events; ++k) {
      const double a = event_angle(phi, src);
      const int theta = m.step(angle_to_vector(a)).theta;
      if (k >= cfg.warmup) {
        ones += static_cast<std::size_t>(theta);
        oracle_sum += std::cos(a) * std::cos(a);
      }
    }
    const double n = double(counted(cfg));
    const double frac = double(ones) / n;
    const double oracle = oracle_sum / n;
    t.add_row({double(b), phi, frac, oracle, std::abs(frac - oracle), ratio(n - double(ones), double(ones))});
  }
  return t;
}

ResultTable run_classifier(const ExperimentConfig& cfg) {
  Rng src = Rng::derive(cfg.seed, "source");
  std::size_t n = 0;
  SegmentState st = SegmentState::initial(generate_rotating_gaussians(cfg.gamma, n++, src), cfg.alpha);
  for (; n < cfg.warmup; ++n) st = step_segment(st, generate_rotating_gaussians(cfg.gamma, n, src), cfg.point_rule).next;

  if (cfg.trace) {
    ResultTable t({"event", "y1", "y2", "side", "mid_x", "mid_y", "dir_x", "dir_y"});
    for (std::size_t k = 0; k < cfg.blocks * cfg.events; ++k, ++n) {
      const Vec2 y = generate_rotating_gaussians(cfg.gamma, n, src);
      const auto r = step_segment(st, y, cfg.point_rule);
      st = r.next;
      t.add_row({double(n), y[0], y[1], double(r.side), st.mid[0], st.mid[1], st.dir[0], st.dir[1]});
    }
    return t;
  }

  ResultTable t({"block", "event_end", "mid_x", "mid_y", "dir_x", "dir_y", "pca_sep_x", "pca_sep_y", "angle_deg",
                 "frac_plus"});
  std::vector<Vec2> window;
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    window.clear();
    std::size_t plus = 0;
    for (std::size_t k = 0; k < cfg.events; ++k, ++n) {
      const Vec2 y = generate_rotating_gaussians(cfg.gamma, n, src);
      const auto r = step_segment(st, y, cfg.point_rule);
      st = r.next;
      if (r.side > 0) ++plus;
      window.push_back(y);
    }
    Vec2 sep{kNaN, kNaN};
    double angle = kNaN;
    if (window.size() >= 2) {
      // The batch separatrix is perpendicular to the principal direction.
      const auto pca = pca_oracle(window);
      sep = {-pca.principal[1], pca.principal[0]};
      angle = line_angle_deg(st.dir, sep);
    }
    t.add_row({double(b), double(n - 1), st.mid[0], st.mid[1], st.dir[0], st.dir[1], sep[0], sep[1], angle,
               double(plus) / double(cfg.events)});
  }
  return t;
}

ResultTable run_polarizer(const ExperimentConfig& cfg) {
  ResultTable t({"block", "phi", "psi", "frac0", "frac1", "oracle_I0", "abs_diff"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  const double psi_run = prm.resolve_run(cfg.psi0);
  const double phi_run = prm.resolve_run(cfg.phi[0]);
  OpticsNetwork net = build_polarizer(0.0, optics_params(cfg));
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double psi = prm.angle(cfg.psi0, psi_run);
    const double phi = prm.angle(cfg.phi[0], phi_run);
    set_polarizer_angle(net, deg_to_rad(phi));
    const auto& c = net.run_experiment(
        [&](std::size_t) { return SourceEvent<Message>{0, Message::from_angle(event_angle(psi, src))}; }, cfg.events,
        cfg.warmup);
    const double f0 = c.fraction("N0");
    const double oracle = std::isnan(psi) ? 0.5 : oracle::malus_intensity(deg_to_rad(psi), deg_to_rad(phi)).i0;
    t.add_row({double(b), phi, psi, f0, c.fraction("N1"), oracle, std::abs(f0 - oracle)});
  }
  return t;
}

ResultTable run_three_polarizers(const ExperimentConfig& cfg) {
  ResultTable t({"block", "phi", "psi", "frac0", "frac1", "frac2", "frac3", "oracle0", "oracle1", "oracle2",
                 "oracle3", "max_abs_diff"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  const double psi_run = prm.resolve_run(cfg.psi0);
  const double phi_run = prm.resolve_run(cfg.phi[0]);
  OpticsNetwork net = build_three_polarizers(0.0, 0.0, optics_params(cfg));
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double psi = prm.angle(cfg.psi0, psi_run);
    const double phi = prm.angle(cfg.phi[0], phi_run);
    set_polarizer_angle(net, deg_to_rad(phi), "p2");
    set_polarizer_angle(net, deg_to_rad(phi), "p3");
    const auto& c = net.run_experiment(
        [&](std::size_t) { return SourceEvent<Message>{0, Message::from_angle(event_angle(psi, src))}; }, cfg.events,
        cfg.warmup);
    const double c2 = std::isnan(psi) ? 0.5 : std::pow(std::cos(deg_to_rad(psi)), 2);
    const double cp = std::pow(std::cos(deg_to_rad(phi)), 2);
    const std::array<double, 4> oracle{c2 * cp, c2 * (1.0 - cp), (1.0 - c2) * (1.0 - cp), (1.0 - c2) * cp};
    std::vector<double> row{double(b), phi, psi};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double f = c.fraction("N" + std::to_string(i));
      row.push_back(f);
      worst = std::max(worst, std::abs(f - oracle[i]));
    }
    row.insert(row.end(), oracle.begin(), oracle.end());
    row.push_back(worst);
    t.add_row(std::move(row));
  }
  return t;
}

ResultTable run_beam_splitter(const ExperimentConfig& cfg) {
  ResultTable t({"block", "p0", "psi0", "psi1", "frac0", "frac1", "oracle_b0sq", "abs_diff"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  const double psi0_run = prm.resolve_run(cfg.psi0);
  const double psi1_run = prm.resolve_run(cfg.psi1);
  OpticsNetwork net = build_beam_splitter(optics_params(cfg));
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double p0 = prm.probability(cfg.p0);
    const double psi0 = prm.angle(cfg.psi0, psi0_run);
    const double psi1 = prm.angle(cfg.psi1, psi1_run);
    const auto& c = net.run_experiment(two_input_source(src, p0, psi0, psi1, 0, 1), cfg.events, cfg.warmup);
    const double f0 = c.fraction("out0");
    const double oracle = detector0_probability([](const oracle::Amplitudes& a) { return oracle::bs_amplitudes(a); },
                                                p0, psi0, psi1);
    t.add_row({double(b), p0, psi0, psi1, f0, c.fraction("out1"), oracle, std::abs(f0 - oracle)});
  }
  return t;
}

ResultTable run_mach_zehnder(const ExperimentConfig& cfg) {
  ResultTable t({"block", "p0", "psi0", "psi1", "phi0", "phi1", "N0_frac", "N1_frac", "N2_frac", "N3_frac",
                 "oracle_b0sq", "oracle_b1sq", "abs_diff", "conserved"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  const double psi0_run = prm.resolve_run(cfg.psi0);
  const double psi1_run = prm.resolve_run(cfg.psi1);
  const double phi0_run = prm.resolve_run(cfg.phi[0]);
  const double phi1_run = prm.resolve_run(cfg.phi[1]);
  OpticsNetwork net = build_mach_zehnder(0.0, 0.0, optics_params(cfg));
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double p0 = prm.probability(cfg.p0);
    const double psi0 = prm.angle(cfg.psi0, psi0_run);
    const double psi1 = prm.angle(cfg.psi1, psi1_run);
    const double phi0 = prm.angle(cfg.phi[0], phi0_run) + double(b) * cfg.phi0_step;
    const double phi1 = prm.angle(cfg.phi[1], phi1_run);
    net.node_as<RotatorNode>("r0").set_angle(deg_to_rad(phi0));
    net.node_as<RotatorNode>("r1").set_angle(deg_to_rad(phi1));
    const auto& c = net.run_experiment(two_input_source(src, p0, psi0, psi1, 0, 1), cfg.events, cfg.warmup);
    const double n0 = double(c.tap("N0")), n1 = double(c.tap("N1"));
    const double n2 = double(c.count("N2")), n3 = double(c.count("N3"));
    const auto mz = [&](const oracle::Amplitudes& a) {
      return oracle::mz_amplitudes(a, deg_to_rad(phi0), deg_to_rad(phi1));
    };
    const double o0 = detector0_probability(mz, p0, psi0, psi1);
    const double f2 = ratio(n2, n2 + n3);
    t.add_row({double(b), p0, psi0, psi1, phi0, phi1, ratio(n0, n0 + n1), ratio(n1, n0 + n1), f2, ratio(n3, n2 + n3),
               o0, 1.0 - o0, std::abs(f2 - o0), n0 + n1 == n2 + n3 ? 1.0 : 0.0});
  }
  return t;
}

ResultTable run_chained_mz(const ExperimentConfig& cfg) {
  ResultTable t({"block", "p0", "psi0", "psi1", "phi0", "phi1", "phi2", "phi3", "N4_frac", "oracle_b0sq", "abs_diff",
                 "alpha"});
  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  const double psi0_run = prm.resolve_run(cfg.psi0);
  const double psi1_run = prm.resolve_run(cfg.psi1);
  std::array<double, 4> phi_run;
  for (int i = 0; i < 4; ++i) phi_run[i] = prm.resolve_run(cfg.phi[i]);
  OpticsNetwork net = build_chained_mz(0.0, 0.0, 0.0, 0.0, optics_params(cfg));
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double p0 = prm.probability(cfg.p0);
    const double psi0 = prm.angle(cfg.psi0, psi0_run);
    const double psi1 = prm.angle(cfg.psi1, psi1_run);
    std::array<double, 4> phi;
    for (int i = 0; i < 4; ++i) phi[i] = prm.angle(cfg.phi[i], phi_run[i]);
    phi[0] += double(b) * cfg.phi0_step;
    for (int i = 0; i < 4; ++i) net.node_as<RotatorNode>("r" + std::to_string(i)).set_angle(deg_to_rad(phi[i]));
    const auto& c = net.run_experiment(two_input_source(src, p0, psi0, psi1, 0, 1), cfg.events, cfg.warmup);
    const double f4 = c.fraction("N4");
    const auto chain = [&](const oracle::Amplitudes& a) {
      return oracle::chained_mz_amplitudes(a, deg_to_rad(phi[0]), deg_to_rad(phi[1]), deg_to_rad(phi[2]),
                                           deg_to_rad(phi[3]));
    };
    const double o = detector0_probability(chain, p0, psi0, psi1);
    t.add_row({double(b), p0, psi0, psi1, phi[0], phi[1], phi[2], phi[3], f4, o, std::abs(f4 - o), cfg.alpha});
  }
  return t;
}

OpticsNetwork build_custom(const ExperimentConfig& cfg) {
  const auto params = optics_params(cfg);
  Rng init = Rng::derive(cfg.seed, "init");
  NetworkBuilder<Message> b;
  for (const auto& n : cfg.topology.nodes) {
    if (n.type == "rotator") {
      b.add_node(n.name, std::make_unique<RotatorNode>(deg_to_rad(n.degrees)));
    } else if (n.type == "polarizer") {
      b.add_node(n.name, std::make_unique<PolarizerNode>(
                             Polarizer(CircleDlm::random(cfg.alpha, init), deg_to_rad(n.degrees))));
    } else {
      b.add_node(n.name, make_beam_splitter(n.name, params, init));
    }
  }
  for (const auto& s : cfg.topology.sinks) b.add_sink(s);
  for (const auto& e : cfg.topology.edges) b.connect(e.from, e.from_port, e.to, e.to_port);
  for (const auto& e : cfg.topology.entries) b.add_entry(e.name, e.node, e.port);
  for (const auto& tp : cfg.topology.taps) b.add_tap(tp.name, tp.node, tp.port);
  return std::move(b).build();
}

ResultTable run_custom(const ExperimentConfig& cfg) {
  std::vector<std::string> cols{"block", "p0", "psi0", "psi1"};
  for (const auto& s : cfg.topology.sinks) cols.push_back("frac_" + s);
  for (const auto& tp : cfg.topology.taps) cols.push_back("tap_" + tp.name);
  ResultTable t(cols);

  ParamSampler prm(cfg.seed);
  Rng src = Rng::derive(cfg.seed, "source");
  const double psi0_run = prm.resolve_run(cfg.psi0);
  const double psi1_run = prm.resolve_run(cfg.psi1);
  OpticsNetwork net = build_custom(cfg);
  const std::size_t second = net.entry_count() > 1 ? 1 : 0;
  for (std::size_t b = 0; b < cfg.blocks; ++b) {
    const double p0 = second == 0 ? 1.0 : prm.probability(cfg.p0);
    const double psi0 = prm.angle(cfg.psi0, psi0_run);
    const double psi1 = prm.angle(cfg.psi1, psi1_run);
    const auto& c = net.run_experiment(two_input_source(src, p0, psi0, psi1, 0, second), cfg.events, cfg.warmup);
    std::vector<double> row{double(b), p0, psi0, psi1};
    for (const auto& s : cfg.topology.sinks) row.push_back(c.fraction(s));
    for (const auto& tp : cfg.topology.taps) row.push_back(double(c.tap(tp.name)) / double(counted(cfg)));
    t.add_row(std::move(row));
  }
  return t;
}

}  // namespace

OpticsNetwork build_network(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto params = optics_params(cfg);
  const auto fixed = [](const AngleSpec& a) { return a.mode == AngleSpec::Mode::fixed ? deg_to_rad(a.degrees) : 0.0; };
  switch (cfg.scenario) {
    case Scenario::polarizer:
      return build_polarizer(fixed(cfg.phi[0]), params);
    case Scenario::three_polarizers:
      return build_three_polarizers(fixed(cfg.phi[0]), fixed(cfg.phi[0]), params);
    case Scenario::beam_splitter:
      return build_beam_splitter(params);
    case Scenario::mach_zehnder:
      return build_mach_zehnder(fixed(cfg.phi[0]), fixed(cfg.phi[1]), params);
    case Scenario::chained_mz:
      return build_chained_mz(fixed(cfg.phi[0]), fixed(cfg.phi[1]), fixed(cfg.phi[2]), fixed(cfg.phi[3]), params);
    case Scenario::custom:
      return build_custom(cfg);
    default:
      throw ConfigError("scenario '" + std::string(scenario_name(cfg.scenario)) + "' has no optics network");
  }
}

ResultTable run_scenario(const ExperimentConfig& cfg) {
  cfg.validate();
  switch (cfg.scenario) {
    case Scenario::position_learner:
      return run_position(cfg);
    case Scenario::interval_learner:
      return run_interval(cfg);
    case Scenario::three_level:
      return run_three_level(cfg);
    case Scenario::circle_learner:
      return run_circle(cfg);
    case Scenario::classifier:
      return run_classifier(cfg);
    case Scenario::polarizer:
      return run_polarizer(cfg);
    case Scenario::three_polarizers:
      return run_three_polarizers(cfg);
    case Scenario::beam_splitter:
      return run_beam_splitter(cfg);
    case Scenario::mach_zehnder:
      return run_mach_zehnder(cfg);
    case Scenario::chained_mz:
      return run_chained_mz(cfg);
    case Scenario::custom:
      return run_custom(cfg);
  }
  throw ConfigError("unknown scenario");
}

}  // namespace dlm
