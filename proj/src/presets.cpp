#include <utility>

#include "dlm/harness.hpp"

namespace dlm {

namespace {

ExperimentConfig with(Scenario s, auto&& edit) {
  ExperimentConfig c = default_config(s);
  edit(c);
  return c;
}

std::vector<Preset> make_presets() {
  std::vector<Preset> p;

  p.push_back({"fig1", "position learner: y = -0.5 for 1000 events, then 0.5 for 1000 events",
               {default_config(Scenario::position_learner)}});
  p.push_back({"fig1-random", "position learner: y = +-0.5 drawn per event",
               {with(Scenario::position_learner, [](ExperimentConfig& c) { c.y.mode = LevelSpec::Mode::list_per_event; })}});
  p.push_back({"fig2", "three-level network: three 5000-event phases", {default_config(Scenario::three_level)}});
  p.push_back({"fig3", "interval learner: 100 random y, last 500 of 1000 events counted",
               {default_config(Scenario::interval_learner)}});
  p.push_back({"fig4", "blind classifier on the rotating two-cluster stream, 100-event windows",
               {default_config(Scenario::classifier)}});
  p.push_back({"fig5", "polarizer: psi = 25, phi random per 1000-event block", {default_config(Scenario::polarizer)}});
  p.push_back({"fig5-unpolarized", "polarizer: psi random per event",
               {with(Scenario::polarizer, [](ExperimentConfig& c) { c.psi0 = AngleSpec::per_event(); })}});
  p.push_back({"fig6", "circle learner: 100 random phi, last 500 of 1000 events counted",
               {default_config(Scenario::circle_learner)}});
  p.push_back({"fig6-30deg", "circle learner at phi = 30 after a 100-event transient",
               {with(Scenario::circle_learner, [](ExperimentConfig& c) {
                 c.phi[0] = AngleSpec::fixed(30.0);
                 c.blocks = 1;
                 c.warmup = 100;
               })}});
  p.push_back({"three-polarizers", "polarizer at 0 feeding polarizers at phi, psi random per event",
               {default_config(Scenario::three_polarizers)}});

  Preset bs{"fig7", "beam splitter: p0 in {1, 0.5, 0.25}, psi0 and psi1 random per 10000-event block", {}};
  for (double p0 : {1.0, 0.5, 0.25})
    bs.runs.push_back(with(Scenario::beam_splitter, [p0](ExperimentConfig& c) { c.p0 = {false, p0}; }));
  p.push_back(bs);

  Preset mz{"fig8", "Mach-Zehnder: phi0 swept in 10 degree steps for phi1 in {0, 30, 240, 300}", {}};
  Preset mz_slm{"fig13", "Mach-Zehnder with stochastic beam-splitter outputs, fig8 protocol", {}};
  for (double phi1 : {0.0, 30.0, 240.0, 300.0}) {
    mz.runs.push_back(with(Scenario::mach_zehnder, [phi1](ExperimentConfig& c) { c.phi[1] = AngleSpec::fixed(phi1); }));
    mz_slm.runs.push_back(with(Scenario::mach_zehnder, [phi1](ExperimentConfig& c) {
      c.phi[1] = AngleSpec::fixed(phi1);
      c.backend = Backend::slm;
    }));
  }
  p.push_back(mz);

  p.push_back({"fig9", "chained interferometers: phi0 swept, other phases 0, p0 = 1",
               {with(Scenario::chained_mz, [](ExperimentConfig& c) {
                 c.p0 = {false, 1.0};
                 c.psi0 = AngleSpec::per_run();
                 c.psi1 = AngleSpec::fixed(0.0);
                 c.phi = {AngleSpec::fixed(0.0), AngleSpec::fixed(0.0), AngleSpec::fixed(0.0), AngleSpec::fixed(0.0)};
                 c.phi0_step = 10.0;
                 c.blocks = 37;
               })}});
  p.push_back({"fig10", "chained interferometers: alpha = 0.99, 10000 events per random 7-parameter block",
               {default_config(Scenario::chained_mz)}});
  p.push_back({"fig11", "chained interferometers: alpha = 0.9999, 1000000 events per block",
               {with(Scenario::chained_mz, [](ExperimentConfig& c) {
                 c.alpha = 0.9999;
                 c.events = 1000000;
               })}});

  Preset scaling{"fig12", "chained interferometers: alpha in {0.99, 0.999, 0.9999} with events ~ 1/(1-alpha)^2, 20 blocks each", {}};
  for (auto [alpha, events] : {std::pair{0.99, 10000}, std::pair{0.999, 100000}, std::pair{0.9999, 1000000}})
    scaling.runs.push_back(with(Scenario::chained_mz, [alpha, events](ExperimentConfig& c) {
      c.alpha = alpha;
      c.events = static_cast<std::size_t>(events);
      c.blocks = 20;
    }));
  p.push_back(scaling);
  p.push_back(mz_slm);
  return p;
}

}  // namespace

const std::vector<Preset>& presets() {
  static const std::vector<Preset> all = make_presets();
  return all;
}

const Preset& find_preset(std::string_view id) {
  for (const auto& p : presets())
    if (p.id == id) return p;
  throw ConfigError("unknown figure id '" + std::string(id) + "'");
}

ResultTable run_preset(const Preset& p) {
  ResultTable out;
  for (const auto& cfg : p.runs) out.append(run_scenario(cfg));
  return out;
}

}  // namespace dlm
