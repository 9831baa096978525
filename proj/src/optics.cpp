#include "dlm/optics.hpp"

#include <cmath>

namespace dlm {

Vec2 rotate2(const Vec2& v, double phi) {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {v[0] * c - v[1] * s, v[0] * s + v[1] * c};
}

Emission<Message> RotatorNode::receive(std::size_t input, const Message& msg) {
  if (input != 0) throw NetworkError("rotator has a single input");
  return {0, Message(rotate2(msg.payload(), phi_))};
}

Emission<Message> PolarizerDlmNode::receive(std::size_t input, const Message& msg) {
  if (input != 0) throw NetworkError("polarizer has a single input");
  const auto s = dlm_.step(msg.payload());
  if (s.theta == 1) return {0, Message::from_angle(phi_)};
  return {1, Message::from_angle(phi_ + kPi / 2.0)};
}

Emission<Message> Polarizer::step(const Message& msg) {
  const auto rotated = rotator_.receive(0, msg);
  return dlm_.receive(0, rotated.payload);
}

void Polarizer::set_phi(double phi) {
  rotator_.set_angle(-phi);
  dlm_.set_phi(phi);
}

void BeamSplitterNode::use_stochastic_output(Rng rng, SlmRule rule) {
  slm_rng_ = std::move(rng);
  slm_rule_ = rule;
}

Vec4 BeamSplitterNode::mix(const Vec4& w) {
  const double k = 1.0 / std::sqrt(2.0);
  Vec4 z = w;
  // (1,4) plane
  const double z1 = k * (z[0] - z[3]);
  const double z4 = k * (z[0] + z[3]);
  z[0] = z1;
  z[3] = z4;
  // (3,2) plane
  const double z3 = k * (z[2] - z[1]);
  const double z2 = k * (z[2] + z[1]);
  z[2] = z3;
  z[1] = z2;
  return z;
}

Emission<Message> BeamSplitterNode::receive(std::size_t input, const Message& msg) {
  if (input > 1) throw NetworkError("beam splitter input must be 0 or 1");
  front_.step(input, msg.payload());
  const auto b = back_.step(mix(front_.state()));
  last_rule_ = b.choice;

  const Vec4& x = back_.state();
  std::size_t channel;
  if (slm_rng_)
    channel = slm_select_output(x, slm_rng_->uniform_open(), slm_rule_);
  else
    channel = b.choice.j < 2 ? 0 : 1;

  const Vec2 pair = channel == 0 ? Vec2{x[0], x[1]} : Vec2{x[2], x[3]};
  if (norm(pair) > 1e-300) {
    Message out(pair);
    last_payload_[channel] = out.payload();
    return {channel, out};
  }
  ++fallbacks_;
  return {channel, Message(last_payload_[channel].value_or(Vec2{1.0, 0.0}))};
}

std::unique_ptr<BeamSplitterNode> make_beam_splitter(const std::string& name, const OpticsParams& params, Rng& init) {
  auto front = FrontEndDlm::random(params.alpha, init);
  auto back = HypersphereDlm<4>::random(params.alpha, init);
  auto node = std::make_unique<BeamSplitterNode>(front, back);
  if (params.backend == Backend::slm)
    node->use_stochastic_output(Rng::derive(params.seed, "slm/" + name), params.slm_rule);
  return node;
}

namespace {

void add_polarizer(NetworkBuilder<Message>& b, const std::string& prefix, double phi, const OpticsParams& params,
                   Rng& init) {
  b.add_node(prefix + "rot", std::make_unique<RotatorNode>(-phi));
  b.add_node(prefix + "dlm", std::make_unique<PolarizerDlmNode>(CircleDlm::random(params.alpha, init), phi));
  b.connect(prefix + "rot", 0, prefix + "dlm");
}

}  // namespace

void set_polarizer_angle(OpticsNetwork& net, double phi, const std::string& prefix) {
  net.node_as<RotatorNode>(prefix + "rot").set_angle(-phi);
  net.node_as<PolarizerDlmNode>(prefix + "dlm").set_phi(phi);
}

OpticsNetwork build_polarizer(double phi, const OpticsParams& params) {
  Rng init = Rng::derive(params.seed, "init");
  NetworkBuilder<Message> b;
  add_polarizer(b, "", phi, params, init);
  b.add_sink("N0").add_sink("N1");
  b.connect("dlm", 0, "N0").connect("dlm", 1, "N1");
  b.add_entry("in", "rot");
  return std::move(b).build();
}

OpticsNetwork build_three_polarizers(double phi2, double phi3, const OpticsParams& params) {
  Rng init = Rng::derive(params.seed, "init");
  NetworkBuilder<Message> b;
  add_polarizer(b, "p1", 0.0, params, init);
  add_polarizer(b, "p2", phi2, params, init);
  add_polarizer(b, "p3", phi3, params, init);
  b.connect("p1dlm", 0, "p2rot").connect("p1dlm", 1, "p3rot");
  b.add_sink("N0").add_sink("N1").add_sink("N2").add_sink("N3");
  b.connect("p2dlm", 0, "N0").connect("p2dlm", 1, "N1");
  b.connect("p3dlm", 0, "N2").connect("p3dlm", 1, "N3");
  b.add_entry("in", "p1rot");
  return std::move(b).build();
}

OpticsNetwork build_beam_splitter(const OpticsParams& params) {
  Rng init = Rng::derive(params.seed, "init");
  NetworkBuilder<Message> b;
  b.add_node("bs", make_beam_splitter("bs", params, init));
  b.add_sink("out0").add_sink("out1");
  b.connect("bs", 0, "out0").connect("bs", 1, "out1");
  b.add_entry("in0", "bs", 0).add_entry("in1", "bs", 1);
  return std::move(b).build();
}

OpticsNetwork build_mach_zehnder(double phi0, double phi1, const OpticsParams& params) {
  Rng init = Rng::derive(params.seed, "init");
  NetworkBuilder<Message> b;
  b.add_node("bs1", make_beam_splitter("bs1", params, init));
  b.add_node("bs2", make_beam_splitter("bs2", params, init));
  b.add_node("r0", std::make_unique<RotatorNode>(phi0));
  b.add_node("r1", std::make_unique<RotatorNode>(phi1));
  b.connect("bs1", 0, "r0").connect("bs1", 1, "r1");
  b.add_tap("N0", "bs1", 0).add_tap("N1", "bs1", 1);
  b.connect("r0", 0, "bs2", 0).connect("r1", 0, "bs2", 1);
  b.add_sink("N2").add_sink("N3");
  b.connect("bs2", 0, "N2").connect("bs2", 1, "N3");
  b.add_entry("in0", "bs1", 0).add_entry("in1", "bs1", 1);
  return std::move(b).build();
}

OpticsNetwork build_chained_mz(double phi0, double phi1, double phi2, double phi3, const OpticsParams& params) {
  Rng init = Rng::derive(params.seed, "init");
  NetworkBuilder<Message> b;
  b.add_node("bs1", make_beam_splitter("bs1", params, init));
  b.add_node("bs2", make_beam_splitter("bs2", params, init));
  b.add_node("bs3", make_beam_splitter("bs3", params, init));
  b.add_node("r0", std::make_unique<RotatorNode>(phi0));
  b.add_node("r1", std::make_unique<RotatorNode>(phi1));
  b.add_node("r2", std::make_unique<RotatorNode>(phi2));
  b.add_node("r3", std::make_unique<RotatorNode>(phi3));
  b.connect("bs1", 0, "r0").connect("bs1", 1, "r1");
  b.add_tap("N0", "bs1", 0).add_tap("N1", "bs1", 1);
  b.connect("r0", 0, "bs2", 0).connect("r1", 0, "bs2", 1);
  b.connect("bs2", 0, "r2").connect("bs2", 1, "r3");
  b.add_tap("N2", "bs2", 0).add_tap("N3", "bs2", 1);
  b.connect("r2", 0, "bs3", 0).connect("r3", 0, "bs3", 1);
  b.add_sink("N4").add_sink("N5");
  b.connect("bs3", 0, "N4").connect("bs3", 1, "N5");
  b.add_entry("in0", "bs1", 0).add_entry("in1", "bs1", 1);
  return std::move(b).build();
}

}  // namespace dlm
