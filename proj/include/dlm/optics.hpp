#pragma once

// Optical devices assembled from vector learning machines and passive
// rotations, plus builders for the standard experiment networks.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "dlm/event_core.hpp"
#include "dlm/rng.hpp"
#include "dlm/slm.hpp"
#include "dlm/vector_dlm.hpp"

namespace dlm {

using OpticsNetwork = Network<Message>;

/// (v1 cos phi - v2 sin phi, v1 sin phi + v2 cos phi).
Vec2 rotate2(const Vec2& v, double phi);

/// Passive plane rotation by a settable angle.
class RotatorNode final : public Node<Message> {
 public:
  explicit RotatorNode(double phi) : phi_(phi) {}

  std::size_t input_count() const override { return 1; }
  std::size_t output_count() const override { return 1; }
  Emission<Message> receive(std::size_t input, const Message& msg) override;
  std::unique_ptr<Node<Message>> clone() const override { return std::make_unique<RotatorNode>(*this); }
  std::string kind() const override { return "rotator"; }

  double angle() const { return phi_; }
  void set_angle(double phi) { phi_ = phi; }

 private:
  double phi_;
};

/// Circle machine behind a polarizer's rotator. A theta = 1 decision leaves on
/// channel 0 carrying (cos phi, sin phi); theta = 0 leaves on channel 1
/// carrying (cos(phi + pi/2), sin(phi + pi/2)).
class PolarizerDlmNode final : public Node<Message> {
 public:
  PolarizerDlmNode(CircleDlm dlm, double phi) : dlm_(dlm), phi_(phi) {}

  std::size_t input_count() const override { return 1; }
  std::size_t output_count() const override { return 2; }
  Emission<Message> receive(std::size_t input, const Message& msg) override;
  std::unique_ptr<Node<Message>> clone() const override { return std::make_unique<PolarizerDlmNode>(*this); }
  std::string kind() const override { return "polarizer-dlm"; }

  const CircleDlm& machine() const { return dlm_; }
  double phi() const { return phi_; }
  void set_phi(double phi) { phi_ = phi; }

 private:
  CircleDlm dlm_;
  double phi_;
};

/// Self-contained polarizer: the input is rotated by -phi so the machine sees
/// (cos(psi - phi), sin(psi - phi)), then PolarizerDlmNode decides.
class Polarizer {
 public:
  Polarizer(CircleDlm dlm, double phi) : rotator_(-phi), dlm_(dlm, phi) {}

  Emission<Message> step(const Message& msg);

  void set_phi(double phi);
  double phi() const { return dlm_.phi(); }
  const CircleDlm& machine() const { return dlm_.machine(); }

 private:
  RotatorNode rotator_;
  PolarizerDlmNode dlm_;
};

/// A whole polarizer as one network node.
class PolarizerNode final : public Node<Message> {
 public:
  explicit PolarizerNode(Polarizer p) : p_(p) {}

  std::size_t input_count() const override { return 1; }
  std::size_t output_count() const override { return 2; }
  Emission<Message> receive(std::size_t, const Message& msg) override { return p_.step(msg); }
  std::unique_ptr<Node<Message>> clone() const override { return std::make_unique<PolarizerNode>(*this); }
  std::string kind() const override { return "polarizer"; }

  Polarizer& polarizer() { return p_; }

 private:
  Polarizer p_;
};

enum class Backend { dlm, slm };

/// Two-input two-output beam splitter: front-end machine, fixed 45 degree
/// rotations in the (1,4) and (3,2) planes, back-end machine.
///
/// Output channel 0 is taken when the back end updates component 1 or 2 (or,
/// for the stochastic back end, when the draw says so) and carries
/// (x1, x2)/|(x1, x2)|; channel 1 carries (x3, x4)/|(x3, x4)|. If the selected
/// pair has zero norm the last payload sent on that channel (or (1, 0)) is
/// re-sent and fallback_count() is incremented.
class BeamSplitterNode final : public Node<Message> {
 public:
  BeamSplitterNode(FrontEndDlm front, HypersphereDlm<4> back) : front_(front), back_(back) {}

  /// Switches to stochastic output selection with a private generator.
  void use_stochastic_output(Rng rng, SlmRule rule = SlmRule::weight_above_draw);

  std::size_t input_count() const override { return 2; }
  std::size_t output_count() const override { return 2; }
  Emission<Message> receive(std::size_t input, const Message& msg) override;
  std::unique_ptr<Node<Message>> clone() const override { return std::make_unique<BeamSplitterNode>(*this); }
  std::string kind() const override { return "beam-splitter"; }

  const FrontEndDlm& front() const { return front_; }
  const HypersphereDlm<4>& back() const { return back_; }
  Backend backend() const { return slm_rng_ ? Backend::slm : Backend::dlm; }
  std::uint64_t fallback_count() const { return fallbacks_; }
  /// Rule the back end applied on the most recent event.
  RuleChoice last_rule() const { return last_rule_; }

  /// The fixed internal transform: 45 degree rotations in the (1,4) then (3,2) planes.
  static Vec4 mix(const Vec4& w);

 private:
  FrontEndDlm front_;
  HypersphereDlm<4> back_;
  std::optional<Rng> slm_rng_;
  SlmRule slm_rule_ = SlmRule::weight_above_draw;
  std::array<std::optional<Vec2>, 2> last_payload_{};
  std::uint64_t fallbacks_ = 0;
  RuleChoice last_rule_{};
};

/// Common knobs for optics networks. Internal states are initialized from the
/// "init" stream of `seed`; stochastic back ends draw from "slm/<node>".
struct OpticsParams {
  double alpha = kDefaultAlpha;
  std::uint64_t seed = 1;
  Backend backend = Backend::dlm;
  SlmRule slm_rule = SlmRule::weight_above_draw;
};

/// entry "in" -> rotator "rot" (-phi) -> "dlm" -> sinks "N0" / "N1".
OpticsNetwork build_polarizer(double phi, const OpticsParams& params);
/// Updates both halves of the polarizer named `prefix` ("" for build_polarizer).
void set_polarizer_angle(OpticsNetwork& net, double phi, const std::string& prefix = "");

/// First polarizer at angle 0 feeds polarizers "p2" (from its channel 0) and
/// "p3" (from channel 1); sinks N0..N3 top to bottom.
OpticsNetwork build_three_polarizers(double phi2, double phi3, const OpticsParams& params);

/// entries "in0"/"in1" -> "bs" -> sinks "out0"/"out1".
OpticsNetwork build_beam_splitter(const OpticsParams& params);

/// "bs1" -> rotators "r0"/"r1" (taps N0/N1) -> "bs2" -> sinks N2/N3.
OpticsNetwork build_mach_zehnder(double phi0, double phi1, const OpticsParams& params);

/// "bs1" -> r0/r1 (taps N0/N1) -> "bs2" -> r2/r3 (taps N2/N3) -> "bs3" -> sinks N4/N5.
OpticsNetwork build_chained_mz(double phi0, double phi1, double phi2, double phi3, const OpticsParams& params);

/// Beam splitter node initialized per `params` (random unit states).
std::unique_ptr<BeamSplitterNode> make_beam_splitter(const std::string& name, const OpticsParams& params, Rng& init);

}  // namespace dlm
