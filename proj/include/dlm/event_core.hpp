#pragma once

// Messages, nodes and the one-message-in-flight network that routes them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlm/vec.hpp"

namespace dlm {

/// Raised for malformed topologies and for propagation failures.
class NetworkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Unit 2-vector carried by an event. The port it arrives on is a property of
/// the edge, not of the message.
class Message {
 public:
  /// Normalizes `v`; throws std::invalid_argument for zero or non-finite input.
  explicit Message(const Vec2& v);

  static Message from_angle(double radians);

  const Vec2& payload() const { return payload_; }
  double angle() const;

  friend bool operator==(const Message&, const Message&) = default;

 private:
  Vec2 payload_;
};

template <class Payload>
struct Emission {
  std::size_t port;
  Payload payload;
};

/// A processing unit. `receive` may change internal state and must emit on
/// exactly one output port.
template <class Payload>
class Node {
 public:
  virtual ~Node() = default;

  virtual std::size_t input_count() const = 0;
  virtual std::size_t output_count() const = 0;
  virtual Emission<Payload> receive(std::size_t input, const Payload& msg) = 0;
  virtual std::unique_ptr<Node> clone() const = 0;
  virtual std::string kind() const = 0;
};

struct Endpoint {
  enum class Kind { node, sink };
  Kind kind = Kind::sink;
  std::size_t index = 0;
  std::size_t port = 0;

  static Endpoint to_node(std::size_t node, std::size_t port) { return {Kind::node, node, port}; }
  static Endpoint to_sink(std::size_t sink) { return {Kind::sink, sink, 0}; }

  friend bool operator==(const Endpoint&, const Endpoint&) = default;
};

/// Per-sink event counts. Events that arrive during warm-up are tallied in
/// `discards` under the sink that absorbed them, never in `counts`.
struct TallyCounters {
  std::vector<std::string> sink_names;
  std::vector<std::uint64_t> counts;
  std::vector<std::uint64_t> discards;
  std::vector<std::string> tap_names;
  std::vector<std::uint64_t> tap_counts;

  std::uint64_t total() const;
  std::uint64_t total_discarded() const;
  std::size_t sink_index(const std::string& name) const;
  std::uint64_t count(const std::string& sink) const { return counts[sink_index(sink)]; }
  std::uint64_t tap(const std::string& name) const;
  double fraction(const std::string& sink) const;

  void reset();

  friend bool operator==(const TallyCounters&, const TallyCounters&) = default;
};

template <class Payload>
struct EventResult {
  std::size_t sink;
  Payload payload;
};

template <class Payload>
struct SourceEvent {
  std::size_t entry;
  Payload payload;
};

template <class Payload>
class NetworkBuilder;

/// Directed acyclic graph of nodes. A Network is single-threaded; copies are
/// deep and may run on other threads.
template <class Payload>
class Network {
 public:
  using NodeType = Node<Payload>;
  using Observer = std::function<void(std::size_t node, std::size_t input, const Payload&)>;

  Network(const Network& other);
  Network& operator=(const Network& other);
  Network(Network&&) noexcept = default;
  Network& operator=(Network&&) noexcept = default;

  /// Routes one message from a declared entry to the sink that absorbs it.
  EventResult<Payload> process_event(std::size_t entry, const Payload& msg) {
    return propagate(entry, msg, /*discard=*/false);
  }

  /// Processes `n` events drawn from `source`; the first `warmup` are tallied as
  /// discards. Counters are reset first.
  template <class Source>
  TallyCounters run_experiment(Source&& source, std::uint64_t n, std::uint64_t warmup = 0) {
    if (n == 0) throw std::invalid_argument("run_experiment: event count must be >= 1");
    if (warmup >= n) throw std::invalid_argument("run_experiment: warmup must be < event count");
    counters_.reset();
    for (std::uint64_t k = 0; k < n; ++k) {
      SourceEvent<Payload> ev = source(k);
      propagate(ev.entry, ev.payload, k < warmup);
    }
    return counters_;
  }

  const TallyCounters& counters() const { return counters_; }
  void reset_counters() { counters_.reset(); }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t sink_count() const { return sink_names_.size(); }
  std::size_t entry_count() const { return entries_.size(); }

  std::size_t node_index(const std::string& name) const;
  std::size_t sink_index(const std::string& name) const;
  std::size_t entry_index(const std::string& name) const;
  const std::string& node_name(std::size_t i) const { return node_names_.at(i); }
  const std::string& sink_name(std::size_t i) const { return sink_names_.at(i); }

  NodeType& node(std::size_t i) { return *nodes_.at(i); }
  const NodeType& node(std::size_t i) const { return *nodes_.at(i); }

  template <class T>
  T& node_as(const std::string& name) {
    auto* p = dynamic_cast<T*>(nodes_.at(node_index(name)).get());
    if (p == nullptr) throw NetworkError("node '" + name + "' has unexpected type");
    return *p;
  }

  /// Called with every (node, input port, payload) delivery, in order.
  void set_observer(Observer obs) { observer_ = std::move(obs); }

  Endpoint edge_target(std::size_t node, std::size_t output) const { return edges_.at(node).at(output); }
  Endpoint entry_target(std::size_t entry) const { return entries_.at(entry); }

 private:
  friend class NetworkBuilder<Payload>;
  Network() = default;

  EventResult<Payload> propagate(std::size_t entry, Payload msg, bool discard);

  std::vector<std::unique_ptr<NodeType>> nodes_;
  std::vector<std::string> node_names_;
  std::vector<std::vector<Endpoint>> edges_;               // [node][output]
  std::vector<std::vector<std::optional<std::size_t>>> taps_;  // [node][output] -> tap index
  std::vector<std::string> sink_names_;
  std::vector<std::string> entry_names_;
  std::vector<Endpoint> entries_;
  TallyCounters counters_;
  Observer observer_;
};

/// Collects nodes, sinks, entries and edges by name; `build` validates the
/// topology (no dangling references, every output wired exactly once, acyclic).
template <class Payload>
class NetworkBuilder {
 public:
  NetworkBuilder& add_node(std::string name, std::unique_ptr<Node<Payload>> node);
  NetworkBuilder& add_sink(std::string name);
  /// `to` names a node (port `to_port`) or a sink.
  NetworkBuilder& add_entry(std::string name, std::string to, std::size_t to_port = 0);
  NetworkBuilder& connect(std::string from, std::size_t from_port, std::string to, std::size_t to_port = 0);
  /// Pass-through counter on a node output; it does not absorb the event.
  NetworkBuilder& add_tap(std::string name, std::string node, std::size_t port);

  Network<Payload> build() &&;

 private:
  struct EdgeSpec {
    std::string from;
    std::size_t from_port;
    std::string to;
    std::size_t to_port;
  };
  struct TapSpec {
    std::string name;
    std::string node;
    std::size_t port;
  };
  struct EntrySpec {
    std::string name;
    std::string to;
    std::size_t to_port;
  };

  std::vector<std::pair<std::string, std::unique_ptr<Node<Payload>>>> nodes_;
  std::vector<std::string> sinks_;
  std::vector<EdgeSpec> edges_;
  std::vector<EntrySpec> entries_;
  std::vector<TapSpec> taps_;
};

}  // namespace dlm

#include "dlm/detail/network_impl.hpp"
