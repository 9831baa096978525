#pragma once

// Template definitions for Network / NetworkBuilder. Included by event_core.hpp.

#include <algorithm>
#include <map>

namespace dlm {

template <class Payload>
Network<Payload>::Network(const Network& other)
    : node_names_(other.node_names_),
      edges_(other.edges_),
      taps_(other.taps_),
      sink_names_(other.sink_names_),
      entry_names_(other.entry_names_),
      entries_(other.entries_),
      counters_(other.counters_),
      observer_() {
  nodes_.reserve(other.nodes_.size());
  for (const auto& n : other.nodes_) nodes_.push_back(n->clone());
}

template <class Payload>
Network<Payload>& Network<Payload>::operator=(const Network& other) {
  if (this != &other) {
    Network copy(other);
    *this = std::move(copy);
  }
  return *this;
}

namespace detail {

inline std::size_t find_name(const std::vector<std::string>& names, const std::string& name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw NetworkError(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

}  // namespace detail

template <class Payload>
std::size_t Network<Payload>::node_index(const std::string& name) const {
  return detail::find_name(node_names_, name, "node");
}

template <class Payload>
std::size_t Network<Payload>::sink_index(const std::string& name) const {
  return detail::find_name(sink_names_, name, "sink");
}

template <class Payload>
std::size_t Network<Payload>::entry_index(const std::string& name) const {
  return detail::find_name(entry_names_, name, "entry");
}

template <class Payload>
EventResult<Payload> Network<Payload>::propagate(std::size_t entry, Payload msg, bool discard) {
  if (entry >= entries_.size()) throw NetworkError("process_event: undeclared entry " + std::to_string(entry));
  Endpoint at = entries_[entry];
  // An acyclic graph visits each node at most once per event.
  for (std::size_t hops = 0; hops <= nodes_.size(); ++hops) {
    if (at.kind == Endpoint::Kind::sink) {
      if (discard)
        ++counters_.discards[at.index];
      else
        ++counters_.counts[at.index];
      return {at.index, std::move(msg)};
    }
    if (observer_) observer_(at.index, at.port, msg);
    Emission<Payload> out = nodes_[at.index]->receive(at.port, msg);
    if (out.port >= edges_[at.index].size())
      throw NetworkError("node '" + node_names_[at.index] + "' emitted on nonexistent output " +
                         std::to_string(out.port));
    if (!discard) {
      if (auto tap = taps_[at.index][out.port]) ++counters_.tap_counts[*tap];
    }
    const Endpoint next = edges_[at.index][out.port];
    msg = std::move(out.payload);
    at = next;
  }
  throw NetworkError("process_event: propagation exceeded node count");
}

template <class Payload>
NetworkBuilder<Payload>& NetworkBuilder<Payload>::add_node(std::string name, std::unique_ptr<Node<Payload>> node) {
  if (!node) throw NetworkError("add_node: null node '" + name + "'");
  nodes_.emplace_back(std::move(name), std::move(node));
  return *this;
}

template <class Payload>
NetworkBuilder<Payload>& NetworkBuilder<Payload>::add_sink(std::string name) {
  sinks_.push_back(std::move(name));
  return *this;
}

template <class Payload>
NetworkBuilder<Payload>& NetworkBuilder<Payload>::add_entry(std::string name, std::string to, std::size_t to_port) {
  entries_.push_back({std::move(name), std::move(to), to_port});
  return *this;
}

template <class Payload>
NetworkBuilder<Payload>& NetworkBuilder<Payload>::connect(std::string from, std::size_t from_port, std::string to,
                                                          std::size_t to_port) {
  edges_.push_back({std::move(from), from_port, std::move(to), to_port});
  return *this;
}

template <class Payload>
NetworkBuilder<Payload>& NetworkBuilder<Payload>::add_tap(std::string name, std::string node, std::size_t port) {
  taps_.push_back({std::move(name), std::move(node), port});
  return *this;
}

template <class Payload>
Network<Payload> NetworkBuilder<Payload>::build() && {
  Network<Payload> net;
  std::map<std::string, int> names;  // 0 = node, 1 = sink, 2 = entry
  auto claim = [&](const std::string& n, int kind) {
    if (n.empty()) throw NetworkError("empty name in network description");
    if (!names.emplace(n, kind).second) throw NetworkError("duplicate name '" + n + "'");
  };

  for (auto& [name, node] : nodes_) {
    claim(name, 0);
    net.node_names_.push_back(name);
    net.edges_.emplace_back(node->output_count(), Endpoint{});
    net.taps_.emplace_back(node->output_count());
    net.nodes_.push_back(std::move(node));
  }
  for (auto& s : sinks_) {
    claim(s, 1);
    net.sink_names_.push_back(s);
  }

  auto resolve_target = [&](const std::string& to, std::size_t port, const std::string& context) {
    auto it = names.find(to);
    if (it == names.end() || it->second == 2) throw NetworkError(context + ": dangling reference to '" + to + "'");
    if (it->second == 1) {
      if (port != 0) throw NetworkError(context + ": sinks have a single input port");
      return Endpoint::to_sink(detail::find_name(net.sink_names_, to, "sink"));
    }
    const std::size_t idx = detail::find_name(net.node_names_, to, "node");
    if (port >= net.nodes_[idx]->input_count())
      throw NetworkError(context + ": node '" + to + "' has no input port " + std::to_string(port));
    return Endpoint::to_node(idx, port);
  };

  std::vector<std::vector<bool>> wired(net.nodes_.size());
  for (std::size_t i = 0; i < net.nodes_.size(); ++i) wired[i].assign(net.nodes_[i]->output_count(), false);

  for (const auto& e : edges_) {
    const std::string ctx = "edge " + e.from + ":" + std::to_string(e.from_port) + " -> " + e.to;
    auto it = names.find(e.from);
    if (it == names.end() || it->second != 0) throw NetworkError(ctx + ": dangling reference to '" + e.from + "'");
    const std::size_t from = detail::find_name(net.node_names_, e.from, "node");
    if (e.from_port >= wired[from].size())
      throw NetworkError(ctx + ": node '" + e.from + "' has no output port " + std::to_string(e.from_port));
    if (wired[from][e.from_port]) throw NetworkError(ctx + ": output already wired");
    wired[from][e.from_port] = true;
    net.edges_[from][e.from_port] = resolve_target(e.to, e.to_port, ctx);
  }
  for (std::size_t i = 0; i < wired.size(); ++i)
    for (std::size_t p = 0; p < wired[i].size(); ++p)
      if (!wired[i][p])
        throw NetworkError("node '" + net.node_names_[i] + "' output " + std::to_string(p) + " is not connected");

  for (const auto& en : entries_) {
    claim(en.name, 2);
    net.entry_names_.push_back(en.name);
    net.entries_.push_back(resolve_target(en.to, en.to_port, "entry " + en.name));
  }
  if (net.entries_.empty()) throw NetworkError("network has no entry port");

  for (const auto& t : taps_) {
    auto it = names.find(t.node);
    if (it == names.end() || it->second != 0) throw NetworkError("tap " + t.name + ": dangling reference");
    const std::size_t idx = detail::find_name(net.node_names_, t.node, "node");
    if (t.port >= net.taps_[idx].size()) throw NetworkError("tap " + t.name + ": no such output port");
    if (net.taps_[idx][t.port]) throw NetworkError("tap " + t.name + ": output already tapped");
    if (std::find(net.counters_.tap_names.begin(), net.counters_.tap_names.end(), t.name) !=
        net.counters_.tap_names.end())
      throw NetworkError("duplicate tap name '" + t.name + "'");
    net.taps_[idx][t.port] = net.counters_.tap_names.size();
    net.counters_.tap_names.push_back(t.name);
  }

  // Cycle check: iterative DFS with white/grey/black colouring.
  const std::size_t n = net.nodes_.size();
  std::vector<int> colour(n, 0);
  for (std::size_t root = 0; root < n; ++root) {
    if (colour[root] != 0) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    colour[root] = 1;
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      if (next == net.edges_[u].size()) {
        colour[u] = 2;
        stack.pop_back();
        continue;
      }
      const Endpoint e = net.edges_[u][next++];
      if (e.kind != Endpoint::Kind::node) continue;
      if (colour[e.index] == 1) throw NetworkError("cycle detected through node '" + net.node_names_[e.index] + "'");
      if (colour[e.index] == 0) {
        colour[e.index] = 1;
        stack.emplace_back(e.index, 0);
      }
    }
  }

  net.counters_.sink_names = net.sink_names_;
  net.counters_.counts.assign(net.sink_names_.size(), 0);
  net.counters_.discards.assign(net.sink_names_.size(), 0);
  net.counters_.tap_counts.assign(net.counters_.tap_names.size(), 0);
  return net;
}

}  // namespace dlm
