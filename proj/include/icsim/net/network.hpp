#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icsim/net/frame.hpp"
#include "icsim/net/simulator.hpp"
#include "icsim/net/types.hpp"

namespace icsim::net {

class Network;

struct Endpoint {
  NodeId node = 0;
  PortId port = 0;
  auto operator<=>(const Endpoint&) const = default;
};

struct LinkParams {
  Micros delay = 0;
  double loss = 0.0;                 // probability in [0, 1]
  std::uint64_t bandwidth_bps = 0;   // 0 means no serialization delay

  /// Throws std::invalid_argument when loss is outside [0, 1] or NaN.
  void validate() const;
  bool operator==(const LinkParams&) const = default;
};

struct Link {
  Endpoint a;
  Endpoint b;
  LinkParams params;

  bool touches(Endpoint e) const { return e == a || e == b; }
  Endpoint other(Endpoint from) const;

  /// delay + ceil(size_bytes * 8 / bandwidth), in microseconds.
  Micros transit_time(std::uint32_t size_bytes) const;
};

class PortUnattached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class TxOutcome {
  Scheduled,
  DroppedLoss,
  DeadLettered,
};

/// Per-hop accounting. Every tx ends in exactly one of rx, dropped_loss or
/// dead_lettered; dropped_rule counts switch-side discards of received frames.
struct FrameCounters {
  std::uint64_t tx = 0;
  std::uint64_t rx = 0;
  std::uint64_t dropped_loss = 0;
  std::uint64_t dropped_rule = 0;
  std::uint64_t dead_lettered = 0;
};

class Node {
 public:
  Node(Network& network, std::string name);
  virtual ~Node() = default;

  Node(const Node&) = delete;
  Node& operator=(const Node&) = delete;

  const std::string& name() const { return name_; }
  NodeId id() const { return id_; }

  virtual void receive(const EthernetFrame& frame, PortId in_port) = 0;

  Network& network() { return network_; }
  const Network& network() const { return network_; }
  Simulator& sim();

 private:
  friend class Network;
  Network& network_;
  std::string name_;
  NodeId id_ = 0;
};

/// Adds protocol-specific fields to the trace description of a frame.
using FrameDescriber = std::function<void(const EthernetFrame&, Json&)>;

class Network {
 public:
  explicit Network(Simulator& sim) : sim_(sim) {}

  Network(const Network&) = delete;
  Network& operator=(const Network&) = delete;

  template <class T, class... Args>
  T& add(Args&&... args) {
    auto node = std::make_unique<T>(*this, std::forward<Args>(args)...);
    T& ref = *node;
    register_node(std::move(node));
    return ref;
  }

  /// Throws std::invalid_argument if either port already has a link, the
  /// endpoints are identical, or the parameters are invalid.
  std::size_t connect(Endpoint a, Endpoint b, LinkParams params);

  /// Sends `frame` out of (from, port). Unattached ports dead-letter the frame.
  TxOutcome transmit(NodeId from, PortId port, EthernetFrame frame);

  /// Sends `frame` across `link` starting at `from_end`.
  /// Throws PortUnattached when `from_end` is not an endpoint of the link.
  TxOutcome transmit_on(std::size_t link_index, Endpoint from_end, EthernetFrame frame);

  /// Attached ports of `node`, ascending.
  std::vector<PortId> ports(NodeId node) const;
  std::optional<std::size_t> link_at(Endpoint e) const;
  const Link& link(std::size_t index) const { return links_.at(index); }
  std::size_t link_count() const { return links_.size(); }

  Node& node(NodeId id) { return *nodes_.at(id); }
  const Node& node(NodeId id) const { return *nodes_.at(id); }
  Node* find(std::string_view name);
  std::size_t node_count() const { return nodes_.size(); }

  FrameCounters& counters() { return counters_; }
  const FrameCounters& counters() const { return counters_; }

  void set_describer(FrameDescriber describer) { describer_ = std::move(describer); }
  Json describe(const EthernetFrame& frame) const;

  Simulator& sim() { return sim_; }

 private:
  void register_node(std::unique_ptr<Node> node);

  Simulator& sim_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::vector<Link> links_;
  std::map<Endpoint, std::size_t> link_by_endpoint_;
  FrameCounters counters_;
  FrameDescriber describer_;
};

}  // namespace icsim::net
