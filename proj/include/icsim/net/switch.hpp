#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "icsim/net/frame.hpp"
#include "icsim/net/network.hpp"
#include "icsim/net/types.hpp"

namespace icsim::net {

/// Unset fields are wildcards; an all-unset match covers every frame.
struct FlowMatch {
  std::optional<PortId> in_port;
  std::optional<MacAddr> eth_src;
  std::optional<MacAddr> eth_dst;
  std::optional<EtherType> ethertype;

  bool matches(const EthernetFrame& frame, PortId port) const;
  bool operator==(const FlowMatch&) const = default;
};

struct FlowAction {
  enum class Kind : std::uint8_t { Forward, Flood, Drop, ToController };

  Kind kind = Kind::Drop;
  PortId port = 0;  // Forward only

  static FlowAction forward(PortId p) { return {Kind::Forward, p}; }
  static FlowAction flood() { return {Kind::Flood, 0}; }
  static FlowAction drop() { return {Kind::Drop, 0}; }
  static FlowAction to_controller() { return {Kind::ToController, 0}; }

  bool operator==(const FlowAction&) const = default;
};

inline constexpr std::uint16_t kMaxPriority = 0xffff;

struct FlowRule {
  std::uint16_t priority = 0;
  FlowMatch match;
  FlowAction action;
  bool permanent = true;  // no expiry is modeled either way

  bool operator==(const FlowRule&) const = default;
};

Json to_json(const FlowRule& rule);

/// Rules ordered by descending priority, ties by insertion order.
class FlowTable {
 public:
  /// Returns false (and leaves the table unchanged) for an identical rule.
  bool install(const FlowRule& rule);
  const FlowRule* lookup(const EthernetFrame& frame, PortId in_port) const;
  const std::vector<FlowRule>& rules() const { return rules_; }
  std::size_t size() const { return rules_.size(); }

 private:
  std::vector<FlowRule> rules_;
};

struct PacketIn {
  DatapathId dpid = 0;
  PortId in_port = 0;
  EthernetFrame frame;
};

/// L2 datapath. With a controller attached, table misses go to the
/// controller; without one it behaves as a learning switch.
class Switch : public Node {
 public:
  using ControllerChannel = std::function<void(const PacketIn&)>;

  Switch(Network& network, std::string name, DatapathId dpid);

  DatapathId dpid() const { return dpid_; }

  /// Decides what to do with a frame. Learns the source MAC only in
  /// learning-switch mode. An empty result means the frame is filtered.
  std::vector<FlowAction> ingress(const EthernetFrame& frame, PortId in_port);

  /// Idempotent. Emits a flow_mod trace record when the rule is new.
  bool install_rule(const FlowRule& rule);

  void attach_controller(ControllerChannel channel) { controller_ = std::move(channel); }
  void detach_controller() { controller_ = nullptr; }
  bool controller_attached() const { return static_cast<bool>(controller_); }

  /// Executes a controller decision for a held or injected frame.
  /// in_port == 0 marks a controller-originated frame.
  void packet_out(const EthernetFrame& frame, PortId in_port, FlowAction action);

  void receive(const EthernetFrame& frame, PortId in_port) override;

  const FlowTable& flow_table() const { return flow_table_; }
  const std::map<MacAddr, PortId>& mac_table() const { return mac_table_; }

 private:
  void apply(const EthernetFrame& frame, PortId in_port, FlowAction action,
             const char* drop_reason);

  DatapathId dpid_;
  FlowTable flow_table_;
  std::map<MacAddr, PortId> mac_table_;
  ControllerChannel controller_;
};

}  // namespace icsim::net
