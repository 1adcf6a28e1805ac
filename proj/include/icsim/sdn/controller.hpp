#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "icsim/net/switch.hpp"
#include "icsim/proto/arp.hpp"

namespace icsim::sdn {

using net::DatapathId;
using net::EthernetFrame;
using net::FlowAction;
using net::FlowRule;
using net::Ipv4Addr;
using net::MacAddr;
using net::Micros;
using net::PortId;

/// Per-datapath controller state. Entries arrive only from benign ARP
/// traffic or from premap pins; a recorded IP never changes its MAC.
struct NetworkView {
  std::map<Ipv4Addr, MacAddr> ip_to_mac;
  std::map<MacAddr, PortId> mac_to_port;

  bool operator==(const NetworkView&) const = default;
};

struct Benign {
  bool operator==(const Benign&) const = default;
};
/// The spoofer's MAC is the recorded MAC of `attacker_ip`.
struct InternalSpoof {
  Ipv4Addr attacker_ip;
  bool operator==(const InternalSpoof&) const = default;
};
/// The spoofer's MAC belongs to no known host.
struct ExternalSpoof {
  bool operator==(const ExternalSpoof&) const = default;
};
using Classification = std::variant<Benign, InternalSpoof, ExternalSpoof>;

std::string to_string(const Classification& c);
inline bool is_spoof(const Classification& c) { return !std::holds_alternative<Benign>(c); }

/// Consistency check of an ARP sender binding against the view. When
/// several IPs share the spoofer's MAC the lowest IP is reported.
Classification classify_arp(const NetworkView& view, const proto::ArpPacket& pkt);

enum class Mode : std::uint8_t { DetectOnly, Prevent };

std::string_view to_string(Mode m);
/// Accepts "detect_only" and "prevent". Throws std::invalid_argument.
Mode mode_from_string(std::string_view s);

struct PremapRule {
  DatapathId dpid = 0;
  FlowRule rule;
  bool operator==(const PremapRule&) const = default;
};

struct Pin {
  Ipv4Addr ip;
  MacAddr mac;
  bool operator==(const Pin&) const = default;
};

struct ControllerPolicy {
  Mode mode = Mode::DetectOnly;
  bool restore_enabled = false;
  Micros restore_period = net::kSecond;
  /// One-way latency of the switch-controller channel.
  Micros delay = 500;
  std::vector<PremapRule> premap_rules;
  std::vector<Pin> pins;

  /// Throws std::invalid_argument for a zero restore period.
  void validate() const;
  bool operator==(const ControllerPolicy&) const = default;
};

inline constexpr std::uint16_t kForwardPriority = 100;

/// Permanent max-priority Drop of everything from `mac` on `in_port`.
FlowRule block_rule(PortId in_port, MacAddr mac);

class DuplicateDatapath : public std::logic_error {
 public:
  explicit DuplicateDatapath(DatapathId dpid)
      : std::logic_error("datapath already connected: " + std::to_string(dpid)) {}
};

class UnknownDatapath : public std::logic_error {
 public:
  explicit UnknownDatapath(DatapathId dpid)
      : std::logic_error("datapath not connected: " + std::to_string(dpid)) {}
};

/// Controller decisions, to be carried out at the named datapath.
struct InstallRule {
  DatapathId dpid = 0;
  FlowRule rule;
};
struct PacketOut {
  DatapathId dpid = 0;
  EthernetFrame frame;
  PortId in_port = 0;  // 0 for controller-originated frames
  FlowAction action;
};
using ControllerAction = std::variant<InstallRule, PacketOut>;

struct Detection {
  DatapathId dpid = 0;
  PortId in_port = 0;
  proto::ArpPacket packet;
  Classification classification;
};

/// Decision logic only; it neither schedules nor touches switches. Benign
/// ARP updates the view and is flooded (requests) or forwarded (replies).
/// Spoofed ARP yields a Detection in both modes; in Prevent mode a spoofed
/// Reply also produces a block rule and is dropped, while spoofed Requests
/// are passed on. Other traffic gets a forward rule toward the destination
/// port when known and is flooded otherwise.
class Controller {
 public:
  explicit Controller(ControllerPolicy policy);

  /// Creates the view for `dpid`, inserts pins and returns the premap rules
  /// that belong to it. Throws DuplicateDatapath.
  std::vector<ControllerAction> on_switch_connect(DatapathId dpid);

  struct Decision {
    std::vector<ControllerAction> actions;
    std::optional<Detection> detection;
  };
  /// Throws UnknownDatapath.
  Decision on_packet_in(const net::PacketIn& pin);

  /// Throws UnknownDatapath.
  Classification classify(DatapathId dpid, const proto::ArpPacket& pkt) const;

  /// One truthful Reply per ordered pair of distinct known hosts, addressed
  /// to the receiver's port when known and flooded otherwise.
  std::vector<ControllerAction> restore_caches(DatapathId dpid) const;

  const ControllerPolicy& policy() const { return policy_; }
  const NetworkView& view(DatapathId dpid) const;
  const std::map<DatapathId, NetworkView>& views() const { return views_; }

 private:
  NetworkView& view_mut(DatapathId dpid);
  Decision on_arp(const net::PacketIn& pin, const proto::ArpPacket& pkt);

  ControllerPolicy policy_;
  std::map<DatapathId, NetworkView> views_;
};

}  // namespace icsim::sdn
