#include "icsim/sdn/controller.hpp"

namespace icsim::sdn {

using proto::ArpOp;
using proto::ArpPacket;

std::string to_string(const Classification& c) {
  if (std::holds_alternative<Benign>(c)) return "benign";
  if (const auto* internal = std::get_if<InternalSpoof>(&c)) {
    return "internal(" + internal->attacker_ip.to_string() + ")";
  }
  return "external";
}

Classification classify_arp(const NetworkView& view, const ArpPacket& pkt) {
  auto known = view.ip_to_mac.find(pkt.sender_ip);
  if (known == view.ip_to_mac.end() || known->second == pkt.sender_mac) return Benign{};
  for (const auto& [ip, mac] : view.ip_to_mac) {
    if (mac == pkt.sender_mac) return InternalSpoof{ip};
  }
  return ExternalSpoof{};
}

std::string_view to_string(Mode m) {
  return m == Mode::Prevent ? "prevent" : "detect_only";
}

Mode mode_from_string(std::string_view s) {
  if (s == "detect_only") return Mode::DetectOnly;
  if (s == "prevent") return Mode::Prevent;
  throw std::invalid_argument("unknown controller mode: " + std::string(s));
}

void ControllerPolicy::validate() const {
  if (restore_period == 0) throw std::invalid_argument("restore_period must be > 0");
}

FlowRule block_rule(PortId in_port, MacAddr mac) {
  FlowRule rule;
  rule.priority = net::kMaxPriority;
  rule.match.in_port = in_port;
  rule.match.eth_src = mac;
  rule.action = FlowAction::drop();
  rule.permanent = true;
  return rule;
}

Controller::Controller(ControllerPolicy policy) : policy_(std::move(policy)) {
  policy_.validate();
}

const NetworkView& Controller::view(DatapathId dpid) const {
  auto it = views_.find(dpid);
  if (it == views_.end()) throw UnknownDatapath(dpid);
  return it->second;
}

NetworkView& Controller::view_mut(DatapathId dpid) {
  auto it = views_.find(dpid);
  if (it == views_.end()) throw UnknownDatapath(dpid);
  return it->second;
}

std::vector<ControllerAction> Controller::on_switch_connect(DatapathId dpid) {
  auto [it, inserted] = views_.try_emplace(dpid);
  if (!inserted) throw DuplicateDatapath(dpid);
  for (const Pin& pin : policy_.pins) it->second.ip_to_mac[pin.ip] = pin.mac;

  std::vector<ControllerAction> actions;
  for (const PremapRule& premap : policy_.premap_rules) {
    if (premap.dpid == dpid) actions.push_back(InstallRule{dpid, premap.rule});
  }
  return actions;
}

Classification Controller::classify(DatapathId dpid, const ArpPacket& pkt) const {
  return classify_arp(view(dpid), pkt);
}

Controller::Decision Controller::on_packet_in(const net::PacketIn& pin) {
  NetworkView& v = view_mut(pin.dpid);
  const EthernetFrame& frame = pin.frame;

  if (frame.ethertype == net::EtherType::Arp) {
    ArpPacket pkt;
    try {
      pkt = proto::decode_arp(frame.payload);
    } catch (const proto::MalformedMessage&) {
      return {{PacketOut{pin.dpid, frame, pin.in_port, FlowAction::drop()}}, std::nullopt};
    }
    return on_arp(pin, pkt);
  }

  Decision d;
  auto port = v.mac_to_port.find(frame.dst);
  if (frame.dst.is_broadcast() || port == v.mac_to_port.end()) {
    d.actions.push_back(PacketOut{pin.dpid, frame, pin.in_port, FlowAction::flood()});
    return d;
  }
  FlowRule rule;
  rule.priority = kForwardPriority;
  rule.match.eth_dst = frame.dst;
  rule.match.ethertype = frame.ethertype;
  rule.action = FlowAction::forward(port->second);
  d.actions.push_back(InstallRule{pin.dpid, rule});
  d.actions.push_back(PacketOut{pin.dpid, frame, pin.in_port, rule.action});
  return d;
}

Controller::Decision Controller::on_arp(const net::PacketIn& pin, const ArpPacket& pkt) {
  NetworkView& v = view_mut(pin.dpid);
  const EthernetFrame& frame = pin.frame;
  Decision d;

  const Classification c = classify_arp(v, pkt);
  if (is_spoof(c)) {
    d.detection = Detection{pin.dpid, pin.in_port, pkt, c};
    if (policy_.mode == Mode::Prevent && pkt.op == ArpOp::Reply) {
      // The triggering forgery is dropped as well as blocked.
      d.actions.push_back(InstallRule{pin.dpid, block_rule(pin.in_port, frame.src)});
      d.actions.push_back(PacketOut{pin.dpid, frame, pin.in_port, FlowAction::drop()});
      return d;
    }
  } else {
    v.ip_to_mac.emplace(pkt.sender_ip, pkt.sender_mac);
    v.mac_to_port[pkt.sender_mac] = pin.in_port;
  }

  FlowAction out = FlowAction::flood();
  if (pkt.op == ArpOp::Reply && !frame.dst.is_broadcast()) {
    if (auto port = v.mac_to_port.find(frame.dst); port != v.mac_to_port.end()) {
      out = FlowAction::forward(port->second);
    }
  }
  d.actions.push_back(PacketOut{pin.dpid, frame, pin.in_port, out});
  return d;
}

std::vector<ControllerAction> Controller::restore_caches(DatapathId dpid) const {
  const NetworkView& v = view(dpid);
  std::vector<ControllerAction> actions;
  for (const auto& [ip, mac] : v.ip_to_mac) {
    for (const auto& [peer_ip, peer_mac] : v.ip_to_mac) {
      if (peer_ip == ip) continue;
      const ArpPacket reply = ArpPacket::reply(mac, ip, peer_mac, peer_ip);
      EthernetFrame frame{mac, peer_mac, net::EtherType::Arp, proto::encode_arp(reply)};
      auto port = v.mac_to_port.find(peer_mac);
      const FlowAction action =
          port == v.mac_to_port.end() ? FlowAction::flood() : FlowAction::forward(port->second);
      actions.push_back(PacketOut{dpid, std::move(frame), 0, action});
    }
  }
  return actions;
}

}  // namespace icsim::sdn
