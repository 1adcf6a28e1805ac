#include "icsim/net/switch.hpp"

#include <algorithm>

namespace icsim::net {

bool FlowMatch::matches(const EthernetFrame& frame, PortId port) const {
  if (in_port && *in_port != port) return false;
  if (eth_src && *eth_src != frame.src) return false;
  if (eth_dst && *eth_dst != frame.dst) return false;
  if (ethertype && *ethertype != frame.ethertype) return false;
  return true;
}

namespace {

std::string_view action_name(FlowAction::Kind kind) {
  switch (kind) {
    case FlowAction::Kind::Forward: return "forward";
    case FlowAction::Kind::Flood: return "flood";
    case FlowAction::Kind::Drop: return "drop";
    case FlowAction::Kind::ToController: return "to_controller";
  }
  return "unknown";
}

}  // namespace

Json to_json(const FlowRule& rule) {
  Json match = Json::object();
  if (rule.match.in_port) match["in_port"] = *rule.match.in_port;
  if (rule.match.eth_src) match["eth_src"] = rule.match.eth_src->to_string();
  if (rule.match.eth_dst) match["eth_dst"] = rule.match.eth_dst->to_string();
  if (rule.match.ethertype) match["ethertype"] = to_string(*rule.match.ethertype);
  Json action;
  action["kind"] = action_name(rule.action.kind);
  if (rule.action.kind == FlowAction::Kind::Forward) action["port"] = rule.action.port;
  Json j;
  j["priority"] = rule.priority;
  j["match"] = std::move(match);
  j["action"] = std::move(action);
  j["permanent"] = rule.permanent;
  return j;
}

bool FlowTable::install(const FlowRule& rule) {
  if (std::find(rules_.begin(), rules_.end(), rule) != rules_.end()) return false;
  // After every rule of equal or higher priority: ties keep insertion order.
  auto pos = std::find_if(rules_.begin(), rules_.end(), [&](const FlowRule& r) {
    return r.priority < rule.priority;
  });
  rules_.insert(pos, rule);
  return true;
}

const FlowRule* FlowTable::lookup(const EthernetFrame& frame, PortId in_port) const {
  for (const FlowRule& rule : rules_) {
    if (rule.match.matches(frame, in_port)) return &rule;
  }
  return nullptr;
}

Switch::Switch(Network& network, std::string name, DatapathId dpid)
    : Node(network, std::move(name)), dpid_(dpid) {}

std::vector<FlowAction> Switch::ingress(const EthernetFrame& frame, PortId in_port) {
  if (const FlowRule* rule = flow_table_.lookup(frame, in_port)) {
    return {rule->action};
  }
  if (controller_attached()) return {FlowAction::to_controller()};

  if (!frame.src.is_broadcast()) mac_table_[frame.src] = in_port;
  if (frame.dst.is_broadcast()) return {FlowAction::flood()};
  auto it = mac_table_.find(frame.dst);
  if (it == mac_table_.end()) return {FlowAction::flood()};
  if (it->second == in_port) return {};
  return {FlowAction::forward(it->second)};
}

bool Switch::install_rule(const FlowRule& rule) {
  if (!flow_table_.install(rule)) return false;
  Json d = to_json(rule);
  d["dpid"] = dpid_;
  sim().emit(TraceKind::FlowMod, name(), std::move(d));
  return true;
}

void Switch::receive(const EthernetFrame& frame, PortId in_port) {
  for (FlowAction action : ingress(frame, in_port)) {
    if (action.kind == FlowAction::Kind::ToController) {
      if (!controller_attached()) {
        apply(frame, in_port, FlowAction::drop(), "no_controller");
        continue;
      }
      Json d = network().describe(frame);
      d["dpid"] = dpid_;
      d["in_port"] = in_port;
      sim().emit(TraceKind::PacketIn, name(), std::move(d));
      controller_(PacketIn{dpid_, in_port, frame});
      continue;
    }
    apply(frame, in_port, action, "rule");
  }
}

void Switch::packet_out(const EthernetFrame& frame, PortId in_port, FlowAction action) {
  apply(frame, in_port, action, "controller");
}

void Switch::apply(const EthernetFrame& frame, PortId in_port, FlowAction action,
                   const char* drop_reason) {
  switch (action.kind) {
    case FlowAction::Kind::Forward:
      network().transmit(id(), action.port, frame);
      break;
    case FlowAction::Kind::Flood:
      for (PortId port : network().ports(id())) {
        if (port != in_port) network().transmit(id(), port, frame);
      }
      break;
    case FlowAction::Kind::Drop: {
      ++network().counters().dropped_rule;
      Json d = network().describe(frame);
      d["port"] = in_port;
      d["reason"] = drop_reason;
      sim().emit(TraceKind::Drop, name(), std::move(d));
      break;
    }
    case FlowAction::Kind::ToController:
      break;
  }
}

}  // namespace icsim::net
