#include "icsim/sdn/runtime.hpp"

namespace icsim::sdn {

using net::Json;
using net::TraceKind;

ControllerRuntime::ControllerRuntime(net::Simulator& sim, Controller& controller,
                                     std::string name)
    : sim_(sim), controller_(controller), name_(std::move(name)) {}

void ControllerRuntime::attach(net::Switch& sw) {
  auto premap = controller_.on_switch_connect(sw.dpid());
  switches_[sw.dpid()] = &sw;
  sw.attach_controller([this](const net::PacketIn& pin) {
    sim_.schedule_in(controller_.policy().delay, [this, pin] { handle(pin); });
  });
  for (const ControllerAction& action : premap) apply(action);
}

void ControllerRuntime::start() {
  if (!controller_.policy().restore_enabled) return;
  sim_.schedule_in(controller_.policy().restore_period, [this] { restore_cycle(); });
}

void ControllerRuntime::restore_cycle() {
  restore_now();
  sim_.schedule_in(controller_.policy().restore_period, [this] { restore_cycle(); });
}

std::size_t ControllerRuntime::restore_now() {
  std::size_t sent = 0;
  for (const auto& [dpid, sw] : switches_) {
    auto actions = controller_.restore_caches(dpid);
    sent += actions.size();
    if (actions.empty()) continue;
    Json d;
    d["event"] = "restore";
    d["dpid"] = dpid;
    d["replies"] = actions.size();
    sim_.emit(TraceKind::Device, name_, std::move(d));
    dispatch(std::move(actions));
  }
  restore_replies_ += sent;
  return sent;
}

void ControllerRuntime::handle(const net::PacketIn& pin) {
  ++packet_ins_;
  Controller::Decision decision = controller_.on_packet_in(pin);
  dispatch(std::move(decision.actions));
  if (decision.detection) {
    warn(*decision.detection);
    if (controller_.policy().restore_enabled) restore_now();
  }
}

void ControllerRuntime::dispatch(std::vector<ControllerAction> actions) {
  sim_.schedule_in(controller_.policy().delay, [this, actions = std::move(actions)] {
    for (const ControllerAction& action : actions) apply(action);
  });
}

void ControllerRuntime::apply(const ControllerAction& action) {
  if (const auto* install = std::get_if<InstallRule>(&action)) {
    switches_.at(install->dpid)->install_rule(install->rule);
    return;
  }
  const auto& out = std::get<PacketOut>(action);
  switches_.at(out.dpid)->packet_out(out.frame, out.in_port, out.action);
}

void ControllerRuntime::warn(const Detection& detection) {
  detections_.push_back(DetectionRecord{sim_.now(), detection});
  const proto::ArpPacket& pkt = detection.packet;
  Json d;
  d["event"] = "arp_spoof";
  d["dpid"] = detection.dpid;
  d["in_port"] = detection.in_port;
  d["op"] = pkt.op == proto::ArpOp::Request ? "request" : "reply";
  d["sender_ip"] = pkt.sender_ip.to_string();
  d["sender_mac"] = pkt.sender_mac.to_string();
  d["target_ip"] = pkt.target_ip.to_string();
  d["classification"] = to_string(detection.classification);
  if (const auto* internal = std::get_if<InternalSpoof>(&detection.classification)) {
    d["attacker_ip"] = internal->attacker_ip.to_string();
  }
  d["mode"] = to_string(controller_.policy().mode);
  sim_.emit(TraceKind::Warning, name_, std::move(d));
}

}  // namespace icsim::sdn
