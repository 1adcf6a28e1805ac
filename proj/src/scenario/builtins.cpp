#include "icsim/scenario/builtins.hpp"

namespace icsim::scenario {

namespace {

using namespace stock;

ScenarioSpec stock_topology(std::string name) {
  ScenarioSpec s;
  s.name = std::move(name);
  s.seed = 42;
  s.duration = 60 * net::kSecond;

  s.hosts = {
      {"plc1", kPlc1Ip, kPlc1Mac},
      {"plc2", kPlc2Ip, kPlc2Mac},
      {"hmi", kHmiIp, kHmiMac},
      {"historian", kHistorianIp, kHistorianMac},
      {"attacker", kAttackerIp, kAttackerMac},
  };
  s.switches = {{"s1", kDpid}};
  const net::LinkParams link{kLinkDelay, 0.0, kLinkBandwidth};
  s.links = {
      {"plc1", 1, "s1", kPlc1Port, link},
      {"plc2", 1, "s1", kPlc2Port, link},
      {"hmi", 1, "s1", kHmiPort, link},
      {"historian", 1, "s1", kHistorianPort, link},
      {"attacker", 1, "s1", kAttackerPort, link},
  };

  s.phys_keys = {{"valve", false}, {"level", std::int64_t{500}}};
  phys::TankParams tank;
  // One step per second puts the overflow 30 s into a 60 s run.
  tank.tick = net::kSecond;
  s.tank = tank;

  devices::PlcConfig plc;
  plc.host = "plc1";
  plc.tags = {{"valve", "valve", true, 0}, {"level", "level", false, 1}};
  s.plcs = {plc};

  devices::HmiConfig hmi;
  hmi.host = "hmi";
  hmi.plc = kPlc1Ip;
  s.hmi = hmi;

  devices::HistorianConfig hist;
  hist.host = "historian";
  hist.plc = kPlc1Ip;
  hist.tags = {"level"};
  s.historian = hist;
  return s;
}

devices::FilterRule valve_rewrite() {
  devices::FilterRule r;
  r.match = {devices::Direction::Any, proto::EnipType::WriteReq, "valve"};
  r.action = devices::SetBool{true};
  return r;
}

devices::FilterRule level_freeze() {
  devices::FilterRule r;
  r.match = {devices::Direction::Any, proto::EnipType::ReadResp, "level"};
  r.action = devices::SetInt{500};
  return r;
}

devices::AttackerConfig hmi_plc_attacker(Micros poison_start) {
  devices::AttackerConfig a;
  a.host = "attacker";
  a.victim_a = kHmiIp;
  a.victim_b = kPlc1Ip;
  a.poison_start = poison_start;
  a.poison_period = net::kSecond;
  a.rules = {valve_rewrite()};
  a.noise_seed = 7;
  return a;
}

ScenarioSpec baseline() { return stock_topology("baseline"); }

ScenarioSpec mitm_basic() {
  ScenarioSpec s = stock_topology("mitm_basic");
  s.attacker = hmi_plc_attacker(0);
  return s;
}

ScenarioSpec mitm_stealth() {
  ScenarioSpec s = stock_topology("mitm_stealth");
  s.attacker = hmi_plc_attacker(0);
  s.attacker->rules.push_back(level_freeze());
  return s;
}

ScenarioSpec sdn_detect() {
  ScenarioSpec s = stock_topology("sdn_detect");
  // Starts after the HMI and PLC have announced themselves to the controller.
  s.attacker = hmi_plc_attacker(net::kSecond);
  sdn::ControllerPolicy c;
  c.mode = sdn::Mode::DetectOnly;
  c.restore_enabled = false;
  s.controller = c;
  return s;
}

ScenarioSpec sdn_prevent() {
  ScenarioSpec s = stock_topology("sdn_prevent");
  s.attacker = hmi_plc_attacker(net::kSecond);
  sdn::ControllerPolicy c;
  c.mode = sdn::Mode::Prevent;
  c.restore_enabled = true;
  c.restore_period = net::kSecond;
  c.pins = {{kHmiIp, kHmiMac}, {kPlc1Ip, kPlc1Mac}};
  for (const auto& [mac, port] : {std::pair{kHmiMac, kHmiPort}, std::pair{kPlc1Mac, kPlc1Port}}) {
    net::FlowRule rule;
    rule.priority = sdn::kForwardPriority;
    rule.match.eth_dst = mac;
    rule.match.ethertype = net::EtherType::Transport;
    rule.action = net::FlowAction::forward(port);
    c.premap_rules.push_back({kDpid, rule});
  }
  s.controller = c;
  return s;
}

}  // namespace

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {"baseline", "mitm_basic", "mitm_stealth",
                                                 "sdn_detect", "sdn_prevent"};
  return names;
}

std::optional<ScenarioSpec> builtin_scenario(std::string_view name) {
  if (name == "baseline") return baseline();
  if (name == "mitm_basic") return mitm_basic();
  if (name == "mitm_stealth") return mitm_stealth();
  if (name == "sdn_detect") return sdn_detect();
  if (name == "sdn_prevent") return sdn_prevent();
  return std::nullopt;
}

std::vector<ScenarioSpec> builtin_scenarios() {
  std::vector<ScenarioSpec> out;
  for (const std::string& name : builtin_names()) out.push_back(*builtin_scenario(name));
  return out;
}

}  // namespace icsim::scenario
