#include "icsim/scenario/spec.hpp"

#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace icsim::scenario {

using net::Json;

const HostSpec* ScenarioSpec::find_host(std::string_view host) const {
  for (const HostSpec& h : hosts) {
    if (h.name == host) return &h;
  }
  return nullptr;
}

const HostSpec* ScenarioSpec::find_host(Ipv4Addr ip) const {
  for (const HostSpec& h : hosts) {
    if (h.ip == ip) return &h;
  }
  return nullptr;
}

namespace {

// ---- reading ----

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ParseError(path + ": " + what);
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) fail(path, "expected a string");
  return j.get<std::string>();
}

bool as_bool(const Json& j, const std::string& path) {
  if (!j.is_boolean()) fail(path, "expected true or false");
  return j.get<bool>();
}

std::uint64_t as_u64(const Json& j, const std::string& path) {
  if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::int64_t as_i64(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer");
  if (j.is_number_unsigned() &&
      j.get<std::uint64_t>() > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max())) {
    fail(path, "integer out of range");
  }
  return j.get<std::int64_t>();
}

template <class T>
T as_bounded(const Json& j, const std::string& path) {
  const std::int64_t v = as_i64(j, path);
  if (v < std::numeric_limits<T>::min() || v > std::numeric_limits<T>::max()) {
    fail(path, "integer out of range");
  }
  return static_cast<T>(v);
}

double as_double(const Json& j, const std::string& path) {
  if (!j.is_number()) fail(path, "expected a number");
  return j.get<double>();
}

Ipv4Addr as_ip(const Json& j, const std::string& path) {
  try {
    return Ipv4Addr::parse(as_string(j, path));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

MacAddr as_mac(const Json& j, const std::string& path) {
  try {
    return MacAddr::parse(as_string(j, path));
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

/// Object reader that tracks consumed keys so leftovers can be rejected.
class Obj {
 public:
  Obj(const Json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) fail(path_, "expected an object");
  }

  std::string at(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  const Json* get(std::string_view key) {
    used_.emplace(key);
    auto it = j_.find(std::string(key));
    return it == j_.end() ? nullptr : &*it;
  }

  const Json& need(std::string_view key) {
    const Json* j = get(key);
    if (!j) fail(at(key), "missing required field");
    return *j;
  }

  std::string str(std::string_view key) { return as_string(need(key), at(key)); }
  std::uint64_t u64(std::string_view key) { return as_u64(need(key), at(key)); }
  bool boolean(std::string_view key) { return as_bool(need(key), at(key)); }
  Ipv4Addr ip(std::string_view key) { return as_ip(need(key), at(key)); }
  MacAddr mac(std::string_view key) { return as_mac(need(key), at(key)); }

  std::string str_or(std::string_view key, std::string fallback) {
    const Json* j = get(key);
    return j ? as_string(*j, at(key)) : fallback;
  }
  std::uint64_t u64_or(std::string_view key, std::uint64_t fallback) {
    const Json* j = get(key);
    return j ? as_u64(*j, at(key)) : fallback;
  }
  bool bool_or(std::string_view key, bool fallback) {
    const Json* j = get(key);
    return j ? as_bool(*j, at(key)) : fallback;
  }
  template <class T>
  T bounded_or(std::string_view key, T fallback) {
    const Json* j = get(key);
    return j ? as_bounded<T>(*j, at(key)) : fallback;
  }

  void done() const {
    for (const auto& item : j_.items()) {
      if (!used_.contains(item.key())) fail(at(item.key()), "unknown field");
    }
  }

 private:
  const Json& j_;
  std::string path_;
  std::set<std::string, std::less<>> used_;
};

template <class Fn>
void each(const Json* j, const std::string& path, Fn&& fn) {
  if (!j) return;
  if (!j->is_array()) fail(path, "expected an array");
  for (std::size_t i = 0; i < j->size(); ++i) {
    fn((*j)[i], path + "[" + std::to_string(i) + "]");
  }
}

net::EtherType parse_ethertype(const Json& j, const std::string& path) {
  const std::string s = as_string(j, path);
  if (s == "transport") return net::EtherType::Transport;
  if (s == "arp") return net::EtherType::Arp;
  fail(path, "expected \"transport\" or \"arp\"");
}

std::string ethertype_name(net::EtherType t) {
  return t == net::EtherType::Arp ? "arp" : "transport";
}

phys::PhysValue parse_phys_value(const std::string& kind, const Json& j, const std::string& path) {
  if (kind == "bool") return as_bool(j, path);
  if (kind == "int64") return as_i64(j, path);
  if (kind == "float64") return as_double(j, path);
  fail(path, "unknown kind '" + kind + "'");
}

net::FlowRule parse_flow_rule(Obj& o) {
  net::FlowRule rule;
  rule.priority = o.bounded_or<std::uint16_t>("priority", 0);
  rule.permanent = o.bool_or("permanent", true);

  Obj m(o.need("match"), o.at("match"));
  if (const Json* p = m.get("in_port")) rule.match.in_port = as_bounded<PortId>(*p, m.at("in_port"));
  if (const Json* p = m.get("eth_src")) rule.match.eth_src = as_mac(*p, m.at("eth_src"));
  if (const Json* p = m.get("eth_dst")) rule.match.eth_dst = as_mac(*p, m.at("eth_dst"));
  if (const Json* p = m.get("ethertype")) rule.match.ethertype = parse_ethertype(*p, m.at("ethertype"));
  m.done();

  Obj a(o.need("action"), o.at("action"));
  const std::string kind = a.str("kind");
  if (kind == "forward") {
    rule.action = net::FlowAction::forward(a.bounded_or<PortId>("port", 0));
  } else if (kind == "flood") {
    rule.action = net::FlowAction::flood();
  } else if (kind == "drop") {
    rule.action = net::FlowAction::drop();
  } else if (kind == "to_controller") {
    rule.action = net::FlowAction::to_controller();
  } else {
    fail(a.at("kind"), "unknown action '" + kind + "'");
  }
  a.done();
  return rule;
}

devices::FilterRule parse_filter_rule(Obj& o) {
  devices::FilterRule rule;
  const std::string dir = o.str_or("direction", "any");
  if (dir == "a_to_b") {
    rule.match.direction = devices::Direction::AtoB;
  } else if (dir == "b_to_a") {
    rule.match.direction = devices::Direction::BtoA;
  } else if (dir == "any") {
    rule.match.direction = devices::Direction::Any;
  } else {
    fail(o.at("direction"), "unknown direction '" + dir + "'");
  }
  if (const Json* t = o.get("msg_type")) {
    auto type = proto::enip_type_from_string(as_string(*t, o.at("msg_type")));
    if (!type) fail(o.at("msg_type"), "unknown message type");
    rule.match.msg_type = *type;
  }
  if (const Json* t = o.get("tag")) rule.match.tag = as_string(*t, o.at("tag"));

  Obj a(o.need("action"), o.at("action"));
  const Json* set_bool = a.get("set_bool");
  const Json* set_int = a.get("set_int");
  const Json* add_noise = a.get("add_noise");
  a.done();
  if ((set_bool != nullptr) + (set_int != nullptr) + (add_noise != nullptr) != 1) {
    fail(o.at("action"), "expected exactly one of set_bool, set_int, add_noise");
  }
  if (set_bool) rule.action = devices::SetBool{as_bool(*set_bool, a.at("set_bool"))};
  if (set_int) rule.action = devices::SetInt{as_bounded<std::int32_t>(*set_int, a.at("set_int"))};
  if (add_noise) {
    rule.action = devices::AddNoise{as_bounded<std::int32_t>(*add_noise, a.at("add_noise"))};
  }
  return rule;
}

ScenarioSpec from_json(const Json& doc) {
  ScenarioSpec spec;
  Obj root(doc, "");
  spec.name = root.str("name");
  spec.seed = root.u64("seed");
  spec.duration = root.u64("duration_us");
  if (const Json* p = root.get("snapshot_path")) {
    if (!p->is_null()) spec.snapshot_path = as_string(*p, "snapshot_path");
  }
  spec.snapshot_every = root.u64_or("snapshot_every_us", 0);

  Obj net(root.need("net"), "net");
  each(net.get("hosts"), "net.hosts", [&](const Json& j, const std::string& path) {
    Obj o(j, path);
    spec.hosts.push_back(HostSpec{o.str("name"), o.ip("ip"), o.mac("mac")});
    o.done();
  });
  each(net.get("switches"), "net.switches", [&](const Json& j, const std::string& path) {
    Obj o(j, path);
    spec.switches.push_back(SwitchSpec{o.str("name"), o.u64("dpid")});
    o.done();
  });
  each(net.get("links"), "net.links", [&](const Json& j, const std::string& path) {
    Obj o(j, path);
    LinkSpec l;
    l.a = o.str("a");
    l.a_port = o.bounded_or<PortId>("a_port", 1);
    l.b = o.str("b");
    l.b_port = o.bounded_or<PortId>("b_port", 1);
    l.params.delay = o.u64("delay_us");
    l.params.loss = o.get("loss") ? as_double(*o.get("loss"), o.at("loss")) : 0.0;
    l.params.bandwidth_bps = o.u64_or("bandwidth_bps", 0);
    o.done();
    spec.links.push_back(std::move(l));
  });
  net.done();

  if (const Json* p = root.get("phys")) {
    Obj phys(*p, "phys");
    each(phys.get("keys"), "phys.keys", [&](const Json& j, const std::string& path) {
      Obj o(j, path);
      const std::string name = o.str("name");
      const std::string kind = o.str("kind");
      spec.phys_keys.push_back(PhysKeySpec{name, parse_phys_value(kind, o.need("value"), o.at("value"))});
      o.done();
    });
    if (const Json* t = phys.get("tank")) {
      Obj o(*t, "phys.tank");
      phys::TankParams tank;
      tank.valve_key = o.str("valve_key");
      tank.level_key = o.str("level_key");
      tank.inflow_per_tick = as_i64(o.need("inflow_per_tick"), o.at("inflow_per_tick"));
      tank.tick = o.u64("tick_us");
      tank.max_level = as_i64(o.need("max_level"), o.at("max_level"));
      o.done();
      spec.tank = tank;
    }
    phys.done();
  }

  if (const Json* p = root.get("devices")) {
    Obj dev(*p, "devices");
    each(dev.get("plcs"), "devices.plcs", [&](const Json& j, const std::string& path) {
      Obj o(j, path);
      devices::PlcConfig plc;
      plc.host = o.str("host");
      plc.scan_period = o.u64_or("scan_period_us", plc.scan_period);
      plc.modbus_unit = o.bounded_or<std::uint8_t>("modbus_unit", plc.modbus_unit);
      each(o.get("tags"), o.at("tags"), [&](const Json& tj, const std::string& tpath) {
        Obj t(tj, tpath);
        devices::PlcTagConfig tag;
        tag.name = t.str("name");
        tag.phys_key = t.str("phys_key");
        tag.writable = t.bool_or("writable", false);
        if (const Json* a = t.get("modbus_addr")) {
          tag.modbus_addr = as_bounded<std::uint16_t>(*a, t.at("modbus_addr"));
        }
        t.done();
        plc.tags.push_back(std::move(tag));
      });
      o.done();
      spec.plcs.push_back(std::move(plc));
    });
    if (const Json* h = dev.get("hmi")) {
      Obj o(*h, "devices.hmi");
      devices::HmiConfig hmi;
      hmi.host = o.str("host");
      hmi.plc = o.ip("plc");
      hmi.period = o.u64_or("period_us", hmi.period);
      hmi.command = o.bool_or("command", false);
      if (const Json* a = o.get("alarm_threshold")) {
        hmi.alarm_threshold = as_i64(*a, o.at("alarm_threshold"));
      }
      hmi.valve_tag = o.str_or("valve_tag", hmi.valve_tag);
      hmi.level_tag = o.str_or("level_tag", hmi.level_tag);
      o.done();
      spec.hmi = std::move(hmi);
    }
    if (const Json* h = dev.get("historian")) {
      Obj o(*h, "devices.historian");
      devices::HistorianConfig hist;
      hist.host = o.str("host");
      hist.plc = o.ip("plc");
      hist.period = o.u64_or("period_us", hist.period);
      each(o.get("tags"), o.at("tags"), [&](const Json& tj, const std::string& tpath) {
        hist.tags.push_back(as_string(tj, tpath));
      });
      o.done();
      spec.historian = std::move(hist);
    }
    if (const Json* a = dev.get("attacker")) {
      Obj o(*a, "devices.attacker");
      devices::AttackerConfig atk;
      atk.host = o.str("host");
      atk.victim_a = o.ip("victim_a");
      atk.victim_b = o.ip("victim_b");
      atk.poison_start = o.u64_or("poison_start_us", atk.poison_start);
      atk.poison_period = o.u64_or("poison_period_us", atk.poison_period);
      atk.noise_seed = o.u64_or("noise_seed", 0);
      each(o.get("rules"), o.at("rules"), [&](const Json& rj, const std::string& rpath) {
        Obj r(rj, rpath);
        atk.rules.push_back(parse_filter_rule(r));
        r.done();
      });
      o.done();
      spec.attacker = std::move(atk);
    }
    dev.done();
  }

  if (const Json* c = root.get("controller"); c && !c->is_null()) {
    Obj o(*c, "controller");
    sdn::ControllerPolicy policy;
    try {
      policy.mode = sdn::mode_from_string(o.str("mode"));
    } catch (const std::invalid_argument& e) {
      fail(o.at("mode"), e.what());
    }
    policy.restore_enabled = o.bool_or("restore_enabled", false);
    policy.restore_period = o.u64_or("restore_period_us", policy.restore_period);
    policy.delay = o.u64_or("delay_us", policy.delay);
    if (const Json* pm = o.get("premap")) {
      Obj premap(*pm, "controller.premap");
      each(premap.get("rules"), "controller.premap.rules", [&](const Json& j, const std::string& path) {
        Obj r(j, path);
        sdn::PremapRule rule;
        rule.dpid = r.u64("dpid");
        rule.rule = parse_flow_rule(r);
        r.done();
        policy.premap_rules.push_back(std::move(rule));
      });
      each(premap.get("pins"), "controller.premap.pins", [&](const Json& j, const std::string& path) {
        Obj pin(j, path);
        policy.pins.push_back(sdn::Pin{pin.ip("ip"), pin.mac("mac")});
        pin.done();
      });
      premap.done();
    }
    o.done();
    spec.controller = std::move(policy);
  }

  root.done();
  return spec;
}

// ---- writing ----

Json phys_value_json(const phys::PhysValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
  return std::get<double>(v);
}

Json flow_rule_json(const net::FlowRule& rule) {
  Json match = Json::object();
  if (rule.match.in_port) match["in_port"] = *rule.match.in_port;
  if (rule.match.eth_src) match["eth_src"] = rule.match.eth_src->to_string();
  if (rule.match.eth_dst) match["eth_dst"] = rule.match.eth_dst->to_string();
  if (rule.match.ethertype) match["ethertype"] = ethertype_name(*rule.match.ethertype);
  Json action;
  switch (rule.action.kind) {
    case net::FlowAction::Kind::Forward:
      action["kind"] = "forward";
      action["port"] = rule.action.port;
      break;
    case net::FlowAction::Kind::Flood: action["kind"] = "flood"; break;
    case net::FlowAction::Kind::Drop: action["kind"] = "drop"; break;
    case net::FlowAction::Kind::ToController: action["kind"] = "to_controller"; break;
  }
  Json j;
  j["priority"] = rule.priority;
  j["permanent"] = rule.permanent;
  j["match"] = std::move(match);
  j["action"] = std::move(action);
  return j;
}

Json filter_rule_json(const devices::FilterRule& rule) {
  Json j;
  j["direction"] = devices::to_string(rule.match.direction);
  if (rule.match.msg_type) j["msg_type"] = proto::to_string(*rule.match.msg_type);
  if (rule.match.tag) j["tag"] = *rule.match.tag;
  Json action;
  if (const auto* a = std::get_if<devices::SetBool>(&rule.action)) action["set_bool"] = a->value;
  if (const auto* a = std::get_if<devices::SetInt>(&rule.action)) action["set_int"] = a->value;
  if (const auto* a = std::get_if<devices::AddNoise>(&rule.action)) action["add_noise"] = a->amplitude;
  j["action"] = std::move(action);
  return j;
}

// ---- validation ----

[[noreturn]] void invalid(const std::string& what) { throw ValidationError(what); }

}  // namespace

Json to_json(const ScenarioSpec& spec) {
  Json doc;
  doc["name"] = spec.name;
  doc["seed"] = spec.seed;
  doc["duration_us"] = spec.duration;

  Json net;
  net["hosts"] = Json::array();
  for (const HostSpec& h : spec.hosts) {
    net["hosts"].push_back({{"name", h.name}, {"ip", h.ip.to_string()}, {"mac", h.mac.to_string()}});
  }
  net["switches"] = Json::array();
  for (const SwitchSpec& s : spec.switches) {
    net["switches"].push_back({{"name", s.name}, {"dpid", s.dpid}});
  }
  net["links"] = Json::array();
  for (const LinkSpec& l : spec.links) {
    net["links"].push_back({{"a", l.a},
                            {"a_port", l.a_port},
                            {"b", l.b},
                            {"b_port", l.b_port},
                            {"delay_us", l.params.delay},
                            {"loss", l.params.loss},
                            {"bandwidth_bps", l.params.bandwidth_bps}});
  }
  doc["net"] = std::move(net);

  Json phys;
  phys["keys"] = Json::array();
  for (const PhysKeySpec& k : spec.phys_keys) {
    phys["keys"].push_back({{"name", k.name},
                            {"kind", phys::to_string(phys::kind_of(k.initial))},
                            {"value", phys_value_json(k.initial)}});
  }
  if (spec.tank) {
    phys["tank"] = {{"valve_key", spec.tank->valve_key},
                    {"level_key", spec.tank->level_key},
                    {"inflow_per_tick", spec.tank->inflow_per_tick},
                    {"tick_us", spec.tank->tick},
                    {"max_level", spec.tank->max_level}};
  }
  doc["phys"] = std::move(phys);

  Json dev;
  dev["plcs"] = Json::array();
  for (const devices::PlcConfig& plc : spec.plcs) {
    Json p;
    p["host"] = plc.host;
    p["scan_period_us"] = plc.scan_period;
    p["modbus_unit"] = plc.modbus_unit;
    p["tags"] = Json::array();
    for (const devices::PlcTagConfig& t : plc.tags) {
      Json tag{{"name", t.name}, {"phys_key", t.phys_key}, {"writable", t.writable}};
      if (t.modbus_addr) tag["modbus_addr"] = *t.modbus_addr;
      p["tags"].push_back(std::move(tag));
    }
    dev["plcs"].push_back(std::move(p));
  }
  if (spec.hmi) {
    dev["hmi"] = {{"host", spec.hmi->host},
                  {"plc", spec.hmi->plc.to_string()},
                  {"period_us", spec.hmi->period},
                  {"command", spec.hmi->command},
                  {"alarm_threshold", spec.hmi->alarm_threshold},
                  {"valve_tag", spec.hmi->valve_tag},
                  {"level_tag", spec.hmi->level_tag}};
  }
  if (spec.historian) {
    dev["historian"] = {{"host", spec.historian->host},
                        {"plc", spec.historian->plc.to_string()},
                        {"period_us", spec.historian->period},
                        {"tags", spec.historian->tags}};
  }
  if (spec.attacker) {
    Json a{{"host", spec.attacker->host},
           {"victim_a", spec.attacker->victim_a.to_string()},
           {"victim_b", spec.attacker->victim_b.to_string()},
           {"poison_start_us", spec.attacker->poison_start},
           {"poison_period_us", spec.attacker->poison_period},
           {"noise_seed", spec.attacker->noise_seed}};
    a["rules"] = Json::array();
    for (const devices::FilterRule& r : spec.attacker->rules) a["rules"].push_back(filter_rule_json(r));
    dev["attacker"] = std::move(a);
  }
  doc["devices"] = std::move(dev);

  if (spec.controller) {
    const sdn::ControllerPolicy& c = *spec.controller;
    Json ctl{{"mode", sdn::to_string(c.mode)},
             {"restore_enabled", c.restore_enabled},
             {"restore_period_us", c.restore_period},
             {"delay_us", c.delay}};
    Json premap;
    premap["rules"] = Json::array();
    for (const sdn::PremapRule& r : c.premap_rules) {
      Json rule{{"dpid", r.dpid}};
      rule.update(flow_rule_json(r.rule));
      premap["rules"].push_back(std::move(rule));
    }
    premap["pins"] = Json::array();
    for (const sdn::Pin& p : c.pins) {
      premap["pins"].push_back({{"ip", p.ip.to_string()}, {"mac", p.mac.to_string()}});
    }
    ctl["premap"] = std::move(premap);
    doc["controller"] = std::move(ctl);
  }
  if (spec.snapshot_path) doc["snapshot_path"] = *spec.snapshot_path;
  if (spec.snapshot_every != 0) doc["snapshot_every_us"] = spec.snapshot_every;
  return doc;
}

std::string serialize_scenario(const ScenarioSpec& spec) { return to_json(spec).dump(2) + "\n"; }

void validate(const ScenarioSpec& spec) {
  if (spec.name.empty()) invalid("scenario name is empty");
  if (spec.duration == 0) invalid("duration_us must be > 0");

  std::set<std::string> names;
  std::set<Ipv4Addr> ips;
  std::set<MacAddr> macs;
  for (const HostSpec& h : spec.hosts) {
    if (!names.insert(h.name).second) invalid("node declared twice: " + h.name);
    if (!ips.insert(h.ip).second) invalid("IP declared twice: " + h.ip.to_string());
    if (h.mac.is_broadcast() || h.mac.is_zero()) invalid("host " + h.name + " has a reserved MAC");
    if (!macs.insert(h.mac).second) invalid("MAC declared twice: " + h.mac.to_string());
  }
  std::set<net::DatapathId> dpids;
  std::set<std::string> switch_names;
  for (const SwitchSpec& s : spec.switches) {
    if (!names.insert(s.name).second) invalid("node declared twice: " + s.name);
    if (!dpids.insert(s.dpid).second) invalid("dpid declared twice: " + std::to_string(s.dpid));
    switch_names.insert(s.name);
  }

  std::set<std::pair<std::string, PortId>> used_ports;
  for (const LinkSpec& l : spec.links) {
    for (const auto& [node, port] : {std::pair{l.a, l.a_port}, std::pair{l.b, l.b_port}}) {
      if (!names.contains(node)) invalid("link references undeclared node: " + node);
      if (switch_names.contains(node)) {
        if (port == 0) invalid("switch port 0 is reserved: " + node);
      } else if (port != proto::Host::kPort) {
        invalid("host " + node + " has a single port " + std::to_string(proto::Host::kPort));
      }
      if (!used_ports.insert({node, port}).second) {
        invalid("port " + std::to_string(port) + " on " + node + " linked twice");
      }
    }
    if (l.a == l.b) invalid("link connects " + l.a + " to itself");
    try {
      l.params.validate();
    } catch (const std::invalid_argument& e) {
      invalid("link " + l.a + "-" + l.b + ": " + e.what());
    }
  }

  std::map<std::string, phys::PhysKind> keys;
  for (const PhysKeySpec& k : spec.phys_keys) {
    if (k.name == "_revision") invalid("physical key name is reserved: _revision");
    if (!keys.emplace(k.name, phys::kind_of(k.initial)).second) {
      invalid("physical key declared twice: " + k.name);
    }
  }
  auto require_key = [&](const std::string& key, phys::PhysKind kind, const std::string& who) {
    auto it = keys.find(key);
    if (it == keys.end()) invalid(who + " references undeclared physical key: " + key);
    if (it->second != kind) {
      invalid(who + " needs physical key " + key + " of kind " + std::string(phys::to_string(kind)));
    }
  };
  if (spec.tank) {
    require_key(spec.tank->valve_key, phys::PhysKind::Bool, "tank");
    require_key(spec.tank->level_key, phys::PhysKind::Int64, "tank");
    try {
      spec.tank->validate();
    } catch (const std::invalid_argument& e) {
      invalid(std::string("tank: ") + e.what());
    }
  }

  std::set<std::string> device_hosts;
  auto claim_host = [&](const std::string& host, const std::string& role) -> const HostSpec& {
    const HostSpec* h = spec.find_host(host);
    if (!h) invalid(role + " references undeclared host: " + host);
    if (!device_hosts.insert(host).second) invalid("host runs more than one device: " + host);
    return *h;
  };

  std::map<Ipv4Addr, const devices::PlcConfig*> plc_by_ip;
  for (const devices::PlcConfig& plc : spec.plcs) {
    const HostSpec& h = claim_host(plc.host, "plc");
    plc_by_ip[h.ip] = &plc;
    if (plc.scan_period == 0) invalid("plc " + plc.host + ": scan_period_us must be > 0");
    std::set<std::string> tag_names;
    std::set<std::string> mapped;
    for (const devices::PlcTagConfig& t : plc.tags) {
      const std::string who = "plc " + plc.host + " tag " + t.name;
      if (!tag_names.insert(t.name).second) invalid("plc " + plc.host + " declares tag twice: " + t.name);
      auto it = keys.find(t.phys_key);
      if (it == keys.end()) invalid(who + " references undeclared physical key: " + t.phys_key);
      if (it->second == phys::PhysKind::Float64) invalid(who + " cannot map a float64 key");
      if (!mapped.insert(t.phys_key).second) {
        invalid("plc " + plc.host + " maps physical key twice: " + t.phys_key);
      }
    }
  }
  auto require_tag = [&](const devices::PlcConfig& plc, const std::string& tag,
                         const std::string& who) {
    for (const devices::PlcTagConfig& t : plc.tags) {
      if (t.name == tag) return;
    }
    invalid(who + " references tag " + tag + " not served by plc " + plc.host);
  };
  auto require_plc = [&](Ipv4Addr ip, const std::string& who) -> const devices::PlcConfig& {
    auto it = plc_by_ip.find(ip);
    if (it == plc_by_ip.end()) invalid(who + " references " + ip.to_string() + ", which runs no plc");
    return *it->second;
  };

  if (spec.hmi) {
    claim_host(spec.hmi->host, "hmi");
    if (spec.hmi->period == 0) invalid("hmi: period_us must be > 0");
    const devices::PlcConfig& plc = require_plc(spec.hmi->plc, "hmi");
    require_tag(plc, spec.hmi->valve_tag, "hmi");
    require_tag(plc, spec.hmi->level_tag, "hmi");
  }
  if (spec.historian) {
    claim_host(spec.historian->host, "historian");
    if (spec.historian->period == 0) invalid("historian: period_us must be > 0");
    const devices::PlcConfig& plc = require_plc(spec.historian->plc, "historian");
    for (const std::string& tag : spec.historian->tags) require_tag(plc, tag, "historian");
  }
  if (spec.attacker) {
    const HostSpec& h = claim_host(spec.attacker->host, "attacker");
    for (Ipv4Addr victim : {spec.attacker->victim_a, spec.attacker->victim_b}) {
      if (!spec.find_host(victim)) invalid("attacker victim is not a declared host: " + victim.to_string());
      if (victim == h.ip) invalid("attacker cannot target itself");
    }
    if (spec.attacker->victim_a == spec.attacker->victim_b) invalid("attacker victims must be distinct");
    if (spec.attacker->poison_period == 0) invalid("attacker: poison_period_us must be > 0");
  }

  if (spec.controller) {
    if (spec.switches.empty()) invalid("controller configured without any switch");
    if (spec.controller->restore_period == 0) invalid("controller: restore_period_us must be > 0");
    for (const sdn::PremapRule& r : spec.controller->premap_rules) {
      if (!dpids.contains(r.dpid)) invalid("premap rule references undeclared dpid " + std::to_string(r.dpid));
    }
    std::set<Ipv4Addr> pinned;
    for (const sdn::Pin& p : spec.controller->pins) {
      if (!pinned.insert(p.ip).second) invalid("IP pinned twice: " + p.ip.to_string());
    }
  }

  if (spec.snapshot_path && spec.snapshot_path->empty()) invalid("snapshot_path is empty");
  if (spec.snapshot_every != 0 && !spec.snapshot_path) {
    invalid("snapshot_every_us requires snapshot_path");
  }
}

ScenarioSpec parse_scenario(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is 1-based and points one past the offending character.
    const std::size_t offset = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, text.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < offset; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) +
                         ": " + e.what(),
                     line, column);
  }
  ScenarioSpec spec = from_json(doc);
  validate(spec);
  return spec;
}

ScenarioSpec load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

}  // namespace icsim::scenario
