#include "icsim/scenario/simulation.hpp"

namespace icsim::scenario {

using net::Json;

Simulation::Simulation(const ScenarioSpec& spec, RunOptions options)
    : spec_(spec), options_(std::move(options)), sim_(spec.seed), network_(sim_) {
  validate(spec_);
  sim_.trace().set_sink(options_.trace_sink);
  network_.set_describer(proto::describe_frame);

  for (const HostSpec& h : spec_.hosts) {
    hosts_[h.name] = &network_.add<proto::Host>(h.name, h.ip, h.mac);
  }
  for (const SwitchSpec& s : spec_.switches) {
    switches_[s.name] = &network_.add<net::Switch>(s.name, s.dpid);
  }
  for (const LinkSpec& l : spec_.links) {
    const net::NodeId a = network_.find(l.a)->id();
    const net::NodeId b = network_.find(l.b)->id();
    network_.connect({a, l.a_port}, {b, l.b_port}, l.params);
  }

  for (const PhysKeySpec& k : spec_.phys_keys) store_.declare(k.name, k.initial);
  store_.set_observer([this](const std::string& key, const phys::PhysValue& value,
                             std::uint64_t revision) {
    Json d;
    d["key"] = key;
    std::visit([&](const auto& v) { d["value"] = v; }, value);
    d["revision"] = revision;
    sim_.emit(net::TraceKind::Phys, "phys", std::move(d));
  });
  if (spec_.tank) tank_ = std::make_unique<phys::TankProcess>(sim_, store_, *spec_.tank);

  for (const devices::PlcConfig& c : spec_.plcs) {
    plcs_.push_back(std::make_unique<devices::Plc>(*host(c.host), store_, c));
  }
  if (spec_.hmi) hmi_ = std::make_unique<devices::Hmi>(*host(spec_.hmi->host), *spec_.hmi);
  if (spec_.historian) {
    historian_ = std::make_unique<devices::Historian>(*host(spec_.historian->host), *spec_.historian);
  }
  if (spec_.attacker) {
    attacker_ = std::make_unique<devices::Attacker>(*host(spec_.attacker->host), *spec_.attacker);
  }

  if (spec_.controller) {
    controller_ = std::make_unique<sdn::Controller>(*spec_.controller);
    runtime_ = std::make_unique<sdn::ControllerRuntime>(sim_, *controller_);
    for (const SwitchSpec& s : spec_.switches) runtime_->attach(*switches_.at(s.name));
  }
}

proto::Host* Simulation::host(std::string_view name) {
  auto it = hosts_.find(name);
  return it == hosts_.end() ? nullptr : it->second;
}

const proto::Host* Simulation::host(std::string_view name) const {
  auto it = hosts_.find(name);
  return it == hosts_.end() ? nullptr : it->second;
}

net::Switch* Simulation::switch_node(std::string_view name) {
  auto it = switches_.find(name);
  return it == switches_.end() ? nullptr : it->second;
}

const devices::Plc* Simulation::plc(std::string_view host) const {
  for (const auto& p : plcs_) {
    if (p->config().host == host) return p.get();
  }
  return nullptr;
}

void Simulation::start() {
  started_ = true;
  if (tank_) tank_->start();
  for (auto& p : plcs_) p->start();
  if (hmi_) hmi_->start();
  if (historian_) historian_->start();
  if (attacker_) attacker_->start();
  if (runtime_) runtime_->start();
  if (spec_.snapshot_every != 0) {
    sim_.schedule_in(spec_.snapshot_every, [this] { snapshot_cycle(); });
  }
}

void Simulation::snapshot_cycle() {
  write_snapshot();
  sim_.schedule_in(spec_.snapshot_every, [this] { snapshot_cycle(); });
}

std::size_t Simulation::run_until(Micros t_end) {
  if (!started_) start();
  return sim_.run_until(t_end);
}

std::size_t Simulation::run() {
  const std::size_t n = run_until(spec_.duration);
  if (options_.snapshot_path || spec_.snapshot_path) write_snapshot();
  return n;
}

void Simulation::write_snapshot() const {
  const auto& path = options_.snapshot_path ? options_.snapshot_path : spec_.snapshot_path;
  if (!path) throw std::runtime_error("no snapshot path configured");
  phys::write_snapshot_file(store_, *path);
}

Metrics Simulation::metrics() const {
  Metrics m = metrics_from_trace(spec_, sim_.trace().records());
  m.t_end = sim_.now();
  if (spec_.tank) m.true_level_final = std::get<std::int64_t>(store_.read(spec_.tank->level_key));
  if (hmi_) m.hmi_observed_level_final = hmi_->observed_level();
  if (attacker_) {
    m.attacker = AttackerStats{attacker_->rounds(), attacker_->forged_sent(),
                               attacker_->intercepted(), attacker_->forwarded(),
                               attacker_->rewritten()};
  }
  return m;
}

Metrics run_scenario(const ScenarioSpec& spec, RunOptions options) {
  Simulation s(spec, std::move(options));
  s.run();
  return s.metrics();
}

}  // namespace icsim::scenario
