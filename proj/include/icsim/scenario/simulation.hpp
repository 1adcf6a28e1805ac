#pragma once

#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "icsim/devices/attacker.hpp"
#include "icsim/devices/hmi.hpp"
#include "icsim/devices/plc.hpp"
#include "icsim/net/switch.hpp"
#include "icsim/phys/tank.hpp"
#include "icsim/scenario/metrics.hpp"
#include "icsim/scenario/spec.hpp"
#include "icsim/sdn/runtime.hpp"

namespace icsim::scenario {

struct RunOptions {
  /// Receives every trace record as a JSON line while the run progresses.
  std::ostream* trace_sink = nullptr;
  /// Overrides spec.snapshot_path.
  std::optional<std::string> snapshot_path;
};

/// One scenario instance: the network, the physical store, every device and
/// the optional controller, wired and ready to run.
class Simulation {
 public:
  /// Validates `spec` and builds everything. Throws ValidationError.
  explicit Simulation(const ScenarioSpec& spec, RunOptions options = {});

  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  /// Starts all periodic processes on the first call and advances the clock
  /// to `t_end`. Returns events processed.
  std::size_t run_until(Micros t_end);
  /// Runs to the scenario duration, then writes the final snapshot when a
  /// snapshot path is configured.
  std::size_t run();

  /// Metrics as of the current clock.
  Metrics metrics() const;

  /// Throws std::runtime_error when no snapshot path is configured or the
  /// file cannot be written.
  void write_snapshot() const;

  const ScenarioSpec& spec() const { return spec_; }
  net::Simulator& sim() { return sim_; }
  const net::Simulator& sim() const { return sim_; }
  net::Network& network() { return network_; }
  const net::Network& network() const { return network_; }
  phys::PhysStore& store() { return store_; }
  const phys::PhysStore& store() const { return store_; }

  /// nullptr when the name is unknown or not a host.
  proto::Host* host(std::string_view name);
  const proto::Host* host(std::string_view name) const;
  net::Switch* switch_node(std::string_view name);

  const devices::Hmi* hmi() const { return hmi_.get(); }
  const devices::Historian* historian() const { return historian_.get(); }
  const devices::Attacker* attacker() const { return attacker_.get(); }
  const devices::Plc* plc(std::string_view host) const;
  const sdn::ControllerRuntime* controller() const { return runtime_.get(); }

 private:
  void start();
  void snapshot_cycle();

  ScenarioSpec spec_;
  RunOptions options_;
  net::Simulator sim_;
  net::Network network_;
  phys::PhysStore store_;
  std::map<std::string, proto::Host*, std::less<>> hosts_;
  std::map<std::string, net::Switch*, std::less<>> switches_;
  std::unique_ptr<phys::TankProcess> tank_;
  std::vector<std::unique_ptr<devices::Plc>> plcs_;
  std::unique_ptr<devices::Hmi> hmi_;
  std::unique_ptr<devices::Historian> historian_;
  std::unique_ptr<devices::Attacker> attacker_;
  std::unique_ptr<sdn::Controller> controller_;
  std::unique_ptr<sdn::ControllerRuntime> runtime_;
  bool started_ = false;
};

/// Builds, runs for the full duration, writes the snapshot if configured
/// and returns the final metrics.
Metrics run_scenario(const ScenarioSpec& spec, RunOptions options = {});

}  // namespace icsim::scenario
