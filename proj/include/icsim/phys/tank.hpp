#pragma once

#include <cstdint>
#include <string>

#include "icsim/net/simulator.hpp"
#include "icsim/phys/store.hpp"

namespace icsim::phys {

/// Fill-only tank fed through a Boolean valve. No drain is modeled.
struct TankParams {
  std::string valve_key = "valve";
  std::string level_key = "level";
  std::int64_t inflow_per_tick = 10;
  net::Micros tick = 100 * net::kMillisecond;
  std::int64_t max_level = 800;

  /// Throws std::invalid_argument unless inflow_per_tick > 0 and tick > 0.
  void validate() const;
  bool operator==(const TankParams&) const = default;
};

/// One integration step: level += inflow_per_tick if the valve is open.
/// Writes the store only when the level changes. Returns the new level.
/// The level is not clamped at max_level; overflow is observable.
std::int64_t tank_step(const TankParams& params, PhysStore& store);

/// Runs tank_step every `tick`, starting at now + tick.
class TankProcess {
 public:
  /// Throws UnknownKey / KindMismatch when the keys are not declared as
  /// Bool (valve) and Int64 (level).
  TankProcess(net::Simulator& sim, PhysStore& store, TankParams params);

  void start();
  const TankParams& params() const { return params_; }
  std::uint64_t steps() const { return steps_; }

 private:
  void step();

  net::Simulator& sim_;
  PhysStore& store_;
  TankParams params_;
  std::uint64_t steps_ = 0;
};

}  // namespace icsim::phys
