#include "icsim/phys/tank.hpp"

namespace icsim::phys {

void TankParams::validate() const {
  if (inflow_per_tick <= 0) throw std::invalid_argument("tank inflow_per_tick must be > 0");
  if (tick == 0) throw std::invalid_argument("tank tick must be > 0");
}

std::int64_t tank_step(const TankParams& params, PhysStore& store) {
  const auto level = std::get<std::int64_t>(store.read(params.level_key));
  if (!std::get<bool>(store.read(params.valve_key))) return level;
  const std::int64_t next = level + params.inflow_per_tick;
  store.write(params.level_key, next);
  return next;
}

TankProcess::TankProcess(net::Simulator& sim, PhysStore& store, TankParams params)
    : sim_(sim), store_(store), params_(std::move(params)) {
  params_.validate();
  if (kind_of(store_.read(params_.valve_key)) != PhysKind::Bool) {
    throw KindMismatch(params_.valve_key);
  }
  if (kind_of(store_.read(params_.level_key)) != PhysKind::Int64) {
    throw KindMismatch(params_.level_key);
  }
}

void TankProcess::start() {
  sim_.schedule_in(params_.tick, [this] { step(); });
}

void TankProcess::step() {
  tank_step(params_, store_);
  ++steps_;
  sim_.schedule_in(params_.tick, [this] { step(); });
}

}  // namespace icsim::phys
