#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icsim/net/simulator.hpp"
#include "icsim/sdn/controller.hpp"

namespace icsim::sdn {

/// Runs a Controller inside the event loop. A PacketIn reaches the
/// controller after policy.delay and its actions reach the switch after a
/// further policy.delay. Detections become warning trace records emitted by
/// `name` at decision time.
class ControllerRuntime {
 public:
  struct DetectionRecord {
    Micros t_us = 0;
    Detection detection;
  };

  ControllerRuntime(net::Simulator& sim, Controller& controller, std::string name = "controller");

  ControllerRuntime(const ControllerRuntime&) = delete;
  ControllerRuntime& operator=(const ControllerRuntime&) = delete;

  /// Registers the switch with the controller and installs its premap
  /// rules immediately. Throws DuplicateDatapath.
  void attach(net::Switch& sw);

  /// Starts periodic cache restoring when the policy enables it.
  void start();

  /// Sends one restore round on every datapath now. Returns replies sent.
  std::size_t restore_now();

  const std::vector<DetectionRecord>& detections() const { return detections_; }
  std::uint64_t packet_ins() const { return packet_ins_; }
  std::uint64_t restore_replies() const { return restore_replies_; }
  const Controller& controller() const { return controller_; }

 private:
  void handle(const net::PacketIn& pin);
  void dispatch(std::vector<ControllerAction> actions);
  void apply(const ControllerAction& action);
  void warn(const Detection& detection);
  void restore_cycle();

  net::Simulator& sim_;
  Controller& controller_;
  std::string name_;
  std::map<DatapathId, net::Switch*> switches_;
  std::vector<DetectionRecord> detections_;
  std::uint64_t packet_ins_ = 0;
  std::uint64_t restore_replies_ = 0;
};

}  // namespace icsim::sdn
