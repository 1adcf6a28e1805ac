#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icsim/phys/store.hpp"
#include "icsim/proto/host.hpp"
#include "icsim/proto/tags.hpp"

namespace icsim::devices {

using net::Micros;

struct PlcTagConfig {
  std::string name;
  std::string phys_key;
  bool writable = false;
  std::optional<std::uint16_t> modbus_addr;

  bool operator==(const PlcTagConfig&) const = default;
};

struct PlcConfig {
  std::string host;
  Micros scan_period = 100 * net::kMillisecond;
  std::uint8_t modbus_unit = 1;
  std::vector<PlcTagConfig> tags;

  bool operator==(const PlcConfig&) const = default;
};

/// Tag server bridging the network and the physical store.
///
/// The scan cycle copies every mapped physical value into its tag. Network
/// writes to writable tags go straight through to the store instead of
/// waiting for the next scan. Serves ENIP-lite on 44818 and Modbus/TCP on 502.
class Plc {
 public:
  /// Throws std::invalid_argument when a mapped key is undeclared, of kind
  /// Float64, or mapped twice; or when scan_period is zero.
  Plc(proto::Host& host, phys::PhysStore& store, PlcConfig config);

  Plc(const Plc&) = delete;
  Plc& operator=(const Plc&) = delete;

  /// First scan at now + scan_period.
  void start();
  void scan_cycle();

  const proto::TagTable& tags() const { return tags_; }
  const PlcConfig& config() const { return config_; }
  std::uint64_t scans() const { return scans_; }

 private:
  void on_enip(const proto::TransportMessage& msg);
  void on_modbus(const proto::TransportMessage& msg);
  void reply(const proto::TransportMessage& request, std::uint16_t from_port,
             proto::Bytes payload);

  proto::Host& host_;
  phys::PhysStore& store_;
  PlcConfig config_;
  proto::TagTable tags_;
  proto::EnipServer enip_;
  proto::ModbusServer modbus_;
  std::uint64_t scans_ = 0;
};

}  // namespace icsim::devices
