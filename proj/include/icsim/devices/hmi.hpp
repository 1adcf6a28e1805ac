#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icsim/proto/enip_client.hpp"

namespace icsim::devices {

using net::Micros;

struct HmiConfig {
  std::string host;
  net::Ipv4Addr plc;
  Micros period = 100 * net::kMillisecond;
  bool command = false;
  std::int64_t alarm_threshold = 800;
  std::string valve_tag = "valve";
  std::string level_tag = "level";

  bool operator==(const HmiConfig&) const = default;
};

/// Scripted operator station. Every period it writes the commanded valve
/// state, then reads the level and raises an alarm when the reported level
/// rises above the threshold.
class Hmi {
 public:
  /// Throws std::invalid_argument when period is zero.
  Hmi(proto::Host& host, HmiConfig config);

  /// First tick at now + period.
  void start();
  void tick();

  const HmiConfig& config() const { return config_; }
  std::optional<std::int32_t> observed_level() const { return observed_level_; }
  std::optional<Micros> first_alarm() const { return first_alarm_; }
  std::uint64_t ticks() const { return ticks_; }
  std::uint64_t errors() const { return errors_; }
  const proto::EnipClient& client() const { return client_; }

 private:
  void on_level(const proto::EnipMessage& resp);
  void on_error(const proto::EnipMessage& resp);

  proto::Host& host_;
  HmiConfig config_;
  proto::EnipClient client_;
  std::optional<std::int32_t> observed_level_;
  std::optional<Micros> first_alarm_;
  bool alarm_active_ = false;
  std::uint64_t ticks_ = 0;
  std::uint64_t errors_ = 0;
};

struct HistorianConfig {
  std::string host;
  net::Ipv4Addr plc;
  Micros period = net::kSecond;
  std::vector<std::string> tags;

  bool operator==(const HistorianConfig&) const = default;
};

/// Samples the configured tags every period, starting immediately, and
/// logs each answered value.
class Historian {
 public:
  struct Record {
    Micros t_us;
    std::string tag;
    proto::TagData value;
  };

  Historian(proto::Host& host, HistorianConfig config);

  void start();
  void tick();

  const std::vector<Record>& records() const { return records_; }
  std::uint64_t errors() const { return errors_; }

 private:
  void cycle();

  proto::Host& host_;
  HistorianConfig config_;
  proto::EnipClient client_;
  std::vector<Record> records_;
  std::uint64_t errors_ = 0;
};

}  // namespace icsim::devices
