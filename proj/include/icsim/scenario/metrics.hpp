#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icsim/net/trace.hpp"
#include "icsim/scenario/spec.hpp"

namespace icsim::scenario {

struct FrameStats {
  std::uint64_t tx = 0;
  std::uint64_t rx = 0;
  std::uint64_t dropped_rule = 0;
  std::uint64_t dropped_loss = 0;
  bool operator==(const FrameStats&) const = default;
};

struct AttackerStats {
  std::uint64_t poison_rounds = 0;
  std::uint64_t forged_replies_sent = 0;
  std::uint64_t intercepted = 0;
  std::uint64_t forwarded = 0;
  std::uint64_t rewritten = 0;
  bool operator==(const AttackerStats&) const = default;
};

struct Metrics {
  std::string scenario;
  std::uint64_t seed = 0;
  Micros t_end = 0;

  std::optional<std::int64_t> true_level_final;
  std::optional<std::int32_t> hmi_observed_level_final;

  bool alarm_fired = false;
  std::optional<Micros> alarm_t;

  bool spoof_detected = false;
  std::optional<Micros> spoof_t;
  std::optional<std::string> spoof_classification;
  std::optional<Micros> blocked_at;

  FrameStats frames;
  /// Transport frames sent by the HMI or its PLC to the other one.
  std::uint64_t messages_hmi_plc = 0;

  std::uint64_t warnings = 0;
  std::uint64_t drop_rules = 0;
  /// ARP Replies received by a host whose sender binding contradicts the
  /// declared topology.
  std::uint64_t forged_replies_delivered = 0;
  std::uint64_t historian_records = 0;
  std::optional<AttackerStats> attacker;

  bool operator==(const Metrics&) const = default;
};

/// Trace-derived part of the metrics. Device state (levels, attacker
/// counters) is filled in by the caller.
Metrics metrics_from_trace(const ScenarioSpec& spec, const std::vector<net::TraceRecord>& trace);

/// Keys sorted at every level; absent optionals are null.
nlohmann::json metrics_to_json(const Metrics& m);
/// Throws nlohmann::json::exception for documents not produced by
/// metrics_to_json.
Metrics metrics_from_json(const nlohmann::json& j);

enum class ReportFormat { Human, Json };

/// Throws std::invalid_argument for names other than "human" and "json".
ReportFormat report_format_from_string(std::string_view s);

/// Human: one "field: value" line per metric. Json: metrics_to_json dumped
/// with two-space indentation. Both end with a newline.
std::string report(const Metrics& m, ReportFormat format);

}  // namespace icsim::scenario
