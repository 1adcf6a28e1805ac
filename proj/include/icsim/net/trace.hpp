#pragma once

#include <cstdint>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "icsim/net/types.hpp"

namespace icsim::net {

using Json = nlohmann::ordered_json;

enum class TraceKind : std::uint8_t {
  Tx,
  Rx,
  Drop,
  PacketIn,
  FlowMod,
  Phys,
  Device,
  Alarm,
  Warning,
};

std::string_view to_string(TraceKind kind);

struct TraceRecord {
  Micros t_us = 0;
  TraceKind kind = TraceKind::Device;
  std::string node;
  Json detail;

  /// One JSON line: {"t_us":..,"kind":..,"node":..,"detail":{..}}.
  std::string to_json_line() const;
};

/// Append-only event log. Records keep emission order, which equals
/// (t_us, emission sequence) order because emission happens inside the
/// event loop.
class Trace {
 public:
  void emit(Micros t_us, TraceKind kind, std::string node, Json detail);

  /// Mirror every record to `out` as JSON lines. Pass nullptr to stop.
  void set_sink(std::ostream* out) { sink_ = out; }

  /// Drop in-memory records (the sink keeps receiving). Used by long runs
  /// that only want the file.
  void set_retain(bool retain) { retain_ = retain; }

  const std::vector<TraceRecord>& records() const { return records_; }
  std::size_t emitted() const { return emitted_; }

 private:
  std::vector<TraceRecord> records_;
  std::ostream* sink_ = nullptr;
  bool retain_ = true;
  std::size_t emitted_ = 0;
};

}  // namespace icsim::net
