#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>

#include "icsim/proto/enip.hpp"
#include "icsim/proto/modbus.hpp"

namespace icsim::proto {

enum class TagType : std::uint8_t { Bool, Int32 };

inline TagType type_of(const TagData& value) {
  return std::holds_alternative<bool>(value) ? TagType::Bool : TagType::Int32;
}

/// A named data point with CIP-style metadata: type and access control.
struct TagValue {
  std::string name;
  TagType type = TagType::Int32;
  TagData value = std::int32_t{0};
  bool writable = false;
};

/// Tag database of a server. Types are fixed at declaration.
class TagTable {
 public:
  using WriteHook = std::function<void(const TagValue&)>;

  /// Throws std::invalid_argument on a duplicate name.
  void declare(std::string name, TagData initial, bool writable);

  const TagValue* find(std::string_view name) const;

  /// Network-facing write: honors the writable flag and the tag type.
  EnipStatus write(std::string_view name, const TagData& value);

  /// Device-side update (scan cycle); ignores the writable flag.
  /// Throws std::invalid_argument for unknown tags or type changes.
  void set(std::string_view name, const TagData& value);

  /// Called after every successful network write.
  void on_write(WriteHook hook) { write_hook_ = std::move(hook); }

  const std::map<std::string, TagValue, std::less<>>& tags() const { return tags_; }

 private:
  std::map<std::string, TagValue, std::less<>> tags_;
  WriteHook write_hook_;
};

/// Session-checked ENIP-lite request handler over a TagTable.
class EnipServer {
 public:
  explicit EnipServer(TagTable& tags) : tags_(tags) {}

  /// Returns the response, or nullopt for messages that are not requests.
  /// Requests on unregistered sessions are answered with AccessDenied.
  std::optional<EnipMessage> handle(const EnipMessage& request);

  bool session_valid(std::uint32_t id) const { return sessions_.contains(id); }

 private:
  TagTable& tags_;
  std::set<std::uint32_t> sessions_;
  std::uint32_t next_session_ = 1;
};

/// Modbus view of the same TagTable: Bool tags as coils, Int32 tags as
/// holding registers (low 16 bits).
class ModbusServer {
 public:
  ModbusServer(TagTable& tags, std::uint8_t unit_id) : tags_(tags), unit_id_(unit_id) {}

  /// Throws std::invalid_argument if the address is taken or the tag is missing.
  void map_coil(std::uint16_t address, std::string tag);
  void map_register(std::uint16_t address, std::string tag);

  /// Returns nullopt for requests addressed to another unit.
  std::optional<ModbusAdu> handle(const ModbusAdu& request);

 private:
  ModbusAdu exception(const ModbusAdu& request, std::uint8_t code) const;

  TagTable& tags_;
  std::uint8_t unit_id_;
  std::map<std::uint16_t, std::string> coils_;
  std::map<std::uint16_t, std::string> registers_;
};

}  // namespace icsim::proto
