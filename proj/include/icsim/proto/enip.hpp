#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "icsim/proto/codec.hpp"

namespace icsim::proto {

// ENIP-lite: the register-session and tag read/write subset of EtherNet/IP,
// with a compact fixed layout instead of the CIP encapsulation.
//
//   msg_type u8 | status u8 | session_id u32 BE | name_len u8 | name |
//   value_type u8 | value (Bool: 1 byte, Int32: 4 bytes BE, None: absent)

enum class EnipType : std::uint8_t {
  ReadReq = 1,
  ReadResp = 2,
  WriteReq = 3,
  WriteResp = 4,
  RegisterSession = 5,
  RegisterResp = 6,
};

enum class EnipStatus : std::uint8_t {
  Ok = 0,
  UnknownTag = 1,
  AccessDenied = 2,
  TypeMismatch = 3,
};

enum class ValueType : std::uint8_t { None = 0, Bool = 1, Int32 = 2 };

using TagData = std::variant<bool, std::int32_t>;

inline ValueType value_type_of(const std::optional<TagData>& v) {
  if (!v) return ValueType::None;
  return std::holds_alternative<bool>(*v) ? ValueType::Bool : ValueType::Int32;
}

std::string_view to_string(EnipType type);
std::string_view to_string(EnipStatus status);
/// Inverse of to_string(EnipType); nullopt for unknown names.
std::optional<EnipType> enip_type_from_string(std::string_view name);

inline constexpr std::size_t kMaxTagNameBytes = 255;
inline constexpr std::size_t kMinEnipBytes = 8;

struct EnipMessage {
  EnipType type = EnipType::ReadReq;
  EnipStatus status = EnipStatus::Ok;
  std::uint32_t session_id = 0;
  std::string tag_name;
  std::optional<TagData> value;

  bool operator==(const EnipMessage&) const = default;
};

/// Throws MalformedMessage when the message breaks a layout invariant
/// (name too long or not UTF-8, value on ReadReq/RegisterSession).
Bytes encode_enip(const EnipMessage& msg);
/// Throws MalformedMessage on truncation, trailing bytes, unknown enum
/// values, a bad Bool byte or a name that is not UTF-8.
EnipMessage decode_enip(ByteView bytes);

bool is_valid_utf8(std::string_view s);

}  // namespace icsim::proto
