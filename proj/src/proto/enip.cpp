#include "icsim/proto/enip.hpp"

#include <array>
#include <utility>

namespace icsim::proto {

namespace {

constexpr std::array<std::pair<EnipType, std::string_view>, 6> kTypeNames{{
    {EnipType::ReadReq, "read_req"},
    {EnipType::ReadResp, "read_resp"},
    {EnipType::WriteReq, "write_req"},
    {EnipType::WriteResp, "write_resp"},
    {EnipType::RegisterSession, "register_session"},
    {EnipType::RegisterResp, "register_resp"},
}};

bool forbids_value(EnipType type) {
  return type == EnipType::ReadReq || type == EnipType::RegisterSession;
}

}  // namespace

std::string_view to_string(EnipType type) {
  for (const auto& [t, name] : kTypeNames) {
    if (t == type) return name;
  }
  return "unknown";
}

std::optional<EnipType> enip_type_from_string(std::string_view name) {
  for (const auto& [t, n] : kTypeNames) {
    if (n == name) return t;
  }
  return std::nullopt;
}

std::string_view to_string(EnipStatus status) {
  switch (status) {
    case EnipStatus::Ok: return "ok";
    case EnipStatus::UnknownTag: return "unknown_tag";
    case EnipStatus::AccessDenied: return "access_denied";
    case EnipStatus::TypeMismatch: return "type_mismatch";
  }
  return "unknown";
}

bool is_valid_utf8(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra;
    std::uint32_t cp;
    if (c < 0x80) { ++i; continue; }
    if ((c & 0xe0) == 0xc0) { extra = 1; cp = c & 0x1f; }
    else if ((c & 0xf0) == 0xe0) { extra = 2; cp = c & 0x0f; }
    else if ((c & 0xf8) == 0xf0) { extra = 3; cp = c & 0x07; }
    else return false;
    if (i + extra >= s.size()) return false;
    for (std::size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xc0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3f);
    }
    // Overlong forms, surrogates and out-of-range code points.
    static constexpr std::uint32_t kMin[] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[extra] || cp > 0x10ffff || (cp >= 0xd800 && cp <= 0xdfff)) return false;
    i += extra + 1;
  }
  return true;
}

Bytes encode_enip(const EnipMessage& msg) {
  if (msg.tag_name.size() > kMaxTagNameBytes) {
    throw MalformedMessage("enip: tag name longer than 255 bytes");
  }
  if (!is_valid_utf8(msg.tag_name)) throw MalformedMessage("enip: tag name is not UTF-8");
  if (forbids_value(msg.type) && msg.value) {
    throw MalformedMessage("enip: " + std::string(to_string(msg.type)) + " carries no value");
  }

  Bytes out;
  out.reserve(kMinEnipBytes + msg.tag_name.size() + 4);
  out.push_back(static_cast<std::uint8_t>(msg.type));
  out.push_back(static_cast<std::uint8_t>(msg.status));
  be::put_u32(out, msg.session_id);
  out.push_back(static_cast<std::uint8_t>(msg.tag_name.size()));
  out.insert(out.end(), msg.tag_name.begin(), msg.tag_name.end());
  out.push_back(static_cast<std::uint8_t>(value_type_of(msg.value)));
  if (msg.value) {
    if (const bool* b = std::get_if<bool>(&*msg.value)) {
      out.push_back(*b ? 1 : 0);
    } else {
      be::put_u32(out, static_cast<std::uint32_t>(std::get<std::int32_t>(*msg.value)));
    }
  }
  return out;
}

EnipMessage decode_enip(ByteView bytes) {
  if (bytes.size() < kMinEnipBytes) throw MalformedMessage("enip: shorter than 8 bytes");
  be::Reader r(bytes, "enip");
  EnipMessage msg;

  const std::uint8_t type = r.u8();
  if (type < 1 || type > 6) throw MalformedMessage("enip: bad msg_type");
  msg.type = static_cast<EnipType>(type);

  const std::uint8_t status = r.u8();
  if (status > 3) throw MalformedMessage("enip: bad status");
  msg.status = static_cast<EnipStatus>(status);

  msg.session_id = r.u32();

  const std::uint8_t name_len = r.u8();
  if (r.remaining() < std::size_t{name_len} + 1) {
    throw MalformedMessage("enip: name_len exceeds message");
  }
  ByteView name = r.take(name_len);
  msg.tag_name.assign(name.begin(), name.end());
  if (!is_valid_utf8(msg.tag_name)) throw MalformedMessage("enip: tag name is not UTF-8");

  switch (r.u8()) {
    case static_cast<std::uint8_t>(ValueType::None):
      break;
    case static_cast<std::uint8_t>(ValueType::Bool): {
      const std::uint8_t b = r.u8();
      if (b > 1) throw MalformedMessage("enip: Bool value must be 0 or 1");
      msg.value = TagData{b == 1};
      break;
    }
    case static_cast<std::uint8_t>(ValueType::Int32):
      msg.value = TagData{static_cast<std::int32_t>(r.u32())};
      break;
    default:
      throw MalformedMessage("enip: bad value_type");
  }
  if (forbids_value(msg.type) && msg.value) {
    throw MalformedMessage("enip: " + std::string(to_string(msg.type)) + " carries no value");
  }
  r.expect_end();
  return msg;
}

}  // namespace icsim::proto
