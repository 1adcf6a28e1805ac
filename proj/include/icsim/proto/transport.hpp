#pragma once

#include <cstdint>

#include "icsim/net/types.hpp"
#include "icsim/proto/codec.hpp"

namespace icsim::proto {

using net::Ipv4Addr;

inline constexpr std::size_t kMaxTransportPayload = 1400;
inline constexpr std::uint16_t kEnipPort = 44818;
inline constexpr std::uint16_t kModbusPort = 502;

/// One message per frame; delivery is whatever the links give.
struct TransportMessage {
  Ipv4Addr src_ip;
  Ipv4Addr dst_ip;
  std::uint16_t src_port = 0;
  std::uint16_t dst_port = 0;
  Bytes payload;

  bool operator==(const TransportMessage&) const = default;
};

/// src_ip u32 | dst_ip u32 | src_port u16 | dst_port u16 | len u16 | payload.
/// Throws MalformedMessage if the payload exceeds kMaxTransportPayload.
Bytes encode_transport(const TransportMessage& msg);
TransportMessage decode_transport(ByteView bytes);

}  // namespace icsim::proto
