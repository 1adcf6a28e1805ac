#include "icsim/proto/transport.hpp"

namespace icsim::proto {

Bytes encode_transport(const TransportMessage& msg) {
  if (msg.payload.size() > kMaxTransportPayload) {
    throw MalformedMessage("transport: payload exceeds " +
                           std::to_string(kMaxTransportPayload) + " bytes");
  }
  Bytes out;
  out.reserve(14 + msg.payload.size());
  be::put_u32(out, msg.src_ip.value);
  be::put_u32(out, msg.dst_ip.value);
  be::put_u16(out, msg.src_port);
  be::put_u16(out, msg.dst_port);
  be::put_u16(out, static_cast<std::uint16_t>(msg.payload.size()));
  out.insert(out.end(), msg.payload.begin(), msg.payload.end());
  return out;
}

TransportMessage decode_transport(ByteView bytes) {
  be::Reader r(bytes, "transport");
  TransportMessage msg;
  msg.src_ip = Ipv4Addr{r.u32()};
  msg.dst_ip = Ipv4Addr{r.u32()};
  msg.src_port = r.u16();
  msg.dst_port = r.u16();
  const std::uint16_t len = r.u16();
  if (len > kMaxTransportPayload) throw MalformedMessage("transport: oversized payload");
  ByteView body = r.take(len);
  msg.payload.assign(body.begin(), body.end());
  r.expect_end();
  return msg;
}

}  // namespace icsim::proto
