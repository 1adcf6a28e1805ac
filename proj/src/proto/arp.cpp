#include "icsim/proto/arp.hpp"

#include <algorithm>

namespace icsim::proto {

namespace {

constexpr std::uint16_t kHtypeEthernet = 1;
constexpr std::uint16_t kPtypeIpv4 = 0x0800;

}  // namespace

Bytes encode_arp(const ArpPacket& pkt) {
  Bytes out;
  out.reserve(28);
  be::put_u16(out, kHtypeEthernet);
  be::put_u16(out, kPtypeIpv4);
  out.push_back(6);
  out.push_back(4);
  be::put_u16(out, static_cast<std::uint16_t>(pkt.op));
  out.insert(out.end(), pkt.sender_mac.bytes.begin(), pkt.sender_mac.bytes.end());
  be::put_u32(out, pkt.sender_ip.value);
  out.insert(out.end(), pkt.target_mac.bytes.begin(), pkt.target_mac.bytes.end());
  be::put_u32(out, pkt.target_ip.value);
  return out;
}

ArpPacket decode_arp(ByteView bytes) {
  be::Reader r(bytes, "arp");
  if (r.u16() != kHtypeEthernet || r.u16() != kPtypeIpv4 || r.u8() != 6 || r.u8() != 4) {
    throw MalformedMessage("arp: unsupported hardware/protocol type");
  }
  ArpPacket pkt;
  const std::uint16_t op = r.u16();
  if (op != 1 && op != 2) throw MalformedMessage("arp: bad opcode");
  pkt.op = static_cast<ArpOp>(op);
  auto mac = [&r] {
    MacAddr m;
    ByteView b = r.take(6);
    std::copy(b.begin(), b.end(), m.bytes.begin());
    return m;
  };
  pkt.sender_mac = mac();
  pkt.sender_ip = Ipv4Addr{r.u32()};
  pkt.target_mac = mac();
  pkt.target_ip = Ipv4Addr{r.u32()};
  r.expect_end();
  return pkt;
}

std::optional<MacAddr> ArpCache::lookup(Ipv4Addr ip) const {
  auto it = entries_.find(ip);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool ArpCache::update(Ipv4Addr ip, MacAddr mac) {
  auto [it, inserted] = entries_.try_emplace(ip, mac);
  if (inserted) return true;
  if (it->second == mac) return false;
  it->second = mac;
  return true;
}

}  // namespace icsim::proto
