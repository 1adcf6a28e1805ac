#pragma once

#include <cstdint>
#include <map>
#include <optional>

#include "icsim/net/types.hpp"
#include "icsim/proto/codec.hpp"

namespace icsim::proto {

using net::Ipv4Addr;
using net::MacAddr;

enum class ArpOp : std::uint16_t { Request = 1, Reply = 2 };

struct ArpPacket {
  ArpOp op = ArpOp::Request;
  MacAddr sender_mac;
  Ipv4Addr sender_ip;
  MacAddr target_mac;  // zero in requests
  Ipv4Addr target_ip;

  static ArpPacket request(MacAddr sender_mac, Ipv4Addr sender_ip, Ipv4Addr target_ip) {
    return {ArpOp::Request, sender_mac, sender_ip, MacAddr::zero(), target_ip};
  }
  static ArpPacket reply(MacAddr sender_mac, Ipv4Addr sender_ip, MacAddr target_mac,
                         Ipv4Addr target_ip) {
    return {ArpOp::Reply, sender_mac, sender_ip, target_mac, target_ip};
  }

  bool operator==(const ArpPacket&) const = default;
};

/// Standard 28-byte Ethernet/IPv4 ARP body.
Bytes encode_arp(const ArpPacket& pkt);
/// Throws MalformedMessage.
ArpPacket decode_arp(ByteView bytes);

/// IP -> MAC map. Entries are overwritten in place; there is no expiry.
class ArpCache {
 public:
  std::optional<MacAddr> lookup(Ipv4Addr ip) const;
  /// Returns true when the entry was created or changed.
  bool update(Ipv4Addr ip, MacAddr mac);
  const std::map<Ipv4Addr, MacAddr>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<Ipv4Addr, MacAddr> entries_;
};

}  // namespace icsim::proto
