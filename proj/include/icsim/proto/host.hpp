#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "icsim/net/network.hpp"
#include "icsim/proto/arp.hpp"
#include "icsim/proto/transport.hpp"

namespace icsim::proto {

using net::EthernetFrame;
using net::Micros;
using net::PortId;

inline constexpr Micros kArpResolveTimeout = net::kSecond;

/// End host with one interface: ARP resolution and caching plus
/// single-frame transport messaging.
///
/// The cache accepts sender_ip -> sender_mac from every Request and Reply it
/// sees, solicited or not. That permissiveness is the poisoning surface.
class Host : public net::Node {
 public:
  using MessageHandler = std::function<void(const TransportMessage&)>;
  using ResolveCallback = std::function<void(MacAddr)>;

  Host(net::Network& network, std::string name, Ipv4Addr ip, MacAddr mac);

  Ipv4Addr ip() const { return ip_; }
  MacAddr mac() const { return mac_; }
  static constexpr PortId kPort = 1;

  const ArpCache& arp_cache() const { return cache_; }

  /// On a cache hit runs `on_resolved` immediately and returns the MAC.
  /// On a miss queues the callback, broadcasts a Request unless one is
  /// already outstanding for `ip`, and returns nullopt. Waiters are dropped
  /// when no Reply arrives within kArpResolveTimeout.
  std::optional<MacAddr> resolve(Ipv4Addr ip, ResolveCallback on_resolved);

  /// Applies an incoming ARP packet to the cache and returns the Reply this
  /// host owes, if any. Does not transmit.
  std::optional<ArpPacket> handle_arp(const ArpPacket& pkt);

  /// Resolves msg.dst_ip and transmits. msg.src_ip is sent as given.
  void send_message(TransportMessage msg);
  void send_arp(const ArpPacket& pkt, MacAddr dst);
  void send_frame(EthernetFrame frame);

  void listen(std::uint16_t port, MessageHandler handler);
  /// Receives messages that reach this MAC but carry another host's dst_ip.
  /// Without an interceptor such messages are discarded.
  void set_interceptor(MessageHandler handler) { interceptor_ = std::move(handler); }

  std::uint16_t allocate_port() { return next_ephemeral_++; }

  std::uint64_t resolve_timeouts() const { return resolve_timeouts_; }

  void receive(const EthernetFrame& frame, PortId in_port) override;

 private:
  struct Pending {
    std::vector<ResolveCallback> waiters;
    std::uint64_t generation = 0;
  };

  void expire(Ipv4Addr ip, std::uint64_t generation);

  Ipv4Addr ip_;
  MacAddr mac_;
  ArpCache cache_;
  std::map<Ipv4Addr, Pending> pending_;
  std::uint64_t next_generation_ = 0;
  std::map<std::uint16_t, MessageHandler> listeners_;
  MessageHandler interceptor_;
  std::uint16_t next_ephemeral_ = 49152;
  std::uint64_t resolve_timeouts_ = 0;
};

/// Adds decoded ARP and transport headers to trace frame descriptions.
void describe_frame(const EthernetFrame& frame, net::Json& out);

}  // namespace icsim::proto
