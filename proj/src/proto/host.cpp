#include "icsim/proto/host.hpp"

namespace icsim::proto {

using net::Json;
using net::TraceKind;

Host::Host(net::Network& network, std::string name, Ipv4Addr ip, MacAddr mac)
    : Node(network, std::move(name)), ip_(ip), mac_(mac) {}

std::optional<MacAddr> Host::resolve(Ipv4Addr ip, ResolveCallback on_resolved) {
  if (auto mac = cache_.lookup(ip)) {
    on_resolved(*mac);
    return mac;
  }
  auto [it, fresh] = pending_.try_emplace(ip);
  it->second.waiters.push_back(std::move(on_resolved));
  if (fresh) {
    const std::uint64_t generation = next_generation_++;
    it->second.generation = generation;
    send_arp(ArpPacket::request(mac_, ip_, ip), MacAddr::broadcast());
    sim().schedule_in(kArpResolveTimeout, [this, ip, generation] { expire(ip, generation); });
  }
  return std::nullopt;
}

void Host::expire(Ipv4Addr ip, std::uint64_t generation) {
  auto it = pending_.find(ip);
  if (it == pending_.end() || it->second.generation != generation) return;
  ++resolve_timeouts_;
  Json d;
  d["reason"] = "arp_timeout";
  d["ip"] = ip.to_string();
  d["queued"] = it->second.waiters.size();
  pending_.erase(it);
  sim().emit(TraceKind::Drop, name(), std::move(d));
}

std::optional<ArpPacket> Host::handle_arp(const ArpPacket& pkt) {
  if (pkt.sender_ip != ip_ && pkt.sender_ip.value != 0 && !pkt.sender_mac.is_broadcast()) {
    const auto previous = cache_.lookup(pkt.sender_ip);
    if (cache_.update(pkt.sender_ip, pkt.sender_mac)) {
      Json d;
      d["event"] = "arp_cache";
      d["ip"] = pkt.sender_ip.to_string();
      d["mac"] = pkt.sender_mac.to_string();
      d["previous"] = previous ? Json(previous->to_string()) : Json(nullptr);
      sim().emit(TraceKind::Device, name(), std::move(d));
    }
    auto it = pending_.find(pkt.sender_ip);
    if (it != pending_.end()) {
      std::vector<ResolveCallback> waiters = std::move(it->second.waiters);
      pending_.erase(it);
      for (auto& waiter : waiters) waiter(pkt.sender_mac);
    }
  }
  if (pkt.op == ArpOp::Request && pkt.target_ip == ip_) {
    return ArpPacket::reply(mac_, ip_, pkt.sender_mac, pkt.sender_ip);
  }
  return std::nullopt;
}

void Host::send_message(TransportMessage msg) {
  const Ipv4Addr dst = msg.dst_ip;
  resolve(dst, [this, msg = std::move(msg)](MacAddr mac) {
    send_frame(EthernetFrame{mac_, mac, net::EtherType::Transport, encode_transport(msg)});
  });
}

void Host::send_arp(const ArpPacket& pkt, MacAddr dst) {
  send_frame(EthernetFrame{mac_, dst, net::EtherType::Arp, encode_arp(pkt)});
}

void Host::send_frame(EthernetFrame frame) {
  network().transmit(id(), kPort, std::move(frame));
}

void Host::listen(std::uint16_t port, MessageHandler handler) {
  listeners_[port] = std::move(handler);
}

void Host::receive(const EthernetFrame& frame, PortId /*in_port*/) {
  if (frame.dst != mac_ && !frame.dst.is_broadcast()) return;

  if (frame.ethertype == net::EtherType::Arp) {
    ArpPacket pkt;
    try {
      pkt = decode_arp(frame.payload);
    } catch (const MalformedMessage&) {
      return;
    }
    if (auto reply = handle_arp(pkt)) send_arp(*reply, pkt.sender_mac);
    return;
  }

  TransportMessage msg;
  try {
    msg = decode_transport(frame.payload);
  } catch (const MalformedMessage&) {
    return;
  }
  if (msg.dst_ip != ip_) {
    if (interceptor_) interceptor_(msg);
    return;
  }
  auto it = listeners_.find(msg.dst_port);
  if (it != listeners_.end()) it->second(msg);
}

void describe_frame(const EthernetFrame& frame, net::Json& out) {
  try {
    if (frame.ethertype == net::EtherType::Arp) {
      const ArpPacket pkt = decode_arp(frame.payload);
      Json arp;
      arp["op"] = pkt.op == ArpOp::Request ? "request" : "reply";
      arp["sender_mac"] = pkt.sender_mac.to_string();
      arp["sender_ip"] = pkt.sender_ip.to_string();
      arp["target_mac"] = pkt.target_mac.to_string();
      arp["target_ip"] = pkt.target_ip.to_string();
      out["arp"] = std::move(arp);
    } else {
      const TransportMessage msg = decode_transport(frame.payload);
      Json t;
      t["src_ip"] = msg.src_ip.to_string();
      t["dst_ip"] = msg.dst_ip.to_string();
      t["src_port"] = msg.src_port;
      t["dst_port"] = msg.dst_port;
      t["len"] = msg.payload.size();
      out["transport"] = std::move(t);
    }
  } catch (const MalformedMessage&) {
    out["malformed"] = true;
  }
}

}  // namespace icsim::proto
