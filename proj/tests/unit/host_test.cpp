#include <gtest/gtest.h>

#include "icsim/net/switch.hpp"
#include "icsim/proto/host.hpp"
#include "test_support.hpp"

namespace icsim::proto {
namespace {

using testing::ip;
using testing::mac;

struct Lan {
  net::Simulator sim{1};
  net::Network net{sim};
  net::Switch& sw = net.add<net::Switch>("s1", 1);
  Host& a = net.add<Host>("a", ip(1), mac(1));
  Host& b = net.add<Host>("b", ip(2), mac(2));
  Host& m = net.add<Host>("m", ip(66), mac(66));

  Lan() {
    net.set_describer(describe_frame);
    net.connect({a.id(), 1}, {sw.id(), 1}, {100, 0.0, 0});
    net.connect({b.id(), 1}, {sw.id(), 2}, {100, 0.0, 0});
    net.connect({m.id(), 1}, {sw.id(), 3}, {100, 0.0, 0});
  }
};

TEST(Host, ResolvesThenDelivers) {
  Lan lan;
  std::vector<TransportMessage> got;
  lan.b.listen(7, [&](const TransportMessage& msg) { got.push_back(msg); });
  lan.a.send_message({ip(1), ip(2), 1000, 7, Bytes{1, 2, 3}});
  lan.sim.run_until(10'000);
  ASSERT_EQ(got.size(), 1u);
  EXPECT_EQ(got[0].payload, (Bytes{1, 2, 3}));
  EXPECT_EQ(lan.a.arp_cache().lookup(ip(2)), mac(2));
  // The request taught b (and the bystander) a's binding.
  EXPECT_EQ(lan.b.arp_cache().lookup(ip(1)), mac(1));
  EXPECT_EQ(lan.m.arp_cache().lookup(ip(1)), mac(1));
}

TEST(Host, ConcurrentResolvesShareOneRequest) {
  Lan lan;
  int resolved = 0;
  lan.a.resolve(ip(2), [&](net::MacAddr) { ++resolved; });
  lan.a.resolve(ip(2), [&](net::MacAddr) { ++resolved; });
  lan.sim.run_until(10'000);
  EXPECT_EQ(resolved, 2);
  int requests = 0;
  for (const auto& r : lan.sim.trace().records()) {
    if (r.kind == net::TraceKind::Tx && r.node == "a" && r.detail.contains("arp")) ++requests;
  }
  EXPECT_EQ(requests, 1);
}

TEST(Host, UnsolicitedReplyPoisonsCache) {
  Lan lan;
  lan.a.resolve(ip(2), [](net::MacAddr) {});
  lan.sim.run_until(10'000);
  ASSERT_EQ(lan.a.arp_cache().lookup(ip(2)), mac(2));
  lan.m.send_arp(ArpPacket::reply(mac(66), ip(2), mac(1), ip(1)), mac(1));
  lan.sim.run_until(20'000);
  EXPECT_EQ(lan.a.arp_cache().lookup(ip(2)), mac(66));
}

TEST(Host, ResolveTimesOut) {
  Lan lan;
  int resolved = 0;
  lan.a.resolve(ip(9), [&](net::MacAddr) { ++resolved; });
  lan.sim.run_until(kArpResolveTimeout + 1);
  EXPECT_EQ(resolved, 0);
  EXPECT_EQ(lan.a.resolve_timeouts(), 1u);
  bool traced = false;
  for (const auto& r : lan.sim.trace().records()) {
    traced |= r.kind == net::TraceKind::Drop && r.detail.value("reason", "") == "arp_timeout";
  }
  EXPECT_TRUE(traced);
}

TEST(Host, IgnoresFramesForOtherMacs) {
  Lan lan;
  std::vector<TransportMessage> got;
  lan.b.listen(7, [&](const TransportMessage& msg) { got.push_back(msg); });
  lan.a.send_frame(net::EthernetFrame{mac(1), mac(99), net::EtherType::Transport,
                                      encode_transport({ip(1), ip(2), 1, 7, {}})});
  lan.sim.run_until(10'000);
  EXPECT_TRUE(got.empty());
}

TEST(Host, MisaddressedMessagesGoToInterceptor) {
  Lan lan;
  std::vector<TransportMessage> intercepted;
  lan.m.set_interceptor([&](const TransportMessage& msg) { intercepted.push_back(msg); });
  lan.a.send_frame(net::EthernetFrame{mac(1), mac(66), net::EtherType::Transport,
                                      encode_transport({ip(1), ip(2), 1, 7, {9}})});
  lan.sim.run_until(10'000);
  ASSERT_EQ(intercepted.size(), 1u);
  EXPECT_EQ(intercepted[0].dst_ip, ip(2));
}

TEST(Host, CacheSizeBoundedByDistinctIps) {
  Lan lan;
  for (int round = 0; round < 5; ++round) {
    for (std::uint8_t i = 10; i < 15; ++i) {
      lan.m.send_arp(ArpPacket::reply(mac(66), ip(i), mac(1), ip(1)), mac(1));
    }
  }
  lan.sim.run_until(10'000);
  EXPECT_EQ(lan.a.arp_cache().size(), 5u);
}

TEST(Host, DescribeFrameDecodesHeaders) {
  net::Json d;
  describe_frame(net::EthernetFrame{mac(1), mac(2), net::EtherType::Arp,
                                    encode_arp(ArpPacket::request(mac(1), ip(1), ip(2)))},
                 d);
  EXPECT_EQ(d["arp"]["op"], "request");
  EXPECT_EQ(d["arp"]["target_ip"], "10.0.0.2");
  net::Json bad;
  describe_frame(net::EthernetFrame{mac(1), mac(2), net::EtherType::Arp, {1, 2}}, bad);
  EXPECT_EQ(bad["malformed"], true);
}

}  // namespace
}  // namespace icsim::proto
