#include <gtest/gtest.h>

#include "icsim/net/switch.hpp"
#include "test_support.hpp"

namespace icsim::net {
namespace {

using testing::frame;
using testing::mac;
using testing::match;
using testing::Sink;

/// Switch with three sinks on ports 1..3.
struct Star {
  Simulator sim{1};
  Network net{sim};
  Switch& sw = net.add<Switch>("s1", 1);
  Sink& h1 = net.add<Sink>("h1");
  Sink& h2 = net.add<Sink>("h2");
  Sink& h3 = net.add<Sink>("h3");

  Star() {
    net.connect({h1.id(), 1}, {sw.id(), 1}, {10, 0.0, 0});
    net.connect({h2.id(), 1}, {sw.id(), 2}, {10, 0.0, 0});
    net.connect({h3.id(), 1}, {sw.id(), 3}, {10, 0.0, 0});
  }
  void send(Sink& from, EthernetFrame f) { net.transmit(from.id(), 1, std::move(f)); }
};

FlowRule rule(std::uint16_t prio, FlowMatch m, FlowAction a) { return FlowRule{prio, m, a, true}; }

TEST(FlowMatch, EmptyMatchesEverything) {
  FlowMatch m;
  EXPECT_TRUE(m.matches(frame(mac(1), mac(2)), 7));
  m.in_port = 3;
  EXPECT_FALSE(m.matches(frame(mac(1), mac(2)), 7));
  EXPECT_TRUE(m.matches(frame(mac(1), mac(2)), 3));
  m.eth_src = mac(9);
  EXPECT_FALSE(m.matches(frame(mac(1), mac(2)), 3));
}

TEST(FlowTable, HigherPriorityWinsTiesKeepInsertionOrder) {
  FlowTable t;
  t.install(rule(5, {}, FlowAction::forward(1)));
  t.install(rule(10, {}, FlowAction::drop()));
  t.install(rule(10, {}, FlowAction::forward(2)));
  EXPECT_EQ(t.lookup(frame(mac(1), mac(2)), 1)->action, FlowAction::drop());
  ASSERT_EQ(t.size(), 3u);
  EXPECT_EQ(t.rules()[1].action, FlowAction::forward(2));
  EXPECT_EQ(t.rules()[2].priority, 5);
}

TEST(FlowTable, InstallIsIdempotent) {
  FlowTable t;
  const FlowRule r = rule(7, match(2), FlowAction::drop());
  EXPECT_TRUE(t.install(r));
  EXPECT_FALSE(t.install(r));
  EXPECT_EQ(t.size(), 1u);
}

TEST(Switch, LearningFloodsUnknownThenForwards) {
  Star s;
  EXPECT_EQ(s.sw.ingress(frame(mac(1), mac(2)), 1), std::vector<FlowAction>{FlowAction::flood()});
  EXPECT_EQ(s.sw.ingress(frame(mac(2), mac(1)), 2), std::vector<FlowAction>{FlowAction::forward(1)});
  EXPECT_EQ(s.sw.ingress(frame(mac(1), MacAddr::broadcast()), 1),
            std::vector<FlowAction>{FlowAction::flood()});
  // Destination on the ingress port is filtered.
  EXPECT_TRUE(s.sw.ingress(frame(mac(2), mac(1)), 1).empty());
}

TEST(Switch, FloodNeverEchoesToIngress) {
  Star s;
  s.send(s.h1, frame(mac(1), MacAddr::broadcast()));
  s.sim.run_until(1000);
  EXPECT_TRUE(s.h1.frames.empty());
  EXPECT_EQ(s.h2.frames.size(), 1u);
  EXPECT_EQ(s.h3.frames.size(), 1u);
}

TEST(Switch, DropRuleBeatsLowerForward) {
  Star s;
  s.sw.install_rule(rule(10, match(3, mac(3)), FlowAction::drop()));
  s.sw.install_rule(rule(5, {}, FlowAction::forward(1)));
  s.send(s.h3, frame(mac(3), mac(1)));
  s.send(s.h2, frame(mac(2), mac(1)));
  s.sim.run_until(1000);
  ASSERT_EQ(s.h1.frames.size(), 1u);
  EXPECT_EQ(s.h1.frames[0].first.src, mac(2));
  EXPECT_EQ(s.net.counters().dropped_rule, 1u);
}

TEST(Switch, FlowTableConsultedBeforeMacTable) {
  Star s;
  s.sw.ingress(frame(mac(2), mac(9)), 2);  // learn mac(2) on port 2
  s.sw.install_rule(rule(1, match({}, {}, mac(2)), FlowAction::forward(3)));
  EXPECT_EQ(s.sw.ingress(frame(mac(1), mac(2)), 1), std::vector<FlowAction>{FlowAction::forward(3)});
}

TEST(Switch, MissGoesToControllerWithoutForwarding) {
  Star s;
  std::vector<PacketIn> seen;
  s.sw.attach_controller([&](const PacketIn& p) { seen.push_back(p); });
  s.send(s.h1, frame(mac(1), MacAddr::broadcast()));
  s.sim.run_until(1000);
  ASSERT_EQ(seen.size(), 1u);
  EXPECT_EQ(seen[0].dpid, 1u);
  EXPECT_EQ(seen[0].in_port, 1);
  EXPECT_TRUE(s.h2.frames.empty());
  EXPECT_TRUE(s.sw.mac_table().empty());

  s.sw.packet_out(seen[0].frame, seen[0].in_port, FlowAction::flood());
  s.sim.run_until(2000);
  EXPECT_EQ(s.h2.frames.size(), 1u);
  EXPECT_EQ(s.h3.frames.size(), 1u);
  EXPECT_TRUE(s.h1.frames.empty());
}

TEST(Switch, ControllerOriginatedFloodReachesAllPorts) {
  Star s;
  s.sw.packet_out(frame(mac(9), MacAddr::broadcast()), 0, FlowAction::flood());
  s.sim.run_until(1000);
  EXPECT_EQ(s.h1.frames.size() + s.h2.frames.size() + s.h3.frames.size(), 3u);
}

TEST(Switch, FlowModTraceOnlyForNewRules) {
  Star s;
  const FlowRule r = rule(9, match({}, mac(3)), FlowAction::drop());
  s.sw.install_rule(r);
  s.sw.install_rule(r);
  int mods = 0;
  for (const auto& rec : s.sim.trace().records()) mods += rec.kind == TraceKind::FlowMod;
  EXPECT_EQ(mods, 1);
}

}  // namespace
}  // namespace icsim::net
