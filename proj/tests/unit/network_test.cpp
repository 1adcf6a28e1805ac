#include <gtest/gtest.h>

#include <cmath>

#include "icsim/net/network.hpp"
#include "test_support.hpp"

namespace icsim::net {
namespace {

using testing::frame;
using testing::mac;
using testing::Sink;

TEST(Frame, SizeIsPaddedToMinimum) {
  EXPECT_EQ(frame(mac(1), mac(2), 0).size_bytes(), 64u);
  EXPECT_EQ(frame(mac(1), mac(2), 50).size_bytes(), 64u);
  EXPECT_EQ(frame(mac(1), mac(2), 51).size_bytes(), 65u);
  EXPECT_EQ(frame(mac(1), mac(2), 1400).size_bytes(), 1414u);
}

TEST(Link, TransitTimeIsDelayPlusSerialization) {
  Link l{{0, 1}, {1, 1}, {500, 0.0, 100'000'000}};
  // 64 bytes at 100 Mbit/s: 512 bits / 100 bits per us = 5.12 -> 6 us.
  EXPECT_EQ(l.transit_time(64), 506u);
  // 1250 bytes: exactly 100 us, no rounding.
  EXPECT_EQ(l.transit_time(1250), 600u);
  l.params.bandwidth_bps = 0;
  EXPECT_EQ(l.transit_time(1500), 500u);
}

TEST(Link, OtherEndAndUnattached) {
  Link l{{0, 1}, {1, 3}, {}};
  EXPECT_EQ(l.other({0, 1}), (Endpoint{1, 3}));
  EXPECT_EQ(l.other({1, 3}), (Endpoint{0, 1}));
  EXPECT_THROW(l.other({2, 1}), PortUnattached);
}

TEST(LinkParams, RejectsBadLoss) {
  EXPECT_THROW((LinkParams{0, -0.1, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((LinkParams{0, 1.5, 0}.validate()), std::invalid_argument);
  EXPECT_THROW((LinkParams{0, std::nan(""), 0}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((LinkParams{0, 1.0, 0}.validate()));
}

TEST(Network, DeliversAfterTransitTime) {
  Simulator sim(1);
  Network net(sim);
  auto& a = net.add<Sink>("a");
  auto& b = net.add<Sink>("b");
  net.connect({a.id(), 1}, {b.id(), 1}, {500, 0.0, 100'000'000});
  sim.schedule(10, [&] { net.transmit(a.id(), 1, frame(mac(1), mac(2))); });
  sim.run_until(10'000);
  ASSERT_EQ(b.frames.size(), 1u);
  EXPECT_EQ(b.times[0], 10u + 506u);
  EXPECT_EQ(b.frames[0].second, 1);
  EXPECT_TRUE(a.frames.empty());
}

TEST(Network, ConnectRejectsReusedPortsAndSelfLinks) {
  Simulator sim(1);
  Network net(sim);
  auto& a = net.add<Sink>("a");
  auto& b = net.add<Sink>("b");
  auto& c = net.add<Sink>("c");
  net.connect({a.id(), 1}, {b.id(), 1}, {});
  EXPECT_THROW(net.connect({a.id(), 1}, {c.id(), 1}, {}), std::invalid_argument);
  EXPECT_THROW(net.connect({c.id(), 1}, {c.id(), 1}, {}), std::invalid_argument);
  EXPECT_THROW(net.connect({c.id(), 1}, {99, 1}, {}), std::invalid_argument);
  EXPECT_THROW(net.add<Sink>("a"), std::invalid_argument);
}

TEST(Network, UnattachedPortDeadLetters) {
  Simulator sim(1);
  Network net(sim);
  auto& a = net.add<Sink>("a");
  EXPECT_EQ(net.transmit(a.id(), 4, frame(mac(1), mac(2))), TxOutcome::DeadLettered);
  EXPECT_EQ(net.counters().tx, 1u);
  EXPECT_EQ(net.counters().dead_lettered, 1u);
  ASSERT_EQ(sim.trace().records().size(), 2u);
  EXPECT_EQ(sim.trace().records()[1].detail["reason"], "unattached");
}

TEST(Network, LossMatchesReplayedRngOracle) {
  const std::uint64_t seed = 2024;
  const double loss = 0.3;
  const int n = 2000;

  Simulator sim(seed);
  Network net(sim);
  auto& a = net.add<Sink>("a");
  auto& b = net.add<Sink>("b");
  net.connect({a.id(), 1}, {b.id(), 1}, {100, loss, 0});
  for (int i = 0; i < n; ++i) {
    sim.schedule(static_cast<Micros>(i), [&, i] {
      net.transmit(a.id(), 1, frame(mac(1), mac(2), static_cast<std::size_t>(i % 100)));
    });
  }
  sim.run_until(n + 1000);

  // Independent replay: one bernoulli draw per transmission, in event order.
  DeterministicRng oracle(seed);
  std::vector<std::size_t> expected_sizes;
  for (int i = 0; i < n; ++i) {
    if (!(oracle.uniform01() < loss)) {
      expected_sizes.push_back(frame(mac(1), mac(2), static_cast<std::size_t>(i % 100)).payload.size());
    }
  }
  ASSERT_EQ(b.frames.size(), expected_sizes.size());
  for (std::size_t i = 0; i < expected_sizes.size(); ++i) {
    EXPECT_EQ(b.frames[i].first.payload.size(), expected_sizes[i]);
  }
  const auto& c = net.counters();
  EXPECT_EQ(c.tx, static_cast<std::uint64_t>(n));
  EXPECT_EQ(c.tx, c.rx + c.dropped_loss + c.dead_lettered);
}

TEST(Network, LosslessLinksDrawNothing) {
  Simulator sim(1);
  Network net(sim);
  auto& a = net.add<Sink>("a");
  auto& b = net.add<Sink>("b");
  net.connect({a.id(), 1}, {b.id(), 1}, {1, 0.0, 0});
  for (int i = 0; i < 10; ++i) net.transmit(a.id(), 1, frame(mac(1), mac(2)));
  sim.run_until(10);
  EXPECT_EQ(sim.rng().draws(), 0u);
  EXPECT_EQ(b.frames.size(), 10u);
}

TEST(Network, TraceRecordsAreTimeOrdered) {
  Simulator sim(3);
  Network net(sim);
  auto& a = net.add<Sink>("a");
  auto& b = net.add<Sink>("b");
  net.connect({a.id(), 1}, {b.id(), 1}, {250, 0.1, 10'000'000});
  for (int i = 0; i < 300; ++i) {
    sim.schedule(static_cast<Micros>(i * 7 % 400), [&] { net.transmit(a.id(), 1, frame(mac(1), mac(2))); });
  }
  sim.run_until(5000);
  const auto& recs = sim.trace().records();
  for (std::size_t i = 1; i < recs.size(); ++i) EXPECT_LE(recs[i - 1].t_us, recs[i].t_us);
}

}  // namespace
}  // namespace icsim::net
