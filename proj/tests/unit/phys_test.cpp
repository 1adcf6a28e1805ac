#include <gtest/gtest.h>

#include "icsim/net/rng.hpp"
#include "icsim/phys/store.hpp"
#include "icsim/phys/tank.hpp"

namespace icsim::phys {
namespace {

PhysStore tank_store(bool valve, std::int64_t level) {
  PhysStore s;
  s.declare("valve", valve);
  s.declare("level", level);
  return s;
}

TEST(PhysStore, ReadWriteAndRevision) {
  PhysStore s = tank_store(false, 5);
  EXPECT_EQ(s.revision(), 0u);
  EXPECT_EQ(s.read("level"), PhysValue{std::int64_t{5}});
  EXPECT_EQ(s.write("level", std::int64_t{6}), 1u);
  EXPECT_EQ(s.write("valve", true), 2u);
  EXPECT_EQ(s.read("valve"), PhysValue{true});
  EXPECT_THROW(s.read("flow"), UnknownKey);
  EXPECT_THROW(s.write("flow", true), UnknownKey);
  EXPECT_THROW(s.write("level", 1.5), KindMismatch);
  EXPECT_THROW(s.write("valve", std::int64_t{1}), KindMismatch);
  EXPECT_EQ(s.revision(), 2u);
}

TEST(PhysStore, DeclareRejectsDuplicatesAndReserved) {
  PhysStore s;
  s.declare("a", 1.0);
  EXPECT_THROW(s.declare("a", 2.0), std::invalid_argument);
  EXPECT_THROW(s.declare("_revision", 2.0), std::invalid_argument);
}

TEST(PhysStore, ObserverSeesEachWrite) {
  PhysStore s = tank_store(false, 0);
  std::vector<std::uint64_t> revs;
  s.set_observer([&](const std::string& key, const PhysValue&, std::uint64_t rev) {
    EXPECT_EQ(key, "level");
    revs.push_back(rev);
  });
  s.write("level", std::int64_t{1});
  s.write("level", std::int64_t{1});
  EXPECT_EQ(revs, (std::vector<std::uint64_t>{1, 2}));
}

TEST(Snapshot, EmptyStore) {
  EXPECT_EQ(snapshot(PhysStore{}).dump(), "{\"_revision\":0}");
}

TEST(Snapshot, LayoutAndRoundTrip) {
  PhysStore s = tank_store(true, -3);
  s.declare("temp", 21.5);
  s.write("level", std::int64_t{-4});
  EXPECT_EQ(snapshot(s).dump(),
            "{\"_revision\":1,\"level\":{\"kind\":\"int64\",\"value\":-4},"
            "\"temp\":{\"kind\":\"float64\",\"value\":21.5},"
            "\"valve\":{\"kind\":\"bool\",\"value\":true}}");
  const PhysStore back = restore(nlohmann::json::parse(snapshot(s).dump()));
  EXPECT_EQ(back, s);
  EXPECT_EQ(snapshot(back).dump(), snapshot(s).dump());
}

TEST(Snapshot, RandomStoresRoundTrip) {
  net::DeterministicRng r(8);
  for (int i = 0; i < 200; ++i) {
    PhysStore s;
    const auto n = r.uniform_int(0, 6);
    for (int k = 0; k < n; ++k) {
      const std::string key = "k" + std::to_string(k);
      switch (r.uniform_int(0, 2)) {
        case 0: s.declare(key, r.bernoulli(0.5)); break;
        case 1: s.declare(key, static_cast<std::int64_t>(r.next_u64())); break;
        default: s.declare(key, r.uniform01() * 1e6 - 5e5); break;
      }
    }
    for (int w = 0; w < r.uniform_int(0, 3) && n > 0; ++w) {
      const std::string key = "k" + std::to_string(r.uniform_int(0, n - 1));
      s.write(key, s.read(key));
    }
    ASSERT_EQ(restore(nlohmann::json::parse(snapshot(s).dump())), s) << i;
  }
}

TEST(Snapshot, RejectsMalformed) {
  using nlohmann::json;
  EXPECT_THROW(restore(json::array()), MalformedSnapshot);
  EXPECT_THROW(restore(json::object()), MalformedSnapshot);
  EXPECT_THROW(restore(json{{"_revision", -1}}), MalformedSnapshot);
  EXPECT_THROW(restore(json{{"_revision", 0}, {"a", 1}}), MalformedSnapshot);
  EXPECT_THROW(restore(json{{"_revision", 0}, {"a", {{"kind", "bool"}, {"value", 1}}}}),
               MalformedSnapshot);
  EXPECT_THROW(restore(json{{"_revision", 0}, {"a", {{"kind", "int64"}, {"value", 1.5}}}}),
               MalformedSnapshot);
  EXPECT_THROW(restore(json{{"_revision", 0}, {"a", {{"kind", "text"}, {"value", "x"}}}}),
               MalformedSnapshot);
}

TEST(Tank, StepFillsOnlyWhenOpenAndDoesNotClamp) {
  TankParams p;
  p.max_level = 20;
  PhysStore s = tank_store(false, 15);
  EXPECT_EQ(tank_step(p, s), 15);
  EXPECT_EQ(s.revision(), 0u);
  s.write("valve", true);
  EXPECT_EQ(tank_step(p, s), 25);
  EXPECT_EQ(tank_step(p, s), 35);
  EXPECT_EQ(s.read("level"), PhysValue{std::int64_t{35}});
}

TEST(Tank, ParamsValidate) {
  TankParams p;
  p.inflow_per_tick = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = TankParams{};
  p.tick = 0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Tank, ProcessChecksKeyKinds) {
  net::Simulator sim(1);
  PhysStore s;
  s.declare("valve", std::int64_t{0});
  s.declare("level", std::int64_t{0});
  EXPECT_THROW(TankProcess(sim, s, TankParams{}), KindMismatch);
  PhysStore missing;
  EXPECT_THROW(TankProcess(sim, missing, TankParams{}), UnknownKey);
}

TEST(Tank, ConstantOpenValveMatchesClosedForm) {
  net::Simulator sim(1);
  PhysStore s = tank_store(true, 500);
  TankParams p;
  TankProcess tank(sim, s, p);
  tank.start();
  sim.run_until(60 * net::kSecond);
  // Ticks at k * tick for k = 1..600.
  const std::int64_t ticks = static_cast<std::int64_t>(60 * net::kSecond / p.tick);
  EXPECT_EQ(tank.steps(), static_cast<std::uint64_t>(ticks));
  EXPECT_EQ(s.read("level"), PhysValue{500 + p.inflow_per_tick * ticks});
}

TEST(Tank, RandomValveScheduleMatchesTickReplay) {
  net::DeterministicRng r(21);
  for (int trial = 0; trial < 20; ++trial) {
    net::Simulator sim(1);
    PhysStore s = tank_store(false, 0);
    TankParams p;
    p.inflow_per_tick = r.uniform_int(1, 9);
    TankProcess tank(sim, s, p);
    tank.start();
    // Toggles land strictly between ticks so ordering is unambiguous.
    std::vector<std::pair<net::Micros, bool>> toggles;
    for (int k = 0; k < 30; ++k) {
      const net::Micros t = static_cast<net::Micros>(r.uniform_int(0, 99)) * p.tick + p.tick / 2;
      toggles.emplace_back(t, r.bernoulli(0.5));
    }
    std::stable_sort(toggles.begin(), toggles.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [t, v] : toggles) {
      sim.schedule(t, [&s, v = v] { s.write("valve", v); });
    }
    const net::Micros end = 100 * p.tick;
    sim.run_until(end);

    std::int64_t expected = 0;
    for (net::Micros tick = p.tick; tick <= end; tick += p.tick) {
      bool open = false;
      for (const auto& [t, v] : toggles) {
        if (t < tick) open = v;
      }
      if (open) expected += p.inflow_per_tick;
    }
    ASSERT_EQ(s.read("level"), PhysValue{expected}) << trial;
  }
}

}  // namespace
}  // namespace icsim::phys
