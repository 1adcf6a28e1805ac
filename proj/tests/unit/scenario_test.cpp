#include <gtest/gtest.h>

#include <sstream>

#include "icsim/scenario/builtins.hpp"
#include "icsim/scenario/metrics.hpp"
#include "icsim/scenario/simulation.hpp"
#include "test_support.hpp"

namespace icsim::scenario {
namespace {

ScenarioSpec stock(std::string_view name) {
  auto spec = builtin_scenario(name);
  if (!spec) throw std::runtime_error("missing builtin");
  return *spec;
}

/// Level value per phys trace record, in trace order, starting from the
/// declared initial value.
std::vector<std::pair<Micros, std::int64_t>> level_history(const ScenarioSpec& spec,
                                                           const std::vector<net::TraceRecord>& trace) {
  std::vector<std::pair<Micros, std::int64_t>> out;
  for (const auto& k : spec.phys_keys) {
    if (k.name == "level") out.emplace_back(0, std::get<std::int64_t>(k.initial));
  }
  for (const auto& r : trace) {
    if (r.kind == net::TraceKind::Phys && r.detail["key"] == "level") {
      out.emplace_back(r.t_us, r.detail["value"].get<std::int64_t>());
    }
  }
  return out;
}

std::int64_t level_at(const std::vector<std::pair<Micros, std::int64_t>>& h, Micros t) {
  std::int64_t v = h.front().second;
  for (const auto& [when, value] : h) {
    if (when > t) break;
    v = value;
  }
  return v;
}

TEST(Builtins, AllValidate) {
  EXPECT_EQ(builtin_names().size(), 5u);
  for (const auto& spec : builtin_scenarios()) EXPECT_NO_THROW(validate(spec)) << spec.name;
  EXPECT_FALSE(builtin_scenario("nope"));
}

TEST(Builtins, ScenarioFilesMatch) {
  for (const auto& name : builtin_names()) {
    const auto path = std::string(ICSIM_SCENARIO_DIR) + "/" + name + ".json";
    EXPECT_EQ(load_scenario(path), stock(name)) << name;
  }
}

TEST(SpecFormat, SerializeParseRoundTrip) {
  for (const auto& spec : builtin_scenarios()) {
    const std::string text = serialize_scenario(spec);
    const ScenarioSpec back = parse_scenario(text);
    EXPECT_EQ(back, spec) << spec.name;
    EXPECT_EQ(serialize_scenario(back), text);
  }
}

TEST(SpecFormat, SyntaxErrorCarriesLine) {
  const std::string text = "{\n  \"name\": \"x\",\n  \"seed\": 1,\n  oops\n}\n";
  try {
    parse_scenario(text);
    FAIL() << "no ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4u);
    EXPECT_GE(e.column(), 3u);
  }
}

TEST(SpecFormat, UnknownFieldRejected) {
  net::Json doc = net::Json::parse(serialize_scenario(stock("baseline")));
  doc["devices"]["hmi"]["colour"] = "red";
  try {
    parse_scenario(doc.dump());
    FAIL() << "no ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("colour"), std::string::npos);
  }
}

TEST(SpecFormat, WrongTypeRejected) {
  net::Json doc = net::Json::parse(serialize_scenario(stock("baseline")));
  doc["seed"] = "forty-two";
  EXPECT_THROW(parse_scenario(doc.dump()), ParseError);
  EXPECT_THROW(load_scenario("/nonexistent/file.json"), std::runtime_error);
}

TEST(Validate, LinkToUndeclaredHost) {
  ScenarioSpec spec = stock("baseline");
  spec.links.push_back(LinkSpec{"ghost", 1, "s1", 9, {}});
  EXPECT_THROW(validate(spec), ValidationError);
}

TEST(Validate, RejectsInconsistentSpecs) {
  auto expect_invalid = [](auto mutate) {
    ScenarioSpec spec = stock("sdn_prevent");
    mutate(spec);
    EXPECT_THROW(validate(spec), ValidationError);
  };
  expect_invalid([](ScenarioSpec& s) { s.hosts[1].ip = s.hosts[0].ip; });
  expect_invalid([](ScenarioSpec& s) { s.hosts[1].mac = s.hosts[0].mac; });
  expect_invalid([](ScenarioSpec& s) { s.hosts[0].name = "s1"; });
  expect_invalid([](ScenarioSpec& s) { s.links[1].b_port = s.links[0].b_port; });
  expect_invalid([](ScenarioSpec& s) { s.links[0].a_port = 2; });
  expect_invalid([](ScenarioSpec& s) { s.links[0].params.loss = 2.0; });
  expect_invalid([](ScenarioSpec& s) { s.phys_keys.push_back({"_revision", true}); });
  expect_invalid([](ScenarioSpec& s) { s.plcs[0].tags[0].phys_key = "missing"; });
  expect_invalid([](ScenarioSpec& s) { s.hmi->plc = net::Ipv4Addr::parse("10.0.0.4"); });
  expect_invalid([](ScenarioSpec& s) { s.attacker->victim_b = s.attacker->victim_a; });
  expect_invalid([](ScenarioSpec& s) { s.controller->premap_rules[0].dpid = 77; });
  expect_invalid([](ScenarioSpec& s) { s.snapshot_every = net::kSecond; });
  expect_invalid([](ScenarioSpec& s) { s.duration = 0; });
}

TEST(Metrics, JsonRoundTrip) {
  for (const auto& name : {"baseline", "sdn_prevent"}) {
    ScenarioSpec spec = stock(name);
    spec.duration = 5 * net::kSecond;
    const Metrics m = run_scenario(spec);
    EXPECT_EQ(metrics_from_json(metrics_to_json(m)), m) << name;
    EXPECT_EQ(metrics_from_json(nlohmann::json::parse(report(m, ReportFormat::Json))), m);
  }
}

TEST(Metrics, BaselineReport) {
  const Metrics m = run_scenario(stock("baseline"));
  const std::string text = report(m, ReportFormat::Human);
  EXPECT_NE(text.find("alarm: none, spoof: none"), std::string::npos) << text;
  EXPECT_FALSE(m.alarm_fired);
  EXPECT_FALSE(m.spoof_detected);
  EXPECT_EQ(m.true_level_final, 500);
  // Frames still on the wire at t_end are neither received nor dropped.
  EXPECT_GE(m.frames.tx, m.frames.rx + m.frames.dropped_rule + m.frames.dropped_loss);
  EXPECT_EQ(report_format_from_string("json"), ReportFormat::Json);
  EXPECT_THROW(report_format_from_string("xml"), std::invalid_argument);
}

TEST(Simulation, SameSeedSameTrace) {
  ScenarioSpec spec = stock("mitm_basic");
  spec.duration = 10 * net::kSecond;
  std::ostringstream a;
  std::ostringstream b;
  run_scenario(spec, {&a, std::nullopt});
  run_scenario(spec, {&b, std::nullopt});
  EXPECT_FALSE(a.str().empty());
  EXPECT_EQ(a.str(), b.str());
}

TEST(Simulation, StealthLevelNeverBelowBaseline) {
  ScenarioSpec base = stock("baseline");
  ScenarioSpec stealth = stock("mitm_stealth");
  Simulation sb(base);
  Simulation ss(stealth);
  sb.run();
  ss.run();
  const auto hb = level_history(base, sb.sim().trace().records());
  const auto hs = level_history(stealth, ss.sim().trace().records());
  for (Micros t = 0; t <= base.duration; t += 100 * net::kMillisecond) {
    ASSERT_GE(level_at(hs, t), level_at(hb, t)) << t;
  }
  EXPECT_GT(level_at(hs, stealth.duration), level_at(hb, base.duration));
}

TEST(Simulation, SnapshotFileMatchesStore) {
  ScenarioSpec spec = stock("mitm_basic");
  spec.duration = 3 * net::kSecond;
  const std::string path = ::testing::TempDir() + "icsim_snapshot_test.json";
  Simulation sim(spec, {nullptr, path});
  sim.run();
  const phys::PhysStore back = phys::restore(nlohmann::json::parse(testing::read_file(path)));
  EXPECT_EQ(back, sim.store());
}

TEST(Simulation, AccessorsReachDevices) {
  Simulation sim(stock("sdn_prevent"));
  EXPECT_NE(sim.host("hmi"), nullptr);
  EXPECT_EQ(sim.host("nobody"), nullptr);
  EXPECT_NE(sim.switch_node("s1"), nullptr);
  EXPECT_NE(sim.plc("plc1"), nullptr);
  EXPECT_NE(sim.attacker(), nullptr);
  EXPECT_NE(sim.controller(), nullptr);
  EXPECT_EQ(sim.historian() != nullptr, stock("sdn_prevent").historian.has_value());
}

}  // namespace
}  // namespace icsim::scenario
