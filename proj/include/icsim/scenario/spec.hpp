#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "icsim/devices/attacker.hpp"
#include "icsim/devices/hmi.hpp"
#include "icsim/devices/plc.hpp"
#include "icsim/net/network.hpp"
#include "icsim/phys/store.hpp"
#include "icsim/phys/tank.hpp"
#include "icsim/sdn/controller.hpp"

namespace icsim::scenario {

using net::Ipv4Addr;
using net::MacAddr;
using net::Micros;
using net::PortId;

/// Syntax errors carry a 1-based line and column. Structural errors (wrong
/// type, missing or unknown field) carry the JSON path of the field instead.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column)
      : std::runtime_error(what), line_(line), column_(column) {}
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_ = 0;
  std::size_t column_ = 0;
};

/// A well-formed scenario that references something undeclared, declares
/// something twice, or carries an out-of-range value.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HostSpec {
  std::string name;
  Ipv4Addr ip;
  MacAddr mac;
  bool operator==(const HostSpec&) const = default;
};

struct SwitchSpec {
  std::string name;
  net::DatapathId dpid = 0;
  bool operator==(const SwitchSpec&) const = default;
};

struct LinkSpec {
  std::string a;
  PortId a_port = 1;
  std::string b;
  PortId b_port = 1;
  net::LinkParams params;
  bool operator==(const LinkSpec&) const = default;
};

struct PhysKeySpec {
  std::string name;
  phys::PhysValue initial;
  bool operator==(const PhysKeySpec&) const = default;
};

struct ScenarioSpec {
  std::string name;
  std::uint64_t seed = 0;
  Micros duration = 0;

  std::vector<HostSpec> hosts;
  std::vector<SwitchSpec> switches;
  std::vector<LinkSpec> links;

  std::vector<PhysKeySpec> phys_keys;
  std::optional<phys::TankParams> tank;

  std::vector<devices::PlcConfig> plcs;
  std::optional<devices::HmiConfig> hmi;
  std::optional<devices::HistorianConfig> historian;
  std::optional<devices::AttackerConfig> attacker;

  std::optional<sdn::ControllerPolicy> controller;

  std::optional<std::string> snapshot_path;
  /// 0 writes the snapshot only at the end of the run.
  Micros snapshot_every = 0;

  const HostSpec* find_host(std::string_view name) const;
  const HostSpec* find_host(Ipv4Addr ip) const;

  bool operator==(const ScenarioSpec&) const = default;
};

/// Throws ValidationError naming the first offending reference.
void validate(const ScenarioSpec& spec);

/// Parses and validates. Throws ParseError or ValidationError.
ScenarioSpec parse_scenario(std::string_view text);
/// Throws std::runtime_error when the file cannot be read, then as
/// parse_scenario.
ScenarioSpec load_scenario(const std::string& path);

net::Json to_json(const ScenarioSpec& spec);
/// Pretty-printed JSON document with a trailing newline.
std::string serialize_scenario(const ScenarioSpec& spec);

}  // namespace icsim::scenario
