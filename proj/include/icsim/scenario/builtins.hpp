#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "icsim/scenario/spec.hpp"

namespace icsim::scenario {

/// Addresses of the stock star topology.
namespace stock {
inline const Ipv4Addr kPlc1Ip = Ipv4Addr::parse("10.0.0.1");
inline const Ipv4Addr kPlc2Ip = Ipv4Addr::parse("10.0.0.2");
inline const Ipv4Addr kHmiIp = Ipv4Addr::parse("10.0.0.3");
inline const Ipv4Addr kHistorianIp = Ipv4Addr::parse("10.0.0.4");
inline const Ipv4Addr kAttackerIp = Ipv4Addr::parse("10.0.0.66");
inline const MacAddr kPlc1Mac = MacAddr::parse("02:00:00:00:00:01");
inline const MacAddr kPlc2Mac = MacAddr::parse("02:00:00:00:00:02");
inline const MacAddr kHmiMac = MacAddr::parse("02:00:00:00:00:03");
inline const MacAddr kHistorianMac = MacAddr::parse("02:00:00:00:00:04");
inline const MacAddr kAttackerMac = MacAddr::parse("02:00:00:00:00:66");

// Switch ports on s1.
inline constexpr PortId kPlc1Port = 1;
inline constexpr PortId kPlc2Port = 2;
inline constexpr PortId kHmiPort = 3;
inline constexpr PortId kHistorianPort = 4;
inline constexpr PortId kAttackerPort = 5;

inline constexpr net::DatapathId kDpid = 1;
inline constexpr Micros kLinkDelay = 500;
inline constexpr std::uint64_t kLinkBandwidth = 100'000'000;
}  // namespace stock

/// baseline, mitm_basic, mitm_stealth, sdn_detect, sdn_prevent.
const std::vector<std::string>& builtin_names();
std::optional<ScenarioSpec> builtin_scenario(std::string_view name);
std::vector<ScenarioSpec> builtin_scenarios();

}  // namespace icsim::scenario
