#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace icsim::net {

/// Virtual time in microseconds.
using Micros = std::uint64_t;

inline constexpr Micros kMillisecond = 1'000;
inline constexpr Micros kSecond = 1'000'000;

using PortId = std::uint16_t;
using NodeId = std::uint32_t;
using DatapathId = std::uint64_t;

struct MacAddr {
  std::array<std::uint8_t, 6> bytes{};

  static constexpr MacAddr broadcast() {
    return MacAddr{{0xff, 0xff, 0xff, 0xff, 0xff, 0xff}};
  }
  static constexpr MacAddr zero() { return MacAddr{}; }

  /// Parses "aa:bb:cc:dd:ee:ff". Throws std::invalid_argument.
  static MacAddr parse(std::string_view text);

  bool is_broadcast() const { return *this == broadcast(); }
  bool is_zero() const { return *this == zero(); }
  std::string to_string() const;

  auto operator<=>(const MacAddr&) const = default;
};

struct Ipv4Addr {
  std::uint32_t value = 0;

  /// Parses dotted-quad notation. Throws std::invalid_argument.
  static Ipv4Addr parse(std::string_view text);

  std::string to_string() const;

  auto operator<=>(const Ipv4Addr&) const = default;
};

}  // namespace icsim::net
