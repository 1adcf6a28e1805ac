#pragma once

#include <algorithm>
#include <cstdint>
#include <string_view>
#include <vector>

#include "icsim/net/types.hpp"

namespace icsim::net {

enum class EtherType : std::uint16_t {
  Transport = 0x0800,
  Arp = 0x0806,
};

std::string_view to_string(EtherType type);

inline constexpr std::uint32_t kEthernetHeaderBytes = 14;
inline constexpr std::uint32_t kMinFrameBytes = 64;

struct EthernetFrame {
  MacAddr src;
  MacAddr dst;
  EtherType ethertype = EtherType::Transport;
  std::vector<std::uint8_t> payload;

  /// Short frames are padded to the Ethernet minimum.
  std::uint32_t size_bytes() const {
    return std::max(kMinFrameBytes,
                    kEthernetHeaderBytes + static_cast<std::uint32_t>(payload.size()));
  }

  bool operator==(const EthernetFrame&) const = default;
};

}  // namespace icsim::net
