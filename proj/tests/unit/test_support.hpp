#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "icsim/net/network.hpp"
#include "icsim/net/switch.hpp"

namespace icsim::testing {

/// Records every frame it receives.
class Sink : public net::Node {
 public:
  using net::Node::Node;

  void receive(const net::EthernetFrame& frame, net::PortId port) override {
    frames.push_back({frame, port});
    times.push_back(sim().now());
  }

  std::vector<std::pair<net::EthernetFrame, net::PortId>> frames;
  std::vector<net::Micros> times;
};

inline net::MacAddr mac(std::uint8_t last) { return net::MacAddr{{2, 0, 0, 0, 0, last}}; }

inline net::Ipv4Addr ip(std::uint8_t last) { return net::Ipv4Addr{0x0a000000u | last}; }

inline net::EthernetFrame frame(net::MacAddr src, net::MacAddr dst, std::size_t payload = 0) {
  return net::EthernetFrame{src, dst, net::EtherType::Transport,
                            std::vector<std::uint8_t>(payload, 0xab)};
}

inline net::FlowMatch match(std::optional<net::PortId> in_port, std::optional<net::MacAddr> src = {},
                            std::optional<net::MacAddr> dst = {}) {
  net::FlowMatch m;
  m.in_port = in_port;
  m.eth_src = src;
  m.eth_dst = dst;
  return m;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace icsim::testing
