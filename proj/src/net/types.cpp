#include "icsim/net/types.hpp"

#include <charconv>
#include <cstdio>
#include <stdexcept>

namespace icsim::net {

namespace {

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

}  // namespace

MacAddr MacAddr::parse(std::string_view text) {
  // Exactly six two-digit groups separated by ':'.
  if (text.size() != 17) {
    throw std::invalid_argument("malformed MAC address: " + std::string(text));
  }
  MacAddr mac;
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t at = i * 3;
    const int hi = hex_digit(text[at]);
    const int lo = hex_digit(text[at + 1]);
    if (hi < 0 || lo < 0 || (i < 5 && text[at + 2] != ':')) {
      throw std::invalid_argument("malformed MAC address: " + std::string(text));
    }
    mac.bytes[i] = static_cast<std::uint8_t>(hi * 16 + lo);
  }
  return mac;
}

std::string MacAddr::to_string() const {
  char buf[18];
  std::snprintf(buf, sizeof buf, "%02x:%02x:%02x:%02x:%02x:%02x", bytes[0],
                bytes[1], bytes[2], bytes[3], bytes[4], bytes[5]);
  return buf;
}

Ipv4Addr Ipv4Addr::parse(std::string_view text) {
  std::uint32_t value = 0;
  const char* it = text.data();
  const char* end = text.data() + text.size();
  for (int octet = 0; octet < 4; ++octet) {
    unsigned part = 0;
    auto [next, ec] = std::from_chars(it, end, part);
    if (ec != std::errc{} || next == it || next - it > 3 || part > 255) {
      throw std::invalid_argument("malformed IPv4 address: " + std::string(text));
    }
    value = (value << 8) | part;
    it = next;
    if (octet < 3) {
      if (it == end || *it != '.') {
        throw std::invalid_argument("malformed IPv4 address: " + std::string(text));
      }
      ++it;
    }
  }
  if (it != end) {
    throw std::invalid_argument("malformed IPv4 address: " + std::string(text));
  }
  return Ipv4Addr{value};
}

std::string Ipv4Addr::to_string() const {
  return std::to_string((value >> 24) & 0xff) + "." +
         std::to_string((value >> 16) & 0xff) + "." +
         std::to_string((value >> 8) & 0xff) + "." + std::to_string(value & 0xff);
}

}  // namespace icsim::net
