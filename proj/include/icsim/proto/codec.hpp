#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace icsim::proto {

using Bytes = std::vector<std::uint8_t>;
using ByteView = std::span<const std::uint8_t>;

class MalformedMessage : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Big-endian helpers shared by the codecs.
namespace be {

inline void put_u16(Bytes& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_u32(Bytes& out, std::uint32_t v) {
  for (int shift = 24; shift >= 0; shift -= 8) {
    out.push_back(static_cast<std::uint8_t>(v >> shift));
  }
}

/// Bounds-checked cursor over an input buffer.
class Reader {
 public:
  Reader(ByteView data, const char* what) : data_(data), what_(what) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }
  std::uint16_t u16() {
    need(2);
    std::uint16_t v = static_cast<std::uint16_t>((data_[pos_] << 8) | data_[pos_ + 1]);
    pos_ += 2;
    return v;
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v = (v << 8) | data_[pos_ + i];
    pos_ += 4;
    return v;
  }
  ByteView take(std::size_t n) {
    need(n);
    ByteView v = data_.subspan(pos_, n);
    pos_ += n;
    return v;
  }
  std::size_t remaining() const { return data_.size() - pos_; }
  void expect_end() const {
    if (remaining() != 0) {
      throw MalformedMessage(std::string(what_) + ": " + std::to_string(remaining()) +
                             " trailing bytes");
    }
  }

 private:
  void need(std::size_t n) const {
    if (remaining() < n) throw MalformedMessage(std::string(what_) + ": truncated");
  }

  ByteView data_;
  const char* what_;
  std::size_t pos_ = 0;
};

}  // namespace be

/// Lowercase space-separated hex, e.g. "03 00 0a".
std::string to_hex(ByteView bytes);
/// Accepts hex digits separated by any whitespace. Throws std::invalid_argument.
Bytes from_hex(const std::string& text);

}  // namespace icsim::proto
