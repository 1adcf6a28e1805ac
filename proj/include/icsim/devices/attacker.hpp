#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "icsim/net/rng.hpp"
#include "icsim/proto/enip.hpp"
#include "icsim/proto/host.hpp"

namespace icsim::devices {

using net::Micros;

/// Orientation of an intercepted message relative to the two victims.
enum class Direction : std::uint8_t { AtoB, BtoA, Any };

std::string_view to_string(Direction d);

struct SetBool {
  bool value = false;
  bool operator==(const SetBool&) const = default;
};
struct SetInt {
  std::int32_t value = 0;
  bool operator==(const SetInt&) const = default;
};
/// Adds a uniform integer drawn from [-amplitude, +amplitude].
struct AddNoise {
  std::int32_t amplitude = 0;
  bool operator==(const AddNoise&) const = default;
};
using FilterAction = std::variant<SetBool, SetInt, AddNoise>;

struct FilterMatch {
  Direction direction = Direction::Any;
  std::optional<proto::EnipType> msg_type;
  std::optional<std::string> tag;

  bool operator==(const FilterMatch&) const = default;
};

struct FilterRule {
  FilterMatch match;
  FilterAction action;

  bool operator==(const FilterRule&) const = default;
};

struct FilterOutcome {
  proto::TransportMessage message;
  bool matched = false;
  bool rewritten = false;
  std::optional<proto::EnipMessage> decoded;  // original, when decodable
  std::optional<proto::TagData> original;
  std::optional<proto::TagData> replaced;
};

/// Applies the first rule matching the decoded ENIP-lite message. Payloads
/// that do not decode, rules whose action does not fit the value, and
/// messages without a value all pass through unchanged. `direction` is
/// nullopt for traffic that is not between the two victims; only Any rules
/// match it.
FilterOutcome apply_filters(std::span<const FilterRule> rules,
                            std::optional<Direction> direction,
                            const proto::TransportMessage& msg, net::DeterministicRng& noise);

struct AttackerConfig {
  std::string host;
  net::Ipv4Addr victim_a;
  net::Ipv4Addr victim_b;
  Micros poison_start = 0;
  Micros poison_period = net::kSecond;
  std::vector<FilterRule> rules;
  std::uint64_t noise_seed = 0;

  bool operator==(const AttackerConfig&) const = default;
};

/// ARP poisoner plus man-in-the-middle relay. Each poison round sends victim
/// A a Reply claiming B's IP at the attacker's MAC, and the mirror image to
/// B. Intercepted messages are filtered and relayed, one out per one in.
class Attacker {
 public:
  /// Throws std::invalid_argument for identical victims or a zero period.
  Attacker(proto::Host& host, AttackerConfig config);

  /// First round at max(now, poison_start), then every poison_period.
  void start();
  void poison_round();

  const AttackerConfig& config() const { return config_; }
  std::uint64_t rounds() const { return rounds_; }
  std::uint64_t forged_sent() const { return forged_sent_; }
  std::uint64_t intercepted() const { return intercepted_; }
  std::uint64_t forwarded() const { return forwarded_; }
  std::uint64_t rewritten() const { return rewritten_; }

 private:
  void poison(net::Ipv4Addr victim, net::Ipv4Addr impersonated);
  void on_intercept(const proto::TransportMessage& msg);
  void cycle();

  proto::Host& host_;
  AttackerConfig config_;
  net::DeterministicRng noise_;
  std::uint64_t rounds_ = 0;
  std::uint64_t forged_sent_ = 0;
  std::uint64_t intercepted_ = 0;
  std::uint64_t forwarded_ = 0;
  std::uint64_t rewritten_ = 0;
};

}  // namespace icsim::devices
