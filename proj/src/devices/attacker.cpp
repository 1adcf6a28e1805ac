#include "icsim/devices/attacker.hpp"

#include <algorithm>
#include <limits>

namespace icsim::devices {

using net::Json;
using net::TraceKind;
using proto::TagData;

std::string_view to_string(Direction d) {
  switch (d) {
    case Direction::AtoB: return "a_to_b";
    case Direction::BtoA: return "b_to_a";
    case Direction::Any: return "any";
  }
  return "unknown";
}

namespace {

bool matches(const FilterMatch& m, std::optional<Direction> direction,
             const proto::EnipMessage& msg) {
  if (m.direction != Direction::Any && m.direction != direction) return false;
  if (m.msg_type && *m.msg_type != msg.type) return false;
  if (m.tag && *m.tag != msg.tag_name) return false;
  return true;
}

std::optional<TagData> rewrite(const FilterAction& action, const TagData& value,
                               net::DeterministicRng& noise) {
  if (const auto* set = std::get_if<SetBool>(&action)) {
    if (!std::holds_alternative<bool>(value)) return std::nullopt;
    return TagData{set->value};
  }
  if (!std::holds_alternative<std::int32_t>(value)) return std::nullopt;
  if (const auto* set = std::get_if<SetInt>(&action)) return TagData{set->value};

  const auto a = std::abs(static_cast<std::int64_t>(std::get<AddNoise>(action).amplitude));
  const std::int64_t noisy = std::get<std::int32_t>(value) + noise.uniform_int(-a, a);
  return TagData{static_cast<std::int32_t>(
      std::clamp<std::int64_t>(noisy, std::numeric_limits<std::int32_t>::min(),
                               std::numeric_limits<std::int32_t>::max()))};
}

Json value_json(const std::optional<TagData>& v) {
  if (!v) return nullptr;
  if (const bool* b = std::get_if<bool>(&*v)) return *b;
  return std::get<std::int32_t>(*v);
}

}  // namespace

FilterOutcome apply_filters(std::span<const FilterRule> rules,
                            std::optional<Direction> direction,
                            const proto::TransportMessage& msg, net::DeterministicRng& noise) {
  FilterOutcome out;
  out.message = msg;
  try {
    out.decoded = proto::decode_enip(msg.payload);
  } catch (const proto::MalformedMessage&) {
    return out;
  }
  const proto::EnipMessage& enip = *out.decoded;
  out.original = enip.value;

  auto rule = std::find_if(rules.begin(), rules.end(), [&](const FilterRule& r) {
    return matches(r.match, direction, enip);
  });
  if (rule == rules.end()) return out;
  out.matched = true;
  if (!enip.value) return out;

  auto replaced = rewrite(rule->action, *enip.value, noise);
  if (!replaced) return out;

  proto::EnipMessage modified = enip;
  modified.value = *replaced;
  try {
    out.message.payload = proto::encode_enip(modified);
  } catch (const proto::MalformedMessage&) {
    out.message = msg;
    return out;
  }
  out.rewritten = true;
  out.replaced = replaced;
  return out;
}

Attacker::Attacker(proto::Host& host, AttackerConfig config)
    : host_(host), config_(std::move(config)), noise_(config_.noise_seed) {
  if (config_.victim_a == config_.victim_b) {
    throw std::invalid_argument("attacker victims must be distinct");
  }
  if (config_.poison_period == 0) throw std::invalid_argument("poison_period must be > 0");
  host_.set_interceptor([this](const proto::TransportMessage& msg) { on_intercept(msg); });
}

void Attacker::start() {
  const Micros first = std::max(host_.sim().now(), config_.poison_start);
  host_.sim().schedule(first, [this] { cycle(); });
}

void Attacker::cycle() {
  poison_round();
  host_.sim().schedule_in(config_.poison_period, [this] { cycle(); });
}

void Attacker::poison_round() {
  ++rounds_;
  Json d;
  d["event"] = "poison_round";
  d["round"] = rounds_;
  host_.sim().emit(TraceKind::Device, host_.name(), std::move(d));
  poison(config_.victim_a, config_.victim_b);
  poison(config_.victim_b, config_.victim_a);
}

void Attacker::poison(net::Ipv4Addr victim, net::Ipv4Addr impersonated) {
  // Victim MACs come from ordinary resolution (a scan on the first round).
  host_.resolve(victim, [this, victim, impersonated](net::MacAddr victim_mac) {
    const auto forged = proto::ArpPacket::reply(host_.mac(), impersonated, victim_mac, victim);
    ++forged_sent_;
    Json d;
    d["event"] = "forged_reply";
    d["victim"] = victim.to_string();
    d["claimed_ip"] = impersonated.to_string();
    host_.sim().emit(TraceKind::Device, host_.name(), std::move(d));
    host_.send_arp(forged, victim_mac);
  });
}

void Attacker::on_intercept(const proto::TransportMessage& msg) {
  ++intercepted_;
  std::optional<Direction> direction;
  if (msg.src_ip == config_.victim_a && msg.dst_ip == config_.victim_b) {
    direction = Direction::AtoB;
  } else if (msg.src_ip == config_.victim_b && msg.dst_ip == config_.victim_a) {
    direction = Direction::BtoA;
  }

  FilterOutcome outcome = apply_filters(config_.rules, direction, msg, noise_);
  if (outcome.rewritten) ++rewritten_;

  Json d;
  d["event"] = "intercept";
  d["src_ip"] = msg.src_ip.to_string();
  d["dst_ip"] = msg.dst_ip.to_string();
  if (outcome.decoded) {
    d["type"] = proto::to_string(outcome.decoded->type);
    d["tag"] = outcome.decoded->tag_name;
  }
  d["original"] = value_json(outcome.original);
  d["rewritten"] = outcome.rewritten;
  d["value"] = value_json(outcome.rewritten ? outcome.replaced : outcome.original);
  host_.sim().emit(TraceKind::Device, host_.name(), std::move(d));

  ++forwarded_;
  host_.send_message(std::move(outcome.message));
}

}  // namespace icsim::devices
