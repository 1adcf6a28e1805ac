#include "icsim/devices/plc.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace icsim::devices {

using net::Json;
using proto::TagData;

namespace {

TagData to_tag(const phys::PhysValue& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  const auto i = std::get<std::int64_t>(v);
  constexpr auto lo = std::numeric_limits<std::int32_t>::min();
  constexpr auto hi = std::numeric_limits<std::int32_t>::max();
  return static_cast<std::int32_t>(std::clamp<std::int64_t>(i, lo, hi));
}

phys::PhysValue to_phys(const TagData& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return std::int64_t{std::get<std::int32_t>(v)};
}

Json tag_json(const std::optional<TagData>& v) {
  if (!v) return nullptr;
  if (const bool* b = std::get_if<bool>(&*v)) return *b;
  return std::get<std::int32_t>(*v);
}

}  // namespace

Plc::Plc(proto::Host& host, phys::PhysStore& store, PlcConfig config)
    : host_(host),
      store_(store),
      config_(std::move(config)),
      enip_(tags_),
      modbus_(tags_, config_.modbus_unit) {
  if (config_.scan_period == 0) throw std::invalid_argument("PLC scan_period must be > 0");
  std::set<std::string> keys;
  for (const PlcTagConfig& tag : config_.tags) {
    if (!store_.contains(tag.phys_key)) {
      throw std::invalid_argument("PLC tag '" + tag.name + "' maps undeclared key '" +
                                  tag.phys_key + "'");
    }
    if (!keys.insert(tag.phys_key).second) {
      throw std::invalid_argument("physical key mapped by more than one tag: " + tag.phys_key);
    }
    const phys::PhysValue& v = store_.read(tag.phys_key);
    if (phys::kind_of(v) == phys::PhysKind::Float64) {
      throw std::invalid_argument("PLC tag '" + tag.name + "' cannot map a float64 key");
    }
    tags_.declare(tag.name, to_tag(v), tag.writable);
    if (tag.modbus_addr) {
      if (std::holds_alternative<bool>(v)) {
        modbus_.map_coil(*tag.modbus_addr, tag.name);
      } else {
        modbus_.map_register(*tag.modbus_addr, tag.name);
      }
    }
  }

  tags_.on_write([this](const proto::TagValue& tag) {
    for (const PlcTagConfig& c : config_.tags) {
      if (c.name == tag.name) store_.write(c.phys_key, to_phys(tag.value));
    }
  });
  host_.listen(proto::kEnipPort, [this](const proto::TransportMessage& m) { on_enip(m); });
  host_.listen(proto::kModbusPort, [this](const proto::TransportMessage& m) { on_modbus(m); });
}

void Plc::start() {
  host_.sim().schedule_in(config_.scan_period, [this] {
    scan_cycle();
    start();
  });
}

void Plc::scan_cycle() {
  for (const PlcTagConfig& tag : config_.tags) {
    tags_.set(tag.name, to_tag(store_.read(tag.phys_key)));
  }
  ++scans_;
}

void Plc::on_enip(const proto::TransportMessage& msg) {
  proto::EnipMessage request;
  try {
    request = proto::decode_enip(msg.payload);
  } catch (const proto::MalformedMessage&) {
    return;
  }
  auto response = enip_.handle(request);
  if (!response) return;

  Json d;
  d["event"] = "enip";
  d["from"] = msg.src_ip.to_string();
  d["type"] = proto::to_string(request.type);
  d["tag"] = request.tag_name;
  d["session"] = response->session_id;
  d["value"] = tag_json(request.value);
  d["status"] = proto::to_string(response->status);
  host_.sim().emit(net::TraceKind::Device, host_.name(), std::move(d));

  reply(msg, proto::kEnipPort, proto::encode_enip(*response));
}

void Plc::on_modbus(const proto::TransportMessage& msg) {
  proto::ModbusAdu request;
  try {
    request = proto::decode_modbus(msg.payload);
  } catch (const proto::MalformedMessage&) {
    return;
  }
  auto response = modbus_.handle(request);
  if (!response) return;

  Json d;
  d["event"] = "modbus";
  d["from"] = msg.src_ip.to_string();
  d["function"] = request.function;
  d["exception"] = (response->function & proto::modbus::kExceptionBit) != 0;
  host_.sim().emit(net::TraceKind::Device, host_.name(), std::move(d));

  reply(msg, proto::kModbusPort, proto::encode_modbus(*response));
}

void Plc::reply(const proto::TransportMessage& request, std::uint16_t from_port,
                proto::Bytes payload) {
  host_.send_message(proto::TransportMessage{host_.ip(), request.src_ip, from_port,
                                             request.src_port, std::move(payload)});
}

}  // namespace icsim::devices
