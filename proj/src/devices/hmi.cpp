#include "icsim/devices/hmi.hpp"

namespace icsim::devices {

using net::Json;
using net::TraceKind;

namespace {

Json value_json(const proto::TagData& v) {
  if (const bool* b = std::get_if<bool>(&v)) return *b;
  return std::get<std::int32_t>(v);
}

}  // namespace

Hmi::Hmi(proto::Host& host, HmiConfig config)
    : host_(host), config_(std::move(config)), client_(host, config_.plc) {
  if (config_.period == 0) throw std::invalid_argument("HMI period must be > 0");
}

void Hmi::start() {
  host_.sim().schedule_in(config_.period, [this] {
    tick();
    start();
  });
}

void Hmi::tick() {
  ++ticks_;
  client_.write(config_.valve_tag, config_.command,
                [this](const proto::EnipMessage& resp) { on_error(resp); });
  client_.read(config_.level_tag, [this](const proto::EnipMessage& resp) { on_level(resp); });
}

void Hmi::on_error(const proto::EnipMessage& resp) {
  if (resp.status == proto::EnipStatus::Ok) return;
  ++errors_;
  Json d;
  d["event"] = "hmi_error";
  d["type"] = proto::to_string(resp.type);
  d["tag"] = resp.tag_name;
  d["status"] = proto::to_string(resp.status);
  host_.sim().emit(TraceKind::Device, host_.name(), std::move(d));
}

void Hmi::on_level(const proto::EnipMessage& resp) {
  if (resp.status != proto::EnipStatus::Ok || !resp.value ||
      !std::holds_alternative<std::int32_t>(*resp.value)) {
    on_error(resp);
    return;
  }
  const std::int32_t level = std::get<std::int32_t>(*resp.value);
  observed_level_ = level;

  Json d;
  d["event"] = "hmi_read";
  d["tag"] = resp.tag_name;
  d["value"] = level;
  host_.sim().emit(TraceKind::Device, host_.name(), std::move(d));

  // Alarm on the rising edge only.
  const bool above = level > config_.alarm_threshold;
  if (above && !alarm_active_) {
    if (!first_alarm_) first_alarm_ = host_.sim().now();
    Json a;
    a["level"] = level;
    a["threshold"] = config_.alarm_threshold;
    host_.sim().emit(TraceKind::Alarm, host_.name(), std::move(a));
  }
  alarm_active_ = above;
}

Historian::Historian(proto::Host& host, HistorianConfig config)
    : host_(host), config_(std::move(config)), client_(host, config_.plc) {
  if (config_.period == 0) throw std::invalid_argument("historian period must be > 0");
}

void Historian::start() {
  // Samples from now on, so a run of N periods yields N answered samples.
  host_.sim().schedule_in(0, [this] { cycle(); });
}

void Historian::cycle() {
  tick();
  host_.sim().schedule_in(config_.period, [this] { cycle(); });
}

void Historian::tick() {
  for (const std::string& tag : config_.tags) {
    client_.read(tag, [this](const proto::EnipMessage& resp) {
      if (resp.status != proto::EnipStatus::Ok || !resp.value) {
        ++errors_;
        return;
      }
      records_.push_back(Record{host_.sim().now(), resp.tag_name, *resp.value});
      Json d;
      d["event"] = "historian_record";
      d["tag"] = resp.tag_name;
      d["value"] = value_json(*resp.value);
      host_.sim().emit(TraceKind::Device, host_.name(), std::move(d));
    });
  }
}

}  // namespace icsim::devices
