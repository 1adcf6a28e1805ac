#include "icsim/scenario/metrics.hpp"

#include <cstdio>
#include <map>

namespace icsim::scenario {

using net::TraceKind;
using net::TraceRecord;
using SortedJson = nlohmann::json;

namespace {

std::string seconds(Micros t) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f s", static_cast<double>(t) / net::kSecond);
  return buf;
}

template <class T>
SortedJson opt(const std::optional<T>& v) {
  return v ? SortedJson(*v) : SortedJson(nullptr);
}

template <class T>
std::optional<T> opt_from(const SortedJson& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<T>();
}

}  // namespace

Metrics metrics_from_trace(const ScenarioSpec& spec, const std::vector<TraceRecord>& trace) {
  Metrics m;
  m.scenario = spec.name;
  m.seed = spec.seed;

  std::map<std::string, MacAddr> truth;
  for (const HostSpec& h : spec.hosts) truth[h.ip.to_string()] = h.mac;

  std::string hmi_node;
  std::string plc_node;
  std::string hmi_ip;
  std::string plc_ip;
  if (spec.hmi) {
    hmi_node = spec.hmi->host;
    hmi_ip = spec.find_host(hmi_node)->ip.to_string();
    plc_ip = spec.hmi->plc.to_string();
    plc_node = spec.find_host(spec.hmi->plc)->name;
  }

  for (const TraceRecord& r : trace) {
    const net::Json& d = r.detail;
    switch (r.kind) {
      case TraceKind::Tx:
        ++m.frames.tx;
        if (spec.hmi && (r.node == hmi_node || r.node == plc_node) && d.contains("transport")) {
          const std::string src = d["transport"]["src_ip"];
          const std::string dst = d["transport"]["dst_ip"];
          if ((src == hmi_ip && dst == plc_ip) || (src == plc_ip && dst == hmi_ip)) {
            ++m.messages_hmi_plc;
          }
        }
        break;
      case TraceKind::Rx:
        ++m.frames.rx;
        if (d.contains("arp") && d["arp"]["op"] == "reply" && spec.find_host(r.node)) {
          auto it = truth.find(d["arp"]["sender_ip"].get<std::string>());
          if (it != truth.end() && it->second.to_string() != d["arp"]["sender_mac"]) {
            ++m.forged_replies_delivered;
          }
        }
        break;
      case TraceKind::Drop: {
        const std::string reason = d.value("reason", "");
        if (reason == "loss") {
          ++m.frames.dropped_loss;
        } else if (reason == "rule" || reason == "controller" || reason == "no_controller") {
          ++m.frames.dropped_rule;
        }
        break;
      }
      case TraceKind::FlowMod:
        if (d["action"]["kind"] == "drop") {
          ++m.drop_rules;
          if (!m.blocked_at) m.blocked_at = r.t_us;
        }
        break;
      case TraceKind::Alarm:
        if (!m.alarm_fired) {
          m.alarm_fired = true;
          m.alarm_t = r.t_us;
        }
        break;
      case TraceKind::Warning:
        ++m.warnings;
        if (d.value("event", "") == "arp_spoof" && !m.spoof_detected) {
          m.spoof_detected = true;
          m.spoof_t = r.t_us;
          m.spoof_classification = d["classification"].get<std::string>();
        }
        break;
      case TraceKind::Device:
        if (d.value("event", "") == "historian_record") ++m.historian_records;
        break;
      default:
        break;
    }
  }
  return m;
}

SortedJson metrics_to_json(const Metrics& m) {
  SortedJson j;
  j["scenario"] = m.scenario;
  j["seed"] = m.seed;
  j["t_end_us"] = m.t_end;
  j["true_level_final"] = opt(m.true_level_final);
  j["hmi_observed_level_final"] = opt(m.hmi_observed_level_final);
  j["alarm"] = {{"fired", m.alarm_fired}, {"t_us", opt(m.alarm_t)}};
  j["spoof"] = {{"detected", m.spoof_detected},
                {"t_us", opt(m.spoof_t)},
                {"classification", opt(m.spoof_classification)}};
  j["blocked_at_us"] = opt(m.blocked_at);
  j["frames"] = {{"tx", m.frames.tx},
                 {"rx", m.frames.rx},
                 {"dropped_rule", m.frames.dropped_rule},
                 {"dropped_loss", m.frames.dropped_loss}};
  j["messages_hmi_plc"] = m.messages_hmi_plc;
  j["warnings"] = m.warnings;
  j["drop_rules"] = m.drop_rules;
  j["forged_replies_delivered"] = m.forged_replies_delivered;
  j["historian_records"] = m.historian_records;
  if (m.attacker) {
    j["attacker"] = {{"poison_rounds", m.attacker->poison_rounds},
                     {"forged_replies_sent", m.attacker->forged_replies_sent},
                     {"intercepted", m.attacker->intercepted},
                     {"forwarded", m.attacker->forwarded},
                     {"rewritten", m.attacker->rewritten}};
  } else {
    j["attacker"] = nullptr;
  }
  return j;
}

Metrics metrics_from_json(const SortedJson& j) {
  Metrics m;
  m.scenario = j.at("scenario").get<std::string>();
  m.seed = j.at("seed").get<std::uint64_t>();
  m.t_end = j.at("t_end_us").get<Micros>();
  m.true_level_final = opt_from<std::int64_t>(j.at("true_level_final"));
  m.hmi_observed_level_final = opt_from<std::int32_t>(j.at("hmi_observed_level_final"));
  m.alarm_fired = j.at("alarm").at("fired").get<bool>();
  m.alarm_t = opt_from<Micros>(j.at("alarm").at("t_us"));
  m.spoof_detected = j.at("spoof").at("detected").get<bool>();
  m.spoof_t = opt_from<Micros>(j.at("spoof").at("t_us"));
  m.spoof_classification = opt_from<std::string>(j.at("spoof").at("classification"));
  m.blocked_at = opt_from<Micros>(j.at("blocked_at_us"));
  const SortedJson& f = j.at("frames");
  m.frames = {f.at("tx").get<std::uint64_t>(), f.at("rx").get<std::uint64_t>(),
              f.at("dropped_rule").get<std::uint64_t>(), f.at("dropped_loss").get<std::uint64_t>()};
  m.messages_hmi_plc = j.at("messages_hmi_plc").get<std::uint64_t>();
  m.warnings = j.at("warnings").get<std::uint64_t>();
  m.drop_rules = j.at("drop_rules").get<std::uint64_t>();
  m.forged_replies_delivered = j.at("forged_replies_delivered").get<std::uint64_t>();
  m.historian_records = j.at("historian_records").get<std::uint64_t>();
  if (const SortedJson& a = j.at("attacker"); !a.is_null()) {
    m.attacker = AttackerStats{a.at("poison_rounds").get<std::uint64_t>(),
                               a.at("forged_replies_sent").get<std::uint64_t>(),
                               a.at("intercepted").get<std::uint64_t>(),
                               a.at("forwarded").get<std::uint64_t>(),
                               a.at("rewritten").get<std::uint64_t>()};
  }
  return m;
}

ReportFormat report_format_from_string(std::string_view s) {
  if (s == "human") return ReportFormat::Human;
  if (s == "json") return ReportFormat::Json;
  throw std::invalid_argument("unknown report format: " + std::string(s));
}

std::string report(const Metrics& m, ReportFormat format) {
  if (format == ReportFormat::Json) return metrics_to_json(m).dump(2) + "\n";

  auto or_none = [](const auto& v) -> std::string {
    if (!v) return "none";
    return std::to_string(*v);
  };
  const std::string alarm = m.alarm_fired ? "at " + seconds(*m.alarm_t) : "none";
  const std::string spoof =
      m.spoof_detected ? *m.spoof_classification + " at " + seconds(*m.spoof_t) : "none";

  std::string out;
  out += "scenario: " + m.scenario + " (seed " + std::to_string(m.seed) + ", t_end " +
         seconds(m.t_end) + ")\n";
  out += "true_level_final: " + or_none(m.true_level_final) + "\n";
  out += "hmi_observed_level_final: " + or_none(m.hmi_observed_level_final) + "\n";
  out += "alarm: " + alarm + ", spoof: " + spoof + "\n";
  out += "blocked_at: " + (m.blocked_at ? seconds(*m.blocked_at) : std::string("none")) + "\n";
  out += "frames: tx=" + std::to_string(m.frames.tx) + " rx=" + std::to_string(m.frames.rx) +
         " dropped_rule=" + std::to_string(m.frames.dropped_rule) +
         " dropped_loss=" + std::to_string(m.frames.dropped_loss) + "\n";
  out += "messages_hmi_plc: " + std::to_string(m.messages_hmi_plc) + "\n";
  out += "warnings: " + std::to_string(m.warnings) + ", drop_rules: " +
         std::to_string(m.drop_rules) + ", forged_replies_delivered: " +
         std::to_string(m.forged_replies_delivered) + "\n";
  out += "historian_records: " + std::to_string(m.historian_records) + "\n";
  if (m.attacker) {
    out += "attacker: rounds=" + std::to_string(m.attacker->poison_rounds) +
           " forged=" + std::to_string(m.attacker->forged_replies_sent) +
           " intercepted=" + std::to_string(m.attacker->intercepted) +
           " forwarded=" + std::to_string(m.attacker->forwarded) +
           " rewritten=" + std::to_string(m.attacker->rewritten) + "\n";
  }
  return out;
}

}  // namespace icsim::scenario
