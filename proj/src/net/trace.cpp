#include "icsim/net/trace.hpp"

#include <ostream>

namespace icsim::net {

std::string_view to_string(TraceKind kind) {
  switch (kind) {
    case TraceKind::Tx: return "tx";
    case TraceKind::Rx: return "rx";
    case TraceKind::Drop: return "drop";
    case TraceKind::PacketIn: return "packet_in";
    case TraceKind::FlowMod: return "flow_mod";
    case TraceKind::Phys: return "phys";
    case TraceKind::Device: return "device";
    case TraceKind::Alarm: return "alarm";
    case TraceKind::Warning: return "warning";
  }
  return "unknown";
}

std::string TraceRecord::to_json_line() const {
  Json line;
  line["t_us"] = t_us;
  line["kind"] = to_string(kind);
  line["node"] = node;
  line["detail"] = detail.is_null() ? Json::object() : detail;
  return line.dump();
}

void Trace::emit(Micros t_us, TraceKind kind, std::string node, Json detail) {
  TraceRecord record{t_us, kind, std::move(node), std::move(detail)};
  if (sink_ != nullptr) *sink_ << record.to_json_line() << '\n';
  ++emitted_;
  if (retain_) records_.push_back(std::move(record));
}

}  // namespace icsim::net
