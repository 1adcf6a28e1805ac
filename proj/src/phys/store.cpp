#include "icsim/phys/store.hpp"

#include <fstream>

namespace icsim::phys {

namespace {

constexpr std::string_view kRevisionKey = "_revision";

}  // namespace

std::string_view to_string(PhysKind kind) {
  switch (kind) {
    case PhysKind::Bool: return "bool";
    case PhysKind::Int64: return "int64";
    case PhysKind::Float64: return "float64";
  }
  return "unknown";
}

void PhysStore::declare(std::string key, PhysValue initial) {
  if (key == kRevisionKey) throw std::invalid_argument("reserved physical key: _revision");
  if (contains(key)) throw std::invalid_argument("duplicate physical key: " + key);
  entries_.emplace(std::move(key), initial);
}

const PhysValue& PhysStore::read(std::string_view key) const {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw UnknownKey(key);
  return it->second;
}

std::uint64_t PhysStore::write(std::string_view key, const PhysValue& value) {
  auto it = entries_.find(key);
  if (it == entries_.end()) throw UnknownKey(key);
  if (kind_of(it->second) != kind_of(value)) throw KindMismatch(key);
  it->second = value;
  ++revision_;
  if (observer_) observer_(it->first, value, revision_);
  return revision_;
}

nlohmann::json snapshot(const PhysStore& store) {
  nlohmann::json doc = nlohmann::json::object();
  for (const auto& [key, value] : store.entries()) {
    nlohmann::json entry;
    entry["kind"] = to_string(kind_of(value));
    std::visit([&entry](const auto& v) { entry["value"] = v; }, value);
    doc[key] = std::move(entry);
  }
  doc[std::string(kRevisionKey)] = store.revision();
  return doc;
}

PhysStore restore(const nlohmann::json& doc) {
  if (!doc.is_object()) throw MalformedSnapshot("snapshot must be a JSON object");
  auto rev = doc.find(kRevisionKey);
  if (rev == doc.end() || !rev->is_number_unsigned()) {
    throw MalformedSnapshot("snapshot lacks an unsigned _revision");
  }
  PhysStore store;
  store.revision_ = rev->get<std::uint64_t>();
  for (const auto& [key, entry] : doc.items()) {
    if (key == kRevisionKey) continue;
    if (!entry.is_object() || entry.size() != 2 || !entry.contains("kind") ||
        !entry.contains("value") || !entry["kind"].is_string()) {
      throw MalformedSnapshot("entry '" + key + "' must be {kind, value}");
    }
    const std::string kind = entry["kind"].get<std::string>();
    const nlohmann::json& v = entry["value"];
    if (kind == "bool" && v.is_boolean()) {
      store.entries_.emplace(key, v.get<bool>());
    } else if (kind == "int64" && v.is_number_integer()) {
      if (v.is_number_unsigned() && v.get<std::uint64_t>() > INT64_MAX) {
        throw MalformedSnapshot("entry '" + key + "' is out of int64 range");
      }
      store.entries_.emplace(key, v.get<std::int64_t>());
    } else if (kind == "float64" && v.is_number()) {
      store.entries_.emplace(key, v.get<double>());
    } else {
      throw MalformedSnapshot("entry '" + key + "' has a bad kind or value");
    }
  }
  return store;
}

void write_snapshot_file(const PhysStore& store, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open snapshot file: " + path);
  out << snapshot(store).dump() << '\n';
  if (!out) throw std::runtime_error("failed writing snapshot file: " + path);
}

}  // namespace icsim::phys
