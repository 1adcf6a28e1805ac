#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <nlohmann/json.hpp>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace icsim::phys {

using PhysValue = std::variant<bool, std::int64_t, double>;

enum class PhysKind : std::uint8_t { Bool, Int64, Float64 };

inline PhysKind kind_of(const PhysValue& v) { return static_cast<PhysKind>(v.index()); }
std::string_view to_string(PhysKind kind);

class UnknownKey : public std::out_of_range {
 public:
  explicit UnknownKey(std::string_view key)
      : std::out_of_range("undeclared physical key: " + std::string(key)) {}
};

class KindMismatch : public std::invalid_argument {
 public:
  explicit KindMismatch(std::string_view key)
      : std::invalid_argument("value kind differs from declaration: " + std::string(key)) {}
};

class MalformedSnapshot : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Shared physical state. Keys are declared up front; each write bumps the
/// revision counter.
class PhysStore {
 public:
  using WriteObserver =
      std::function<void(const std::string& key, const PhysValue& value, std::uint64_t revision)>;

  /// Throws std::invalid_argument for a duplicate key.
  void declare(std::string key, PhysValue initial);
  bool contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  /// Throws UnknownKey.
  const PhysValue& read(std::string_view key) const;
  /// Throws UnknownKey or KindMismatch. Returns the new revision.
  std::uint64_t write(std::string_view key, const PhysValue& value);

  std::uint64_t revision() const { return revision_; }
  const std::map<std::string, PhysValue, std::less<>>& entries() const { return entries_; }

  void set_observer(WriteObserver observer) { observer_ = std::move(observer); }

  bool operator==(const PhysStore& other) const {
    return revision_ == other.revision_ && entries_ == other.entries_;
  }

 private:
  friend PhysStore restore(const nlohmann::json& doc);

  std::map<std::string, PhysValue, std::less<>> entries_;
  std::uint64_t revision_ = 0;
  WriteObserver observer_;
};

/// {"<key>": {"kind": "bool|int64|float64", "value": v}, ..., "_revision": n}
/// Keys come out sorted, so dump() is byte-stable.
nlohmann::json snapshot(const PhysStore& store);
/// Throws MalformedSnapshot.
PhysStore restore(const nlohmann::json& doc);

/// Writes snapshot(store) plus a trailing newline. Throws std::runtime_error
/// when the file cannot be written.
void write_snapshot_file(const PhysStore& store, const std::string& path);

}  // namespace icsim::phys
