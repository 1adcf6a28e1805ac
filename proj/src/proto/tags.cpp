#include "icsim/proto/tags.hpp"

#include <stdexcept>

namespace icsim::proto {

void TagTable::declare(std::string name, TagData initial, bool writable) {
  if (tags_.contains(name)) throw std::invalid_argument("duplicate tag: " + name);
  TagValue tag{name, type_of(initial), initial, writable};
  tags_.emplace(std::move(name), std::move(tag));
}

const TagValue* TagTable::find(std::string_view name) const {
  auto it = tags_.find(name);
  return it == tags_.end() ? nullptr : &it->second;
}

EnipStatus TagTable::write(std::string_view name, const TagData& value) {
  auto it = tags_.find(name);
  if (it == tags_.end()) return EnipStatus::UnknownTag;
  TagValue& tag = it->second;
  if (!tag.writable) return EnipStatus::AccessDenied;
  if (type_of(value) != tag.type) return EnipStatus::TypeMismatch;
  tag.value = value;
  if (write_hook_) write_hook_(tag);
  return EnipStatus::Ok;
}

void TagTable::set(std::string_view name, const TagData& value) {
  auto it = tags_.find(name);
  if (it == tags_.end()) throw std::invalid_argument("unknown tag: " + std::string(name));
  if (type_of(value) != it->second.type) {
    throw std::invalid_argument("tag type is fixed: " + std::string(name));
  }
  it->second.value = value;
}

std::optional<EnipMessage> EnipServer::handle(const EnipMessage& request) {
  EnipMessage resp;
  resp.session_id = request.session_id;
  resp.tag_name = request.tag_name;

  switch (request.type) {
    case EnipType::RegisterSession:
      resp.type = EnipType::RegisterResp;
      resp.session_id = next_session_++;
      sessions_.insert(resp.session_id);
      return resp;

    case EnipType::ReadReq: {
      resp.type = EnipType::ReadResp;
      if (!session_valid(request.session_id)) {
        resp.status = EnipStatus::AccessDenied;
        return resp;
      }
      const TagValue* tag = tags_.find(request.tag_name);
      if (tag == nullptr) {
        resp.status = EnipStatus::UnknownTag;
        return resp;
      }
      resp.value = tag->value;
      return resp;
    }

    case EnipType::WriteReq:
      resp.type = EnipType::WriteResp;
      if (!session_valid(request.session_id)) {
        resp.status = EnipStatus::AccessDenied;
      } else if (!request.value) {
        resp.status = tags_.find(request.tag_name) ? EnipStatus::TypeMismatch
                                                   : EnipStatus::UnknownTag;
      } else {
        resp.status = tags_.write(request.tag_name, *request.value);
      }
      return resp;

    default:
      return std::nullopt;
  }
}

void ModbusServer::map_coil(std::uint16_t address, std::string tag) {
  const TagValue* t = tags_.find(tag);
  if (t == nullptr || t->type != TagType::Bool) {
    throw std::invalid_argument("coil must map to a Bool tag: " + tag);
  }
  if (coils_.contains(address)) throw std::invalid_argument("coil address already mapped");
  coils_.emplace(address, std::move(tag));
}

void ModbusServer::map_register(std::uint16_t address, std::string tag) {
  const TagValue* t = tags_.find(tag);
  if (t == nullptr || t->type != TagType::Int32) {
    throw std::invalid_argument("register must map to an Int32 tag: " + tag);
  }
  if (registers_.contains(address)) {
    throw std::invalid_argument("register address already mapped");
  }
  registers_.emplace(address, std::move(tag));
}

ModbusAdu ModbusServer::exception(const ModbusAdu& request, std::uint8_t code) const {
  ModbusAdu resp;
  resp.transaction_id = request.transaction_id;
  resp.unit_id = request.unit_id;
  resp.function = request.function | modbus::kExceptionBit;
  resp.data = {code};
  return resp;
}

std::optional<ModbusAdu> ModbusServer::handle(const ModbusAdu& request) {
  if (request.unit_id != unit_id_) return std::nullopt;
  if (request.function & modbus::kExceptionBit) {
    return exception(request, modbus::kIllegalFunction);
  }
  if (request.data.size() != 4) return exception(request, modbus::kIllegalDataValue);

  const std::uint16_t first = static_cast<std::uint16_t>((request.data[0] << 8) | request.data[1]);
  const std::uint16_t second = static_cast<std::uint16_t>((request.data[2] << 8) | request.data[3]);

  ModbusAdu resp;
  resp.transaction_id = request.transaction_id;
  resp.unit_id = request.unit_id;
  resp.function = request.function;

  switch (request.function) {
    case modbus::kReadHoldingRegisters: {
      if (second == 0 || second > 125) return exception(request, modbus::kIllegalDataValue);
      resp.data.push_back(static_cast<std::uint8_t>(second * 2));
      for (std::uint32_t a = first; a < std::uint32_t{first} + second; ++a) {
        auto it = registers_.find(static_cast<std::uint16_t>(a));
        if (it == registers_.end()) return exception(request, modbus::kIllegalDataAddress);
        const auto v = std::get<std::int32_t>(tags_.find(it->second)->value);
        be::put_u16(resp.data, static_cast<std::uint16_t>(v));
      }
      return resp;
    }
    case modbus::kReadCoils: {
      if (second == 0 || second > 2000) return exception(request, modbus::kIllegalDataValue);
      Bytes bits((second + 7) / 8, 0);
      for (std::uint32_t i = 0; i < second; ++i) {
        auto it = coils_.find(static_cast<std::uint16_t>(first + i));
        if (it == coils_.end()) return exception(request, modbus::kIllegalDataAddress);
        if (std::get<bool>(tags_.find(it->second)->value)) {
          bits[i / 8] = static_cast<std::uint8_t>(bits[i / 8] | (1u << (i % 8)));
        }
      }
      resp.data.push_back(static_cast<std::uint8_t>(bits.size()));
      resp.data.insert(resp.data.end(), bits.begin(), bits.end());
      return resp;
    }
    case modbus::kWriteSingleRegister: {
      auto it = registers_.find(first);
      if (it == registers_.end()) return exception(request, modbus::kIllegalDataAddress);
      // Read-only tags are reported as an unwritable address.
      if (tags_.write(it->second, TagData{std::int32_t{second}}) != EnipStatus::Ok) {
        return exception(request, modbus::kIllegalDataAddress);
      }
      resp.data = request.data;
      return resp;
    }
    case modbus::kWriteSingleCoil: {
      if (second != 0xff00 && second != 0x0000) {
        return exception(request, modbus::kIllegalDataValue);
      }
      auto it = coils_.find(first);
      if (it == coils_.end()) return exception(request, modbus::kIllegalDataAddress);
      if (tags_.write(it->second, TagData{second == 0xff00}) != EnipStatus::Ok) {
        return exception(request, modbus::kIllegalDataAddress);
      }
      resp.data = request.data;
      return resp;
    }
    default:
      return exception(request, modbus::kIllegalFunction);
  }
}

}  // namespace icsim::proto
