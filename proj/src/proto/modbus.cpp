#include "icsim/proto/modbus.hpp"

namespace icsim::proto {

namespace {

// Largest PDU the standard allows is 253 bytes (function + 252 data).
constexpr std::size_t kMaxData = 252;

ModbusAdu with_pair(std::uint16_t txn, std::uint8_t unit, std::uint8_t function,
                    std::uint16_t first, std::uint16_t second) {
  ModbusAdu adu;
  adu.transaction_id = txn;
  adu.unit_id = unit;
  adu.function = function;
  be::put_u16(adu.data, first);
  be::put_u16(adu.data, second);
  return adu;
}

}  // namespace

bool modbus::is_supported_function(std::uint8_t function) {
  const std::uint8_t base = function & static_cast<std::uint8_t>(~kExceptionBit);
  return base == kReadCoils || base == kReadHoldingRegisters || base == kWriteSingleCoil ||
         base == kWriteSingleRegister;
}

ModbusAdu ModbusAdu::read_holding_registers(std::uint16_t txn, std::uint8_t unit,
                                            std::uint16_t addr, std::uint16_t count) {
  return with_pair(txn, unit, modbus::kReadHoldingRegisters, addr, count);
}

ModbusAdu ModbusAdu::write_single_register(std::uint16_t txn, std::uint8_t unit,
                                           std::uint16_t addr, std::uint16_t value) {
  return with_pair(txn, unit, modbus::kWriteSingleRegister, addr, value);
}

ModbusAdu ModbusAdu::read_coils(std::uint16_t txn, std::uint8_t unit, std::uint16_t addr,
                                std::uint16_t count) {
  return with_pair(txn, unit, modbus::kReadCoils, addr, count);
}

ModbusAdu ModbusAdu::write_single_coil(std::uint16_t txn, std::uint8_t unit,
                                       std::uint16_t addr, bool on) {
  return with_pair(txn, unit, modbus::kWriteSingleCoil, addr, on ? 0xff00 : 0x0000);
}

Bytes encode_modbus(const ModbusAdu& adu) {
  if (adu.protocol_id != 0) throw ProtocolIdNonZero("modbus: protocol_id must be 0");
  if (!modbus::is_supported_function(adu.function)) {
    throw MalformedMessage("modbus: unsupported function code");
  }
  if (adu.data.size() > kMaxData) throw MalformedMessage("modbus: PDU too long");
  Bytes out;
  out.reserve(8 + adu.data.size());
  be::put_u16(out, adu.transaction_id);
  be::put_u16(out, adu.protocol_id);
  be::put_u16(out, adu.length());
  out.push_back(adu.unit_id);
  out.push_back(adu.function);
  out.insert(out.end(), adu.data.begin(), adu.data.end());
  return out;
}

ModbusAdu decode_modbus(ByteView bytes) {
  be::Reader r(bytes, "modbus");
  ModbusAdu adu;
  adu.transaction_id = r.u16();
  adu.protocol_id = r.u16();
  const std::uint16_t length = r.u16();
  if (adu.protocol_id != 0) throw ProtocolIdNonZero("modbus: protocol_id must be 0");
  if (length < 2 || length != r.remaining()) {
    throw MalformedMessage("modbus: length field inconsistent with body");
  }
  if (length - 2u > kMaxData) throw MalformedMessage("modbus: PDU too long");
  adu.unit_id = r.u8();
  adu.function = r.u8();
  if (!modbus::is_supported_function(adu.function)) {
    throw MalformedMessage("modbus: unsupported function code");
  }
  ByteView data = r.take(r.remaining());
  adu.data.assign(data.begin(), data.end());
  return adu;
}

}  // namespace icsim::proto
