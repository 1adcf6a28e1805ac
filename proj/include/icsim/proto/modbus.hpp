#pragma once

#include <cstdint>

#include "icsim/proto/codec.hpp"

namespace icsim::proto {

class ProtocolIdNonZero : public MalformedMessage {
 public:
  using MalformedMessage::MalformedMessage;
};

namespace modbus {

inline constexpr std::uint8_t kReadCoils = 0x01;
inline constexpr std::uint8_t kReadHoldingRegisters = 0x03;
inline constexpr std::uint8_t kWriteSingleCoil = 0x05;
inline constexpr std::uint8_t kWriteSingleRegister = 0x06;
inline constexpr std::uint8_t kExceptionBit = 0x80;

inline constexpr std::uint8_t kIllegalFunction = 0x01;
inline constexpr std::uint8_t kIllegalDataAddress = 0x02;
inline constexpr std::uint8_t kIllegalDataValue = 0x03;

/// True for the four supported function codes and their exception replies.
bool is_supported_function(std::uint8_t function);

}  // namespace modbus

/// Modbus/TCP application data unit with MBAP framing:
///   transaction_id u16 | protocol_id u16 | length u16 | unit_id u8 | function u8 | data
/// All multi-byte fields big-endian; length counts unit_id + function + data.
struct ModbusAdu {
  std::uint16_t transaction_id = 0;
  std::uint16_t protocol_id = 0;
  std::uint8_t unit_id = 0;
  std::uint8_t function = 0;
  Bytes data;

  std::uint16_t length() const { return static_cast<std::uint16_t>(2 + data.size()); }

  bool operator==(const ModbusAdu&) const = default;

  static ModbusAdu read_holding_registers(std::uint16_t txn, std::uint8_t unit,
                                          std::uint16_t addr, std::uint16_t count);
  static ModbusAdu write_single_register(std::uint16_t txn, std::uint8_t unit,
                                         std::uint16_t addr, std::uint16_t value);
  static ModbusAdu read_coils(std::uint16_t txn, std::uint8_t unit, std::uint16_t addr,
                              std::uint16_t count);
  static ModbusAdu write_single_coil(std::uint16_t txn, std::uint8_t unit,
                                     std::uint16_t addr, bool on);
};

/// Throws ProtocolIdNonZero or MalformedMessage (unsupported function,
/// oversized data).
Bytes encode_modbus(const ModbusAdu& adu);
/// Throws ProtocolIdNonZero, or MalformedMessage on truncation, a length
/// field that disagrees with the body, or an unsupported function code.
ModbusAdu decode_modbus(ByteView bytes);

}  // namespace icsim::proto
