#include <gtest/gtest.h>

#include "icsim/proto/tags.hpp"

namespace icsim::proto {
namespace {

struct Server {
  TagTable tags;
  EnipServer enip{tags};
  ModbusServer modbus{tags, 1};

  Server() {
    tags.declare("valve", TagData{false}, true);
    tags.declare("level", TagData{std::int32_t{500}}, false);
    tags.declare("setpoint", TagData{std::int32_t{0}}, true);
    modbus.map_coil(0, "valve");
    modbus.map_register(1, "level");
    modbus.map_register(2, "setpoint");
  }

  std::uint32_t session() {
    return enip.handle({EnipType::RegisterSession, EnipStatus::Ok, 0, "", {}})->session_id;
  }
};

TEST(TagTable, DeclareFindWrite) {
  TagTable t;
  t.declare("a", TagData{true}, true);
  EXPECT_THROW(t.declare("a", TagData{false}, true), std::invalid_argument);
  ASSERT_NE(t.find("a"), nullptr);
  EXPECT_EQ(t.find("a")->type, TagType::Bool);
  EXPECT_EQ(t.find("b"), nullptr);
  EXPECT_EQ(t.write("b", TagData{true}), EnipStatus::UnknownTag);
  EXPECT_EQ(t.write("a", TagData{std::int32_t{1}}), EnipStatus::TypeMismatch);
  EXPECT_EQ(t.write("a", TagData{false}), EnipStatus::Ok);
  EXPECT_EQ(t.find("a")->value, TagData{false});
}

TEST(TagTable, SetIgnoresAccessButKeepsType) {
  TagTable t;
  t.declare("ro", TagData{std::int32_t{1}}, false);
  EXPECT_EQ(t.write("ro", TagData{std::int32_t{2}}), EnipStatus::AccessDenied);
  t.set("ro", TagData{std::int32_t{3}});
  EXPECT_EQ(t.find("ro")->value, TagData{std::int32_t{3}});
  EXPECT_THROW(t.set("ro", TagData{true}), std::invalid_argument);
  EXPECT_THROW(t.set("nope", TagData{true}), std::invalid_argument);
}

TEST(TagTable, WriteHookSeesOnlySuccessfulWrites) {
  TagTable t;
  t.declare("a", TagData{false}, true);
  t.declare("ro", TagData{false}, false);
  std::vector<std::string> seen;
  t.on_write([&](const TagValue& v) { seen.push_back(v.name); });
  t.write("a", TagData{true});
  t.write("ro", TagData{true});
  t.write("a", TagData{std::int32_t{1}});
  EXPECT_EQ(seen, std::vector<std::string>{"a"});
}

TEST(EnipServer, SessionsAreRequired) {
  Server s;
  auto r = s.enip.handle({EnipType::ReadReq, EnipStatus::Ok, 77, "level", {}});
  ASSERT_TRUE(r);
  EXPECT_EQ(r->type, EnipType::ReadResp);
  EXPECT_EQ(r->status, EnipStatus::AccessDenied);
  EXPECT_FALSE(r->value);
  const auto id = s.session();
  EXPECT_TRUE(s.enip.session_valid(id));
  EXPECT_NE(s.session(), id);
}

TEST(EnipServer, ReadAndWriteStatuses) {
  Server s;
  const auto id = s.session();
  auto r = s.enip.handle({EnipType::ReadReq, EnipStatus::Ok, id, "level", {}});
  EXPECT_EQ(r->status, EnipStatus::Ok);
  EXPECT_EQ(r->value, TagData{std::int32_t{500}});
  EXPECT_EQ(r->tag_name, "level");

  EXPECT_EQ(s.enip.handle({EnipType::ReadReq, EnipStatus::Ok, id, "x", {}})->status,
            EnipStatus::UnknownTag);
  EXPECT_EQ(s.enip.handle({EnipType::WriteReq, EnipStatus::Ok, id, "level", TagData{std::int32_t{1}}})->status,
            EnipStatus::AccessDenied);
  EXPECT_EQ(s.enip.handle({EnipType::WriteReq, EnipStatus::Ok, id, "valve", TagData{std::int32_t{1}}})->status,
            EnipStatus::TypeMismatch);
  EXPECT_EQ(s.enip.handle({EnipType::WriteReq, EnipStatus::Ok, id, "valve", {}})->status,
            EnipStatus::TypeMismatch);
  EXPECT_EQ(s.enip.handle({EnipType::WriteReq, EnipStatus::Ok, id, "x", {}})->status,
            EnipStatus::UnknownTag);
  auto w = s.enip.handle({EnipType::WriteReq, EnipStatus::Ok, id, "valve", TagData{true}});
  EXPECT_EQ(w->type, EnipType::WriteResp);
  EXPECT_EQ(w->status, EnipStatus::Ok);
  EXPECT_EQ(s.tags.find("valve")->value, TagData{true});
}

TEST(EnipServer, ResponsesAreNotAnswered) {
  Server s;
  EXPECT_FALSE(s.enip.handle({EnipType::ReadResp, EnipStatus::Ok, 1, "level", {}}));
  EXPECT_FALSE(s.enip.handle({EnipType::WriteResp, EnipStatus::Ok, 1, "level", {}}));
}

TEST(ModbusServer, MappingRules) {
  Server s;
  EXPECT_THROW(s.modbus.map_coil(5, "level"), std::invalid_argument);
  EXPECT_THROW(s.modbus.map_register(5, "valve"), std::invalid_argument);
  EXPECT_THROW(s.modbus.map_register(1, "setpoint"), std::invalid_argument);
  EXPECT_THROW(s.modbus.map_coil(9, "missing"), std::invalid_argument);
}

TEST(ModbusServer, ReadsRegistersAndCoils) {
  Server s;
  auto r = s.modbus.handle(ModbusAdu::read_holding_registers(9, 1, 1, 1));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->transaction_id, 9);
  EXPECT_EQ(r->function, modbus::kReadHoldingRegisters);
  // 500 = 0x01f4
  EXPECT_EQ(r->data, (Bytes{2, 0x01, 0xf4}));

  s.tags.set("valve", TagData{true});
  auto c = s.modbus.handle(ModbusAdu::read_coils(1, 1, 0, 1));
  EXPECT_EQ(c->data, (Bytes{1, 0x01}));
}

TEST(ModbusServer, WritesHonorAccess) {
  Server s;
  auto w = s.modbus.handle(ModbusAdu::write_single_coil(1, 1, 0, true));
  EXPECT_EQ(w->function, modbus::kWriteSingleCoil);
  EXPECT_EQ(s.tags.find("valve")->value, TagData{true});

  auto reg = s.modbus.handle(ModbusAdu::write_single_register(2, 1, 2, 1234));
  EXPECT_EQ(reg->function, modbus::kWriteSingleRegister);
  EXPECT_EQ(s.tags.find("setpoint")->value, TagData{std::int32_t{1234}});

  auto ro = s.modbus.handle(ModbusAdu::write_single_register(3, 1, 1, 7));
  EXPECT_EQ(ro->function, modbus::kWriteSingleRegister | modbus::kExceptionBit);
  EXPECT_EQ(ro->data, Bytes{modbus::kIllegalDataAddress});
  EXPECT_EQ(s.tags.find("level")->value, TagData{std::int32_t{500}});
}

TEST(ModbusServer, Exceptions) {
  Server s;
  auto addr = s.modbus.handle(ModbusAdu::read_holding_registers(1, 1, 40, 1));
  EXPECT_EQ(addr->function, 0x83);
  EXPECT_EQ(addr->data, Bytes{modbus::kIllegalDataAddress});
  // Range spanning an unmapped address.
  EXPECT_EQ(s.modbus.handle(ModbusAdu::read_holding_registers(1, 1, 1, 3))->data,
            Bytes{modbus::kIllegalDataAddress});
  EXPECT_EQ(s.modbus.handle(ModbusAdu::read_coils(1, 1, 0, 0))->data,
            Bytes{modbus::kIllegalDataValue});
  ModbusAdu bad_coil = ModbusAdu::write_single_coil(1, 1, 0, true);
  bad_coil.data[2] = 0x12;
  EXPECT_EQ(s.modbus.handle(bad_coil)->data, Bytes{modbus::kIllegalDataValue});
}

TEST(ModbusServer, OtherUnitIsIgnored) {
  Server s;
  EXPECT_FALSE(s.modbus.handle(ModbusAdu::read_holding_registers(1, 2, 1, 1)));
}

}  // namespace
}  // namespace icsim::proto
