#include "icsim/proto/enip_client.hpp"

namespace icsim::proto {

namespace {

EnipType response_to(EnipType request) {
  return request == EnipType::ReadReq ? EnipType::ReadResp : EnipType::WriteResp;
}

}  // namespace

EnipClient::EnipClient(Host& host, Ipv4Addr server)
    : host_(host), server_(server), local_port_(host.allocate_port()) {
  host_.listen(local_port_, [this](const TransportMessage& msg) { on_message(msg); });
}

void EnipClient::read(std::string tag, ResponseHandler on_response) {
  EnipMessage msg;
  msg.type = EnipType::ReadReq;
  msg.tag_name = std::move(tag);
  submit(std::move(msg), std::move(on_response));
}

void EnipClient::write(std::string tag, TagData value, ResponseHandler on_response) {
  EnipMessage msg;
  msg.type = EnipType::WriteReq;
  msg.tag_name = std::move(tag);
  msg.value = value;
  submit(std::move(msg), std::move(on_response));
}

void EnipClient::submit(EnipMessage msg, ResponseHandler on_response) {
  if (!session_) {
    queued_.push_back(Request{std::move(msg), std::move(on_response)});
    if (!registering_) {
      registering_ = true;
      EnipMessage reg;
      reg.type = EnipType::RegisterSession;
      transmit(reg);
    }
    return;
  }
  msg.session_id = *session_;
  transmit(msg);
  ++sent_;
  inflight_.push_back(Request{std::move(msg), std::move(on_response)});
}

void EnipClient::transmit(const EnipMessage& msg) {
  host_.send_message(TransportMessage{host_.ip(), server_, local_port_, kEnipPort,
                                      encode_enip(msg)});
}

void EnipClient::on_message(const TransportMessage& msg) {
  if (msg.src_ip != server_) return;
  EnipMessage resp;
  try {
    resp = decode_enip(msg.payload);
  } catch (const MalformedMessage&) {
    ++mismatched_;
    return;
  }

  if (resp.type == EnipType::RegisterResp) {
    if (session_ || !registering_) return;
    session_ = resp.session_id;
    registering_ = false;
    std::deque<Request> waiting = std::move(queued_);
    queued_.clear();
    for (Request& r : waiting) submit(std::move(r.msg), std::move(r.on_response));
    return;
  }

  if (inflight_.empty()) {
    ++mismatched_;
    return;
  }
  Request req = std::move(inflight_.front());
  inflight_.pop_front();
  if (resp.type != response_to(req.msg.type) || resp.tag_name != req.msg.tag_name) {
    ++mismatched_;
    return;
  }
  if (req.on_response) req.on_response(resp);
}

}  // namespace icsim::proto
