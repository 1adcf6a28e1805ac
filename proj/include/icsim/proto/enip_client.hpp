#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <string>

#include "icsim/proto/enip.hpp"
#include "icsim/proto/host.hpp"

namespace icsim::proto {

/// Connected ENIP-lite client. Registers a session on first use and queues
/// requests until the RegisterResp arrives. Responses are matched to
/// requests in FIFO order.
class EnipClient {
 public:
  using ResponseHandler = std::function<void(const EnipMessage&)>;

  EnipClient(Host& host, Ipv4Addr server);

  EnipClient(const EnipClient&) = delete;
  EnipClient& operator=(const EnipClient&) = delete;

  void read(std::string tag, ResponseHandler on_response);
  void write(std::string tag, TagData value, ResponseHandler on_response);

  bool registered() const { return session_.has_value(); }
  std::optional<std::uint32_t> session_id() const { return session_; }
  Ipv4Addr server() const { return server_; }
  std::uint16_t local_port() const { return local_port_; }

  /// Requests sent (excluding session registration) and responses that did
  /// not match the oldest outstanding request.
  std::uint64_t sent() const { return sent_; }
  std::uint64_t mismatched() const { return mismatched_; }
  std::size_t outstanding() const { return inflight_.size() + queued_.size(); }

 private:
  struct Request {
    EnipMessage msg;
    ResponseHandler on_response;
  };

  void submit(EnipMessage msg, ResponseHandler on_response);
  void transmit(const EnipMessage& msg);
  void on_message(const TransportMessage& msg);

  Host& host_;
  Ipv4Addr server_;
  std::uint16_t local_port_;
  std::optional<std::uint32_t> session_;
  bool registering_ = false;
  std::deque<Request> queued_;
  std::deque<Request> inflight_;
  std::uint64_t sent_ = 0;
  std::uint64_t mismatched_ = 0;
};

}  // namespace icsim::proto
