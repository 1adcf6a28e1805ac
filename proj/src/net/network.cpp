#include "icsim/net/network.hpp"

#include <cmath>

namespace icsim::net {

std::string_view to_string(EtherType type) {
  switch (type) {
    case EtherType::Transport: return "transport";
    case EtherType::Arp: return "arp";
  }
  return "unknown";
}

void LinkParams::validate() const {
  if (!(loss >= 0.0 && loss <= 1.0)) {
    throw std::invalid_argument("link loss must be within [0, 1]");
  }
}

Endpoint Link::other(Endpoint from) const {
  if (from == a) return b;
  if (from == b) return a;
  throw PortUnattached("endpoint is not part of this link");
}

Micros Link::transit_time(std::uint32_t size_bytes) const {
  Micros serialization = 0;
  if (params.bandwidth_bps != 0) {
    const std::uint64_t bit_us = std::uint64_t{size_bytes} * 8 * kSecond;
    serialization = (bit_us + params.bandwidth_bps - 1) / params.bandwidth_bps;
  }
  return params.delay + serialization;
}

Node::Node(Network& network, std::string name)
    : network_(network), name_(std::move(name)) {}

Simulator& Node::sim() { return network_.sim(); }

void Network::register_node(std::unique_ptr<Node> node) {
  if (find(node->name()) != nullptr) {
    throw std::invalid_argument("duplicate node name: " + node->name());
  }
  node->id_ = static_cast<NodeId>(nodes_.size());
  nodes_.push_back(std::move(node));
}

Node* Network::find(std::string_view name) {
  for (auto& node : nodes_) {
    if (node->name() == name) return node.get();
  }
  return nullptr;
}

std::size_t Network::connect(Endpoint a, Endpoint b, LinkParams params) {
  params.validate();
  if (a.node >= nodes_.size() || b.node >= nodes_.size()) {
    throw std::invalid_argument("link endpoint refers to an unknown node");
  }
  if (a == b) throw std::invalid_argument("link endpoints must differ");
  for (Endpoint e : {a, b}) {
    if (link_by_endpoint_.contains(e)) {
      throw std::invalid_argument("port " + std::to_string(e.port) + " on " +
                                  nodes_[e.node]->name() + " already has a link");
    }
  }
  const std::size_t index = links_.size();
  links_.push_back(Link{a, b, params});
  link_by_endpoint_[a] = index;
  link_by_endpoint_[b] = index;
  return index;
}

std::optional<std::size_t> Network::link_at(Endpoint e) const {
  auto it = link_by_endpoint_.find(e);
  if (it == link_by_endpoint_.end()) return std::nullopt;
  return it->second;
}

std::vector<PortId> Network::ports(NodeId node) const {
  std::vector<PortId> out;
  for (auto it = link_by_endpoint_.lower_bound(Endpoint{node, 0});
       it != link_by_endpoint_.end() && it->first.node == node; ++it) {
    out.push_back(it->first.port);
  }
  return out;
}

Json Network::describe(const EthernetFrame& frame) const {
  Json d;
  d["src"] = frame.src.to_string();
  d["dst"] = frame.dst.to_string();
  d["ethertype"] = to_string(frame.ethertype);
  d["size"] = frame.size_bytes();
  if (describer_) describer_(frame, d);
  return d;
}

TxOutcome Network::transmit(NodeId from, PortId port, EthernetFrame frame) {
  const Endpoint from_end{from, port};
  auto index = link_at(from_end);
  if (!index) {
    ++counters_.tx;
    ++counters_.dead_lettered;
    Json d = describe(frame);
    d["port"] = port;
    sim_.emit(TraceKind::Tx, nodes_.at(from)->name(), d);
    d["reason"] = "unattached";
    sim_.emit(TraceKind::Drop, nodes_.at(from)->name(), std::move(d));
    return TxOutcome::DeadLettered;
  }
  return transmit_on(*index, from_end, std::move(frame));
}

TxOutcome Network::transmit_on(std::size_t link_index, Endpoint from_end,
                               EthernetFrame frame) {
  if (link_index >= links_.size()) throw PortUnattached("no such link");
  const Link& link = links_[link_index];
  const Endpoint to = link.other(from_end);

  ++counters_.tx;
  Json d = describe(frame);
  d["port"] = from_end.port;
  const std::string& from_name = nodes_.at(from_end.node)->name();
  sim_.emit(TraceKind::Tx, from_name, d);

  if (sim_.rng().bernoulli(link.params.loss)) {
    ++counters_.dropped_loss;
    d["reason"] = "loss";
    sim_.emit(TraceKind::Drop, from_name, std::move(d));
    return TxOutcome::DroppedLoss;
  }

  const Micros at = sim_.now() + link.transit_time(frame.size_bytes());
  sim_.schedule(at, [this, to, frame = std::move(frame)] {
    ++counters_.rx;
    Node& dest = *nodes_.at(to.node);
    Json rx = describe(frame);
    rx["port"] = to.port;
    sim_.emit(TraceKind::Rx, dest.name(), std::move(rx));
    dest.receive(frame, to.port);
  });
  return TxOutcome::Scheduled;
}

}  // namespace icsim::net
