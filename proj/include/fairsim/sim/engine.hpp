#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <utility>

#include "fairsim/core/ids.hpp"
#include "fairsim/sim/delay.hpp"
#include "fairsim/sim/event_queue.hpp"
#include "fairsim/sim/random.hpp"

namespace fairsim::sim {

template <class Payload>
struct Envelope {
  std::uint64_t message_id = 0;
  NodeId sender;
  NodeId receiver;
  Payload payload;
  Tick emitted_at = 0;
  Tick deliver_at = 0;
};

/// Tick-based discrete-event core. Owns the clock, the event queue, the
/// seeded substreams and the per-node delay model. Single-threaded.
template <class Event>
class Engine {
 public:
  Engine(std::uint64_t seed, Tick horizon) : random_(seed), horizon_(horizon) {}

  void add_node(NodeId node, NodeDelays delays) { nodes_[node] = delays; }
  bool has_node(NodeId node) const { return nodes_.contains(node); }

  const NodeDelays& delays(NodeId node) const {
    auto it = nodes_.find(node);
    if (it == nodes_.end()) {
      throw std::out_of_range("unknown node " + to_string(node));
    }
    return it->second;
  }

  Tick now() const { return now_; }
  Tick horizon() const { return horizon_; }
  RandomStreams& random() { return random_; }

  std::uint64_t schedule(Event event, Tick at) { return queue_.schedule(std::move(event), at, now_); }
  std::uint64_t schedule_in(Event event, Tick delay) { return schedule(std::move(event), now_ + delay); }

  std::optional<Tick> peek_tick() const { return queue_.peek_tick(); }

  /// Moves the clock forward without executing anything. Cannot pass the
  /// next pending event.
  void advance_to(Tick t) {
    const auto next = queue_.peek_tick();
    if (t < now_ || (next && t > *next)) {
      throw std::logic_error("clock can only advance up to the next pending event");
    }
    now_ = t;
  }

  /// Pops the next event and advances the clock to it. Returns nothing once
  /// the queue is empty or the next event lies beyond the horizon.
  std::optional<Scheduled<Event>> next() {
    const auto at = queue_.peek_tick();
    if (!at || *at > horizon_) {
      return std::nullopt;
    }
    auto ev = queue_.pop();
    now_ = ev->at;
    return ev;
  }

  /// Samples the sender's output delay and the receiver's input delay, adds
  /// `extra`, and schedules delivery. Event must be constructible from the
  /// envelope.
  template <class Payload>
  Envelope<Payload> transmit(NodeId sender, NodeId receiver, Payload payload, Tick extra = 0) {
    const NodeDelays& out = delays(sender);
    const NodeDelays& in = delays(receiver);
    const Tick out_delay = sample_delay(out.output, random_.stream(sender, StreamPurpose::output_delay));
    const Tick in_delay = sample_delay(in.input, random_.stream(receiver, StreamPurpose::input_delay));
    Envelope<Payload> env{next_message_id_++, sender, receiver, std::move(payload), now_,
                          now_ + out_delay + extra + in_delay};
    schedule(Event{env}, env.deliver_at);
    return env;
  }

  std::uint64_t messages_sent() const { return next_message_id_; }
  std::size_t pending() const { return queue_.size(); }

 private:
  RandomStreams random_;
  EventQueue<Event> queue_;
  std::unordered_map<NodeId, NodeDelays> nodes_;
  Tick horizon_;
  Tick now_ = 0;
  std::uint64_t next_message_id_ = 0;
};

}  // namespace fairsim::sim
