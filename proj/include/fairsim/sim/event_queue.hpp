#pragma once

#include <cstdint>
#include <optional>
#include <queue>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fairsim/core/ids.hpp"

namespace fairsim::sim {

template <class Event>
struct Scheduled {
  Tick at = 0;
  std::uint64_t seq = 0;
  Event event;
};

/// Min-queue of events keyed on (tick, sequence number). The sequence number
/// is assigned at scheduling time, so events at equal ticks pop in FIFO order.
template <class Event>
class EventQueue {
 public:
  std::uint64_t schedule(Event event, Tick at, Tick now) {
    if (at < now) {
      throw std::logic_error("event scheduled in the past");
    }
    const std::uint64_t seq = next_seq_++;
    heap_.push(Scheduled<Event>{at, seq, std::move(event)});
    return seq;
  }

  std::optional<Scheduled<Event>> pop() {
    if (heap_.empty()) {
      return std::nullopt;
    }
    // priority_queue::top is const; the element is discarded right after.
    Scheduled<Event> out = std::move(const_cast<Scheduled<Event>&>(heap_.top()));
    heap_.pop();
    return out;
  }

  std::optional<Tick> peek_tick() const {
    if (heap_.empty()) {
      return std::nullopt;
    }
    return heap_.top().at;
  }

  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  std::uint64_t scheduled_count() const { return next_seq_; }

 private:
  struct Later {
    bool operator()(const Scheduled<Event>& a, const Scheduled<Event>& b) const {
      if (a.at != b.at) {
        return a.at > b.at;
      }
      return a.seq > b.seq;
    }
  };

  std::priority_queue<Scheduled<Event>, std::vector<Scheduled<Event>>, Later> heap_;
  std::uint64_t next_seq_ = 0;
};

}  // namespace fairsim::sim
