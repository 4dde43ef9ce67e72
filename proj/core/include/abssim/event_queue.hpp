#pragma once

#include <optional>
#include <queue>
#include <vector>

namespace abssim {

/// Completion event: worker `worker` finishes the computation it started
/// under generation `generation` at simulated time `time`.
struct CompletionEvent {
  double time = 0.0;
  int worker = -1;
  int generation = 0;
};

/// Min-ordered completion queue. Pop order is non-decreasing in time with
/// ties broken by lowest worker id (the determinism contract). Events whose
/// generation no longer matches the worker's current generation are stale
/// leftovers of a forced restart and are dropped by pop_valid.
class EventQueue {
 public:
  void push(const CompletionEvent& ev) { heap_.push(ev); }
  bool empty() const { return heap_.empty(); }
  size_t size() const { return heap_.size(); }

  /// Next event whose generation matches current_generations[worker];
  /// silently discards stale ones. nullopt when exhausted.
  std::optional<CompletionEvent> pop_valid(const std::vector<int>& current_generations) {
    while (!heap_.empty()) {
      CompletionEvent ev = heap_.top();
      heap_.pop();
      if (ev.generation == current_generations[ev.worker]) return ev;
    }
    return std::nullopt;
  }

 private:
  struct Later {
    bool operator()(const CompletionEvent& a, const CompletionEvent& b) const {
      if (a.time != b.time) return a.time > b.time;
      return a.worker > b.worker;
    }
  };
  std::priority_queue<CompletionEvent, std::vector<CompletionEvent>, Later> heap_;
};

}  // namespace abssim
