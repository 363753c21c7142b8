#pragma once

#include "edt/graph/task_graph.hpp"
#include "edt/metrics/counters.hpp"
#include "edt/runtime/events.hpp"
#include "edt/runtime/sync_model.hpp"

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edt::runtime {

/// f_count: number of input dependences of a task.
using CountFn = std::function<std::uint32_t(TaskId)>;

/// f_pack: what a counted slot carries for its task.
struct Payload {
	TaskId id = 0;
	std::uint32_t work_units = 0;
};

struct RunOptions {
	std::size_t workers = 1;
	std::uint64_t seed = 0;
	/// Upper bound of a seeded random delay injected around each task, in µs.
	std::uint32_t jitter_us = 0;
	bool record_events = true;
	std::chrono::milliseconds deadlock_grace{2000};
	/// Defaults to the graph's in-degree.
	CountFn f_count;
	/// Tasks the AutodecWithSrc master preschedules; defaults to the graph's
	/// sources. Any superset of the sources is valid.
	std::optional<std::vector<TaskId>> preschedule_set;
};

struct ExecutionReport {
	SyncModel model = SyncModel::Prescribed;
	std::size_t n = 0;
	std::size_t workers = 0;
	std::uint64_t seed = 0;
	/// Sorted by seq; empty unless events were recorded.
	std::vector<Event> events;
	metrics::OverheadCounters counters;
	double wall_ms = 0.0;
	std::size_t tasks_executed = 0;
};

/// Raised when no lane can make progress while tasks remain.
class DeadlockError : public std::runtime_error {
  public:
	DeadlockError(const std::string& what, std::vector<TaskId> stuck) : std::runtime_error(what), m_stuck(std::move(stuck)) {}
	const std::vector<TaskId>& stuck_tasks() const { return m_stuck; }

  private:
	std::vector<TaskId> m_stuck;
};

/// A broken runtime contract, e.g. f_count returning 0 for a task that has a
/// completed predecessor.
class InvariantViolation : public std::logic_error {
  public:
	using std::logic_error::logic_error;
};

/// Executes every task of `g` once under `model`.
///
/// Lanes: lane 0 is the master, lanes 1..workers are workers. With more
/// than one worker each lane is a thread, and every model except Prescribed
/// and Counted runs its master alongside the workers. With one worker both
/// lanes share the calling thread: the master lane runs until it has nothing
/// left, then the worker lane drains the queue. That run is deterministic,
/// and it is the schedule in which a concurrent master gets furthest ahead
/// of execution. Start-up operations are only counted for Prescribed and
/// Counted, whose workers cannot start before the master phase ends.
///
/// Peak meters are exact maxima of their linearized value sequences. Because
/// an object is counted after it is published, a level can briefly read low
/// by at most the number of lanes.
ExecutionReport run(const graph::TaskGraph& g, SyncModel model, const RunOptions& options = {});

} // namespace edt::runtime
