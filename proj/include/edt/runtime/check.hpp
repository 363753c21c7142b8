#pragma once

#include "edt/graph/task_graph.hpp"
#include "edt/runtime/runtime.hpp"

#include <optional>
#include <string>
#include <vector>

namespace edt::runtime {

struct Violation {
	std::string what;
	std::optional<TaskId> task;
};

/// Checks a recorded run against the execution contract:
///   - every task has exactly one TaskStart and one TaskEnd, in that order;
///   - each TaskStart comes after the TaskEnd of every predecessor;
///   - slot-based models install each slot once with the task's full count
///     and apply exactly pred_count decrements whose resulting values are
///     pred_count − 1, ..., 0 in some order (concurrent decrements may be
///     logged out of order);
///   - Tags1 puts and gets each edge tag exactly once; Tags2 puts each task
///     tag once and gets every predecessor's tag once;
///   - Prescribed performs n + edge_count master operations;
///   - sync objects created = destroyed + live at end, with none left live.
/// Expects the report to carry its event log.
std::vector<Violation> check_execution(const graph::TaskGraph& g, const ExecutionReport& report);

/// Events mentioning `task`, plus the starts and ends of its predecessors.
std::vector<Event> event_excerpt(const graph::TaskGraph& g, const ExecutionReport& report, TaskId task, std::size_t limit = 40);

/// Report as JSON: model, n, workers, seed, wall_ms, tasks_executed,
/// counters, and the event log when `with_events` is set.
std::string report_json(const ExecutionReport& report, bool with_events);

} // namespace edt::runtime
