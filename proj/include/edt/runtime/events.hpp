#pragma once

#include "edt/graph/task_graph.hpp"

#include <cstdint>
#include <string_view>

namespace edt::runtime {

using graph::TaskId;

enum class EventKind : std::uint8_t {
	TaskStart,
	TaskEnd,
	SlotInit,
	Decrement,
	Put,
	Get,
	Preschedule,
	MasterOp,
};

std::string_view to_string(EventKind k);

/// One log record. `aux` depends on the kind:
///   SlotInit     initial count
///   Decrement    counter value after the decrement
///   Put / Get    the other endpoint of the tag (successor for a Tags1 put,
///                predecessor for any get); unused for a Tags2 put
///   Preschedule  1 if this call installed the slot, else 0
///   MasterOp     0 task creation, 1 edge slot, 2 count evaluation, 3 slot creation
struct Event {
	std::uint64_t seq = 0;
	std::int64_t t_ns = 0;
	std::uint32_t lane = 0;
	EventKind kind = EventKind::TaskStart;
	TaskId task = 0;
	std::uint32_t aux = 0;
};

} // namespace edt::runtime
