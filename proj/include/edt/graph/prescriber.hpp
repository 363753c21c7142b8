#pragma once

#include "edt/graph/task_graph.hpp"

#include <cstddef>
#include <vector>

namespace edt::graph {

struct PrescriberExpansion {
	/// Original tasks keep their ids; prescribers are appended after them.
	TaskGraph graph;
	std::size_t original_n = 0;
	/// Prescribers added in each round that was executed.
	std::vector<std::size_t> per_round;
	/// prescribed[k] is the task prescribed by task original_n + k.
	std::vector<TaskId> prescribed;
	bool fixpoint = false;
};

/// Repeatedly gives every task with more than one predecessor (and no
/// prescriber yet) a new prescriber task whose successors are that task's
/// direct predecessors. Stops after `rounds` rounds or when a round adds
/// nothing. New prescribers are sources when created, so no cycle can form.
PrescriberExpansion prescriber_expand(const TaskGraph& g, std::size_t rounds);

} // namespace edt::graph
