#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace edt::graph {

/// Dense task identifier, 0 <= id < n.
using TaskId = std::uint32_t;

struct Edge {
	TaskId src = 0;
	TaskId dst = 0;
	friend bool operator==(const Edge&, const Edge&) = default;
	friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Invalid graph input: out-of-range endpoints, cycles, bad sizes.
class GraphError : public std::invalid_argument {
  public:
	using std::invalid_argument::invalid_argument;
};

/// Immutable DAG in compressed sparse row form, one array per direction.
/// Successor and predecessor lists are sorted and duplicate-free.
class TaskGraph {
  public:
	TaskGraph() = default;

	/// Sorts and de-duplicates `edges`, then checks that the result is acyclic.
	/// An empty `work_units` means zero work everywhere.
	static TaskGraph from_edges(std::size_t n, std::vector<Edge> edges, std::vector<std::uint32_t> work_units = {});

	std::size_t size() const { return m_work.size(); }
	std::size_t edge_count() const { return m_succ.size(); }

	std::span<const TaskId> successors(TaskId t) const {
		return {m_succ.data() + m_succ_off[t], m_succ.data() + m_succ_off[t + 1]};
	}
	std::span<const TaskId> predecessors(TaskId t) const {
		return {m_pred.data() + m_pred_off[t], m_pred.data() + m_pred_off[t + 1]};
	}
	std::uint32_t pred_count(TaskId t) const { return static_cast<std::uint32_t>(m_pred_off[t + 1] - m_pred_off[t]); }
	std::uint32_t out_degree(TaskId t) const { return static_cast<std::uint32_t>(m_succ_off[t + 1] - m_succ_off[t]); }
	/// Offset of t's first predecessor in the flat predecessor array.
	std::size_t pred_offset(TaskId t) const { return m_pred_off[t]; }
	std::uint32_t work_units(TaskId t) const { return m_work[t]; }
	const std::vector<std::uint32_t>& work_units() const { return m_work; }

	std::vector<Edge> edges() const;
	std::vector<TaskId> sources() const;
	/// Kahn order with ties broken by smallest id.
	std::vector<TaskId> topological_order() const;

	friend bool operator==(const TaskGraph&, const TaskGraph&) = default;

  private:
	std::vector<std::size_t> m_succ_off{0};
	std::vector<TaskId> m_succ;
	std::vector<std::size_t> m_pred_off{0};
	std::vector<TaskId> m_pred;
	std::vector<std::uint32_t> m_work;
};

struct GraphStats {
	std::size_t n = 0;
	std::size_t edge_count = 0;
	std::size_t max_out_degree = 0;
	/// Widest level under longest-path leveling; stands in for r.
	std::size_t r_approx = 0;
	std::size_t source_count = 0;
};

GraphStats stats(const TaskGraph& g);

/// Longest-path level of every task (sources at level 0).
std::vector<std::uint32_t> levels(const TaskGraph& g);

} // namespace edt::graph
