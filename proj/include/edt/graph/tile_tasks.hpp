#pragma once

#include "edt/graph/task_graph.hpp"
#include "edt/poly/enumerate.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace edt::graph {

struct TileStatement {
	std::string name;
	poly::TileSet tiles;
};

/// An inter-tile dependence over (T_s | T_t | params).
struct TileDependence {
	std::string source_stmt;
	std::string target_stmt;
	poly::RationalPolyhedron delta_t;
};

/// Tasks instantiated from tile domains, with the rank/count functions the
/// runtime consumes. Task ids are the statement's offset plus the
/// lexicographic rank of the tile within its statement.
class TileTaskSpace {
  public:
	/// Enumerates every dependence and keeps the pairs whose endpoints are both
	/// in-domain, dropping a tile's pairs with itself. Throws GraphError on an
	/// unknown statement or a cyclic result, and EnumerationCapExceeded when a
	/// scan would exceed `cap`.
	static TileTaskSpace build(std::vector<TileStatement> statements, std::vector<TileDependence> deps, std::vector<std::int64_t> params,
	                           std::uint64_t cap = poly::default_enumeration_cap);

	const TaskGraph& graph() const { return m_graph; }
	const std::vector<TileStatement>& statements() const { return m_statements; }

	/// f_rank: unique id of a tile of statement `stmt`. Throws GraphError if
	/// the tile is not in the statement's domain.
	TaskId rank(std::size_t stmt, const poly::Point& tile) const;
	/// Inverse of rank().
	std::pair<std::size_t, poly::Point> coords(TaskId t) const;

	/// f_count: distinct in-domain predecessors of `t`, recomputed from the
	/// dependence polyhedra rather than read back from the graph.
	std::uint32_t count_predecessors(TaskId t) const;

	/// Tasks without any predecessor, found from the polyhedra.
	std::vector<TaskId> source_tasks() const;

  private:
	std::size_t statement_index(const std::string& name) const;

	std::vector<TileStatement> m_statements;
	std::vector<TileDependence> m_deps;
	std::vector<std::size_t> m_src_index, m_dst_index;
	std::vector<std::int64_t> m_params;
	std::vector<TaskId> m_offsets;
	std::uint64_t m_cap = poly::default_enumeration_cap;
	TaskGraph m_graph;
};

} // namespace edt::graph
