#include "edt/graph/tile_tasks.hpp"

#include <algorithm>

namespace edt::graph {

std::size_t TileTaskSpace::statement_index(const std::string& name) const {
	for(std::size_t i = 0; i < m_statements.size(); ++i) {
		if(m_statements[i].name == name) return i;
	}
	throw GraphError("unknown statement '" + name + "'");
}

TileTaskSpace TileTaskSpace::build(std::vector<TileStatement> statements, std::vector<TileDependence> deps, std::vector<std::int64_t> params,
                                   std::uint64_t cap) {
	TileTaskSpace space;
	space.m_statements = std::move(statements);
	space.m_deps = std::move(deps);
	space.m_params = std::move(params);
	space.m_cap = cap;

	std::size_t total = 0;
	for(const auto& s : space.m_statements) {
		space.m_offsets.push_back(static_cast<TaskId>(total));
		total += s.tiles.size();
	}
	space.m_offsets.push_back(static_cast<TaskId>(total));

	std::vector<Edge> edges;
	for(const auto& dep : space.m_deps) {
		const std::size_t si = space.statement_index(dep.source_stmt);
		const std::size_t ti = space.statement_index(dep.target_stmt);
		space.m_src_index.push_back(si);
		space.m_dst_index.push_back(ti);
		const auto& src = space.m_statements[si].tiles;
		const auto& dst = space.m_statements[ti].tiles;
		if(src.empty() || dst.empty()) continue;
		if(dep.delta_t.dim() != src.dim() + dst.dim()) throw poly::DimensionMismatch("tile dependence does not match statement dimensions");

		poly::Box box = src.bounds();
		const poly::Box tb = dst.bounds();
		box.insert(box.end(), tb.begin(), tb.end());
		const poly::RationalPolyhedron bound = dep.delta_t.bind_params(space.m_params);
		for(const auto& pair : poly::integer_points(bound, {}, box, cap)) {
			const poly::Point s(pair.begin(), pair.begin() + static_cast<std::ptrdiff_t>(src.dim()));
			const poly::Point t(pair.begin() + static_cast<std::ptrdiff_t>(src.dim()), pair.end());
			const auto rs = src.rank_of(s);
			const auto rt = dst.rank_of(t);
			if(!rs || !rt) continue;
			const TaskId a = space.m_offsets[si] + static_cast<TaskId>(*rs);
			const TaskId b = space.m_offsets[ti] + static_cast<TaskId>(*rt);
			if(a != b) edges.push_back({a, b});
		}
	}
	space.m_graph = TaskGraph::from_edges(total, std::move(edges));
	return space;
}

TaskId TileTaskSpace::rank(std::size_t stmt, const poly::Point& tile) const {
	const auto r = m_statements.at(stmt).tiles.rank_of(tile);
	if(!r) throw GraphError("tile is not in the domain of statement '" + m_statements[stmt].name + "'");
	return m_offsets[stmt] + static_cast<TaskId>(*r);
}

std::pair<std::size_t, poly::Point> TileTaskSpace::coords(TaskId t) const {
	if(t >= m_offsets.back()) throw GraphError("task id out of range");
	const auto it = std::upper_bound(m_offsets.begin(), m_offsets.end(), t);
	const std::size_t stmt = static_cast<std::size_t>(it - m_offsets.begin()) - 1;
	return {stmt, m_statements[stmt].tiles.points()[t - m_offsets[stmt]]};
}

std::uint32_t TileTaskSpace::count_predecessors(TaskId t) const {
	const auto [stmt, tile] = coords(t);
	// Two dependences may yield the same source tile, so collect before counting.
	std::vector<TaskId> preds;
	for(std::size_t d = 0; d < m_deps.size(); ++d) {
		if(m_dst_index[d] != stmt) continue;
		const auto& src = m_statements[m_src_index[d]].tiles;
		if(src.empty()) continue;
		const poly::RationalPolyhedron cand = poly::predecessors_of(m_deps[d].delta_t, tile, m_params);
		for(const auto& s : poly::integer_points(cand, {}, src.bounds(), m_cap)) {
			const auto r = src.rank_of(s);
			if(!r) continue;
			const TaskId id = m_offsets[m_src_index[d]] + static_cast<TaskId>(*r);
			if(id != t) preds.push_back(id);
		}
	}
	std::sort(preds.begin(), preds.end());
	return static_cast<std::uint32_t>(std::unique(preds.begin(), preds.end()) - preds.begin());
}

std::vector<TaskId> TileTaskSpace::source_tasks() const {
	std::vector<TaskId> out;
	for(TaskId t = 0; t < m_offsets.back(); ++t) {
		if(count_predecessors(t) == 0) out.push_back(t);
	}
	return out;
}

} // namespace edt::graph
