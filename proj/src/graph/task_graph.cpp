#include "edt/graph/task_graph.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <string>

namespace edt::graph {

namespace {

std::vector<std::size_t> offsets_from_counts(const std::vector<std::size_t>& counts) {
	std::vector<std::size_t> off(counts.size() + 1, 0);
	for(std::size_t i = 0; i < counts.size(); ++i) off[i + 1] = off[i] + counts[i];
	return off;
}

} // namespace

TaskGraph TaskGraph::from_edges(std::size_t n, std::vector<Edge> edges, std::vector<std::uint32_t> work_units) {
	if(n > std::numeric_limits<TaskId>::max()) throw GraphError("task count exceeds the TaskId range");
	if(work_units.empty()) work_units.assign(n, 0);
	if(work_units.size() != n) throw GraphError("work_units has " + std::to_string(work_units.size()) + " entries for " + std::to_string(n) + " tasks");
	for(const auto& e : edges) {
		if(e.src >= n || e.dst >= n) throw GraphError("edge " + std::to_string(e.src) + "->" + std::to_string(e.dst) + " out of range");
		if(e.src == e.dst) throw GraphError("self edge on task " + std::to_string(e.src));
	}
	if(!std::is_sorted(edges.begin(), edges.end())) std::sort(edges.begin(), edges.end());
	edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

	TaskGraph g;
	g.m_work = std::move(work_units);
	std::vector<std::size_t> out(n, 0), in(n, 0);
	for(const auto& e : edges) {
		++out[e.src];
		++in[e.dst];
	}
	g.m_succ_off = offsets_from_counts(out);
	g.m_pred_off = offsets_from_counts(in);
	g.m_succ.resize(edges.size());
	g.m_pred.resize(edges.size());
	// edges are sorted by (src, dst), so both fills come out sorted
	std::vector<std::size_t> pos(g.m_pred_off.begin(), g.m_pred_off.end() - 1);
	for(std::size_t i = 0; i < edges.size(); ++i) {
		g.m_succ[i] = edges[i].dst;
		g.m_pred[pos[edges[i].dst]++] = edges[i].src;
	}
	if(g.topological_order().size() != n) throw GraphError("graph has a cycle");
	return g;
}

std::vector<Edge> TaskGraph::edges() const {
	std::vector<Edge> out;
	out.reserve(edge_count());
	for(TaskId t = 0; t < size(); ++t) {
		for(const auto s : successors(t)) out.push_back({t, s});
	}
	return out;
}

std::vector<TaskId> TaskGraph::sources() const {
	std::vector<TaskId> out;
	for(TaskId t = 0; t < size(); ++t) {
		if(pred_count(t) == 0) out.push_back(t);
	}
	return out;
}

std::vector<TaskId> TaskGraph::topological_order() const {
	std::vector<std::uint32_t> remaining(size());
	std::priority_queue<TaskId, std::vector<TaskId>, std::greater<>> ready;
	for(TaskId t = 0; t < size(); ++t) {
		remaining[t] = pred_count(t);
		if(remaining[t] == 0) ready.push(t);
	}
	std::vector<TaskId> order;
	order.reserve(size());
	while(!ready.empty()) {
		const TaskId t = ready.top();
		ready.pop();
		order.push_back(t);
		for(const auto s : successors(t)) {
			if(--remaining[s] == 0) ready.push(s);
		}
	}
	return order;
}

std::vector<std::uint32_t> levels(const TaskGraph& g) {
	std::vector<std::uint32_t> level(g.size(), 0);
	for(const auto t : g.topological_order()) {
		for(const auto s : g.successors(t)) level[s] = std::max(level[s], level[t] + 1);
	}
	return level;
}

GraphStats stats(const TaskGraph& g) {
	GraphStats st;
	st.n = g.size();
	st.edge_count = g.edge_count();
	for(TaskId t = 0; t < g.size(); ++t) {
		st.max_out_degree = std::max<std::size_t>(st.max_out_degree, g.out_degree(t));
		st.source_count += g.pred_count(t) == 0;
	}
	const auto level = levels(g);
	std::vector<std::size_t> width;
	for(const auto l : level) {
		if(l >= width.size()) width.resize(l + 1, 0);
		++width[l];
	}
	for(const auto w : width) st.r_approx = std::max(st.r_approx, w);
	return st;
}

} // namespace edt::graph
