#include "edt/graph/prescriber.hpp"

namespace edt::graph {

PrescriberExpansion prescriber_expand(const TaskGraph& g, std::size_t rounds) {
	PrescriberExpansion out;
	out.original_n = g.size();
	std::vector<std::vector<TaskId>> preds(g.size());
	for(TaskId t = 0; t < g.size(); ++t) {
		const auto p = g.predecessors(t);
		preds[t].assign(p.begin(), p.end());
	}
	std::vector<bool> has_prescriber(g.size(), false);

	for(std::size_t round = 0; round < rounds; ++round) {
		// decide against the graph as it stood at the start of the round
		std::vector<TaskId> targets;
		for(TaskId t = 0; t < preds.size(); ++t) {
			if(!has_prescriber[t] && preds[t].size() > 1) targets.push_back(t);
		}
		if(targets.empty()) {
			out.fixpoint = true;
			break;
		}
		std::vector<std::vector<TaskId>> direct_preds;
		for(const auto t : targets) direct_preds.push_back(preds[t]);
		for(std::size_t k = 0; k < targets.size(); ++k) {
			const TaskId t = targets[k];
			const auto p = static_cast<TaskId>(preds.size());
			has_prescriber[t] = true;
			const auto& direct = direct_preds[k];
			preds.emplace_back();
			has_prescriber.push_back(false);
			for(const auto q : direct) preds[q].push_back(p);
			out.prescribed.push_back(t);
		}
		out.per_round.push_back(targets.size());
	}

	std::vector<Edge> edges;
	for(TaskId t = 0; t < preds.size(); ++t) {
		for(const auto q : preds[t]) edges.push_back({q, t});
	}
	std::vector<std::uint32_t> work(preds.size(), 0);
	for(TaskId t = 0; t < g.size(); ++t) work[t] = g.work_units(t);
	out.graph = TaskGraph::from_edges(preds.size(), std::move(edges), std::move(work));
	return out;
}

} // namespace edt::graph
