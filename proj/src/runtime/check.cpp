#include "edt/runtime/check.hpp"

#include <json.hpp>

#include <algorithm>
#include <limits>
#include <set>

namespace edt::runtime {

namespace {

constexpr std::uint64_t none = std::numeric_limits<std::uint64_t>::max();

std::string task_str(TaskId t) {
	return "task " + std::to_string(t);
}

} // namespace

std::vector<Violation> check_execution(const graph::TaskGraph& g, const ExecutionReport& report) {
	std::vector<Violation> out;
	const std::size_t n = g.size();
	if(report.events.empty() && n > 0) {
		out.push_back({"no event log recorded", std::nullopt});
		return out;
	}
	std::vector<std::uint64_t> start(n, none), end(n, none);
	std::vector<std::uint32_t> starts(n, 0), ends(n, 0), inits(n, 0), decs(n, 0);
	std::vector<std::uint32_t> init_count(n, 0);
	// (task, value after) of every decrement; concurrent decrements may be
	// logged out of order, so the values are compared as a set
	std::vector<std::pair<TaskId, std::uint32_t>> dec_values;
	std::vector<std::uint32_t> tag_puts(n, 0);
	std::set<std::pair<TaskId, TaskId>> puts, gets;
	std::size_t duplicate_puts = 0, duplicate_gets = 0, master_ops = 0;

	for(const auto& e : report.events) {
		if(e.task >= n) {
			out.push_back({"event names a task outside the graph", e.task});
			continue;
		}
		switch(e.kind) {
		case EventKind::TaskStart:
			++starts[e.task];
			start[e.task] = e.seq;
			break;
		case EventKind::TaskEnd:
			++ends[e.task];
			end[e.task] = e.seq;
			break;
		case EventKind::SlotInit:
			++inits[e.task];
			init_count[e.task] = e.aux;
			break;
		case EventKind::Decrement:
			++decs[e.task];
			dec_values.emplace_back(e.task, e.aux);
			break;
		case EventKind::Put:
			if(report.model == SyncModel::Tags1) {
				if(!puts.insert({e.task, e.aux}).second) ++duplicate_puts;
			} else {
				++tag_puts[e.task];
			}
			break;
		case EventKind::Get:
			if(!gets.insert({e.aux, e.task}).second) ++duplicate_gets;
			break;
		case EventKind::MasterOp: ++master_ops; break;
		case EventKind::Preschedule: break;
		}
	}

	for(TaskId t = 0; t < n; ++t) {
		if(starts[t] != 1 || ends[t] != 1) {
			out.push_back({task_str(t) + " started " + std::to_string(starts[t]) + " times and ended " + std::to_string(ends[t]) + " times", t});
			continue;
		}
		if(end[t] < start[t]) out.push_back({task_str(t) + " ended before it started", t});
		for(const auto p : g.predecessors(t)) {
			if(end[p] == none || start[t] < end[p]) {
				out.push_back({task_str(t) + " started before predecessor " + std::to_string(p) + " ended", t});
			}
		}
	}

	const SyncModel m = report.model;
	const bool slots = m == SyncModel::Counted || m == SyncModel::AutodecNoSrc || m == SyncModel::AutodecWithSrc;
	if(slots || m == SyncModel::Prescribed) {
		std::sort(dec_values.begin(), dec_values.end());
		std::vector<bool> counted_down(n, true);
		for(std::size_t i = 0; i < dec_values.size(); ++i) {
			const auto [t, v] = dec_values[i];
			const bool first = i == 0 || dec_values[i - 1].first != t;
			const std::uint32_t expected = first ? 0 : dec_values[i - 1].second + 1;
			if(v != expected) counted_down[t] = false;
		}
		for(TaskId t = 0; t < n; ++t) {
			const std::uint32_t pc = g.pred_count(t);
			if(decs[t] != pc) out.push_back({task_str(t) + " saw " + std::to_string(decs[t]) + " decrements for " + std::to_string(pc) + " predecessors", t});
			else if(!counted_down[t]) out.push_back({task_str(t) + " counter did not step down through " + std::to_string(pc) + " distinct values to 0", t});
			if(!slots) continue;
			if(inits[t] != 1) out.push_back({task_str(t) + " slot installed " + std::to_string(inits[t]) + " times", t});
			else if(init_count[t] != pc) out.push_back({task_str(t) + " slot installed with count " + std::to_string(init_count[t]) + ", expected " + std::to_string(pc), t});
		}
	}
	if(m == SyncModel::Prescribed && master_ops != n + g.edge_count()) {
		out.push_back({"master performed " + std::to_string(master_ops) + " operations, expected " + std::to_string(n + g.edge_count()), std::nullopt});
	}
	if(m == SyncModel::Tags1 || m == SyncModel::Tags2) {
		if(duplicate_gets) out.push_back({std::to_string(duplicate_gets) + " repeated gets", std::nullopt});
		if(gets.size() != g.edge_count()) out.push_back({std::to_string(gets.size()) + " distinct gets for " + std::to_string(g.edge_count()) + " edges", std::nullopt});
		for(const auto& [p, t] : gets) {
			const auto preds = g.predecessors(t);
			if(!std::binary_search(preds.begin(), preds.end(), p)) out.push_back({task_str(t) + " got a tag from non-predecessor " + std::to_string(p), t});
		}
	}
	if(m == SyncModel::Tags1) {
		if(duplicate_puts) out.push_back({std::to_string(duplicate_puts) + " repeated puts", std::nullopt});
		if(puts != gets) out.push_back({"one-use tags: put and get sets differ", std::nullopt});
	}
	if(m == SyncModel::Tags2) {
		for(TaskId t = 0; t < n; ++t) {
			if(tag_puts[t] != 1) out.push_back({task_str(t) + " put its tag " + std::to_string(tag_puts[t]) + " times", t});
		}
	}

	const auto& c = report.counters;
	if(c.objects_created != c.objects_destroyed + c.live_objects_at_end) {
		out.push_back({"sync objects created " + std::to_string(c.objects_created) + " != destroyed " + std::to_string(c.objects_destroyed) + " + live " +
		                   std::to_string(c.live_objects_at_end),
		               std::nullopt});
	}
	if(c.live_objects_at_end != 0) out.push_back({std::to_string(c.live_objects_at_end) + " sync objects still live at run end", std::nullopt});
	return out;
}

std::vector<Event> event_excerpt(const graph::TaskGraph& g, const ExecutionReport& report, TaskId task, std::size_t limit) {
	std::vector<Event> out;
	const auto preds = g.predecessors(task);
	for(const auto& e : report.events) {
		const bool own = e.task == task;
		const bool pred = (e.kind == EventKind::TaskStart || e.kind == EventKind::TaskEnd) && std::binary_search(preds.begin(), preds.end(), e.task);
		if(own || pred) out.push_back(e);
		if(out.size() == limit) break;
	}
	return out;
}

std::string report_json(const ExecutionReport& report, bool with_events) {
	nlohmann::ordered_json j;
	j["model"] = std::string(to_string(report.model));
	j["n"] = report.n;
	j["workers"] = report.workers;
	j["seed"] = report.seed;
	j["wall_ms"] = report.wall_ms;
	j["tasks_executed"] = report.tasks_executed;
	const auto& c = report.counters;
	j["counters"] = {
	    {"sequential_startup_ops", c.sequential_startup_ops},
	    {"peak_live_sync_objects", c.peak_live_sync_objects},
	    {"peak_inflight_tasks", c.peak_inflight_tasks},
	    {"peak_inflight_deps", c.peak_inflight_deps},
	    {"gc_lag_peak", c.gc_lag_peak},
	    {"objects_created", c.objects_created},
	    {"objects_destroyed", c.objects_destroyed},
	    {"live_objects_at_end", c.live_objects_at_end},
	};
	if(with_events) {
		auto events = nlohmann::ordered_json::array();
		for(const auto& e : report.events) {
			events.push_back({{"seq", e.seq}, {"t_ns", e.t_ns}, {"lane", e.lane}, {"kind", std::string(to_string(e.kind))}, {"task", e.task}, {"aux", e.aux}});
		}
		j["events"] = std::move(events);
	}
	return j.dump() + "\n";
}

} // namespace edt::runtime
