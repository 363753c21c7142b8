#include "edt/metrics/sweep.hpp"

#include "edt/graph/generators.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace edt::metrics {

std::uint64_t metric_value(const OverheadCounters& c, std::string_view metric) {
	if(metric == "startup_ops") return c.sequential_startup_ops;
	if(metric == "peak_objects") return c.peak_live_sync_objects;
	if(metric == "peak_inflight_tasks") return c.peak_inflight_tasks;
	if(metric == "peak_inflight_deps") return c.peak_inflight_deps;
	if(metric == "gc_lag_peak") return c.gc_lag_peak;
	throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

const SweepResult& Sweep::result(std::string_view metric) const {
	for(const auto& r : results) {
		if(r.metric == metric) return r;
	}
	throw std::invalid_argument("unknown metric '" + std::string(metric) + "'");
}

Sweep sweep(runtime::SyncModel model, std::string_view family, std::span<const std::size_t> sizes, std::size_t workers, std::uint64_t seed) {
	if(sizes.size() < 4) throw std::invalid_argument("sweep: at least four sizes are required");
	for(std::size_t i = 1; i < sizes.size(); ++i) {
		if(sizes[i] <= sizes[i - 1]) throw std::invalid_argument("sweep: sizes must be strictly increasing");
	}
	Sweep out;
	runtime::RunOptions options;
	options.workers = workers;
	options.seed = seed;
	options.record_events = false;
	for(const std::size_t size : sizes) {
		const auto g = graph::make_family(family, size, seed);
		const auto report = runtime::run(g, model, options);
		out.rows.push_back({model, std::string(family), size, g.size(), workers, seed, report.counters, report.wall_ms});
	}
	for(std::size_t i = 1; i < out.rows.size(); ++i) {
		if(out.rows[i].n <= out.rows[i - 1].n) throw std::invalid_argument("sweep: task counts must grow with size");
	}

	for(const auto metric : metric_names) {
		SweepResult r;
		r.model = model;
		r.metric = metric;
		for(const auto& row : out.rows) r.points.push_back({static_cast<double>(row.n), static_cast<double>(metric_value(row.counters, metric))});
		const bool all_zero = std::all_of(r.points.begin(), r.points.end(), [](const GrowthPoint& p) { return p.value == 0; });
		if(all_zero) {
			r.r_squared = 1.0;
			r.zero_mapped = true;
		} else {
			const auto fit = fit_growth_exponent(r.points);
			r.fitted_exponent = fit.exponent;
			r.r_squared = fit.r_squared;
			r.zero_mapped = fit.zero_mapped;
		}
		out.results.push_back(std::move(r));
	}
	return out;
}

std::string csv_row(const SweepRow& row) {
	const auto& c = row.counters;
	char wall[32];
	std::snprintf(wall, sizeof wall, "%.3f", row.wall_ms);
	std::string s;
	s += runtime::to_string(row.model);
	s += ',' + row.graph;
	for(const std::uint64_t v : {std::uint64_t(row.n), std::uint64_t(row.workers), row.seed, c.sequential_startup_ops, c.peak_live_sync_objects, c.peak_inflight_tasks,
	                             c.peak_inflight_deps, c.gc_lag_peak}) {
		s += ',' + std::to_string(v);
	}
	s += ',';
	s += wall;
	return s;
}

void write_csv(std::ostream& out, std::span<const SweepRow> rows) {
	out << csv_header << '\n';
	for(const auto& r : rows) out << csv_row(r) << '\n';
}

// Rough 64-bit sizes: an edge slot is a counter plus a successor id; a tag
// entry is a hash-table key/value pair at load factor 7/8; a task tag adds a
// waiter list; a dependence slot is the counter, payload and table cell.
std::uint64_t object_bytes(runtime::SyncModel model) {
	switch(model) {
	case runtime::SyncModel::Prescribed: return 16;
	case runtime::SyncModel::Tags1: return 24;
	case runtime::SyncModel::Tags2: return 64;
	case runtime::SyncModel::Counted: return 24;
	case runtime::SyncModel::AutodecNoSrc: return 24;
	case runtime::SyncModel::AutodecWithSrc: return 40;
	}
	return 0;
}

std::uint64_t peak_bytes_estimate(runtime::SyncModel model, const OverheadCounters& c) {
	return object_bytes(model) * c.peak_live_sync_objects;
}

} // namespace edt::metrics
