#pragma once

#include "edt/metrics/counters.hpp"
#include "edt/metrics/fit.hpp"
#include "edt/runtime/runtime.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace edt::metrics {

/// Metric names, in CSV column order.
inline constexpr std::array<std::string_view, 5> metric_names{
    "startup_ops", "peak_objects", "peak_inflight_tasks", "peak_inflight_deps", "gc_lag_peak",
};

/// Value of a named metric; throws std::invalid_argument for unknown names.
std::uint64_t metric_value(const OverheadCounters& c, std::string_view metric);

/// One run of a sweep. `size` is the generator parameter, `n` the task count.
struct SweepRow {
	runtime::SyncModel model = runtime::SyncModel::Prescribed;
	std::string graph;
	std::size_t size = 0;
	std::size_t n = 0;
	std::size_t workers = 1;
	std::uint64_t seed = 0;
	OverheadCounters counters;
	double wall_ms = 0;
};

struct SweepResult {
	runtime::SyncModel model = runtime::SyncModel::Prescribed;
	std::string metric;
	std::vector<GrowthPoint> points;
	double fitted_exponent = 0;
	double r_squared = 0;
	bool zero_mapped = false;
};

struct Sweep {
	std::vector<SweepRow> rows;
	/// One fit per entry of metric_names.
	std::vector<SweepResult> results;

	const SweepResult& result(std::string_view metric) const;
};

/// Runs `model` once per size on graphs from `family` and fits every metric
/// against the task count. Sizes must be strictly increasing, at least four
/// of them. An all-zero metric is reported as exponent 0 with r² = 1 and
/// zero_mapped set.
Sweep sweep(runtime::SyncModel model, std::string_view family, std::span<const std::size_t> sizes, std::size_t workers = 1, std::uint64_t seed = 0);

inline constexpr std::string_view csv_header = "model,graph,n,workers,seed,startup_ops,peak_objects,peak_inflight_tasks,peak_inflight_deps,gc_lag_peak,wall_ms";

/// One CSV line without the trailing newline; wall_ms has three decimals.
std::string csv_row(const SweepRow& row);
void write_csv(std::ostream& out, std::span<const SweepRow> rows);

/// Assumed footprint of one live sync object under `model`, in bytes.
std::uint64_t object_bytes(runtime::SyncModel model);
std::uint64_t peak_bytes_estimate(runtime::SyncModel model, const OverheadCounters& c);

} // namespace edt::metrics
