#include "doctest.h"

#include "edt/graph/generators.hpp"
#include "edt/metrics/sweep.hpp"

#include <cmath>
#include <sstream>
#include <thread>

using namespace edt::metrics;
using edt::runtime::SyncModel;

namespace {

// Closed-form least squares on log-log data, written out independently.
double oracle_slope(const std::vector<GrowthPoint>& pts) {
	double sx = 0, sy = 0, sxx = 0, sxy = 0;
	for(const auto& p : pts) {
		const double x = std::log(p.n), y = std::log(p.value);
		sx += x;
		sy += y;
		sxx += x * x;
		sxy += x * y;
	}
	const double k = static_cast<double>(pts.size());
	return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

} // namespace

TEST_SUITE("fit") {
	TEST_CASE("exact power laws") {
		const std::vector<GrowthPoint> quad{{2, 4}, {4, 16}, {8, 64}};
		const auto f = fit_growth_exponent(quad);
		CHECK(f.exponent == doctest::Approx(2.0).epsilon(1e-12));
		CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
		CHECK_FALSE(f.zero_mapped);

		const std::vector<GrowthPoint> flat{{2, 7}, {4, 7}, {8, 7}};
		const auto g = fit_growth_exponent(flat);
		CHECK(g.exponent == 0.0);
		CHECK(g.r_squared == 1.0);
	}

	TEST_CASE("noisy data against the closed form") {
		const std::vector<GrowthPoint> pts{{10, 3}, {20, 11}, {40, 35}, {80, 170}, {160, 600}};
		const auto f = fit_growth_exponent(pts);
		CHECK(f.exponent == doctest::Approx(oracle_slope(pts)).epsilon(1e-12));
		CHECK(f.r_squared > 0.9);
		CHECK(f.r_squared < 1.0);
	}

	TEST_CASE("scale invariance") {
		const std::vector<GrowthPoint> pts{{16, 5}, {32, 9}, {64, 30}, {128, 41}};
		const double base = fit_growth_exponent(pts).exponent;
		for(const double c : {1e-3, 0.5, 3.0, 1e6}) {
			auto scaled = pts;
			for(auto& p : scaled) p.value *= c;
			CHECK(fit_growth_exponent(scaled).exponent == doctest::Approx(base).epsilon(1e-12));
		}
	}

	TEST_CASE("zeros and errors") {
		const std::vector<GrowthPoint> with_zero{{2, 0}, {4, 4}, {8, 16}};
		CHECK(fit_growth_exponent(with_zero).zero_mapped);
		const std::vector<GrowthPoint> one_positive{{2, 0}, {4, 0}, {8, 3}};
		CHECK_THROWS_AS(fit_growth_exponent(one_positive), FitError);
		const std::vector<GrowthPoint> single{{2, 4}};
		CHECK_THROWS_AS(fit_growth_exponent(single), FitError);
		const std::vector<GrowthPoint> same_n{{4, 4}, {4, 5}};
		CHECK_THROWS_AS(fit_growth_exponent(same_n), FitError);
		const std::vector<GrowthPoint> negative{{2, -1}, {4, 5}, {8, 6}};
		CHECK_THROWS_AS(fit_growth_exponent(negative), FitError);
	}
}

TEST_SUITE("gauge") {
	TEST_CASE("sequential peak is the running maximum") {
		Gauge g;
		std::int64_t level = 0, peak = 0;
		for(const std::int64_t d : {3, -1, 4, -6, 2, 5, -3, 1}) {
			g.add(d);
			level += d;
			peak = std::max(peak, level);
			CHECK(g.value() == level);
			CHECK(g.peak() == peak);
		}
	}

	TEST_CASE("concurrent updates keep the peak monotone and bounded") {
		Gauge g;
		constexpr int threads = 4, rounds = 20000;
		std::atomic<bool> stop{false};
		std::int64_t last = 0;
		bool monotone = true;
		std::thread watcher([&] {
			while(!stop.load()) {
				const auto p = g.peak();
				monotone = monotone && p >= last;
				last = p;
			}
		});
		std::vector<std::thread> ts;
		for(int t = 0; t < threads; ++t) {
			ts.emplace_back([&] {
				for(int i = 0; i < rounds; ++i) {
					g.add(2);
					g.sub(2);
				}
			});
		}
		for(auto& t : ts) t.join();
		stop.store(true);
		watcher.join();
		CHECK(monotone);
		CHECK(g.value() == 0);
		CHECK(g.peak() >= 2);
		CHECK(g.peak() <= 2 * threads);
	}
}

TEST_SUITE("sweep") {
	TEST_CASE("input checks") {
		const std::vector<std::size_t> short_sizes{8, 16, 32};
		CHECK_THROWS_AS(sweep(SyncModel::Tags1, "chain", short_sizes), std::invalid_argument);
		const std::vector<std::size_t> unsorted{8, 32, 16, 64};
		CHECK_THROWS_AS(sweep(SyncModel::Tags1, "chain", unsorted), std::invalid_argument);
		const std::vector<std::size_t> sizes{8, 16, 32, 64};
		CHECK_THROWS(sweep(SyncModel::Tags1, "nope", sizes));
	}

	TEST_CASE("prescribed start-up on dense graphs is quadratic") {
		const std::vector<std::size_t> sizes{32, 64, 128, 256};
		const auto s = sweep(SyncModel::Prescribed, "dense-redundant", sizes);
		for(const auto& row : s.rows) CHECK(row.counters.sequential_startup_ops == row.n + row.n * (row.n - 1) / 2);
		const auto& r = s.result("startup_ops");
		CHECK(r.fitted_exponent == doctest::Approx(oracle_slope(r.points)).epsilon(1e-12));
		CHECK(r.fitted_exponent > 1.8);
		CHECK(r.fitted_exponent < 2.1);
		CHECK(r.r_squared > 0.95);
	}

	TEST_CASE("counted start-up on chains is linear, autodec start-up is zero") {
		const std::vector<std::size_t> sizes{64, 128, 256, 512};
		const auto counted = sweep(SyncModel::Counted, "chain", sizes).result("startup_ops");
		CHECK(counted.fitted_exponent == doctest::Approx(1.0).epsilon(1e-9));
		const auto autodec = sweep(SyncModel::AutodecWithSrc, "chain", sizes);
		CHECK(autodec.result("startup_ops").zero_mapped);
		CHECK(autodec.result("startup_ops").fitted_exponent == 0.0);
		CHECK(autodec.result("peak_inflight_tasks").fitted_exponent == doctest::Approx(0.0).epsilon(1e-9));
	}

	TEST_CASE("tags1 to counted spatial ratio grows on dense graphs") {
		const std::vector<std::size_t> sizes{32, 64, 128, 256};
		const auto tags = sweep(SyncModel::Tags1, "dense-redundant", sizes);
		const auto counted = sweep(SyncModel::Counted, "dense-redundant", sizes);
		double prev = 0;
		for(std::size_t i = 0; i < sizes.size(); ++i) {
			const double ratio = static_cast<double>(tags.rows[i].counters.peak_live_sync_objects) / static_cast<double>(counted.rows[i].counters.peak_live_sync_objects);
			CHECK(ratio > prev);
			prev = ratio;
		}
	}

	TEST_CASE("conservation on every model") {
		const std::vector<std::size_t> sizes{10, 20, 40, 80};
		for(const auto m : edt::runtime::all_models) {
			for(const auto& fam : {"random", "wide", "dense-redundant"}) {
				for(std::size_t w : {1, 3}) {
					const auto s = sweep(m, fam, sizes, w, 4);
					for(const auto& row : s.rows) {
						const auto& c = row.counters;
						CHECK(c.objects_created == c.objects_destroyed + c.live_objects_at_end);
						CHECK(c.live_objects_at_end == 0);
					}
				}
			}
		}
	}
}

TEST_SUITE("csv") {
	TEST_CASE("rows are deterministic apart from wall time") {
		const std::vector<std::size_t> sizes{16, 32, 64, 128};
		const auto a = sweep(SyncModel::Tags2, "random", sizes, 1, 7);
		const auto b = sweep(SyncModel::Tags2, "random", sizes, 1, 7);
		for(std::size_t i = 0; i < sizes.size(); ++i) {
			auto ra = a.rows[i], rb = b.rows[i];
			ra.wall_ms = rb.wall_ms = 0;
			CHECK(csv_row(ra) == csv_row(rb));
		}
		std::ostringstream os;
		write_csv(os, a.rows);
		const auto text = os.str();
		CHECK(text.rfind(std::string(csv_header) + "\n", 0) == 0);
		CHECK(std::count(text.begin(), text.end(), '\n') == 5);
		SweepRow row;
		row.model = SyncModel::Counted;
		row.graph = "chain";
		row.n = 3;
		row.counters.sequential_startup_ops = 6;
		row.counters.peak_live_sync_objects = 3;
		row.wall_ms = 1.23456;
		CHECK(csv_row(row) == "counted,chain,3,1,0,6,3,0,0,0,1.235");
	}

	TEST_CASE("bytes estimate scales object counts") {
		OverheadCounters c;
		c.peak_live_sync_objects = 10;
		CHECK(peak_bytes_estimate(SyncModel::Tags1, c) == 10 * object_bytes(SyncModel::Tags1));
	}
}
