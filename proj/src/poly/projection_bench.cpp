#include "edt/poly/projection_bench.hpp"

#include "edt/poly/fourier_motzkin.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

namespace edt::poly {

RationalPolyhedron lift_tiled(const DependenceRelation& rel, const TilingSpec& source_tiling, const TilingSpec& target_tiling) {
	rel.validate();
	if(source_tiling.dim() != rel.source_dims || target_tiling.dim() != rel.target_dims) {
		throw DimensionMismatch("lift_tiled: tiling sizes do not match the source/target split");
	}
	const auto g = TilingSpec::combined(source_tiling, target_tiling);
	const std::size_t d = rel.delta.dim(), np = rel.delta.n_params();
	if(rel.delta.is_marked_empty()) return RationalPolyhedron::empty(2 * d, np);
	RationalPolyhedron out(2 * d, np);
	// columns: T (d) | X (d) | params | const
	for(const auto& r : rel.delta.rows()) {
		Row row(out.width(), Rational(0));
		for(std::size_t i = 0; i < d; ++i) {
			row[i] = r[i] * Rational(g[i]);
			row[d + i] = r[i];
		}
		for(std::size_t j = 0; j <= np; ++j) row[2 * d + j] = r[d + j];
		out.add_constraint(std::move(row));
	}
	for(std::size_t i = 0; i < d; ++i) {
		Row lo(out.width(), Rational(0)), hi(out.width(), Rational(0));
		lo[d + i] = Rational(1);
		hi[d + i] = Rational(-1);
		hi.back() = Rational(g[i] - 1);
		out.add_constraint(std::move(lo));
		out.add_constraint(std::move(hi));
	}
	return out;
}

namespace {

RationalPolyhedron project_lifted(const RationalPolyhedron& lifted, std::size_t d, FmStats* stats) {
	std::vector<std::size_t> xs(d);
	std::iota(xs.begin(), xs.end(), d);
	if(stats) return fm_project(lifted, xs, *stats);
	return fm_project(lifted, xs);
}

} // namespace

RationalPolyhedron projected_tile_dependence(const DependenceRelation& rel, const TilingSpec& source_tiling, const TilingSpec& target_tiling) {
	const auto lifted = lift_tiled(rel, source_tiling, target_tiling);
	if(lifted.is_marked_empty()) return RationalPolyhedron::empty(rel.delta.dim(), rel.delta.n_params());
	return project_lifted(lifted, rel.delta.dim(), nullptr);
}

BenchInstance make_bench_instance(std::size_t k, std::uint64_t seed) {
	std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ull + k);
	auto pick = [&](std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng); };
	const std::size_t d = 2 * k;
	BenchInstance inst;
	inst.rel.source_stmt = inst.rel.target_stmt = "S";
	inst.rel.source_dims = inst.rel.target_dims = k;
	inst.rel.delta = RationalPolyhedron(d, 0);
	auto& delta = inst.rel.delta;
	const std::int64_t extent = 64;

	std::vector<std::int64_t> shift(k);
	for(auto& s : shift) s = pick(0, 1);
	shift[static_cast<std::size_t>(pick(0, static_cast<std::int64_t>(k) - 1))] = 1;
	for(std::size_t j = 0; j < k; ++j) {
		Row eq(d + 1, Rational(0));
		eq[k + j] = Rational(1);
		eq[j] = Rational(-1);
		eq[d] = Rational(-shift[j]);
		delta.add_equality(eq);
		Row lo(d + 1, Rational(0)), hi(d + 1, Rational(0));
		lo[j] = Rational(1);
		hi[j] = Rational(-1);
		hi[d] = Rational(extent - 1);
		delta.add_constraint(std::move(lo));
		delta.add_constraint(std::move(hi));
	}
	for(std::size_t j = 0; j + 1 < k; ++j) {
		// |i_j − c·i_{j+1}| <= w and i_j + i_{j+1} <= extent + w on the source side
		const std::int64_t c = pick(1, 2), w = pick(2, 8);
		Row a(d + 1, Rational(0)), b(d + 1, Rational(0)), s(d + 1, Rational(0));
		a[j] = Rational(1);
		a[j + 1] = Rational(-c);
		a[d] = Rational(w);
		b[j] = Rational(-1);
		b[j + 1] = Rational(c);
		b[d] = Rational(w);
		s[j] = Rational(-1);
		s[j + 1] = Rational(-1);
		s[d] = Rational(extent + w);
		delta.add_constraint(std::move(a));
		delta.add_constraint(std::move(b));
		delta.add_constraint(std::move(s));
	}
	std::vector<std::int64_t> sizes(k);
	for(auto& g : sizes) g = pick(2, 8);
	inst.tiling = TilingSpec(sizes);
	return inst;
}

namespace {

volatile std::size_t g_sink = 0;

template <class F>
double per_call_us(F&& f, double min_ms) {
	using Clock = std::chrono::steady_clock;
	std::size_t calls = 0;
	const auto start = Clock::now();
	double elapsed_ms = 0;
	do {
		f();
		++calls;
		elapsed_ms = std::chrono::duration<double, std::milli>(Clock::now() - start).count();
	} while(elapsed_ms < min_ms);
	return elapsed_ms * 1000.0 / static_cast<double>(calls);
}

template <class T>
T median(std::vector<T> v) {
	std::sort(v.begin(), v.end());
	const std::size_t m = v.size() / 2;
	if(v.size() % 2) return v[m];
	return (v[m - 1] + v[m]) / 2;
}

} // namespace

PathTiming time_paths(std::size_t k, std::size_t instances, std::uint64_t seed, double min_ms) {
	std::vector<double> comp, proj;
	std::vector<std::size_t> rows;
	for(std::size_t i = 0; i < instances; ++i) {
		const auto inst = make_bench_instance(k, seed + i);
		std::size_t sink = 0;
		comp.push_back(per_call_us([&] { sink += tile_dependence(inst.rel, inst.tiling, inst.tiling).size(); }, min_ms));
		const auto lifted_once = lift_tiled(inst.rel, inst.tiling, inst.tiling);
		FmStats stats;
		project_lifted(lifted_once, 2 * k, &stats);
		rows.push_back(stats.peak_rows);
		proj.push_back(per_call_us([&] { sink += projected_tile_dependence(inst.rel, inst.tiling, inst.tiling).size(); }, min_ms));
		g_sink = sink;
	}
	PathTiming t;
	t.k = k;
	t.compression_us = median(comp);
	t.projection_us = median(proj);
	t.projection_peak_rows = median(rows);
	return t;
}

} // namespace edt::poly
