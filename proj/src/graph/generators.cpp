#include "edt/graph/generators.hpp"

#include "edt/poly/enumerate.hpp"

#include <algorithm>
#include <random>

namespace edt::graph {

namespace {

void require_positive(std::size_t n, const char* what) {
	if(n == 0) throw GraphError(std::string(what) + ": n must be at least 1");
}

poly::Row row(std::initializer_list<std::int64_t> values) {
	poly::Row r;
	for(const auto v : values) r.emplace_back(v);
	return r;
}

} // namespace

TaskGraph gen_diamond() {
	return TaskGraph::from_edges(4, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
}

TaskGraph gen_chain(std::size_t n) {
	require_positive(n, "chain");
	std::vector<Edge> edges;
	edges.reserve(n - 1);
	for(TaskId i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
	return TaskGraph::from_edges(n, std::move(edges));
}

TaskGraph gen_wide(std::size_t n) {
	require_positive(n, "wide");
	if(n <= 2) return gen_chain(n);
	const auto sink = static_cast<TaskId>(n - 1);
	std::vector<Edge> edges;
	for(TaskId m = 1; m < sink; ++m) edges.push_back({0, m});
	for(TaskId m = 1; m < sink; ++m) edges.push_back({m, sink});
	return TaskGraph::from_edges(n, std::move(edges));
}

TaskGraph gen_random_dag(std::size_t n, double edge_prob, std::uint64_t seed) {
	require_positive(n, "random");
	if(!(edge_prob >= 0.0 && edge_prob <= 1.0)) throw GraphError("random: edge probability must lie in [0, 1]");
	std::mt19937_64 rng(seed);
	std::vector<Edge> edges;
	for(TaskId i = 0; i < n; ++i) {
		for(TaskId j = i + 1; j < n; ++j) {
			// top 53 bits as a uniform double in [0, 1)
			const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
			if(u < edge_prob) edges.push_back({i, j});
		}
	}
	return TaskGraph::from_edges(n, std::move(edges));
}

TaskGraph gen_dense_redundant(std::size_t n) {
	require_positive(n, "dense-redundant");
	std::vector<Edge> edges;
	edges.reserve(n * (n - 1) / 2);
	for(TaskId i = 0; i < n; ++i) {
		for(TaskId j = i + 1; j < n; ++j) edges.push_back({i, j});
	}
	return TaskGraph::from_edges(n, std::move(edges));
}

WavefrontProblem wavefront_problem() {
	const std::int64_t g = wavefront_tile_size;
	WavefrontProblem p;
	// (i j | N)
	p.domain = poly::RationalPolyhedron(2, 1);
	p.domain.add_constraint(row({1, 0, 0, 0}));
	p.domain.add_constraint(row({-1, 0, g, -1}));
	p.domain.add_constraint(row({0, 1, 0, 0}));
	p.domain.add_constraint(row({0, -1, g, -1}));
	p.tiling = poly::TilingSpec({g, g});

	for(std::size_t axis = 0; axis < 2; ++axis) {
		poly::DependenceRelation rel{"S", "S", 2, 2, poly::RationalPolyhedron(4, 1)};
		// (i_s j_s i_t j_t | N): both endpoints in the domain
		for(std::size_t base : {std::size_t{0}, std::size_t{2}}) {
			for(std::size_t k = 0; k < 2; ++k) {
				poly::Row lo(6, poly::Rational(0));
				lo[base + k] = 1;
				rel.delta.add_constraint(lo);
				poly::Row hi(6, poly::Rational(0));
				hi[base + k] = -1;
				hi[4] = g;
				hi[5] = -1;
				rel.delta.add_constraint(hi);
			}
		}
		for(std::size_t k = 0; k < 2; ++k) {
			poly::Row eq(6, poly::Rational(0));
			eq[2 + k] = 1;
			eq[k] = -1;
			eq[5] = k == axis ? -1 : 0;
			rel.delta.add_equality(eq);
		}
		p.relations.push_back(std::move(rel));
	}
	return p;
}

TileTaskSpace wavefront_space(std::size_t n_tiles, std::uint64_t cap) {
	require_positive(n_tiles, "wavefront");
	const auto problem = wavefront_problem();
	const std::vector<std::int64_t> params{static_cast<std::int64_t>(n_tiles)};
	std::vector<TileStatement> stmts{{"S", poly::tile_domain_points(problem.domain, problem.tiling, params, cap)}};
	std::vector<TileDependence> deps;
	for(const auto& rel : problem.relations) {
		deps.push_back({"S", "S", poly::tile_dependence(rel, problem.tiling, problem.tiling)});
	}
	return TileTaskSpace::build(std::move(stmts), std::move(deps), params, cap);
}

TaskGraph gen_wavefront(std::size_t n_tiles, std::uint64_t cap) {
	return wavefront_space(n_tiles, cap).graph();
}

const std::vector<std::string>& family_names() {
	static const std::vector<std::string> names{"diamond", "chain", "wide", "random", "dense-redundant", "wavefront"};
	return names;
}

TaskGraph make_family(std::string_view name, std::size_t size, std::uint64_t seed) {
	if(name == "diamond") return gen_diamond();
	if(name == "chain") return gen_chain(size);
	if(name == "wide") return gen_wide(size);
	if(name == "random") return gen_random_dag(size, std::min(1.0, 4.0 / static_cast<double>(std::max<std::size_t>(size, 1))), seed);
	if(name == "dense-redundant") return gen_dense_redundant(size);
	if(name == "wavefront") return gen_wavefront(size);
	throw GraphError("unknown graph family '" + std::string(name) + "'");
}

} // namespace edt::graph
