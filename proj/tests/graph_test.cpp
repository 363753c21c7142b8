#include "doctest.h"

#include "edt/graph/generators.hpp"
#include "edt/graph/graph_json.hpp"
#include "edt/graph/prescriber.hpp"
#include "edt/graph/tile_tasks.hpp"

#include <random>
#include <set>

using namespace edt::graph;
using edt::poly::parse_text;
using edt::poly::Point;
using edt::poly::TileSet;

namespace {

// Independent reachability by DFS over the successor lists.
std::vector<std::vector<bool>> reachability(const TaskGraph& g, std::size_t limit) {
	std::vector<std::vector<bool>> reach(limit, std::vector<bool>(g.size(), false));
	for(TaskId s = 0; s < limit; ++s) {
		std::vector<TaskId> stack{s};
		while(!stack.empty()) {
			const TaskId t = stack.back();
			stack.pop_back();
			for(const auto u : g.successors(t)) {
				if(!reach[s][u]) {
					reach[s][u] = true;
					stack.push_back(u);
				}
			}
		}
	}
	return reach;
}

bool acyclic_by_dfs(const TaskGraph& g) {
	// 0 = unvisited, 1 = on stack, 2 = done
	std::vector<int> state(g.size(), 0);
	for(TaskId root = 0; root < g.size(); ++root) {
		if(state[root]) continue;
		std::vector<std::pair<TaskId, std::size_t>> stack{{root, 0}};
		state[root] = 1;
		while(!stack.empty()) {
			auto& [t, i] = stack.back();
			const auto succ = g.successors(t);
			if(i == succ.size()) {
				state[t] = 2;
				stack.pop_back();
				continue;
			}
			const TaskId u = succ[i++];
			if(state[u] == 1) return false;
			if(state[u] == 0) {
				state[u] = 1;
				stack.push_back({u, 0});
			}
		}
	}
	return true;
}

std::set<std::pair<TaskId, TaskId>> grid_edges(std::size_t n) {
	std::set<std::pair<TaskId, TaskId>> out;
	for(std::size_t i = 0; i < n; ++i) {
		for(std::size_t j = 0; j < n; ++j) {
			const auto t = static_cast<TaskId>(i * n + j);
			if(i > 0) out.insert({static_cast<TaskId>((i - 1) * n + j), t});
			if(j > 0) out.insert({static_cast<TaskId>(i * n + j - 1), t});
		}
	}
	return out;
}

std::set<std::pair<TaskId, TaskId>> edge_set(const TaskGraph& g) {
	std::set<std::pair<TaskId, TaskId>> out;
	for(const auto& e : g.edges()) out.insert({e.src, e.dst});
	return out;
}

} // namespace

TEST_SUITE("task graph") {
	TEST_CASE("from_edges sorts, removes duplicates and rejects cycles") {
		const auto g = TaskGraph::from_edges(3, {{1, 2}, {0, 2}, {0, 1}, {0, 2}});
		CHECK(g.edge_count() == 3);
		CHECK(std::vector<TaskId>(g.successors(0).begin(), g.successors(0).end()) == std::vector<TaskId>{1, 2});
		CHECK(std::vector<TaskId>(g.predecessors(2).begin(), g.predecessors(2).end()) == std::vector<TaskId>{0, 1});
		CHECK_THROWS_AS(TaskGraph::from_edges(2, {{0, 1}, {1, 0}}), GraphError);
		CHECK_THROWS_AS(TaskGraph::from_edges(2, {{0, 2}}), GraphError);
		CHECK_THROWS_AS(TaskGraph::from_edges(2, {{1, 1}}), GraphError);
		CHECK_THROWS_AS(TaskGraph::from_edges(2, {}, {1}), GraphError);
	}

	TEST_CASE("diamond") {
		const auto g = gen_diamond();
		CHECK(g.size() == 4);
		CHECK(std::vector<std::uint32_t>{g.pred_count(0), g.pred_count(1), g.pred_count(2), g.pred_count(3)} == std::vector<std::uint32_t>{0, 1, 1, 2});
		CHECK(g.sources() == std::vector<TaskId>{0});
		const auto order = g.topological_order();
		CHECK(order.front() == 0);
		CHECK(order.back() == 3);
	}

	TEST_CASE("generator shapes") {
		const auto c = gen_chain(3);
		CHECK(edge_set(c) == std::set<std::pair<TaskId, TaskId>>{{0, 1}, {1, 2}});
		CHECK(stats(c).r_approx == 1);
		CHECK(stats(gen_wide(5)).r_approx == 3);
		const auto w = stats(gen_wide(10));
		CHECK(w.source_count == 1);
		CHECK(w.r_approx == 8);
		CHECK(w.max_out_degree == 8);
		CHECK(gen_wide(2).edge_count() == 1);
		CHECK(gen_wide(1).size() == 1);

		const auto d4 = gen_dense_redundant(4);
		CHECK(d4.edge_count() == 6);
		for(TaskId j = 0; j < 4; ++j) CHECK(d4.pred_count(j) == j);
		CHECK(stats(d4).r_approx == 1);
		CHECK(stats(gen_dense_redundant(6)).max_out_degree == 5);
		for(std::size_t n : {1, 2, 7, 33, 100}) CHECK(gen_dense_redundant(n).edge_count() == n * (n - 1) / 2);

		CHECK_THROWS_AS(gen_chain(0), GraphError);
		CHECK_THROWS_AS(gen_random_dag(5, 1.5, 1), GraphError);
	}

	TEST_CASE("random dag is seeded and acyclic") {
		const auto a = gen_random_dag(100, 0.1, 42);
		const auto b = gen_random_dag(100, 0.1, 42);
		CHECK(a == b);
		CHECK(a != gen_random_dag(100, 0.1, 43));
		CHECK(gen_random_dag(50, 0.0, 1).edge_count() == 0);
		CHECK(gen_random_dag(50, 1.0, 1).edge_count() == 50 * 49 / 2);
		for(const auto& e : a.edges()) CHECK(e.src < e.dst);
		// the edge density is close to the probability
		const auto big = gen_random_dag(400, 0.1, 7);
		const double frac = static_cast<double>(big.edge_count()) / (400.0 * 399.0 / 2.0);
		CHECK(frac == doctest::Approx(0.1).epsilon(0.1));
	}

	TEST_CASE("every generator is acyclic and counts are consistent") {
		std::vector<TaskGraph> graphs{gen_diamond(), gen_chain(50), gen_wide(30), gen_random_dag(200, 0.05, 3), gen_dense_redundant(40), gen_wavefront(5)};
		for(const auto& g : graphs) {
			CHECK(acyclic_by_dfs(g));
			std::size_t in = 0, out = 0;
			for(TaskId t = 0; t < g.size(); ++t) {
				in += g.pred_count(t);
				out += g.out_degree(t);
				const auto s = g.successors(t);
				CHECK(std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end());
			}
			CHECK(in == g.edge_count());
			CHECK(out == g.edge_count());
			const auto st = stats(g);
			CHECK(st.r_approx >= 1);
			CHECK(st.max_out_degree <= st.n - 1);
		}
	}

	TEST_CASE("json round trip") {
		std::vector<TaskGraph> graphs{gen_diamond(), gen_chain(1), gen_random_dag(60, 0.2, 9), gen_wavefront(3),
		                              TaskGraph::from_edges(3, {{0, 2}}, {5, 0, 7})};
		for(const auto& g : graphs) {
			const auto text = to_json(g);
			CHECK(from_json(text) == g);
			CHECK(to_json(from_json(text)) == text);
		}
		CHECK(to_json(gen_diamond()) == "{\"n\":4,\"edges\":[[0,1],[0,2],[1,3],[2,3]]}\n");
		CHECK_THROWS_AS(from_json("{\"n\": 2, \"edges\": [[0]]}"), GraphError);
		CHECK_THROWS_AS(from_json("{\"n\": 2, \"edges\": [[0, 1], [1, 0]]}"), GraphError);
		CHECK_THROWS_AS(from_json("not json"), GraphError);
	}
}

TEST_SUITE("tile tasks") {
	TEST_CASE("wavefront matches the grid for N in 1..8") {
		for(std::size_t n = 1; n <= 8; ++n) {
			const auto g = gen_wavefront(n);
			CHECK(g.size() == n * n);
			CHECK(edge_set(g) == grid_edges(n));
		}
		const auto g2 = gen_wavefront(2);
		CHECK(g2.edge_count() == 4);
		CHECK(g2.sources() == std::vector<TaskId>{0});
		CHECK(gen_wavefront(4).edge_count() == 24);
		for(std::size_t n : {2, 4, 7}) CHECK(stats(gen_wavefront(n)).r_approx == n);
	}

	TEST_CASE("f_count and f_rank agree with the materialized graph") {
		const auto space = wavefront_space(5);
		const auto& g = space.graph();
		for(TaskId t = 0; t < g.size(); ++t) {
			CHECK(space.count_predecessors(t) == g.pred_count(t));
			const auto [stmt, tile] = space.coords(t);
			CHECK(stmt == 0);
			CHECK(tile == Point{t / 5, t % 5});
			CHECK(space.rank(0, tile) == t);
		}
		CHECK(space.count_predecessors(2 * 5 + 3) == 2);
		CHECK(space.source_tasks() == std::vector<TaskId>{0});
		CHECK_THROWS_AS(space.rank(0, Point{5, 0}), GraphError);
	}

	TEST_CASE("chain relation with 4-wide tiles") {
		// i_t = i_s + 1, 0 <= i_s <= 6
		edt::poly::DependenceRelation rel{"S", "S", 1, 1, parse_text(std::string("dims 2 params 0\n-1 1 -1\n1 -1 1\n1 0 0\n-1 0 6\n"))};
		const edt::poly::TilingSpec g({4});
		const auto tiles = edt::poly::tile_domain_points(parse_text(std::string("dims 1 params 0\n1 0\n-1 7\n")), g, {});
		const auto space = TileTaskSpace::build({{"S", tiles}}, {{"S", "S", edt::poly::tile_dependence(rel, g, g)}}, {});
		CHECK(space.graph().size() == 2);
		CHECK(edge_set(space.graph()) == std::set<std::pair<TaskId, TaskId>>{{0, 1}});
		CHECK(space.count_predecessors(1) == 1);
		CHECK(space.count_predecessors(0) == 0);
	}

	TEST_CASE("two statements and an empty dependence list") {
		const TileSet four({{0}, {1}, {2}, {3}});
		const auto ident = parse_text(std::string("dims 2 params 0\n-1 1 0\n1 -1 0\n"));
		const auto shift = parse_text(std::string("dims 2 params 0\n-1 1 -1\n1 -1 1\n"));
		const auto space = TileTaskSpace::build({{"A", four}, {"B", four}}, {{"A", "B", ident}, {"B", "B", shift}}, {});
		const auto& g = space.graph();
		CHECK(g.size() == 8);
		// A tiles are 0..3, B tiles 4..7
		CHECK(edge_set(g) == std::set<std::pair<TaskId, TaskId>>{{0, 4}, {1, 5}, {2, 6}, {3, 7}, {4, 5}, {5, 6}, {6, 7}});
		for(TaskId t = 0; t < 8; ++t) CHECK(space.count_predecessors(t) == g.pred_count(t));
		CHECK(space.coords(6) == std::pair<std::size_t, Point>{1, {2}});

		const auto bare = TileTaskSpace::build({{"A", four}}, {}, {});
		CHECK(bare.graph().edge_count() == 0);
		CHECK(bare.graph().sources().size() == 4);

		CHECK_THROWS_AS(TileTaskSpace::build({{"A", four}}, {{"A", "C", ident}}, {}), GraphError);
	}

	TEST_CASE("cyclic tile dependences are rejected") {
		const TileSet two({{0}, {1}});
		const auto any = parse_text(std::string("dims 2 params 0\n"));
		CHECK_THROWS_AS(TileTaskSpace::build({{"A", two}}, {{"A", "A", any}}, {}), GraphError);
	}
}

TEST_SUITE("prescriber expansion") {
	TEST_CASE("diamond rounds") {
		const auto one = prescriber_expand(gen_diamond(), 1);
		REQUIRE(one.per_round == std::vector<std::size_t>{1});
		CHECK(one.graph.size() == 5);
		CHECK(one.prescribed == std::vector<TaskId>{3});
		CHECK(std::vector<TaskId>(one.graph.successors(4).begin(), one.graph.successors(4).end()) == std::vector<TaskId>{1, 2});

		const auto two = prescriber_expand(gen_diamond(), 2);
		CHECK(two.per_round == std::vector<std::size_t>{1, 2});
		CHECK(two.graph.pred_count(1) == 2);
	}

	TEST_CASE("chain reaches a fixpoint immediately") {
		const auto r = prescriber_expand(gen_chain(20), 5);
		CHECK(r.per_round.empty());
		CHECK(r.fixpoint);
		CHECK(r.graph == gen_chain(20));
	}

	TEST_CASE("expansion keeps edges and reachability among original tasks") {
		std::vector<TaskGraph> graphs{gen_diamond(), gen_wavefront(3), gen_random_dag(40, 0.15, 11), gen_wide(8)};
		for(const auto& g : graphs) {
			const auto r = prescriber_expand(g, 4);
			CHECK(acyclic_by_dfs(r.graph));
			const auto before = edge_set(g);
			const auto after = edge_set(r.graph);
			for(const auto& e : before) CHECK(after.count(e) == 1);
			const auto ra = reachability(g, g.size());
			const auto rb = reachability(r.graph, g.size());
			for(TaskId a = 0; a < g.size(); ++a) {
				for(TaskId b = 0; b < g.size(); ++b) CHECK(ra[a][b] == rb[a][b]);
			}
			std::size_t added = 0;
			for(const auto c : r.per_round) added += c;
			CHECK(r.graph.size() == g.size() + added);
		}
	}
}
