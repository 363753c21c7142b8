#pragma once

#include "edt/graph/task_graph.hpp"
#include "edt/graph/tile_tasks.hpp"
#include "edt/poly/tiling.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace edt::graph {

/// 0→1, 0→2, 1→3, 2→3.
TaskGraph gen_diamond();
TaskGraph gen_chain(std::size_t n);
/// One source fanning out to n−2 parallel tasks that join into one sink.
TaskGraph gen_wide(std::size_t n);
/// Each forward edge i→j (i < j) kept independently with probability `edge_prob`.
TaskGraph gen_random_dag(std::size_t n, double edge_prob, std::uint64_t seed);
/// Total order carrying every forward edge, n(n−1)/2 of them.
TaskGraph gen_dense_redundant(std::size_t n);

inline constexpr std::int64_t wavefront_tile_size = 4;

/// The 2-D wavefront at iteration level: domain 0 <= i, j <= 4N − 1 with
/// parameter N, unit shifts along i and along j, and 4×4 tiles.
struct WavefrontProblem {
	poly::RationalPolyhedron domain;
	std::vector<poly::DependenceRelation> relations;
	poly::TilingSpec tiling;
};

WavefrontProblem wavefront_problem();

/// N×N tiles of the wavefront problem; tile (i, j) gets id i·N + j.
TileTaskSpace wavefront_space(std::size_t n_tiles, std::uint64_t cap = poly::default_enumeration_cap);
TaskGraph gen_wavefront(std::size_t n_tiles, std::uint64_t cap = poly::default_enumeration_cap);

/// Generator families by name: diamond, chain, wide, random, dense-redundant,
/// wavefront. `size` is n, or the tile count per side for wavefront; random
/// uses edge probability min(1, 4/size).
TaskGraph make_family(std::string_view name, std::size_t size, std::uint64_t seed = 0);
const std::vector<std::string>& family_names();

} // namespace edt::graph
