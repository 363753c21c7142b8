#pragma once

#include "edt/graph/task_graph.hpp"
#include "edt/runtime/sync_model.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace edtctl {

inline constexpr int exit_ok = 0;
inline constexpr int exit_failed = 1;
inline constexpr int exit_usage = 2;

/// Bad flags or unreadable input; maps to exit code 2.
class UsageError : public std::runtime_error {
  public:
	using std::runtime_error::runtime_error;
};

/// A generator name plus its parameters, or a path to a graph JSON file.
struct GraphArgs {
	std::string graph;
	std::size_t n = 1000;
	std::size_t tiles = 8;
	std::optional<double> p;
	std::uint64_t seed = 0;
};

/// Enumeration cap, overridable through EDT_ENUM_CAP.
std::uint64_t enumeration_cap();

edt::graph::TaskGraph load_graph(const GraphArgs& a);
/// Name used in CSV rows: the generator name, or the file stem.
std::string graph_label(const GraphArgs& a);
edt::runtime::SyncModel model_from(const std::string& name);

struct GenArgs {
	GraphArgs graph;
	std::string out;
};

struct TileDepsArgs {
	std::string relation;
	std::string domain;
	std::size_t source_dims = 0;
	std::vector<std::int64_t> tiling;
	std::vector<std::int64_t> target_tiling;
	std::vector<std::int64_t> params;
	bool points = false;
	bool normalize = false;
	std::string out;
};

struct PolyBenchArgs {
	std::vector<std::size_t> dims{4, 6, 8, 10};
	std::size_t instances = 10;
	std::uint64_t seed = 1;
	double min_ms = 2.0;
};

struct RunArgs {
	GraphArgs graph;
	std::string model;
	std::size_t workers = 1;
	std::uint32_t jitter_us = 0;
	std::string csv;
	std::string events;
	bool poly_count = false;
	bool preschedule_all = false;
	bool check = false;
};

struct BenchArgs {
	std::string model;
	std::string family;
	std::vector<std::size_t> sizes;
	std::size_t workers = 1;
	std::uint64_t seed = 0;
	std::string csv;
};

struct VerifyArgs {
	GraphArgs graph;
	std::vector<std::string> models;
	bool all_models = false;
	std::vector<std::size_t> workers{1, 2, 8};
	std::size_t seeds = 5;
	std::uint32_t jitter_us = 0;
};

int cmd_gen(const GenArgs& a);
int cmd_tiledeps(const TileDepsArgs& a);
int cmd_poly_bench(const PolyBenchArgs& a);
int cmd_run(const RunArgs& a);
int cmd_bench(const BenchArgs& a);
int cmd_verify(const VerifyArgs& a);

} // namespace edtctl
