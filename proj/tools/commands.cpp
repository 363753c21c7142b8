#include "commands.hpp"

#include "edt/graph/generators.hpp"
#include "edt/graph/graph_json.hpp"
#include "edt/metrics/sweep.hpp"
#include "edt/poly/enumerate.hpp"
#include "edt/poly/projection_bench.hpp"
#include "edt/runtime/check.hpp"
#include "edt/runtime/runtime.hpp"
#include "edt/runtime/tag_table.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>

namespace edtctl {

using edt::graph::TaskGraph;
namespace rt = edt::runtime;
namespace poly = edt::poly;

std::uint64_t enumeration_cap() {
	const char* env = std::getenv("EDT_ENUM_CAP");
	if(!env || !*env) return poly::default_enumeration_cap;
	try {
		std::size_t used = 0;
		const auto v = std::stoull(env, &used);
		if(used == std::string(env).size() && v > 0) return v;
	} catch(const std::exception&) {
	}
	throw UsageError(std::string("EDT_ENUM_CAP must be a positive integer, got '") + env + "'");
}

namespace {

bool is_graph_file(const std::string& name) {
	return name.ends_with(".json") || std::filesystem::is_regular_file(name);
}

std::string read_file(const std::string& path) {
	std::ifstream in(path);
	if(!in) throw UsageError("cannot read '" + path + "'");
	std::ostringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

poly::RationalPolyhedron read_polyhedron(const std::string& path) {
	try {
		return poly::parse_text(read_file(path));
	} catch(const poly::ParseError& e) {
		throw UsageError(path + ": " + e.what());
	}
}

template <class Write>
void write_output(const std::string& path, Write&& write) {
	if(path.empty()) {
		write(std::cout);
		return;
	}
	std::ofstream out(path);
	if(!out) throw UsageError("cannot write '" + path + "'");
	write(out);
}

std::vector<std::int64_t> broadcast(const std::vector<std::int64_t>& sizes, std::size_t dims, const char* what) {
	if(sizes.size() == dims) return sizes;
	if(sizes.size() == 1) return std::vector<std::int64_t>(dims, sizes[0]);
	throw UsageError(std::string(what) + " needs 1 or " + std::to_string(dims) + " sizes");
}

void print_point(std::ostream& os, const poly::Point& p) {
	for(std::size_t i = 0; i < p.size(); ++i) os << (i ? " " : "") << p[i];
	os << '\n';
}

} // namespace

TaskGraph load_graph(const GraphArgs& a) {
	if(a.graph.empty()) throw UsageError("no graph given");
	if(is_graph_file(a.graph)) {
		try {
			return edt::graph::read_graph_file(a.graph);
		} catch(const edt::graph::GraphError& e) {
			throw UsageError(a.graph + ": " + e.what());
		}
	}
	const auto& names = edt::graph::family_names();
	if(std::find(names.begin(), names.end(), a.graph) == names.end()) throw UsageError("unknown graph '" + a.graph + "'");
	if(a.graph == "wavefront") return edt::graph::gen_wavefront(a.tiles, enumeration_cap());
	if(a.graph == "random" && a.p) {
		if(*a.p < 0 || *a.p > 1) throw UsageError("--p must lie in [0, 1]");
		return edt::graph::gen_random_dag(a.n, *a.p, a.seed);
	}
	return edt::graph::make_family(a.graph, a.n, a.seed);
}

std::string graph_label(const GraphArgs& a) {
	if(is_graph_file(a.graph)) return std::filesystem::path(a.graph).stem().string();
	return a.graph;
}

rt::SyncModel model_from(const std::string& name) {
	if(const auto m = rt::parse_sync_model(name)) return *m;
	std::string known;
	for(const auto m : rt::all_models) known += (known.empty() ? "" : ", ") + std::string(rt::to_string(m));
	throw UsageError("unknown model '" + name + "' (expected one of " + known + ")");
}

int cmd_gen(const GenArgs& a) {
	const auto g = load_graph(a.graph);
	const auto s = edt::graph::stats(g);
	std::ostream& info = a.out.empty() ? std::cerr : std::cout;
	info << "n=" << s.n << " edges=" << s.edge_count << " max_out_degree=" << s.max_out_degree << " width=" << s.r_approx << " sources=" << s.source_count
	     << '\n';
	if(a.out.empty()) {
		std::cout << edt::graph::to_json(g);
	} else {
		edt::graph::write_graph_file(a.out, g);
	}
	return exit_ok;
}

int cmd_tiledeps(const TileDepsArgs& a) {
	auto delta = read_polyhedron(a.relation);
	const std::size_t d = delta.dim();
	std::size_t ks = a.source_dims;
	if(ks == 0) {
		if(d % 2) throw UsageError("odd relation dimension; pass --source-dims");
		ks = d / 2;
	}
	if(ks > d) throw UsageError("--source-dims exceeds the relation dimension");
	poly::DependenceRelation rel{"S", "T", ks, d - ks, std::move(delta)};
	const poly::TilingSpec gs(broadcast(a.tiling, ks, "--tiling"));
	const poly::TilingSpec gt(broadcast(a.target_tiling.empty() ? a.tiling : a.target_tiling, d - ks, "--target-tiling"));
	const auto dt = poly::tile_dependence(rel, gs, gt);

	if(!a.points) {
		write_output(a.out, [&](std::ostream& os) { poly::write_text(os, a.normalize ? dt.normalized() : dt); });
		return exit_ok;
	}
	if(a.params.size() != dt.n_params()) throw UsageError("--points needs " + std::to_string(dt.n_params()) + " parameter values");
	const auto cap = enumeration_cap();
	std::vector<poly::Point> pts;
	if(a.domain.empty()) {
		try {
			pts = poly::integer_points(dt, a.params, cap);
		} catch(const poly::UnboundedPolyhedron&) {
			throw UsageError("the tile dependence is unbounded; pass --domain to enumerate its points");
		}
	} else {
		const auto domain = read_polyhedron(a.domain);
		if(domain.dim() != ks || ks != d - ks) throw UsageError("--domain must match both source and target dimensions");
		if(domain.n_params() != dt.n_params()) throw UsageError("--domain and --relation disagree on parameters");
		const auto tiles = poly::tile_domain_points(domain, gs, a.params, cap);
		if(!tiles.empty()) {
			poly::Box box = tiles.bounds();
			const auto b = tiles.bounds();
			box.insert(box.end(), b.begin(), b.end());
			for(auto& p : poly::integer_points(dt, a.params, box, cap)) {
				const poly::Point src(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(ks));
				const poly::Point dst(p.begin() + static_cast<std::ptrdiff_t>(ks), p.end());
				if(tiles.contains(src) && tiles.contains(dst)) pts.push_back(std::move(p));
			}
		}
	}
	write_output(a.out, [&](std::ostream& os) {
		for(const auto& p : pts) print_point(os, p);
	});
	return exit_ok;
}

int cmd_poly_bench(const PolyBenchArgs& a) {
	std::cout << "dims,k,compression_us,projection_us,ratio,projection_peak_rows\n";
	for(const auto d : a.dims) {
		if(d < 2 || d % 2) throw UsageError("--dims values must be even and at least 2");
		const auto t = poly::time_paths(d / 2, a.instances, a.seed, a.min_ms);
		char line[160];
		std::snprintf(line, sizeof line, "%zu,%zu,%.3f,%.3f,%.2f,%zu\n", d, t.k, t.compression_us, t.projection_us, t.ratio(), t.projection_peak_rows);
		std::cout << line;
	}
	return exit_ok;
}

namespace {

void print_excerpt(const TaskGraph& g, const rt::ExecutionReport& r, rt::TaskId task) {
	std::cerr << "  events around task " << task << " (seq lane kind task aux):\n";
	for(const auto& e : rt::event_excerpt(g, r, task)) {
		std::cerr << "    " << e.seq << ' ' << e.lane << ' ' << rt::to_string(e.kind) << ' ' << e.task << ' ' << e.aux << '\n';
	}
}

} // namespace

int cmd_run(const RunArgs& a) {
	const auto model = model_from(a.model);
	if(a.workers == 0) throw UsageError("--workers must be at least 1");
	rt::RunOptions o;
	o.workers = a.workers;
	o.seed = a.graph.seed;
	o.jitter_us = a.jitter_us;
	o.record_events = a.check || !a.events.empty();

	std::optional<edt::graph::TileTaskSpace> space;
	TaskGraph g;
	if(a.poly_count) {
		if(a.graph.graph != "wavefront") throw UsageError("--poly-count is only available for the wavefront graph");
		space = edt::graph::wavefront_space(a.graph.tiles, enumeration_cap());
		g = space->graph();
		o.f_count = [&space](rt::TaskId t) { return static_cast<std::uint32_t>(space->count_predecessors(t)); };
		o.preschedule_set = space->source_tasks();
	} else {
		g = load_graph(a.graph);
	}
	if(a.preschedule_all) {
		std::vector<rt::TaskId> all(g.size());
		std::iota(all.begin(), all.end(), rt::TaskId{0});
		o.preschedule_set = std::move(all);
	}

	rt::ExecutionReport report;
	try {
		report = rt::run(g, model, o);
	} catch(const rt::DeadlockError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_failed;
	} catch(const std::logic_error& e) {
		std::cerr << "error: " << e.what() << '\n';
		return exit_failed;
	}

	const edt::metrics::SweepRow row{model, graph_label(a.graph), g.size(), g.size(), a.workers, a.graph.seed, report.counters, report.wall_ms};
	write_output(a.csv, [&](std::ostream& os) { edt::metrics::write_csv(os, std::span(&row, 1)); });
	if(!a.events.empty()) {
		write_output(a.events, [&](std::ostream& os) { os << rt::report_json(report, true); });
	}
	if(a.check) {
		const auto v = rt::check_execution(g, report);
		if(!v.empty()) {
			for(const auto& x : v) std::cerr << "violation: " << x.what << '\n';
			if(v.front().task) print_excerpt(g, report, *v.front().task);
			return exit_failed;
		}
	}
	return exit_ok;
}

int cmd_bench(const BenchArgs& a) {
	const auto model = model_from(a.model);
	const auto& names = edt::graph::family_names();
	if(std::find(names.begin(), names.end(), a.family) == names.end()) throw UsageError("unknown family '" + a.family + "'");
	edt::metrics::Sweep s;
	try {
		s = edt::metrics::sweep(model, a.family, a.sizes, a.workers, a.seed);
	} catch(const std::invalid_argument& e) {
		throw UsageError(e.what());
	}
	if(!a.csv.empty()) write_output(a.csv, [&](std::ostream& os) { edt::metrics::write_csv(os, s.rows); });
	for(const auto& r : s.results) {
		char line[160];
		std::snprintf(line, sizeof line, "%s exponent=%.4f r2=%.4f%s\n", r.metric.c_str(), r.fitted_exponent, r.r_squared, r.zero_mapped ? " zero-mapped" : "");
		std::cout << line;
	}
	return exit_ok;
}

int cmd_verify(const VerifyArgs& a) {
	std::vector<rt::SyncModel> models;
	if(a.all_models) models.assign(rt::all_models.begin(), rt::all_models.end());
	for(const auto& m : a.models) models.push_back(model_from(m));
	if(models.empty()) throw UsageError("pass --model or --all-models");
	const auto g = load_graph(a.graph);

	std::size_t runs = 0, failures = 0;
	for(const auto m : models) {
		for(const auto w : a.workers) {
			if(w == 0) throw UsageError("--workers values must be at least 1");
			for(std::uint64_t seed = 0; seed < a.seeds; ++seed) {
				rt::RunOptions o;
				o.workers = w;
				o.seed = a.graph.seed + seed;
				o.jitter_us = a.jitter_us;
				++runs;
				const std::string where = std::string(rt::to_string(m)) + " workers=" + std::to_string(w) + " seed=" + std::to_string(o.seed);
				try {
					const auto r = rt::run(g, m, o);
					const auto v = rt::check_execution(g, r);
					if(v.empty()) continue;
					++failures;
					std::cerr << "FAIL " << where << ": " << v.size() << " violation(s)\n";
					for(std::size_t i = 0; i < v.size() && i < 10; ++i) std::cerr << "  " << v[i].what << '\n';
					if(v.front().task) print_excerpt(g, r, *v.front().task);
				} catch(const rt::DeadlockError& e) {
					++failures;
					std::cerr << "FAIL " << where << ": " << e.what() << '\n';
				} catch(const std::logic_error& e) {
					++failures;
					std::cerr << "FAIL " << where << ": " << e.what() << '\n';
				}
			}
		}
	}
	std::cout << "verified " << runs << " runs of " << graph_label(a.graph) << " (n=" << g.size() << "): " << failures << " failed\n";
	return failures ? exit_failed : exit_ok;
}

} // namespace edtctl
