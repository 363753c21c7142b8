// edtctl: graph generation, tile dependences, runs, sweeps and verification.
//
// Exit codes: 0 success, 1 failed run or verification, 2 usage or input error.

#include "commands.hpp"

#include "edt/graph/task_graph.hpp"
#include "edt/poly/enumerate.hpp"
#include "edt/poly/rational.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

void add_graph_options(CLI::App* cmd, edtctl::GraphArgs& g, bool as_flag) {
	if(as_flag) {
		cmd->add_option("--graph", g.graph, "generator name or graph JSON file")->required();
	} else {
		cmd->add_option("family", g.graph, "generator name: diamond, chain, wide, random, dense-redundant, wavefront")->required();
	}
	cmd->add_option("--n", g.n, "task count for generated graphs")->capture_default_str();
	cmd->add_option("--tiles", g.tiles, "tiles per side for the wavefront")->capture_default_str();
	cmd->add_option("--p", g.p, "edge probability for random graphs (default min(1, 4/n))");
	cmd->add_option("--seed", g.seed, "graph and run seed")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
	CLI::App app{"Event-driven task runtime experiments"};
	app.require_subcommand(1);

	edtctl::GenArgs gen;
	auto* gen_cmd = app.add_subcommand("gen", "generate a task graph and print its statistics");
	add_graph_options(gen_cmd, gen.graph, false);
	gen_cmd->add_option("--out", gen.out, "write the graph JSON here instead of stdout");

	auto* poly_cmd = app.add_subcommand("poly", "polyhedral tile dependences");
	poly_cmd->require_subcommand(1);
	edtctl::TileDepsArgs td;
	auto* td_cmd = poly_cmd->add_subcommand("tiledeps", "inter-tile dependence of a relation by compression and inflation");
	td_cmd->add_option("--relation", td.relation, "relation polyhedron over (I_s | I_t | params)")->required()->check(CLI::ExistingFile);
	td_cmd->add_option("--tiling", td.tiling, "source tile sizes, comma separated; one value applies to every dim")->required()->delimiter(',');
	td_cmd->add_option("--target-tiling", td.target_tiling, "target tile sizes (default: --tiling)")->delimiter(',');
	td_cmd->add_option("--source-dims", td.source_dims, "source dimensions (default: half the relation)");
	td_cmd->add_option("--domain", td.domain, "iteration domain; restricts --points to tiles of the domain")->check(CLI::ExistingFile);
	td_cmd->add_option("--params", td.params, "parameter values for --points")->delimiter(',');
	td_cmd->add_flag("--points", td.points, "print the integer tile pairs instead of the polyhedron");
	td_cmd->add_flag("--normalize", td.normalize, "print the canonical form");
	td_cmd->add_option("--out", td.out, "output file (default stdout)");

	edtctl::PolyBenchArgs pb;
	auto* pb_cmd = poly_cmd->add_subcommand("bench", "time compression against Fourier-Motzkin projection, CSV on stdout");
	pb_cmd->add_option("--dims", pb.dims, "relation dimensions 2k, comma separated")->delimiter(',')->capture_default_str();
	pb_cmd->add_option("--instances", pb.instances, "instances per dimension")->capture_default_str();
	pb_cmd->add_option("--seed", pb.seed)->capture_default_str();
	pb_cmd->add_option("--min-ms", pb.min_ms, "minimum timed wall time per instance and path")->capture_default_str();

	edtctl::RunArgs run;
	auto* run_cmd = app.add_subcommand("run", "execute one graph under one model, counters CSV on stdout");
	run_cmd->add_option("--model", run.model, "prescribed, tags1, tags2, counted, autodec-nosrc, autodec-src")->required();
	add_graph_options(run_cmd, run.graph, true);
	run_cmd->add_option("--workers", run.workers)->capture_default_str();
	run_cmd->add_option("--jitter", run.jitter_us, "max random delay per task, microseconds")->capture_default_str();
	run_cmd->add_option("--csv", run.csv, "write the CSV here instead of stdout");
	run_cmd->add_option("--events", run.events, "write the JSON report with its event log here");
	run_cmd->add_flag("--poly-count", run.poly_count, "wavefront only: count predecessors and find sources polyhedrally");
	run_cmd->add_flag("--preschedule-all", run.preschedule_all, "autodec-src: preschedule every task, not just the sources");
	run_cmd->add_flag("--check", run.check, "check the event log; exit 1 on a violation");

	edtctl::BenchArgs bench;
	auto* bench_cmd = app.add_subcommand("bench", "sweep sizes and fit growth exponents");
	bench_cmd->add_option("--model", bench.model)->required();
	bench_cmd->add_option("--family", bench.family)->required();
	bench_cmd->add_option("--sizes", bench.sizes, "at least four increasing sizes, comma separated")->required()->delimiter(',');
	bench_cmd->add_option("--workers", bench.workers)->capture_default_str();
	bench_cmd->add_option("--seed", bench.seed)->capture_default_str();
	bench_cmd->add_option("--csv", bench.csv, "write per-run counters here");

	edtctl::VerifyArgs verify;
	auto* verify_cmd = app.add_subcommand("verify", "run the model x workers x seed matrix and check every event log");
	add_graph_options(verify_cmd, verify.graph, true);
	verify_cmd->add_option("--model", verify.models, "model to check; repeatable");
	verify_cmd->add_flag("--all-models", verify.all_models);
	verify_cmd->add_option("--workers", verify.workers, "worker counts, comma separated")->delimiter(',')->capture_default_str();
	verify_cmd->add_option("--seeds", verify.seeds, "seeds per configuration")->capture_default_str();
	verify_cmd->add_option("--jitter", verify.jitter_us, "max random delay per task, microseconds")->capture_default_str();

	try {
		app.parse(argc, argv);
	} catch(const CLI::CallForHelp& e) {
		return app.exit(e);
	} catch(const CLI::CallForAllHelp& e) {
		return app.exit(e);
	} catch(const CLI::ParseError& e) {
		app.exit(e);
		return edtctl::exit_usage;
	}

	try {
		if(*gen_cmd) return edtctl::cmd_gen(gen);
		if(*td_cmd) return edtctl::cmd_tiledeps(td);
		if(*pb_cmd) return edtctl::cmd_poly_bench(pb);
		if(*run_cmd) return edtctl::cmd_run(run);
		if(*bench_cmd) return edtctl::cmd_bench(bench);
		if(*verify_cmd) return edtctl::cmd_verify(verify);
	} catch(const edtctl::UsageError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return edtctl::exit_usage;
	} catch(const edt::graph::GraphError& e) {
		std::cerr << "error: " << e.what() << '\n';
		return edtctl::exit_usage;
	} catch(const edt::poly::EnumerationCapExceeded& e) {
		std::cerr << "error: " << e.what() << " (raise EDT_ENUM_CAP)\n";
		return edtctl::exit_usage;
	} catch(const std::exception& e) {
		std::cerr << "error: " << e.what() << '\n';
		return edtctl::exit_failed;
	}
	return edtctl::exit_usage;
}
