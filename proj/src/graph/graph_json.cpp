#include "edt/graph/graph_json.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace edt::graph {

std::string to_json(const TaskGraph& g) {
	// Written by hand: dense graphs carry millions of edges and a DOM copy
	// would double peak memory.
	std::string out = "{\"n\":" + std::to_string(g.size()) + ",\"edges\":[";
	bool first = true;
	for(TaskId t = 0; t < g.size(); ++t) {
		for(const auto s : g.successors(t)) {
			if(!first) out += ',';
			first = false;
			out += '[';
			out += std::to_string(t);
			out += ',';
			out += std::to_string(s);
			out += ']';
		}
	}
	out += ']';
	const auto& work = g.work_units();
	if(std::any_of(work.begin(), work.end(), [](std::uint32_t w) { return w != 0; })) {
		out += ",\"work_units\":[";
		for(std::size_t i = 0; i < work.size(); ++i) {
			if(i) out += ',';
			out += std::to_string(work[i]);
		}
		out += ']';
	}
	out += "}\n";
	return out;
}

TaskGraph from_json(const std::string& text) {
	nlohmann::json doc;
	try {
		doc = nlohmann::json::parse(text);
	} catch(const nlohmann::json::parse_error& e) {
		throw GraphError(std::string("graph JSON: ") + e.what());
	}
	try {
		const auto n = doc.at("n").get<std::size_t>();
		std::vector<Edge> edges;
		for(const auto& e : doc.at("edges")) {
			if(!e.is_array() || e.size() != 2) throw GraphError("graph JSON: every edge must be a [src, dst] pair");
			edges.push_back({e[0].get<TaskId>(), e[1].get<TaskId>()});
		}
		std::vector<std::uint32_t> work;
		if(doc.contains("work_units")) work = doc["work_units"].get<std::vector<std::uint32_t>>();
		return TaskGraph::from_edges(n, std::move(edges), std::move(work));
	} catch(const nlohmann::json::exception& e) {
		throw GraphError(std::string("graph JSON: ") + e.what());
	}
}

void write_graph_file(const std::string& path, const TaskGraph& g) {
	std::ofstream os(path);
	if(!os) throw std::runtime_error("cannot open '" + path + "' for writing");
	os << to_json(g);
}

TaskGraph read_graph_file(const std::string& path) {
	std::ifstream is(path);
	if(!is) throw GraphError("cannot open graph file '" + path + "'");
	std::stringstream ss;
	ss << is.rdbuf();
	return from_json(ss.str());
}

} // namespace edt::graph
