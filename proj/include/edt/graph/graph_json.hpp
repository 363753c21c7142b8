#pragma once

#include "edt/graph/task_graph.hpp"

#include <string>

namespace edt::graph {

/// {"n": int, "edges": [[src, dst], ...], "work_units": [...]}, edges sorted.
/// work_units is omitted when every task has zero work.
std::string to_json(const TaskGraph& g);

/// Throws GraphError on malformed JSON or an invalid graph.
TaskGraph from_json(const std::string& text);

void write_graph_file(const std::string& path, const TaskGraph& g);
TaskGraph read_graph_file(const std::string& path);

} // namespace edt::graph
