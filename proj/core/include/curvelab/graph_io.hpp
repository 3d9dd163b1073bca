#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "curvelab/finite_measure.hpp"
#include "curvelab/weighted_graph.hpp"

namespace curvelab {

/// Shortest decimal that round-trips the value.
std::string format_double(double x);

/// Text format, UTF-8:
///   curvegraph v1 <n>
///   v <index> <measure> [label]
///   e <u> <v> <weight>
/// '#' starts a comment; vertices are written in index order, edges with u < v.
void write_graph(std::ostream& out, const WeightedGraph& g,
                 const std::vector<std::string>& header_comments = {});
void write_graph_file(const std::string& path, const WeightedGraph& g,
                      const std::vector<std::string>& header_comments = {});

WeightedGraph read_graph(std::istream& in);
WeightedGraph read_graph_file(const std::string& path);

/// Measure files are lines `v <index> <mass>`, '#' comments allowed.
FiniteMeasure read_measure(std::istream& in);
FiniteMeasure read_measure_file(const std::string& path);
void write_measure(std::ostream& out, const FiniteMeasure& mu);
void write_measure_file(const std::string& path, const FiniteMeasure& mu);

}  // namespace curvelab
