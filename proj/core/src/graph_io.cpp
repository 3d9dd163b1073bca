#include "curvelab/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>

#include "curvelab/error.hpp"

namespace curvelab {

std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

void write_graph(std::ostream& out, const WeightedGraph& g,
                 const std::vector<std::string>& header_comments) {
  out << "curvegraph v1 " << g.size() << "\n";
  for (const auto& c : header_comments) out << "# " << c << "\n";
  for (Vertex x = 0; x < g.size(); ++x) {
    out << "v " << x << " " << format_double(g.measure(x));
    if (!g.label(x).empty()) out << " " << g.label(x);
    out << "\n";
  }
  for (const auto& e : g.edges())
    out << "e " << e.u << " " << e.v << " " << format_double(e.w) << "\n";
}

void write_graph_file(const std::string& path, const WeightedGraph& g,
                      const std::vector<std::string>& header_comments) {
  std::ofstream out(path);
  if (!out) raise(errc::parse_error, "cannot open " + path + " for writing");
  write_graph(out, g, header_comments);
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& what) {
  raise(errc::parse_error, "line " + std::to_string(line) + ": " + what);
}

std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

bool parse_int(const std::string& tok, int& out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

bool parse_real(const std::string& tok, double& out) {
  auto res = std::from_chars(tok.data(), tok.data() + tok.size(), out);
  return res.ec == std::errc() && res.ptr == tok.data() + tok.size();
}

}  // namespace

WeightedGraph read_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  // Header (comments may precede it).
  int n = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::string magic;
    if (!(ss >> magic)) continue;
    std::string version, ntok;
    if (!(ss >> version >> ntok))
      parse_fail(lineno, "expected `curvegraph v1 <n>` header");
    if (magic != "curvegraph")
      parse_fail(lineno, "not a curvegraph file");
    if (version != "v1")
      raise(errc::format_version_mismatch,
            "line " + std::to_string(lineno) + ": unsupported version " + version);
    if (!parse_int(ntok, n) || n <= 0) parse_fail(lineno, "bad vertex count");
    break;
  }
  if (n < 0) raise(errc::parse_error, "missing curvegraph header");

  std::vector<double> measures(n, 0.0);
  std::vector<char> have_measure(n, 0);
  std::vector<std::string> labels(n);
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind == "v") {
      std::string itok, mtok;
      if (!(ss >> itok >> mtok)) parse_fail(lineno, "expected `v <index> <measure> [label]`");
      int idx;
      double m;
      if (!parse_int(itok, idx) || idx < 0 || idx >= n)
        parse_fail(lineno, "vertex index out of range");
      if (!parse_real(mtok, m)) parse_fail(lineno, "bad measure value");
      if (have_measure[idx]) parse_fail(lineno, "duplicate vertex line");
      measures[idx] = m;
      have_measure[idx] = 1;
      std::string label;
      std::getline(ss, label);
      auto a = label.find_first_not_of(" \t");
      auto b = label.find_last_not_of(" \t\r");
      labels[idx] = a == std::string::npos ? "" : label.substr(a, b - a + 1);
    } else if (kind == "e") {
      std::string utok, vtok, wtok;
      if (!(ss >> utok >> vtok >> wtok)) parse_fail(lineno, "expected `e <u> <v> <weight>`");
      int u, v;
      double w;
      if (!parse_int(utok, u) || !parse_int(vtok, v))
        parse_fail(lineno, "bad edge endpoints");
      if (u < 0 || u >= n || v < 0 || v >= n)
        parse_fail(lineno, "edge endpoint out of range");
      if (!parse_real(wtok, w)) parse_fail(lineno, "bad weight value");
      edges.push_back({u, v, w});
    } else {
      parse_fail(lineno, "unknown record `" + kind + "`");
    }
  }
  for (int i = 0; i < n; ++i)
    if (!have_measure[i])
      raise(errc::parse_error, "missing vertex line for index " + std::to_string(i));
  return WeightedGraph(n, edges, measures, labels);
}

WeightedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::parse_error, "cannot open " + path);
  return read_graph(in);
}

FiniteMeasure read_measure(std::istream& in) {
  std::string line;
  int lineno = 0;
  std::vector<Vertex> support;
  std::vector<double> mass;
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ss(strip_comment(line));
    std::string kind;
    if (!(ss >> kind)) continue;
    if (kind != "v") parse_fail(lineno, "expected `v <index> <mass>`");
    std::string itok, mtok;
    if (!(ss >> itok >> mtok)) parse_fail(lineno, "expected `v <index> <mass>`");
    int idx;
    double m;
    if (!parse_int(itok, idx) || idx < 0) parse_fail(lineno, "bad vertex index");
    if (!parse_real(mtok, m)) parse_fail(lineno, "bad mass value");
    support.push_back(idx);
    mass.push_back(m);
  }
  return FiniteMeasure(std::move(support), std::move(mass));
}

FiniteMeasure read_measure_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) raise(errc::parse_error, "cannot open " + path);
  return read_measure(in);
}

void write_measure(std::ostream& out, const FiniteMeasure& mu) {
  for (int i = 0; i < mu.support_size(); ++i)
    out << "v " << mu.support()[i] << " " << format_double(mu.masses()[i]) << "\n";
}

void write_measure_file(const std::string& path, const FiniteMeasure& mu) {
  std::ofstream out(path);
  if (!out) raise(errc::parse_error, "cannot open " + path + " for writing");
  write_measure(out, mu);
}

}  // namespace curvelab
