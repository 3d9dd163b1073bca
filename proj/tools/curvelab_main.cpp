// curvelab command-line front end: graph ingestion, curvature sweeps,
// verification suites, example generation, machine-readable output.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "curvelab/comparison.hpp"
#include "curvelab/curvature.hpp"
#include "curvelab/error.hpp"
#include "curvelab/generators.hpp"
#include "curvelab/graph_io.hpp"
#include "curvelab/heat.hpp"
#include "curvelab/parallel.hpp"
#include "curvelab/transport.hpp"

using json = nlohmann::json;
using namespace curvelab;

namespace {

constexpr int kExitUserError = 2;
constexpr int kExitSolverError = 3;
constexpr int kExitCrossCheck = 4;
constexpr int kExitTheoremCheck = 5;

// All emitted floats carry 12 significant digits.
std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

double quant12(double x) { return std::strtod(fmt12(x).c_str(), nullptr); }

struct CommonOptions {
  std::string input;
  std::string gen_kind;
  std::string format = "table";
  std::string output;
  unsigned seed = 12345;
  unsigned jobs = 1;
  // generator parameters
  int n = 20;
  double eps = 1.0;
  double kappa_k = 0.5;
  double edge_prob = 0.15;
  int max_degree = 0;
  bool weighted = false;
  bool measured = false;
  std::string k_seq = "geometric:0.5";
  std::string rates;
  std::string measures_arg;
  double m0 = -1.0;
};

void add_common(CLI::App* cmd, CommonOptions& opt, bool needs_input) {
  auto* input = cmd->add_option("-i,--input", opt.input, "curvegraph v1 file");
  auto* gen = cmd->add_option("--gen", opt.gen_kind,
                              "generator kind (path cycle complete star hypercube "
                              "random bdc two_sided_geometric g_epsilon "
                              "finite_optimal positive_curv_infinite "
                              "intrinsic_example)");
  if (needs_input) {
    input->excludes(gen);
    gen->excludes(input);
  }
  cmd->add_option("--format", opt.format, "output format: table, csv or json")
      ->check(CLI::IsMember({"table", "csv", "json"}));
  cmd->add_option("-o,--output", opt.output, "write output to a file");
  cmd->add_option("--seed", opt.seed, "random generator seed");
  cmd->add_option("--jobs", opt.jobs, "worker threads for sweeps (0 = all cores)");
  cmd->add_option("--n", opt.n, "generator size / truncation radius");
  cmd->add_option("--eps", opt.eps, "generator epsilon");
  cmd->add_option("--K", opt.kappa_k, "curvature parameter K");
  cmd->add_option("--p", opt.edge_prob, "random graph edge probability");
  cmd->add_option("--max-degree", opt.max_degree, "random graph degree cap");
  cmd->add_flag("--weighted", opt.weighted, "random edge weights");
  cmd->add_flag("--measured", opt.measured, "random vertex measures");
  cmd->add_option("--k", opt.k_seq,
                  "summable sequence (geometric:q or power:p) for finite_optimal");
  cmd->add_option("--rates", opt.rates, "comma list w(r,r+1) for bdc kinds");
  cmd->add_option("--measures", opt.measures_arg, "comma list m(r) for bdc");
  cmd->add_option("--m0", opt.m0, "root measure for positive_curv_infinite");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    out.push_back(std::stod(tok));
  }
  return out;
}

std::function<double(int)> parse_k_sequence(const std::string& spec) {
  auto colon = spec.find(':');
  std::string kind = spec.substr(0, colon);
  double param = colon == std::string::npos ? 0.5 : std::stod(spec.substr(colon + 1));
  if (kind == "geometric") {
    if (!(param > 0.0 && param < 1.0))
      raise(errc::invalid_argument, "geometric ratio must be in (0,1)");
    return [param](int r) { return std::pow(param, r); };
  }
  if (kind == "power") {
    if (!(param > 1.0))
      raise(errc::invalid_argument, "power exponent must exceed 1");
    return [param](int r) { return std::pow(double(r), -param); };
  }
  raise(errc::invalid_argument, "unknown k sequence `" + spec + "`");
}

WeightedGraph generate_graph(const CommonOptions& opt) {
  const std::string& kind = opt.gen_kind;
  if (kind == "path") return make_path(opt.n);
  if (kind == "cycle") return make_cycle(opt.n);
  if (kind == "complete") return make_complete(opt.n);
  if (kind == "star") return make_star(opt.n);
  if (kind == "hypercube") return make_hypercube(opt.n);
  if (kind == "random") {
    RandomGraphOptions ro;
    ro.n = opt.n;
    ro.edge_prob = opt.edge_prob;
    ro.max_degree = opt.max_degree;
    ro.random_weights = opt.weighted;
    ro.random_measures = opt.measured;
    std::mt19937_64 rng(opt.seed);
    return make_random(ro, rng);
  }
  if (kind == "two_sided_geometric") return make_two_sided_geometric(opt.n);
  if (kind == "bdc") {
    auto w = parse_list(opt.rates);
    auto m = parse_list(opt.measures_arg);
    if (m.empty()) m.assign(w.size() + 1, 1.0);
    return BirthDeathChain(w, m).to_graph();
  }
  if (kind == "g_epsilon") return make_g_epsilon(opt.eps, opt.n).to_graph();
  if (kind == "finite_optimal")
    return make_finite_optimal(parse_k_sequence(opt.k_seq), opt.n).to_graph();
  if (kind == "positive_curv_infinite") {
    std::vector<double> w = opt.rates.empty() ? std::vector<double>() : parse_list(opt.rates);
    if (w.empty())
      for (int r = 0; r <= opt.n; ++r) w.push_back(std::ldexp(1.0, -r));
    double m0 = opt.m0 > 0 ? opt.m0 : 2.0 * w[0] / opt.kappa_k;
    return make_positive_curv_infinite(opt.kappa_k, w, m0).to_graph();
  }
  if (kind == "intrinsic_example") return make_intrinsic_example(opt.eps, opt.n).to_graph();
  raise(errc::invalid_argument, "unknown generator kind `" + kind + "`");
}

WeightedGraph load_graph(const CommonOptions& opt) {
  if (!opt.input.empty()) return read_graph_file(opt.input);
  if (!opt.gen_kind.empty()) return generate_graph(opt);
  raise(errc::invalid_argument, "need --input or --gen");
}

Vertex resolve_vertex(const WeightedGraph& g, const std::string& name) {
  Vertex v = g.find_label(name);
  if (v >= 0) return v;
  try {
    std::size_t used = 0;
    int idx = std::stoi(name, &used);
    if (used == name.size() && idx >= 0 && idx < g.size()) return idx;
  } catch (...) {
  }
  raise(errc::invalid_argument, "unknown vertex `" + name + "`");
}

// Interpret a path graph with edges (r, r+1) only as a birth-death chain.
BirthDeathChain chain_from_graph(const WeightedGraph& g) {
  int n = g.size();
  std::vector<double> w(n - 1, 0.0), m(n);
  for (int r = 0; r < n; ++r) m[r] = g.measure(r);
  for (const auto& e : g.edges()) {
    if (e.v != e.u + 1)
      raise(errc::invalid_argument,
            "input is not a birth-death chain; pass --root to reduce");
    w[e.u] = e.w;
  }
  for (int r = 0; r + 1 < n; ++r)
    if (w[r] == 0.0)
      raise(errc::invalid_argument, "missing chain rate w(" + std::to_string(r) +
                                        "," + std::to_string(r + 1) + ")");
  return BirthDeathChain(w, m);
}

struct Sink {
  std::ofstream file;
  std::ostream* out = &std::cout;
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) raise(errc::parse_error, "cannot open " + path + " for writing");
      out = &file;
    }
  }
  std::ostream& stream() { return *out; }
};

void emit_json(Sink& sink, const json& doc) { sink.stream() << doc.dump(2) << "\n"; }

// ---------------------------------------------------------------- curvature

int cmd_curvature(const CommonOptions& opt, const std::vector<std::string>& pair,
                  const std::string& engine, bool witness, bool verify) {
  auto g = load_graph(opt);
  std::vector<std::pair<Vertex, Vertex>> pairs;
  if (!pair.empty()) {
    pairs.push_back({resolve_vertex(g, pair[0]), resolve_vertex(g, pair[1])});
  } else {
    for (const auto& e : g.edges()) pairs.push_back({e.u, e.v});
  }

  struct Row {
    Vertex x, y;
    CurvatureReport report;
    std::optional<double> transport, combinatorial, bruteforce;
    double max_discrepancy = 0.0;
  };
  std::vector<Row> rows(pairs.size());
  parallel_for(pairs.size(), opt.jobs, [&](std::size_t i) {
    auto [x, y] = pairs[i];
    Row row;
    row.x = x;
    row.y = y;
    if (engine == "transport")
      row.report = ollivier_transport(g, x, y);
    else if (engine == "combinatorial")
      row.report = ollivier_combinatorial(g, x, y);
    else if (engine == "bruteforce")
      row.report = ollivier_bruteforce(g, x, y);
    else
      row.report = ollivier_dual(g, x, y);
    if (verify) {
      double dual = engine == "dual" ? row.report.kappa : ollivier_dual(g, x, y).kappa;
      row.transport = ollivier_transport(g, x, y).kappa;
      row.max_discrepancy = std::abs(dual - *row.transport);
      if (g.is_combinatorial() && g.adjacent(x, y)) {
        row.combinatorial = ollivier_combinatorial(g, x, y).kappa;
        row.max_discrepancy =
            std::max(row.max_discrepancy, std::abs(dual - *row.combinatorial));
        if (g.ball1_union(x, y).size() <= 20) {
          row.bruteforce = ollivier_bruteforce(g, x, y).kappa;
          row.max_discrepancy =
              std::max(row.max_discrepancy, std::abs(dual - *row.bruteforce));
        }
      }
    }
    rows[i] = std::move(row);
  });

  double worst = 0.0;
  for (const auto& row : rows) worst = std::max(worst, row.max_discrepancy);

  Sink sink(opt.output);
  if (opt.format == "json") {
    json doc;
    doc["schema"] = "curvelab/1";
    doc["command"] = "curvature";
    doc["engine"] = engine;
    json arr = json::array();
    for (const auto& row : rows) {
      json item;
      item["x"] = row.x;
      item["y"] = row.y;
      item["kappa"] = quant12(row.report.kappa);
      item["method"] = method_name(row.report.method);
      if (row.transport) item["kappa_transport"] = quant12(*row.transport);
      if (row.combinatorial) item["kappa_combinatorial"] = quant12(*row.combinatorial);
      if (row.bruteforce) item["kappa_bruteforce"] = quant12(*row.bruteforce);
      if (verify) item["max_discrepancy"] = quant12(row.max_discrepancy);
      if (witness && row.report.witness_potential) {
        json pot = json::object();
        for (auto [v, val] : *row.report.witness_potential)
          pot[std::to_string(v)] = quant12(val);
        item["witness_potential"] = pot;
      }
      if (witness && row.report.witness_coupling) {
        const auto& rho = *row.report.witness_coupling;
        json cp;
        cp["rows"] = rho.rows;
        cp["cols"] = rho.cols;
        json mass = json::array();
        for (double m : rho.mass) mass.push_back(quant12(m));
        cp["mass"] = mass;
        item["witness_coupling"] = cp;
      }
      arr.push_back(item);
    }
    doc["pairs"] = arr;
    if (verify) doc["max_discrepancy"] = quant12(worst);
    emit_json(sink, doc);
  } else if (opt.format == "csv") {
    auto& out = sink.stream();
    out << "x,y,kappa,method";
    if (verify) out << ",kappa_transport,kappa_combinatorial,kappa_bruteforce,max_discrepancy";
    out << "\n";
    for (const auto& row : rows) {
      out << row.x << "," << row.y << "," << fmt12(row.report.kappa) << ","
          << method_name(row.report.method);
      if (verify) {
        auto opt_field = [&](const std::optional<double>& v) {
          out << ",";
          if (v) out << fmt12(*v);
        };
        opt_field(row.transport);
        opt_field(row.combinatorial);
        opt_field(row.bruteforce);
        out << "," << fmt12(row.max_discrepancy);
      }
      out << "\n";
    }
  } else {
    auto& out = sink.stream();
    for (const auto& row : rows) {
      out << "kappa(" << row.x << "," << row.y << ") = " << fmt12(row.report.kappa)
          << "  [" << method_name(row.report.method) << "]";
      if (verify) out << "  max_discrepancy = " << fmt12(row.max_discrepancy);
      out << "\n";
      if (witness && row.report.witness_potential) {
        out << "  witness f:";
        for (auto [v, val] : *row.report.witness_potential)
          out << " f(" << v << ")=" << fmt12(val);
        out << "\n";
      }
    }
    if (verify) out << "max discrepancy over pairs: " << fmt12(worst) << "\n";
  }
  if (verify && worst > 1e-6) return kExitCrossCheck;
  return 0;
}

// ------------------------------------------------------------------ profile

int cmd_profile(const CommonOptions& opt, const std::string& root_name, int rmax) {
  auto g = load_graph(opt);
  Vertex root = resolve_vertex(g, root_name);
  auto profile = comparison_profile(g, root, rmax);
  auto chain = associated_bdc(g, root);
  auto sd = sphere_decomposition(g, root);
  auto diam = improved_diameter_check(g, root);

  bool chain_input = true;
  for (const auto& e : g.edges())
    if (e.v != e.u + 1) chain_input = false;

  double sharp_err = 0.0;
  for (Vertex x = 0; x < g.size(); ++x) {
    if (sd.dist[x] > profile.r_max) continue;
    double scale = std::max(1.0, std::abs(profile.phi[sd.dist[x]]));
    sharp_err = std::max(
        sharp_err, std::abs(profile.lap_values[x] - profile.phi[sd.dist[x]]) / scale);
  }
  bool sharp = chain_input && sharp_err <= 1e-10;

  struct Row {
    int r;
    double kappa, phi, kappa_tilde, sum_kappa, sum_tilde, diam_rhs, diam_slack;
  };
  std::vector<Row> rows;
  double sum_kappa = 0.0, sum_tilde = 0.0;
  for (int r = 1; r <= profile.r_max; ++r) {
    Row row;
    row.r = r;
    row.kappa = profile.kappa_r[r];
    row.phi = profile.phi[r];
    row.kappa_tilde = bdc_curvature(chain, r - 1, r);
    sum_kappa += row.kappa;
    sum_tilde += row.kappa_tilde;
    row.sum_kappa = sum_kappa;
    row.sum_tilde = sum_tilde;
    row.diam_rhs = diam[r - 1].rhs;
    row.diam_slack = diam[r - 1].slack;
    rows.push_back(row);
  }

  bool theorem_failure = !profile.violations.empty();
  for (const auto& row : rows)
    if (row.sum_tilde < row.sum_kappa - 1e-7 || row.diam_slack < -1e-9)
      theorem_failure = true;

  Sink sink(opt.output);
  if (opt.format == "json") {
    json doc;
    doc["schema"] = "curvelab/1";
    doc["command"] = "profile";
    doc["root"] = root;
    doc["deg_root"] = quant12(g.degree(root));
    doc["sharp_birth_death"] = sharp;
    json arr = json::array();
    for (const auto& row : rows) {
      json item;
      item["r"] = row.r;
      item["kappa"] = quant12(row.kappa);
      item["phi"] = quant12(row.phi);
      item["kappa_tilde"] = quant12(row.kappa_tilde);
      item["sum_kappa"] = quant12(row.sum_kappa);
      item["sum_kappa_tilde"] = quant12(row.sum_tilde);
      item["diameter_rhs"] = quant12(row.diam_rhs);
      item["diameter_slack"] = quant12(row.diam_slack);
      arr.push_back(item);
    }
    doc["radii"] = arr;
    json lap = json::array();
    for (double v : profile.lap_values) lap.push_back(quant12(v));
    doc["laplacian_distance"] = lap;
    doc["violations"] = profile.violations.size();
    emit_json(sink, doc);
  } else if (opt.format == "csv") {
    auto& out = sink.stream();
    out << "r,kappa,phi,kappa_tilde,sum_kappa,sum_kappa_tilde,diameter_rhs,"
           "diameter_slack\n";
    for (const auto& row : rows)
      out << row.r << "," << fmt12(row.kappa) << "," << fmt12(row.phi) << ","
          << fmt12(row.kappa_tilde) << "," << fmt12(row.sum_kappa) << ","
          << fmt12(row.sum_tilde) << "," << fmt12(row.diam_rhs) << ","
          << fmt12(row.diam_slack) << "\n";
  } else {
    auto& out = sink.stream();
    out << "root " << root << "  Deg = " << fmt12(g.degree(root))
        << "  eccentricity = " << profile.r_max << "\n";
    out << "birth-death sharpness: " << (sharp ? "true" : "false") << "\n";
    out << "  r   kappa(r)        Phi(r)          kappa~(r)       slack\n";
    for (const auto& row : rows)
      out << "  " << row.r << "   " << fmt12(row.kappa) << "   " << fmt12(row.phi)
          << "   " << fmt12(row.kappa_tilde) << "   " << fmt12(row.diam_slack)
          << "\n";
    out << "violations: " << profile.violations.size() << "\n";
  }
  return theorem_failure ? kExitTheoremCheck : 0;
}

// --------------------------------------------------------------------- heat

int cmd_heat(const CommonOptions& opt, const std::string& times_arg,
             const std::string& f_spec, const std::vector<std::string>& pair,
             const std::string& cutoff_file) {
  auto g = load_graph(opt);
  auto times = parse_list(times_arg);
  if (times.empty()) raise(errc::invalid_argument, "need --times");

  Vertex x = 0, y = -1;
  if (!pair.empty()) {
    x = resolve_vertex(g, pair[0]);
    y = resolve_vertex(g, pair[1]);
  } else if (!g.edges().empty()) {
    x = g.edges()[0].u;
    y = g.edges()[0].v;
  }
  if (y < 0) raise(errc::invalid_argument, "graph has no edges");

  std::vector<double> f(g.size(), 0.0);
  {
    auto colon = f_spec.find(':');
    std::string kind = f_spec.substr(0, colon);
    std::string arg = colon == std::string::npos ? "0" : f_spec.substr(colon + 1);
    if (kind == "indicator") {
      f[resolve_vertex(g, arg)] = 1.0;
    } else if (kind == "distance") {
      auto d = g.distances(resolve_vertex(g, arg));
      double ecc = *std::max_element(d.begin(), d.end());
      for (int i = 0; i < g.size(); ++i) f[i] = d[i] / std::max(1.0, ecc);
    } else if (kind == "file") {
      f = read_measure_file(arg).dense(g.size());
    } else {
      raise(errc::invalid_argument, "unknown --f spec `" + f_spec + "`");
    }
  }

  double K = ric_lower_bound(g, opt.jobs);
  HeatPropagator prop(g);
  auto grad_report = gradient_decay_check(g, f, K, times);
  auto kernel_report = kernel_contraction_check(g, x, y, K, times);

  std::vector<double> recovery_times;
  double t0 = std::min(0.125, 0.5 / g.degree_max());
  for (int k = 0; k < 10; ++k) recovery_times.push_back(t0 * std::ldexp(1.0, -k));
  auto recovery = curvature_recovery(g, x, y, recovery_times);

  std::optional<std::vector<double>> phi;
  std::vector<double> cutoff_sup(times.size(), 0.0);
  std::vector<double> cutoff_diff(times.size(), 0.0);
  bool cutoff_indicator = false;
  bool cutoff_ok = true;
  if (!cutoff_file.empty()) {
    phi = read_measure_file(cutoff_file).dense(g.size());
    cutoff_indicator = true;
    std::vector<Vertex> w_set;
    for (int i = 0; i < g.size(); ++i) {
      if ((*phi)[i] == 1.0)
        w_set.push_back(i);
      else if ((*phi)[i] != 0.0)
        cutoff_indicator = false;
    }
    for (std::size_t ti = 0; ti < times.size(); ++ti) {
      auto lim = cutoff_semigroup_limit(prop, *phi, times[ti], f);
      for (double v : lim.values) cutoff_sup[ti] = std::max(cutoff_sup[ti], v);
      if (cutoff_indicator && !w_set.empty()) {
        std::vector<double> fw(g.size(), 0.0);
        for (Vertex v : w_set) fw[v] = std::min(f[v], 1.0);
        auto dir = dirichlet_semigroup(g, w_set, times[ti], fw);
        double diff = 0.0;
        for (int i = 0; i < g.size(); ++i)
          diff = std::max(diff, std::abs(lim.values[i] - dir[i]));
        cutoff_diff[ti] = diff;
        if (diff > 1e-6) cutoff_ok = false;
      }
    }
  }

  bool theorem_failure = !grad_report.all_ok() || !kernel_report.all_ok() ||
                         std::abs(recovery.extrapolated - recovery.kappa_ref) > 1e-3 ||
                         !cutoff_ok;

  Sink sink(opt.output);
  if (opt.format == "json") {
    json doc;
    doc["schema"] = "curvelab/1";
    doc["command"] = "heat";
    doc["K"] = quant12(K);
    doc["pair"] = {x, y};
    json arr = json::array();
    for (std::size_t i = 0; i < times.size(); ++i) {
      json item;
      item["t"] = quant12(times[i]);
      item["grad_observed"] = quant12(grad_report.lines[i].lhs);
      item["grad_bound"] = quant12(grad_report.lines[i].rhs);
      item["w_kernels"] = quant12(kernel_report.lines[i].lhs);
      item["w_bound"] = quant12(kernel_report.lines[i].rhs);
      if (phi) {
        item["cutoff_sup"] = quant12(cutoff_sup[i]);
        if (cutoff_indicator)
          item["cutoff_dirichlet_diff"] = quant12(cutoff_diff[i]);
      }
      arr.push_back(item);
    }
    doc["times"] = arr;
    json rec;
    rec["estimates"] = json::array();
    for (std::size_t i = 0; i < recovery.times.size(); ++i) {
      rec["estimates"].push_back(
          {{"t", quant12(recovery.times[i])},
           {"estimate", quant12(recovery.estimates[i])}});
    }
    rec["extrapolated"] = quant12(recovery.extrapolated);
    rec["kappa_ref"] = quant12(recovery.kappa_ref);
    rec["max_wpm_over_t2"] = quant12(recovery.max_wpm_over_t2);
    doc["recovery"] = rec;
    emit_json(sink, doc);
  } else if (opt.format == "csv") {
    auto& out = sink.stream();
    out << "t,grad_observed,grad_bound,w_kernels,w_bound";
    if (phi) {
      out << ",cutoff_sup";
      if (cutoff_indicator) out << ",cutoff_dirichlet_diff";
    }
    out << "\n";
    for (std::size_t i = 0; i < times.size(); ++i) {
      out << fmt12(times[i]) << "," << fmt12(grad_report.lines[i].lhs) << ","
          << fmt12(grad_report.lines[i].rhs) << ","
          << fmt12(kernel_report.lines[i].lhs) << ","
          << fmt12(kernel_report.lines[i].rhs);
      if (phi) {
        out << "," << fmt12(cutoff_sup[i]);
        if (cutoff_indicator) out << "," << fmt12(cutoff_diff[i]);
      }
      out << "\n";
    }
  } else {
    auto& out = sink.stream();
    out << "K = ric lower bound = " << fmt12(K) << ", pair (" << x << "," << y
        << ")\n";
    out << "  t        |grad P_t f|   bound          W(p^x,p^y)     bound\n";
    for (std::size_t i = 0; i < times.size(); ++i)
      out << "  " << fmt12(times[i]) << "   " << fmt12(grad_report.lines[i].lhs)
          << "   " << fmt12(grad_report.lines[i].rhs) << "   "
          << fmt12(kernel_report.lines[i].lhs) << "   "
          << fmt12(kernel_report.lines[i].rhs) << "\n";
    out << "curvature recovery: extrapolated " << fmt12(recovery.extrapolated)
        << " vs LP " << fmt12(recovery.kappa_ref) << "\n";
    out << "max W(p,m)/t^2 over grid: " << fmt12(recovery.max_wpm_over_t2) << "\n";
    if (phi) {
      out << "cutoff sup per time:";
      for (double v : cutoff_sup) out << " " << fmt12(v);
      out << "\n";
      if (cutoff_indicator) {
        out << "cutoff vs Dirichlet sup differences:";
        for (double d : cutoff_diff) out << " " << fmt12(d);
        out << "\n";
      }
    }
  }
  return theorem_failure ? kExitTheoremCheck : 0;
}

// ----------------------------------------------------------------- generate

int cmd_generate(const CommonOptions& opt) {
  if (opt.gen_kind.empty()) raise(errc::invalid_argument, "need --gen kind");
  auto g = generate_graph(opt);
  std::vector<std::string> notes;
  notes.push_back("generator: " + opt.gen_kind);
  notes.push_back("params: n=" + std::to_string(opt.n) + " eps=" + fmt12(opt.eps) +
                  " K=" + fmt12(opt.kappa_k) + " p=" + fmt12(opt.edge_prob) +
                  " k=" + opt.k_seq);
  notes.push_back("seed: " + std::to_string(opt.seed));
  if (opt.output.empty()) {
    write_graph(std::cout, g, notes);
  } else {
    write_graph_file(opt.output, g, notes);
  }
  return 0;
}

// --------------------------------------------------------------- stochastic

int cmd_stochastic(const CommonOptions& opt, const std::string& root_name,
                   const std::string& criterion, double decay_c) {
  auto g = load_graph(opt);
  BirthDeathChain chain =
      root_name.empty() ? chain_from_graph(g)
                        : associated_bdc(g, resolve_vertex(g, root_name));
  SummandKind kind =
      criterion == "count" ? SummandKind::vertex_count : SummandKind::ball_measure;
  auto verdict = stochastic_completeness_bdc(chain, kind);
  auto decay = curvature_decay_verdict(chain, decay_c);

  int rows = static_cast<int>(verdict.summands.size());
  std::vector<double> kappas(rows, 0.0);
  for (int r = 1; r < rows; ++r) kappas[r] = bdc_curvature(chain, r - 1, r);

  Sink sink(opt.output);
  if (opt.format == "json") {
    json doc;
    doc["schema"] = "curvelab/1";
    doc["command"] = "stochastic";
    doc["verdict"] = completeness_name(verdict.status);
    doc["criterion"] = criterion == "count" ? "vertex_count" : "ball_measure";
    doc["alpha"] = quant12(verdict.alpha);
    doc["beta"] = quant12(verdict.beta);
    doc["note"] = verdict.note;
    doc["decay_verdict"] = completeness_name(decay.status);
    doc["decay_C"] = quant12(decay_c);
    doc["decay_failures"] = decay.failing_radii.size();
    json arr = json::array();
    for (int r = 0; r < rows; ++r) {
      arr.push_back({{"r", r},
                     {"kappa", quant12(kappas[r])},
                     {"summand", quant12(verdict.summands[r])},
                     {"partial_sum", quant12(verdict.partial_sums[r])}});
    }
    doc["evidence"] = arr;
    emit_json(sink, doc);
  } else if (opt.format == "csv") {
    auto& out = sink.stream();
    out << "r,kappa,summand,partial_sum\n";
    for (int r = 0; r < rows; ++r)
      out << r << "," << fmt12(kappas[r]) << "," << fmt12(verdict.summands[r])
          << "," << fmt12(verdict.partial_sums[r]) << "\n";
  } else {
    auto& out = sink.stream();
    out << "verdict: " << completeness_name(verdict.status) << " (fit alpha "
        << fmt12(verdict.alpha) << ", beta " << fmt12(verdict.beta) << ")";
    if (!verdict.note.empty()) out << "  [" << verdict.note << "]";
    out << "\n";
    out << "decay verdict (C = " << fmt12(decay_c)
        << "): " << completeness_name(decay.status) << ", failing radii "
        << decay.failing_radii.size() << "\n";
    int start = std::max(0, rows - 10);
    for (int r = start; r < rows; ++r)
      out << "  r=" << r << " kappa=" << fmt12(kappas[r])
          << " summand=" << fmt12(verdict.summands[r])
          << " partial=" << fmt12(verdict.partial_sums[r]) << "\n";
  }
  return 0;
}

// ---------------------------------------------------------------- transport

int cmd_transport(const CommonOptions& opt, const std::string& mu_file,
                  const std::string& nu_file, bool witness) {
  auto g = load_graph(opt);
  auto mu = read_measure_file(mu_file);
  auto nu = read_measure_file(nu_file);
  auto plan = wasserstein(g, mu, nu);
  auto dual = wasserstein_dual(g, mu, nu);
  double gap = std::abs(plan.value - dual.value);

  Sink sink(opt.output);
  if (opt.format == "json") {
    json doc;
    doc["schema"] = "curvelab/1";
    doc["command"] = "transport";
    doc["wasserstein"] = quant12(plan.value);
    doc["dual"] = quant12(dual.value);
    doc["duality_gap"] = quant12(gap);
    if (witness) {
      json cp;
      cp["rows"] = plan.coupling.rows;
      cp["cols"] = plan.coupling.cols;
      json mass = json::array();
      for (double m : plan.coupling.mass) mass.push_back(quant12(m));
      cp["mass"] = mass;
      doc["coupling"] = cp;
    }
    emit_json(sink, doc);
  } else if (opt.format == "csv") {
    sink.stream() << "wasserstein,dual,duality_gap\n"
                  << fmt12(plan.value) << "," << fmt12(dual.value) << ","
                  << fmt12(gap) << "\n";
  } else {
    sink.stream() << "W = " << fmt12(plan.value) << "  dual = " << fmt12(dual.value)
                  << "  gap = " << fmt12(gap) << "\n";
  }
  return 0;
}

int classify_error(const Error& e) {
  switch (e.code()) {
    case errc::lp_infeasible:
    case errc::solver_failure:
    case errc::eigen_failure:
      return kExitSolverError;
    default:
      return kExitUserError;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ollivier curvature toolkit for weighted graph Laplacians"};
  app.require_subcommand(1);

  CommonOptions copt;

  auto* curvature = app.add_subcommand("curvature", "per-pair Ollivier curvature");
  add_common(curvature, copt, true);
  std::vector<std::string> pair;
  curvature->add_option("--pair", pair, "vertex pair (labels or indices)")
      ->expected(2);
  std::string engine = "dual";
  curvature->add_option("--engine", engine, "dual transport combinatorial bruteforce")
      ->check(CLI::IsMember({"dual", "transport", "combinatorial", "bruteforce"}));
  bool witness = false, verify = false;
  curvature->add_flag("--witness", witness, "emit optimality witnesses");
  curvature->add_flag("--verify", verify, "run all applicable engines and compare");

  auto* profile = app.add_subcommand("profile", "Laplacian comparison profile");
  CommonOptions popt;
  add_common(profile, popt, true);
  std::string root;
  int rmax = -1;
  profile->add_option("--root", root, "root vertex")->required();
  profile->add_option("--rmax", rmax, "largest radius (default eccentricity)");

  auto* heat = app.add_subcommand("heat", "semigroup verification suites");
  CommonOptions hopt;
  add_common(heat, hopt, true);
  std::string times = "0.1,0.5,1";
  std::string f_spec = "indicator:0";
  std::vector<std::string> hpair;
  std::string cutoff_file;
  heat->add_option("--times", times, "comma list of times");
  heat->add_option("--f", f_spec, "indicator:<v>, distance:<v> or file:<path>");
  heat->add_option("--pair", hpair, "pair for kernel checks")->expected(2);
  heat->add_option("--cutoff", cutoff_file, "cutoff function as a measure file");

  auto* generate = app.add_subcommand("generate", "write a generated graph file");
  CommonOptions gopt;
  add_common(generate, gopt, false);

  auto* stochastic = app.add_subcommand("stochastic", "completeness verdicts");
  CommonOptions sopt;
  add_common(stochastic, sopt, true);
  std::string sroot;
  std::string criterion = "ball";
  double decay_c = 1.0;
  stochastic->add_option("--root", sroot, "reduce via the associated chain");
  stochastic->add_option("--criterion", criterion, "ball or count")
      ->check(CLI::IsMember({"ball", "count"}));
  stochastic->add_option("--decay-c", decay_c, "constant in kappa(r) >= -C log r");

  auto* transport = app.add_subcommand("transport", "Wasserstein distance");
  CommonOptions topt;
  add_common(transport, topt, true);
  std::string mu_file, nu_file;
  bool twitness = false;
  transport->add_option("--mu", mu_file, "measure file")->required();
  transport->add_option("--nu", nu_file, "measure file")->required();
  transport->add_flag("--witness", twitness, "emit the optimal coupling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUserError;
  }

  try {
    if (curvature->parsed())
      return cmd_curvature(copt, pair, engine, witness, verify);
    if (profile->parsed()) return cmd_profile(popt, root, rmax);
    if (heat->parsed()) return cmd_heat(hopt, times, f_spec, hpair, cutoff_file);
    if (generate->parsed()) return cmd_generate(gopt);
    if (stochastic->parsed()) return cmd_stochastic(sopt, sroot, criterion, decay_c);
    if (transport->parsed())
      return cmd_transport(topt, mu_file, nu_file, twitness);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return classify_error(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUserError;
  }
  return 0;
}
