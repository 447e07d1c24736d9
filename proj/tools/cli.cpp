#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mplex/baselines.hpp"
#include "mplex/error.hpp"
#include "mplex/io.hpp"
#include "mplex/network.hpp"
#include "mplex/ranking.hpp"
#include "mplex/solver.hpp"

namespace mplex::cli {

namespace {

namespace fs = std::filesystem;

struct Config {
  std::string command;
  std::string input;
  std::optional<std::size_t> n;
  std::optional<std::size_t> num_layers;
  std::string symmetrize = "mirror";
  std::string node_labels;
  std::string layer_labels;

  double alpha = 2.1;
  double beta = 2.0;
  double tol = 1e-6;
  std::size_t max_iter = 1000;
  std::string norm = "euclidean";
  bool unsafe_params = false;
  std::optional<std::uint64_t> seed;

  std::string measure = "eig_cen";
  std::vector<std::string> measures{"fcent", "eig_ver", "eig_cen", "agg_eig", "agg_deg"};
  std::vector<double> omega;
  std::string influence = "identity";
  std::optional<std::size_t> k;
  std::vector<double> alphas{2.1, 2.5, 2.7, 3.0, 4.0, 5.0, 10.0};
  std::optional<double> epsilon;

  std::string format = "csv";
  std::string output;
};

const std::vector<std::string> kNodeMeasures{"fcent",   "eig_cen",   "agg_eig",   "agg_deg",
                                             "eig_ver", "local_het", "global_het"};

SolverParams solver_params(const Config& c) {
  SolverParams p;
  p.alpha = c.alpha;
  p.beta = c.beta;
  p.tol = c.tol;
  p.max_iter = c.max_iter;
  p.stopping_norm = parse_stopping_norm(c.norm);
  p.unsafe_params = c.unsafe_params;
  return p;
}

MultiplexNetwork load_network(const Config& c, std::ostream& err) {
  std::vector<std::string> warnings;
  MultiplexNetwork net = to_network(read_multiplex_edges(c.input), c.n, c.num_layers,
                                    parse_symmetrize_policy(c.symmetrize), &warnings);
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  if (!c.node_labels.empty() || !c.layer_labels.empty()) {
    std::vector<std::string> nodes =
        c.node_labels.empty() ? net.node_labels() : read_labels(c.node_labels, net.num_nodes());
    std::vector<std::string> layers = c.layer_labels.empty()
                                          ? net.layer_labels()
                                          : read_labels(c.layer_labels, net.num_layers());
    net = net.with_labels(std::move(nodes), std::move(layers));
  }
  return net;
}

Vector omega_of(const Config& c, const MultiplexNetwork& net) {
  if (c.omega.empty()) return Vector::Ones(static_cast<Eigen::Index>(net.num_layers()));
  return Eigen::Map<const Vector>(c.omega.data(), static_cast<Eigen::Index>(c.omega.size()));
}

// Dense L x L matrix, one row per non-comment line.
InfluenceMatrix read_influence_file(const std::string& path, std::size_t num_layers) {
  const std::string text = read_file(path);
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<double> row;
    std::string field;
    while (fields >> field) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(field, &used));
        if (used != field.size()) throw std::invalid_argument(field);
      } catch (const std::exception&) {
        throw ParseError(line_no, "influence entry '" + field + "' is not a number");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() != num_layers) {
    throw DimensionError("influence file has " + std::to_string(rows.size()) + " rows, expected " +
                         std::to_string(num_layers));
  }
  DenseMatrix w(static_cast<Eigen::Index>(num_layers), static_cast<Eigen::Index>(num_layers));
  for (std::size_t l = 0; l < num_layers; ++l) {
    if (rows[l].size() != num_layers) {
      throw DimensionError("influence row " + std::to_string(l + 1) + " has " +
                           std::to_string(rows[l].size()) + " entries, expected " +
                           std::to_string(num_layers));
    }
    for (std::size_t k = 0; k < num_layers; ++k) {
      w(static_cast<Eigen::Index>(l), static_cast<Eigen::Index>(k)) = rows[l][k];
    }
  }
  return InfluenceMatrix(w);
}

InfluenceMatrix influence_of(const Config& c, const MultiplexNetwork& net) {
  if (c.influence == "identity") return InfluenceMatrix::identity(net.num_layers());
  if (c.influence == "ones") return InfluenceMatrix::ones(net.num_layers());
  return read_influence_file(c.influence, net.num_layers());
}

std::optional<NodeLayerScores> random_start(const Config& c, const MultiplexNetwork& net) {
  if (!c.seed) return std::nullopt;
  std::mt19937_64 rng(*c.seed);
  // Mapped by hand so the values do not depend on the standard library's
  // distribution implementation.
  auto draw = [&rng] { return 0.5 + static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  NodeLayerScores s;
  s.x.resize(static_cast<Eigen::Index>(net.num_nodes()));
  s.t.resize(static_cast<Eigen::Index>(net.num_layers()));
  for (Eigen::Index i = 0; i < s.x.size(); ++i) s.x(i) = draw();
  for (Eigen::Index l = 0; l < s.t.size(); ++l) s.t(l) = draw();
  return s;
}

// Writes `content` to output_dir/name, or to `out` when no directory is set.
void emit(const Config& c, const std::string& name, const std::string& content,
          std::ostream& out) {
  if (c.output.empty()) {
    out << content;
    return;
  }
  fs::create_directories(c.output);
  write_file(fs::path(c.output) / name, content);
}

void print_warnings(const std::vector<std::string>& warnings, std::ostream& err) {
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
}

std::string matrix_csv(const CentralityMatrix& m, const MultiplexNetwork& net) {
  std::string out = "index,label";
  for (std::size_t l = 0; l < net.num_layers(); ++l) out += ',' + net.layer_label(l);
  out += '\n';
  for (std::size_t i = 0; i < net.num_nodes(); ++i) {
    out += std::to_string(i + 1) + ',' + net.node_label(i);
    for (std::size_t l = 0; l < net.num_layers(); ++l) {
      out += ',' + format_double(m.scores(static_cast<Eigen::Index>(i),
                                          static_cast<Eigen::Index>(l)));
    }
    out += '\n';
  }
  return out;
}

// Node score vector of any supported measure. local_het and global_het are
// collapsed with the omega weights and renormalized.
NodeScores node_measure(const std::string& name, const Config& c, const MultiplexNetwork& net,
                        int& status) {
  if (name == "fcent") {
    const CentralityResult r = f_centrality(net, solver_params(c), random_start(c, net));
    if (!r.report.converged) status = kExitNotConverged;
    NodeScores s;
    s.measure_name = "fcent";
    s.scores = r.scores.x;
    if (!r.report.converged) {
      s.warnings.push_back("fcent: no convergence within " + std::to_string(c.max_iter) +
                           " iterations");
    }
    return s;
  }
  if (name == "eig_cen") return eig_cen(net, omega_of(c, net));
  if (name == "agg_eig") return agg_eig(net, omega_of(c, net));
  if (name == "agg_deg") return agg_deg_centrality(net);
  if (name == "eig_ver") return eig_versatility(net, omega_of(c, net));
  if (name == "local_het" || name == "global_het") {
    const InfluenceMatrix w = influence_of(c, net);
    const CentralityMatrix m =
        name == "local_het" ? local_heterogeneous(net, w) : global_heterogeneous(net, w);
    NodeScores s;
    s.measure_name = name;
    s.scores = m.scores * omega_of(c, net);
    if (s.scores.sum() > 0.0) s.scores /= s.scores.sum();
    s.degenerate_warning = m.degenerate_warning;
    s.warnings = m.warnings;
    return s;
  }
  throw ValidationError("unknown measure '" + name + "'");
}

int cmd_centrality(const Config& c, std::ostream& out, std::ostream& err) {
  const MultiplexNetwork net = load_network(c, err);
  const CentralityResult r = f_centrality(net, solver_params(c), random_start(c, net));
  const OutputFormat format = parse_output_format(c.format);
  if (format == OutputFormat::Json || c.output.empty()) {
    emit(c, "centrality.json", write_scores(r, net, format), out);
  } else {
    emit(c, "nodes.csv", write_scores_csv(rank(r.scores.x), net.node_labels()), out);
    emit(c, "layers.csv", write_scores_csv(rank(r.scores.t), net.layer_labels()), out);
  }
  if (!c.output.empty()) emit(c, "report.json", report_to_json(r.report).dump(2) + '\n', out);
  if (!r.report.converged) {
    err << "error: no convergence within " << c.max_iter << " iterations\n";
    return kExitNotConverged;
  }
  err << "converged after " << r.report.iterations << " iterations\n";
  return kExitOk;
}

int cmd_baseline(const Config& c, std::ostream& out, std::ostream& err) {
  const MultiplexNetwork net = load_network(c, err);
  const OutputFormat format = parse_output_format(c.format);
  const bool matrix_measure =
      c.measure == "layer_eig" || c.measure == "local_het" || c.measure == "global_het";
  if (matrix_measure) {
    CentralityMatrix m;
    if (c.measure == "layer_eig") {
      m = layer_eigenvectors(net);
    } else {
      const InfluenceMatrix w = influence_of(c, net);
      m = c.measure == "local_het" ? local_heterogeneous(net, w) : global_heterogeneous(net, w);
    }
    print_warnings(m.warnings, err);
    if (format == OutputFormat::Csv) {
      emit(c, c.measure + ".csv", matrix_csv(m, net), out);
    } else {
      nlohmann::json columns = nlohmann::json::array();
      for (std::size_t l = 0; l < net.num_layers(); ++l) {
        const Vector col = m.scores.col(static_cast<Eigen::Index>(l));
        columns.push_back({{"layer", net.layer_label(l)},
                           {"degenerate", static_cast<bool>(m.column_degenerate[l])},
                           {"scores", scores_to_json(rank(col), net.node_labels())}});
      }
      const nlohmann::json j = {{"measure", m.measure_name},
                                {"degenerate_warning", m.degenerate_warning},
                                {"warnings", m.warnings},
                                {"columns", columns}};
      emit(c, c.measure + ".json", j.dump(2) + '\n', out);
    }
    return kExitOk;
  }
  if (c.measure == "fcent") throw ValidationError("use the centrality command for fcent");
  int status = kExitOk;
  const NodeScores s = node_measure(c.measure, c, net, status);
  print_warnings(s.warnings, err);
  const Ranking r = rank(s.scores);
  if (format == OutputFormat::Csv) {
    emit(c, c.measure + ".csv", write_scores_csv(r, net.node_labels()), out);
  } else {
    const nlohmann::json j = {{"measure", s.measure_name},
                              {"degenerate_warning", s.degenerate_warning},
                              {"warnings", s.warnings},
                              {"scores", scores_to_json(r, net.node_labels())}};
    emit(c, c.measure + ".json", j.dump(2) + '\n', out);
  }
  return status;
}

int cmd_compare(const Config& c, std::ostream& out, std::ostream& err) {
  const MultiplexNetwork net = load_network(c, err);
  if (c.measures.empty()) throw ValidationError("no measures selected");
  for (const std::string& m : c.measures) {
    if (std::find(kNodeMeasures.begin(), kNodeMeasures.end(), m) == kNodeMeasures.end()) {
      throw ValidationError("unknown measure '" + m + "'");
    }
  }
  int status = kExitOk;
  std::vector<NodeScores> scores;
  std::vector<Ranking> rankings;
  for (const std::string& m : c.measures) {
    scores.push_back(node_measure(m, c, net, status));
    print_warnings(scores.back().warnings, err);
    rankings.push_back(rank(scores.back().scores));
  }
  const std::size_t count = c.measures.size();
  const std::size_t k_max = c.k.value_or(net.num_nodes());
  if (k_max == 0 || k_max > net.num_nodes()) {
    throw ValidationError("K=" + std::to_string(k_max) + " is outside 1.." +
                          std::to_string(net.num_nodes()));
  }

  std::string pearson_csv = "measure_a,measure_b,pearson\n";
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a; b < count; ++b) {
      std::string value;
      try {
        value = format_double(pearson(scores[a].scores, scores[b].scores));
      } catch (const Error& e) {
        value = "nan";
        err << "warning: pearson(" << c.measures[a] << ", " << c.measures[b] << "): " << e.what()
            << '\n';
      }
      pearson_csv += c.measures[a] + ',' + c.measures[b] + ',' + value + '\n';
    }
  }

  std::string isim_csv = "K";
  std::vector<std::vector<double>> curves;
  for (std::size_t a = 0; a < count; ++a) {
    for (std::size_t b = a + 1; b < count; ++b) {
      isim_csv += ',' + c.measures[a] + '|' + c.measures[b];
      curves.push_back(isim_curve(rankings[a], rankings[b]));
    }
  }
  isim_csv += '\n';
  for (std::size_t k = 1; k <= k_max; ++k) {
    isim_csv += std::to_string(k);
    for (const auto& curve : curves) isim_csv += ',' + format_double(curve[k - 1]);
    isim_csv += '\n';
  }

  std::string scatter_csv = "index,label";
  for (const std::string& m : c.measures) scatter_csv += ',' + m;
  scatter_csv += '\n';
  for (std::size_t i = 0; i < net.num_nodes(); ++i) {
    scatter_csv += std::to_string(i + 1) + ',' + net.node_label(i);
    for (const NodeScores& s : scores) {
      scatter_csv += ',' + format_double(s.scores(static_cast<Eigen::Index>(i)));
    }
    scatter_csv += '\n';
  }

  emit(c, "pearson.csv", pearson_csv, out);
  if (!c.output.empty()) {
    emit(c, "isim.csv", isim_csv, out);
    emit(c, "scatter.csv", scatter_csv, out);
  }
  return status;
}

int cmd_bound(const Config& c, std::ostream& out, std::ostream& err) {
  const MultiplexNetwork net = load_network(c, err);
  SolverParams p = solver_params(c);
  validate(p);
  const IterationBound b = iteration_bound(net, c.alpha, c.beta, c.epsilon.value_or(c.tol));
  out << "rho=" << format_double(b.rho) << '\n'
      << "C=" << format_double(b.constant) << '\n'
      << "k=" << b.k << '\n';
  if (b.start_is_fixed_point) out << "uniform start is already the fixed point\n";
  return kExitOk;
}

int cmd_info(const Config& c, std::ostream& out, std::ostream& err) {
  const MultiplexNetwork net = load_network(c, err);
  const ConnectivityDiagnostics d = connectivity(net);
  out << net.num_layers() << " layers, " << net.num_nodes() << " nodes, "
      << d.isolated_nodes.size() << " isolated nodes, aggregate "
      << (d.aggregate_connected ? "connected" : "disconnected") << '\n';
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const std::size_t stored = static_cast<std::size_t>(net.layer(l).nonZeros());
    out << "layer " << net.layer_label(l) << ": " << stored << " stored entries, "
        << (stored == 0 ? "empty" : (d.layer_connected[l] ? "connected" : "disconnected")) << '\n';
  }
  return kExitOk;
}

int cmd_sweep(const Config& c, std::ostream& out, std::ostream& err) {
  const MultiplexNetwork net = load_network(c, err);
  SolverParams p = solver_params(c);
  const SweepResult sweep = alpha_sweep(net, c.alphas, c.beta, p);

  int status = kExitOk;
  std::string table =
      "alpha,beta,status,iterations,node_converged_at,layer_converged_at,rho,message\n";
  auto opt = [](const std::optional<std::size_t>& v) {
    return v ? std::to_string(*v) : std::string();
  };
  for (const SweepEntry& e : sweep.entries) {
    table += format_double(e.alpha) + ',' + format_double(sweep.beta) + ',';
    if (!e.ok()) {
      err << "warning: alpha=" << format_double(e.alpha) << ": " << e.error << '\n';
      std::string message = e.error;
      std::replace(message.begin(), message.end(), ',', ';');
      table += "rejected,,,,," + message + '\n';
      continue;
    }
    const ConvergenceReport& r = e.result.report;
    if (!r.converged) status = kExitNotConverged;
    table += std::string(r.converged ? "converged" : "not_converged") + ',' +
             std::to_string(r.iterations) + ',' + opt(r.node_converged_at) + ',' +
             opt(r.layer_converged_at) + ',' + format_double(r.rho) + ",\n";
  }

  // Rank trajectories (1-based) per alpha: one row per node or layer.
  auto trajectories = [&](bool nodes) {
    std::string csv = "index,label";
    for (const SweepEntry& e : sweep.entries) {
      if (e.ok()) csv += ",alpha=" + format_double(e.alpha);
    }
    csv += '\n';
    const std::size_t count = nodes ? net.num_nodes() : net.num_layers();
    std::vector<std::vector<std::size_t>> positions;
    for (const SweepEntry& e : sweep.entries) {
      if (e.ok()) positions.push_back((nodes ? e.node_ranking : e.layer_ranking).positions());
    }
    for (std::size_t i = 0; i < count; ++i) {
      csv += std::to_string(i + 1) + ',' + (nodes ? net.node_label(i) : net.layer_label(i));
      for (const auto& pos : positions) csv += ',' + std::to_string(pos[i] + 1);
      csv += '\n';
    }
    return csv;
  };

  emit(c, "sweep.csv", table, out);
  if (!c.output.empty()) {
    emit(c, "node_ranks.csv", trajectories(true), out);
    emit(c, "layer_ranks.csv", trajectories(false), out);
  }
  return status;
}

void add_input_options(CLI::App* sub, Config& c) {
  sub->add_option("input", c.input, "Multiplex edge list (layer node node [weight])")
      ->required();
  sub->add_option("--n", c.n, "Number of nodes (at least the largest index)");
  sub->add_option("--L", c.num_layers, "Number of layers (at least the largest index)");
  sub->add_option("--symmetrize", c.symmetrize, "mirror | max | error")->capture_default_str();
  sub->add_option("--node-labels", c.node_labels, "Node label file (index label)");
  sub->add_option("--layer-labels", c.layer_labels, "Layer label file (index label)");
}

void add_solver_options(CLI::App* sub, Config& c) {
  sub->add_option("--alpha", c.alpha, "Node exponent")->capture_default_str();
  sub->add_option("--beta", c.beta, "Layer exponent")->capture_default_str();
  sub->add_option("--tol", c.tol, "Stopping tolerance")->capture_default_str();
  sub->add_option("--max-iter", c.max_iter, "Iteration cap")->capture_default_str();
  sub->add_option("--norm", c.norm, "euclidean | one | max")->capture_default_str();
  sub->add_flag("--unsafe-params", c.unsafe_params,
                "Allow exponents outside the uniqueness region");
  sub->add_option("--seed", c.seed, "Random positive start from this seed");
}

void add_output_options(CLI::App* sub, Config& c) {
  sub->add_option("--format", c.format, "csv | json")->capture_default_str();
  sub->add_option("-o,--output", c.output, "Output directory (default: standard output)");
}

void add_baseline_options(CLI::App* sub, Config& c) {
  sub->add_option("--omega", c.omega, "Layer weights, comma separated")->delimiter(',');
  sub->add_option("--influence", c.influence, "identity | ones | path to an L x L matrix")
      ->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Nonlinear eigenvector centrality for multiplex networks", "mplexcent"};
  app.require_subcommand(1);

  auto* centrality = app.add_subcommand("centrality", "Node and layer f-centrality");
  add_input_options(centrality, c);
  add_solver_options(centrality, c);
  add_output_options(centrality, c);

  auto* baseline = app.add_subcommand("baseline", "Linear eigenvector centralities");
  add_input_options(baseline, c);
  add_output_options(baseline, c);
  add_baseline_options(baseline, c);
  baseline
      ->add_option("--measure", c.measure,
                   "eig_cen | agg_eig | agg_deg | eig_ver | layer_eig | local_het | global_het")
      ->capture_default_str();

  auto* compare = app.add_subcommand("compare", "Pearson, isim and scatter data across measures");
  add_input_options(compare, c);
  add_solver_options(compare, c);
  add_output_options(compare, c);
  add_baseline_options(compare, c);
  compare->add_option("--measures", c.measures, "Measures to compare, comma separated")
      ->delimiter(',')
      ->capture_default_str();
  compare->add_option("--K", c.k, "Largest K of the isim curves (default: n)");

  auto* bound = app.add_subcommand("bound", "A priori iteration bound");
  add_input_options(bound, c);
  add_solver_options(bound, c);
  bound->add_option("--epsilon", c.epsilon, "Target accuracy (default: --tol)");

  auto* info = app.add_subcommand("info", "Size and connectivity summary");
  add_input_options(info, c);

  auto* sweep = app.add_subcommand("sweep", "Iteration counts and rankings across alpha");
  add_input_options(sweep, c);
  add_solver_options(sweep, c);
  add_output_options(sweep, c);
  sweep->add_option("--alphas", c.alphas, "Alpha values, comma separated")
      ->delimiter(',')
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*centrality) return cmd_centrality(c, out, err);
    if (*baseline) return cmd_baseline(c, out, err);
    if (*compare) return cmd_compare(c, out, err);
    if (*bound) return cmd_bound(c, out, err);
    if (*info) return cmd_info(c, out, err);
    if (*sweep) return cmd_sweep(c, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

}  // namespace mplex::cli
