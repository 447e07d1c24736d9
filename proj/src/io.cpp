#include "mplex/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "mplex/error.hpp"

namespace mplex {

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (pos < line.size()) {
    while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t')) ++pos;
    if (pos >= line.size()) break;
    std::size_t end = pos;
    while (end < line.size() && line[end] != ' ' && line[end] != '\t') ++end;
    fields.push_back(line.substr(pos, end - pos));
    pos = end;
  }
  return fields;
}

std::string_view strip(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

// Calls fn(line_number, line) for every line, CR stripped, BOM removed.
template <typename Fn>
void for_each_line(std::string_view text, Fn&& fn) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    fn(line_no, line);
  }
}

std::optional<long long> to_integer(std::string_view field) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

std::optional<double> to_real(std::string_view field) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) return std::nullopt;
  return v;
}

std::size_t parse_index(std::string_view field, std::size_t line_no, const char* what) {
  const auto v = to_integer(field);
  if (!v) {
    throw ParseError(line_no, std::string(what) + " '" + std::string(field) +
                                  "' is not an integer");
  }
  if (*v <= 0) {
    throw ValidationError("line " + std::to_string(line_no) + ": " + what + " " +
                          std::to_string(*v) + " is not positive (indices are 1-based)");
  }
  return static_cast<std::size_t>(*v);
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

// Splits one CSV record, honoring double quotes.
std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        out.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        out.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.emplace_back();
    } else {
      out.back() += c;
    }
  }
  return out;
}

template <typename T>
nlohmann::json optional_json(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
}

template <typename T>
std::optional<T> optional_from(const nlohmann::json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

EdgeListDocument parse_multiplex_edges(std::string_view text) {
  EdgeListDocument doc;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const std::string_view line = strip(raw);
    if (line.empty() || line.front() == '#') return;
    const auto fields = split_fields(line);
    if (fields.size() != 3 && fields.size() != 4) {
      throw ParseError(line_no, "expected 'layer node node [weight]', found " +
                                    std::to_string(fields.size()) + " fields");
    }
    EdgeRecord r;
    r.line = line_no;
    r.layer = parse_index(fields[0], line_no, "layer");
    r.node_a = parse_index(fields[1], line_no, "node");
    r.node_b = parse_index(fields[2], line_no, "node");
    if (fields.size() == 4) {
      const auto w = to_real(fields[3]);
      if (!w) {
        throw ParseError(line_no, "weight '" + std::string(fields[3]) + "' is not a number");
      }
      if (!std::isfinite(*w) || *w < 0.0) {
        throw ValidationError("line " + std::to_string(line_no) + ": weight " +
                              std::string(fields[3]) + " is negative or non-finite");
      }
      r.weight = *w;
    }
    doc.inferred_L = std::max(doc.inferred_L, r.layer);
    doc.inferred_n = std::max({doc.inferred_n, r.node_a, r.node_b});
    doc.records.push_back(r);
  });
  return doc;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path.string() + "'");
  out << content;
}

EdgeListDocument read_multiplex_edges(const std::filesystem::path& path) {
  return parse_multiplex_edges(read_file(path));
}

SymmetrizePolicy parse_symmetrize_policy(std::string_view text) {
  if (text == "mirror") return SymmetrizePolicy::Mirror;
  if (text == "max") return SymmetrizePolicy::Max;
  if (text == "error" || text == "error-on-asymmetry") return SymmetrizePolicy::ErrorOnAsymmetry;
  throw ValidationError("unknown symmetrize policy '" + std::string(text) +
                        "' (expected mirror, max or error)");
}

MultiplexNetwork to_network(const EdgeListDocument& doc, std::optional<std::size_t> n_override,
                            std::optional<std::size_t> layers_override, SymmetrizePolicy policy,
                            std::vector<std::string>* warnings) {
  if (n_override && *n_override < doc.inferred_n) {
    throw ValidationError("node count " + std::to_string(*n_override) +
                          " is smaller than the largest node index " +
                          std::to_string(doc.inferred_n));
  }
  if (layers_override && *layers_override < doc.inferred_L) {
    throw ValidationError("layer count " + std::to_string(*layers_override) +
                          " is smaller than the largest layer index " +
                          std::to_string(doc.inferred_L));
  }
  const std::size_t n = n_override.value_or(doc.inferred_n);
  const std::size_t num_layers = layers_override.value_or(doc.inferred_L);

  // Per (layer, lo, hi): weight listed as lo->hi and as hi->lo.
  struct Directions {
    double forward = 0.0;
    double backward = 0.0;
    bool has_forward = false;
    bool has_backward = false;
  };
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, Directions> pairs;
  for (const EdgeRecord& r : doc.records) {
    const std::size_t lo = std::min(r.node_a, r.node_b);
    const std::size_t hi = std::max(r.node_a, r.node_b);
    Directions& d = pairs[{r.layer - 1, lo - 1, hi - 1}];
    if (r.node_a <= r.node_b) {
      d.forward += r.weight;
      d.has_forward = true;
    } else {
      d.backward += r.weight;
      d.has_backward = true;
    }
  }

  std::size_t conflicts = 0;
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [key, d] : pairs) {
    const auto [l, i, j] = key;
    double w = 0.0;
    if (i == j) {
      w = d.forward;
    } else if (d.has_forward && d.has_backward) {
      if (d.forward != d.backward) {
        if (policy == SymmetrizePolicy::ErrorOnAsymmetry) {
          throw ValidationError("layer " + std::to_string(l + 1) + ": edge " +
                                std::to_string(i + 1) + "-" + std::to_string(j + 1) +
                                " has different weights in the two directions");
        }
        if (policy == SymmetrizePolicy::Mirror) ++conflicts;
      }
      w = std::max(d.forward, d.backward);
    } else {
      if (policy == SymmetrizePolicy::ErrorOnAsymmetry) {
        throw ValidationError("layer " + std::to_string(l + 1) + ": edge " +
                              std::to_string(i + 1) + "-" + std::to_string(j + 1) +
                              " is listed in one direction only");
      }
      w = d.has_forward ? d.forward : d.backward;
    }
    if (w > 0.0) edges.push_back({l, i, j, w});
  }
  if (conflicts > 0 && warnings) {
    warnings->push_back(std::to_string(conflicts) +
                        " edge(s) listed in both directions with different weights; kept the "
                        "larger weight");
  }
  return build_network(n, num_layers, edges);
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return ec == std::errc{} ? std::string(buf, ptr) : std::string("nan");
}

std::string write_multiplex_edges(const MultiplexNetwork& net) {
  std::vector<Edge> entries = net.entries();
  std::erase_if(entries, [](const Edge& e) { return e.i > e.j; });
  std::sort(entries.begin(), entries.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.layer, a.i, a.j) < std::tie(b.layer, b.i, b.j);
  });
  std::string out;
  for (const Edge& e : entries) {
    out += std::to_string(e.layer + 1) + ' ' + std::to_string(e.i + 1) + ' ' +
           std::to_string(e.j + 1) + ' ' + format_double(e.weight) + '\n';
  }
  return out;
}

std::vector<std::string> parse_labels(std::string_view text, std::size_t count) {
  std::vector<std::string> labels(count);
  bool first = true;
  std::size_t sequential = 0;
  for_each_line(text, [&](std::size_t line_no, std::string_view raw) {
    const std::string_view line = strip(raw);
    if (line.empty() || line.front() == '#') return;
    const auto fields = split_fields(line);
    const auto index = to_integer(fields[0]);
    if (first && !index) {
      first = false;
      return;  // header
    }
    first = false;
    std::size_t slot = 0;
    std::string label;
    if (index && fields.size() >= 2) {
      if (*index <= 0 || static_cast<std::size_t>(*index) > count) {
        throw ValidationError("line " + std::to_string(line_no) + ": label index " +
                              std::to_string(*index) + " is outside 1.." +
                              std::to_string(count));
      }
      slot = static_cast<std::size_t>(*index) - 1;
      label = std::string(fields[1]);
    } else {
      slot = sequential;
      label = std::string(line);
      if (slot >= count) {
        throw ValidationError("line " + std::to_string(line_no) + ": more labels than " +
                              std::to_string(count) + " entries");
      }
    }
    labels[slot] = std::move(label);
    ++sequential;
  });
  for (std::size_t i = 0; i < count; ++i) {
    if (labels[i].empty()) labels[i] = std::to_string(i + 1);
  }
  return labels;
}

std::vector<std::string> read_labels(const std::filesystem::path& path, std::size_t count) {
  return parse_labels(read_file(path), count);
}

OutputFormat parse_output_format(std::string_view text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw ValidationError("unknown output format '" + std::string(text) + "' (expected csv or json)");
}

std::string write_scores_csv(const Ranking& ranking, const std::vector<std::string>& labels) {
  const std::vector<std::size_t> pos = ranking.positions();
  std::string out = "index,label,score,rank\n";
  for (std::size_t i = 0; i < pos.size(); ++i) {
    const std::string label = labels.empty() ? std::to_string(i + 1) : labels.at(i);
    out += std::to_string(i + 1) + ',' + csv_field(label) + ',' +
           format_double(ranking.scores(static_cast<Eigen::Index>(i))) + ',' +
           std::to_string(pos[i] + 1) + '\n';
  }
  return out;
}

std::vector<ScoreRow> parse_scores_csv(std::string_view text) {
  std::vector<ScoreRow> rows;
  bool header = true;
  for_each_line(text, [&](std::size_t line_no, std::string_view line) {
    if (line.empty()) return;
    if (header) {
      if (line != "index,label,score,rank") {
        throw ParseError(line_no, "expected header 'index,label,score,rank'");
      }
      header = false;
      return;
    }
    const auto fields = split_csv(line);
    if (fields.size() != 4) throw ParseError(line_no, "expected 4 columns");
    ScoreRow row;
    const auto index = to_integer(fields[0]);
    const auto score = to_real(fields[2]);
    const auto r = to_integer(fields[3]);
    if (!index || !score || !r || *index <= 0 || *r <= 0) {
      throw ParseError(line_no, "malformed score row");
    }
    row.index = static_cast<std::size_t>(*index);
    row.label = fields[1];
    row.score = *score;
    row.rank = static_cast<std::size_t>(*r);
    rows.push_back(std::move(row));
  });
  return rows;
}

nlohmann::json scores_to_json(const Ranking& ranking, const std::vector<std::string>& labels) {
  const std::vector<std::size_t> pos = ranking.positions();
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < pos.size(); ++i) {
    rows.push_back({{"index", i + 1},
                    {"label", labels.empty() ? std::to_string(i + 1) : labels.at(i)},
                    {"score", ranking.scores(static_cast<Eigen::Index>(i))},
                    {"rank", pos[i] + 1}});
  }
  return rows;
}

nlohmann::json report_to_json(const ConvergenceReport& r) {
  return {{"iterations", r.iterations},
          {"node_residuals", r.node_residuals},
          {"layer_residuals", r.layer_residuals},
          {"node_converged_at", optional_json(r.node_converged_at)},
          {"layer_converged_at", optional_json(r.layer_converged_at)},
          {"rho", r.rho},
          {"a_priori_bound_k", optional_json(r.a_priori_bound_k)},
          {"bound_constant", optional_json(r.bound_constant)},
          {"mu", r.mu},
          {"lambda", r.lambda},
          {"converged", r.converged},
          {"alpha", r.alpha},
          {"beta", r.beta},
          {"tol", r.tol},
          {"stopping_norm", std::string(to_string(r.stopping_norm))}};
}

ConvergenceReport report_from_json(const nlohmann::json& j) {
  ConvergenceReport r;
  try {
    r.iterations = j.at("iterations").get<std::size_t>();
    r.node_residuals = j.at("node_residuals").get<std::vector<double>>();
    r.layer_residuals = j.at("layer_residuals").get<std::vector<double>>();
    r.node_converged_at = optional_from<std::size_t>(j, "node_converged_at");
    r.layer_converged_at = optional_from<std::size_t>(j, "layer_converged_at");
    r.rho = j.at("rho").get<double>();
    r.a_priori_bound_k = optional_from<std::size_t>(j, "a_priori_bound_k");
    r.bound_constant = optional_from<double>(j, "bound_constant");
    r.mu = j.at("mu").get<double>();
    r.lambda = j.at("lambda").get<double>();
    r.converged = j.at("converged").get<bool>();
    r.alpha = j.at("alpha").get<double>();
    r.beta = j.at("beta").get<double>();
    r.tol = j.at("tol").get<double>();
    r.stopping_norm = parse_stopping_norm(j.at("stopping_norm").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed convergence report: ") + e.what());
  }
  return r;
}

std::string write_scores(const CentralityResult& result, const MultiplexNetwork& net,
                         OutputFormat format) {
  const Ranking nodes = rank(result.scores.x);
  const Ranking layers = rank(result.scores.t);
  if (format == OutputFormat::Csv) {
    return write_scores_csv(nodes, net.node_labels()) + '\n' +
           write_scores_csv(layers, net.layer_labels());
  }
  nlohmann::json j = {{"nodes", scores_to_json(nodes, net.node_labels())},
                      {"layers", scores_to_json(layers, net.layer_labels())},
                      {"report", report_to_json(result.report)}};
  return j.dump(2) + '\n';
}

}  // namespace mplex
