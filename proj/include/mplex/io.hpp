#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mplex/network.hpp"
#include "mplex/ranking.hpp"
#include "mplex/solver.hpp"

namespace mplex {

/// One line of a multiplex edge list, indices 1-based as written.
struct EdgeRecord {
  std::size_t layer = 0;
  std::size_t node_a = 0;
  std::size_t node_b = 0;
  double weight = 1.0;
  std::size_t line = 0;
};

struct EdgeListDocument {
  std::vector<EdgeRecord> records;
  std::size_t inferred_n = 0;
  std::size_t inferred_L = 0;
};

/// Parses "layer node node [weight]" lines. Blank lines and lines starting
/// with '#' are skipped; LF and CRLF are accepted; a missing weight is 1.
/// Throws ParseError (with the line number) for malformed lines and
/// ValidationError for non-positive indices or negative/non-finite weights.
EdgeListDocument parse_multiplex_edges(std::string_view text);
EdgeListDocument read_multiplex_edges(const std::filesystem::path& path);

enum class SymmetrizePolicy {
  /// Insert both directions; an edge listed in both directions with equal
  /// weights counts once, unequal weights keep the larger one with a warning.
  Mirror,
  /// Larger of the two stated directions, silently.
  Max,
  /// Every off-diagonal edge must be listed in both directions with equal
  /// weight.
  ErrorOnAsymmetry,
};

SymmetrizePolicy parse_symmetrize_policy(std::string_view text);

/// Materializes the document. Overrides must not be smaller than the
/// inferred sizes. Repeated lines with the same direction accumulate.
/// Zero-weight records are dropped. Warnings are appended to `warnings`
/// when given.
MultiplexNetwork to_network(const EdgeListDocument& doc,
                            std::optional<std::size_t> n_override = std::nullopt,
                            std::optional<std::size_t> layers_override = std::nullopt,
                            SymmetrizePolicy policy = SymmetrizePolicy::Mirror,
                            std::vector<std::string>* warnings = nullptr);

/// Serializes each undirected edge once (node_a <= node_b), 1-based, sorted
/// by layer then nodes, with weights printed to round-trip exactly.
std::string write_multiplex_edges(const MultiplexNetwork& net);

/// Reads "index label ..." lines (a non-numeric first line is a header).
/// Returns labels ordered by index; missing indices fall back to the index.
std::vector<std::string> parse_labels(std::string_view text, std::size_t count);
std::vector<std::string> read_labels(const std::filesystem::path& path, std::size_t count);

enum class OutputFormat { Csv, Json };
OutputFormat parse_output_format(std::string_view text);

/// Formats a double with the shortest representation that round-trips.
std::string format_double(double v);

/// Header "index,label,score,rank", one row per index in index order; the
/// rank column is 1-based. An empty label list repeats the index.
std::string write_scores_csv(const Ranking& ranking, const std::vector<std::string>& labels);

struct ScoreRow {
  std::size_t index = 0;
  std::string label;
  double score = 0.0;
  std::size_t rank = 0;
};
std::vector<ScoreRow> parse_scores_csv(std::string_view text);

nlohmann::json scores_to_json(const Ranking& ranking, const std::vector<std::string>& labels);

/// JSON object mirroring every ConvergenceReport field; absent optionals
/// are null.
nlohmann::json report_to_json(const ConvergenceReport& report);
ConvergenceReport report_from_json(const nlohmann::json& j);

/// Scores, rankings and report in the requested format. CSV output is the
/// node table followed by a blank line and the layer table; the report is
/// always JSON and is only embedded in the JSON variant.
std::string write_scores(const CentralityResult& result, const MultiplexNetwork& net,
                         OutputFormat format);

/// Reads a whole file; throws InputError when it cannot be opened.
std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

}  // namespace mplex
