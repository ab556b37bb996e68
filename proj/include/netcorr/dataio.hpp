#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netcorr/graph.hpp"
#include "netcorr/inference.hpp"
#include "netcorr/node_data.hpp"
#include "netcorr/weights.hpp"

namespace netcorr {

/// Provenance of one batch of p-values inside a result document: enough to
/// rerun it (kind, seed, replicates, tail) plus where the values ended up.
struct NullSummary {
    std::string kind;
    std::string tail;
    int replicates = 0;
    std::uint64_t seed = 0;
    std::optional<int> swaps;        // configuration kind only
    std::string column;              // "p_d", "p_c", "p_cond", ... (also the table column name)
    std::optional<double> p_value;   // global statistics carry the value here
    std::optional<double> null_mean; // global statistics only
    std::optional<double> null_sd;
    std::optional<int> failed;
};

/// Summary of a global-statistic null run.
NullSummary make_summary(const NullResult& result, const NullSpec& spec, std::string column);

/// Spec of a null without a scalar result (per-node tables carry the values).
NullSummary make_summary(const NullSpec& spec, std::string column);

/// One table cell: absent, numeric, or text.
using Cell = std::variant<std::monostate, double, std::string>;

/// Everything one CLI run reports. Scalar statistics fill `value`; per-node
/// and per-distance results fill `columns` + `rows`, where the first column
/// is the key (node label or distance). Serialized either as one structured
/// document or as a delimited table with `#`-prefixed header lines; both
/// formats round-trip. Field names are frozen in the README.
struct ResultDocument {
    std::string statistic;
    std::string weights; // weight-matrix kind, "" when not applicable
    std::optional<double> value;
    std::vector<NullSummary> nulls;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, std::string>> meta; // ordered key/value pairs
};

enum class ResultFormat { structured_text, delimited };

void write_results(const ResultDocument& doc, const std::string& path, ResultFormat fmt);
std::string render_results(const ResultDocument& doc, ResultFormat fmt);
ResultDocument read_results(const std::string& path, ResultFormat fmt);

/// Edge-list text: one edge per line, two whitespace-separated labels,
/// `#` starts a comment, blank lines ignored.
Graph read_edge_list(const std::string& path);
void write_edge_list(const Graph& g, const std::string& path);

/// Read one numeric column from a delimited file (comma-separated, header
/// row; the first column holds node labels) and align it to g by label.
/// Rows whose label is not in g are an error; graph nodes missing from the
/// file are masked with a warning; empty cells are masked silently. With
/// log10, values are log-transformed and nonpositive ones masked (warning).
NodeData read_node_values(const std::string& path, const Graph& g, const std::string& column,
                          bool log10_transform = false, Diagnostics* diag = nullptr);

/// Companion writer: one row per node, labels quoted, absent cells empty.
void write_values_csv(const Graph& g, const std::vector<NodeData>& columns,
                      const std::string& path);

/// Hex digest of a file's bytes, for result provenance metadata.
std::string file_digest(const std::string& path);

} // namespace netcorr
