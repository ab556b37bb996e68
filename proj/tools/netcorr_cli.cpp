// netcorr command-line tool: exploratory statistics for node-valued networks.
//
// Subcommands: global, local, bivar, correlogram, scatter, synth, wiki.
// Exit codes: 0 success, 1 input error (bad flags, malformed files),
// 2 runtime failure (network trouble, degenerate nulls).

#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "netcorr/dataio.hpp"
#include "netcorr/detail/rng.hpp"
#include "netcorr/detail/text.hpp"
#include "netcorr/error.hpp"
#include "netcorr/graph.hpp"
#include "netcorr/inference.hpp"
#include "netcorr/report.hpp"
#include "netcorr/stats.hpp"
#include "netcorr/synth.hpp"
#include "netcorr/wiki.hpp"

namespace {

using namespace netcorr;

std::string fmt(double v) { return detail::format_double(v); }

void print_diagnostics(const Diagnostics& diag) {
    for (const auto& w : diag.warnings) std::cerr << "warning: " << w << "\n";
}

// ---------------------------------------------------------------------------
// Shared option bundles

struct DataArgs {
    std::string graph_path;
    std::string values_path;
    std::string column;
    std::string column2;
    bool log10 = false;
};

struct NullArgs {
    std::string mode;
    int nperm = 999;
    std::uint64_t seed = 0;
    int swaps = 0; // 0 = default (10 * edges)
    std::string tail = "upper";
    int threads = 1;
};

struct OutputArgs {
    std::string format = "json";
    std::string out;
    double alpha = 0.01;
};

void add_data_flags(CLI::App* cmd, DataArgs& a, bool with_second_column) {
    cmd->add_option("--graph", a.graph_path, "edge-list file")->required();
    cmd->add_option("--values", a.values_path, "node-values CSV")->required();
    cmd->add_option("--column", a.column, "value column")->required();
    if (with_second_column) cmd->add_option("--column2", a.column2, "second value column");
    cmd->add_flag("--log10", a.log10, "log10-transform values; nonpositive entries are masked");
}

void add_null_flags(CLI::App* cmd, NullArgs& a, const std::vector<std::string>& modes,
                    const std::string& default_mode) {
    a.mode = default_mode;
    cmd->add_option("--null", a.mode, "null model (default " + default_mode + ")")
        ->check(CLI::IsMember(modes));
    cmd->add_option("--nperm", a.nperm, "null replicates (default 999)");
    cmd->add_option("--seed", a.seed, "random seed (default 0)");
    cmd->add_option("--swaps", a.swaps,
                    "double edge swaps per configuration replicate (default 10x edges)");
    cmd->add_option("--tail", a.tail, "p-value tail (default upper)")
        ->check(CLI::IsMember({"upper", "lower", "two-sided"}));
    cmd->add_option("--threads", a.threads, "worker threads; results do not depend on this");
}

void add_output_flags(CLI::App* cmd, OutputArgs& a) {
    cmd->add_option("--format", a.format, "result document format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    cmd->add_option("--out", a.out, "write the result document to this file");
    cmd->add_option("--alpha", a.alpha,
                    "significance level for display only, never a filter (default 0.01)");
}

NullSpec make_spec(NullKind kind, const NullArgs& a, const Graph& g) {
    NullSpec s;
    s.kind = kind;
    s.replicates = a.nperm;
    s.seed = a.seed;
    if (a.swaps > 0)
        s.swaps_per_sample = a.swaps;
    else if (kind == NullKind::configuration)
        s.swaps_per_sample = 10 * g.n_edges(); // pin the effective value for provenance
    if (a.tail == "lower")
        s.tail = Tail::lower;
    else if (a.tail == "two-sided")
        s.tail = Tail::two_sided;
    else
        s.tail = Tail::upper;
    s.threads = a.threads;
    return s;
}

struct Inputs {
    Graph g;
    NodeData x;
    NodeData y;
};

Inputs load_inputs(const DataArgs& a, bool with_second_column) {
    Inputs in;
    Diagnostics diag;
    in.g = read_edge_list(a.graph_path);
    in.x = read_node_values(a.values_path, in.g, a.column, a.log10, &diag);
    if (with_second_column) {
        if (a.column2.empty()) throw InputError("--column2 is required here");
        in.y = read_node_values(a.values_path, in.g, a.column2, a.log10, &diag);
    }
    print_diagnostics(diag);
    return in;
}

void base_meta(ResultDocument& doc, const DataArgs& a) {
    doc.meta.emplace_back("graph", a.graph_path);
    doc.meta.emplace_back("graph_digest", file_digest(a.graph_path));
    doc.meta.emplace_back("values", a.values_path);
    doc.meta.emplace_back("values_digest", file_digest(a.values_path));
    doc.meta.emplace_back("column", a.column);
    if (!a.column2.empty()) doc.meta.emplace_back("column2", a.column2);
    if (a.log10) doc.meta.emplace_back("log10", "true");
}

void emit(const ResultDocument& doc, const OutputArgs& o) {
    if (o.out.empty()) return;
    write_results(doc, o.out, o.format == "csv" ? ResultFormat::delimited
                                                : ResultFormat::structured_text);
    std::cerr << "wrote " << o.out << "\n";
}

std::string weights_name(WeightKind kind) {
    switch (kind) {
        case WeightKind::binary_adjacency: return "binary";
        case WeightKind::row_normalized: return "row-normalized";
        case WeightKind::row_normalized_self_loops: return "row-normalized-self-loops";
        case WeightKind::distance_class: return "distance-class";
    }
    return "?";
}

std::string cell_text(const Cell& c) {
    if (std::holds_alternative<std::monostate>(c)) return "-";
    if (const double* d = std::get_if<double>(&c)) return fmt(*d);
    return std::get<std::string>(c);
}

/// The per-row table a subcommand prints; the same cells land in the
/// result document, so stdout never shows a number the document lacks.
void print_table(const ResultDocument& doc) {
    std::vector<std::size_t> width(doc.columns.size(), 0);
    for (std::size_t c = 0; c < doc.columns.size(); ++c) width[c] = doc.columns[c].size();
    std::vector<std::vector<std::string>> rendered;
    rendered.reserve(doc.rows.size());
    for (const auto& row : doc.rows) {
        std::vector<std::string> cells;
        cells.reserve(row.size());
        for (std::size_t c = 0; c < row.size(); ++c) {
            cells.push_back(cell_text(row[c]));
            if (c < width.size()) width[c] = std::max(width[c], cells.back().size());
        }
        rendered.push_back(std::move(cells));
    }
    auto pad = [](const std::string& s, std::size_t w) {
        return s + std::string(w > s.size() ? w - s.size() : 0, ' ');
    };
    for (std::size_t c = 0; c < doc.columns.size(); ++c)
        std::cout << (c ? "  " : "") << pad(doc.columns[c], width[c]);
    std::cout << "\n";
    for (const auto& cells : rendered) {
        for (std::size_t c = 0; c < cells.size(); ++c)
            std::cout << (c ? "  " : "") << pad(cells[c], c < width.size() ? width[c] : 0);
        std::cout << "\n";
    }
}

void print_p_line(const std::string& name, const NullResult& r, const NullSpec& spec,
                  double alpha) {
    std::cout << name << " = " << fmt(r.p_value) << (r.p_value < alpha ? " *" : "") << "  ["
              << to_string(spec.kind) << ", replicates=" << spec.replicates
              << ", seed=" << spec.seed;
    if (spec.swaps_per_sample) std::cout << ", swaps=" << *spec.swaps_per_sample;
    std::cout << ", tail=" << to_string(spec.tail) << "]\n";
}

// ---------------------------------------------------------------------------
// global

struct GlobalArgs {
    DataArgs data;
    NullArgs null;
    OutputArgs output;
    std::string stat = "moran";
    bool self_loops = false;
};

int run_global(const GlobalArgs& a) {
    bool bivariate = a.stat == "coscia";
    if (bivariate && a.data.column2.empty()) throw InputError("--stat coscia requires --column2");
    auto in = load_inputs(a.data, bivariate);

    // Assortativity reads the adjacency itself; the other statistics use the
    // row-normalized kind (with self-loops on request).
    WeightsBuilder builder;
    if (a.stat == "assort")
        builder = [](const Graph& gr) { return binary_adjacency(gr); };
    else
        builder = [&a](const Graph& gr) { return row_normalized(gr, a.self_loops); };
    WeightMatrix W = builder(in.g);

    std::string name, display;
    UnivariateStat ustat;
    BivariateStat bstat;
    if (a.stat == "moran") {
        name = "moran_i";
        display = "I";
        ustat = [](const WeightMatrix& w, const NodeData& x) { return global_moran(w, x); };
    } else if (a.stat == "geary") {
        name = "geary_c";
        display = "C";
        ustat = [](const WeightMatrix& w, const NodeData& x) { return geary_c(w, x); };
    } else if (a.stat == "getis") {
        name = "getis_g";
        display = "G";
        ustat = [](const WeightMatrix& w, const NodeData& x) { return getis_ord_global(w, x); };
    } else if (a.stat == "assort") {
        name = "assortativity";
        display = "assortativity";
        ustat = [](const WeightMatrix& w, const NodeData& x) {
            return assortativity_continuous(w, x);
        };
    } else {
        name = "coscia_rho";
        display = "rho_G";
        bstat = [](const WeightMatrix& w, const NodeData& x, const NodeData& y) {
            return coscia_rho(w, x, y);
        };
    }

    double value = bivariate ? bstat(W, in.x, in.y) : ustat(W, in.x);

    ResultDocument doc;
    doc.statistic = name;
    doc.weights = weights_name(W.kind);
    doc.value = value;
    base_meta(doc, a.data);
    doc.meta.emplace_back("alpha", fmt(a.output.alpha));

    std::cout << display << " = " << fmt(value) << "\n";

    if (a.null.mode == "data" || a.null.mode == "both") {
        auto spec = make_spec(NullKind::data_permutation, a.null, in.g);
        NullResult r = bivariate ? permutation_null(bstat, W, in.x, in.y, spec)
                                 : permutation_null(ustat, W, in.x, spec);
        doc.nulls.push_back(make_summary(r, spec, "p_d"));
        print_p_line("p_d", r, spec, a.output.alpha);
    }
    if (a.null.mode == "config" || a.null.mode == "both") {
        auto spec = make_spec(NullKind::configuration, a.null, in.g);
        NullResult r = bivariate ? configuration_null(bstat, in.g, builder, in.x, in.y, spec)
                                 : configuration_null(ustat, in.g, builder, in.x, spec);
        doc.nulls.push_back(make_summary(r, spec, "p_c"));
        print_p_line("p_c", r, spec, a.output.alpha);
    }
    emit(doc, a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// local

struct LocalArgs {
    DataArgs data;
    NullArgs null;
    OutputArgs output;
    bool self_loops = false;
    std::string figure;
};

int run_local(const LocalArgs& a) {
    auto in = load_inputs(a.data, false);
    WeightsBuilder builder = [&a](const Graph& gr) { return row_normalized(gr, a.self_loops); };
    WeightMatrix W = builder(in.g);
    auto li = local_moran(W, in.x);

    ResultDocument doc;
    doc.statistic = "local_moran";
    doc.weights = weights_name(W.kind);
    base_meta(doc, a.data);
    doc.meta.emplace_back("alpha", fmt(a.output.alpha));
    doc.columns = {"node", "I_i"};

    std::vector<NullResult> cond, config;
    if (a.null.mode == "cond" || a.null.mode == "both") {
        auto spec = make_spec(NullKind::conditional_permutation, a.null, in.g);
        cond = conditional_permutation_local(W, in.x, spec);
        doc.nulls.push_back(make_summary(spec, "p_cond"));
        doc.columns.push_back("p_cond");
    }
    if (a.null.mode == "config" || a.null.mode == "both") {
        auto spec = make_spec(NullKind::configuration, a.null, in.g);
        config = configuration_local(in.g, builder, in.x, spec);
        doc.nulls.push_back(make_summary(spec, "p_config"));
        doc.columns.push_back("p_config");
    }

    for (int i = 0; i < in.g.n_nodes(); ++i) {
        std::vector<Cell> row;
        row.emplace_back(in.g.labels()[static_cast<std::size_t>(i)]);
        if (in.x.present(i))
            row.emplace_back(li[static_cast<std::size_t>(i)]);
        else
            row.emplace_back(std::monostate{});
        if (!cond.empty()) {
            if (in.x.present(i))
                row.emplace_back(cond[static_cast<std::size_t>(i)].p_value);
            else
                row.emplace_back(std::monostate{});
        }
        if (!config.empty()) {
            if (in.x.present(i))
                row.emplace_back(config[static_cast<std::size_t>(i)].p_value);
            else
                row.emplace_back(std::monostate{});
        }
        doc.rows.push_back(std::move(row));
    }
    print_table(doc);

    if (!a.figure.empty()) {
        // Histogram fill prefers the conditional p-values when both ran.
        const std::vector<NullResult>* ps =
            !cond.empty() ? &cond : (!config.empty() ? &config : nullptr);
        std::vector<double> pvals;
        if (ps) {
            pvals.resize(li.size(), std::numeric_limits<double>::quiet_NaN());
            for (std::size_t i = 0; i < li.size(); ++i)
                if (in.x.present(static_cast<int>(i))) pvals[i] = (*ps)[i].p_value;
        }
        render_local_histogram(li, pvals, a.output.alpha, a.figure);
        std::cerr << "wrote " << a.figure << "\n";
    }
    emit(doc, a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// bivar

struct BivarArgs {
    DataArgs data;
    NullArgs null;
    OutputArgs output;
    bool self_loops = true; // Lee's L convention
};

int run_bivar(const BivarArgs& a) {
    if (a.data.column2.empty()) throw InputError("bivar requires --column2");
    auto in = load_inputs(a.data, true);
    WeightsBuilder builder = [&a](const Graph& gr) { return row_normalized(gr, a.self_loops); };
    WeightMatrix W = builder(in.g);

    BivariateStat lee = [](const WeightMatrix& w, const NodeData& x, const NodeData& y) {
        return lee_l(w, x, y);
    };
    double L = lee(W, in.x, in.y);
    double r = pearson_r(in.x, in.y);
    int n_joint = 0;
    for (int i = 0; i < in.g.n_nodes(); ++i)
        if (in.x.present(i) && in.y.present(i)) ++n_joint;

    ResultDocument doc;
    doc.statistic = "bivariate";
    doc.weights = weights_name(W.kind);
    base_meta(doc, a.data);
    doc.meta.emplace_back("alpha", fmt(a.output.alpha));
    doc.columns = {"measure", "value", "p_d", "p_c", "p_t"};

    Cell p_d{std::monostate{}}, p_c{std::monostate{}}, p_t{std::monostate{}};
    if (a.null.mode == "data" || a.null.mode == "both") {
        auto spec = make_spec(NullKind::data_permutation, a.null, in.g);
        NullResult res = permutation_null(lee, W, in.x, in.y, spec);
        doc.nulls.push_back(make_summary(res, spec, "p_d"));
        p_d = res.p_value;
    }
    if (a.null.mode == "config" || a.null.mode == "both") {
        auto spec = make_spec(NullKind::configuration, a.null, in.g);
        NullResult res = configuration_null(lee, in.g, builder, in.x, in.y, spec);
        doc.nulls.push_back(make_summary(res, spec, "p_c"));
        p_c = res.p_value;
    }
    try {
        p_t = pearson_p_two_sided(r, n_joint);
    } catch (const InputError&) {
        // too few joint observations for the t reference: leave the cell empty
    }

    doc.rows.push_back({std::string("lee_l"), L, p_d, p_c, std::monostate{}});
    doc.rows.push_back({std::string("pearson_r"), r, std::monostate{}, std::monostate{}, p_t});
    print_table(doc);
    emit(doc, a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// correlogram

struct CorrelogramArgs {
    DataArgs data;
    NullArgs null;
    OutputArgs output;
    int dmax = 5;
    bool row_normalize = false;
    std::string figure;
};

int run_correlogram(const CorrelogramArgs& a) {
    auto in = load_inputs(a.data, false);
    std::optional<NullSpec> spec;
    if (a.null.mode != "none") {
        NullKind kind = a.null.mode == "config" ? NullKind::configuration
                                                : NullKind::data_permutation;
        spec = make_spec(kind, a.null, in.g);
    }
    auto points = correlogram(in.g, in.x, a.dmax, spec, a.row_normalize);

    ResultDocument doc;
    doc.statistic = "correlogram";
    doc.weights = std::string("distance-class") + (a.row_normalize ? " row-normalized" : "");
    base_meta(doc, a.data);
    doc.meta.emplace_back("dmax", std::to_string(a.dmax));
    doc.meta.emplace_back("alpha", fmt(a.output.alpha));
    doc.columns = {"d", "I", "weight"};
    if (spec) {
        doc.nulls.push_back(make_summary(*spec, "p"));
        doc.columns.push_back("p");
    }
    for (const auto& pt : points) {
        std::vector<Cell> row;
        row.emplace_back(static_cast<double>(pt.d));
        if (pt.value)
            row.emplace_back(*pt.value);
        else
            row.emplace_back(std::monostate{});
        row.emplace_back(pt.total_weight);
        if (spec) {
            if (pt.p_value)
                row.emplace_back(*pt.p_value);
            else
                row.emplace_back(std::monostate{});
        }
        doc.rows.push_back(std::move(row));
    }
    print_table(doc);
    if (!a.figure.empty()) {
        render_correlogram(points, a.output.alpha, a.figure);
        std::cerr << "wrote " << a.figure << "\n";
    }
    emit(doc, a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// scatter

struct ScatterArgs {
    DataArgs data;
    NullArgs null;
    OutputArgs output;
    bool self_loops = false;
    double outliers = 2.0;
    std::string figure;
};

int run_scatter(const ScatterArgs& a) {
    auto in = load_inputs(a.data, false);
    WeightMatrix W = row_normalized(in.g, a.self_loops);
    MoranScatter sc = moran_scatter(W, in.x);

    ResultDocument doc;
    doc.statistic = "moran_scatter";
    doc.weights = weights_name(W.kind);
    doc.value = sc.slope;
    base_meta(doc, a.data);
    doc.meta.emplace_back("alpha", fmt(a.output.alpha));
    doc.meta.emplace_back("outliers", fmt(a.outliers));
    doc.columns = {"node", "z", "z_lag", "quadrant"};

    std::vector<NullResult> cond;
    if (a.null.mode == "cond") {
        auto spec = make_spec(NullKind::conditional_permutation, a.null, in.g);
        cond = conditional_permutation_local(W, in.x, spec);
        doc.nulls.push_back(make_summary(spec, "p_cond"));
        doc.columns.push_back("p_cond");
    }

    std::vector<double> pvals;
    std::vector<std::string> labels;
    for (std::size_t t = 0; t < sc.nodes.size(); ++t) {
        int i = sc.nodes[t];
        std::vector<Cell> row;
        row.emplace_back(in.g.labels()[static_cast<std::size_t>(i)]);
        row.emplace_back(sc.z[t]);
        row.emplace_back(sc.z_lag[t]);
        row.emplace_back(to_string(sc.quadrant[t]));
        if (!cond.empty()) {
            row.emplace_back(cond[static_cast<std::size_t>(i)].p_value);
            pvals.push_back(cond[static_cast<std::size_t>(i)].p_value);
        }
        labels.push_back(in.g.labels()[static_cast<std::size_t>(i)]);
        doc.rows.push_back(std::move(row));
    }

    std::cout << "slope = " << fmt(sc.slope) << "\n";
    print_table(doc);
    if (!a.figure.empty()) {
        PlotStyle style;
        style.outlier_k = a.outliers;
        style.label_outliers = a.outliers > 0.0;
        render_scatter(sc, a.figure, pvals, labels, a.output.alpha, style);
        std::cerr << "wrote " << a.figure << "\n";
    }
    emit(doc, a.output);
    return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string kind;
    int n = 100;
    double p = 0.05;
    int blocks = 4;
    double p_in = 0.3;
    double p_out = 0.01;
    std::uint64_t seed = 0;
    std::string source;
    int steps = 0;
    double sigma = 0.0;
    std::string out_graph = "synth_graph.txt";
    std::string out_values;
};

int run_synth(const SynthArgs& a) {
    Graph g;
    std::vector<int> block;
    if (a.kind == "karate") {
        g = karate();
    } else if (a.kind == "er") {
        g = er_graph(a.n, a.p, a.seed);
    } else {
        auto pp = planted_partition(a.n, a.blocks, a.p_in, a.p_out, a.seed);
        g = std::move(pp.graph);
        block = std::move(pp.block);
    }
    write_edge_list(g, a.out_graph);
    std::cout << "nodes = " << g.n_nodes() << "\n";
    std::cout << "edges = " << g.n_edges() << "\n";
    std::cerr << "wrote " << a.out_graph << "\n";

    if (!a.out_values.empty()) {
        PropagationSpec spec;
        if (a.source.empty()) {
            spec.source = 0;
        } else if (auto idx = g.index_of(a.source)) {
            spec.source = *idx;
        } else {
            throw InputError("--source: no node labelled '" + a.source + "'");
        }
        spec.steps = a.steps;
        spec.noise_sd = a.sigma;
        // Separate stream from the topology seed so graph and noise draws
        // never share a generator state.
        spec.seed = detail::derive_seed(a.seed, 1);
        Diagnostics diag;
        NodeData x = value_propagation(g, spec, &diag);
        print_diagnostics(diag);
        x.name = "value";
        std::vector<NodeData> columns{std::move(x)};
        if (!block.empty()) {
            NodeData b = NodeData::full(std::vector<double>(block.begin(), block.end()), "block");
            columns.push_back(std::move(b));
        }
        write_values_csv(g, columns, a.out_values);
        std::cerr << "wrote " << a.out_values << "\n";
    }
    return 0;
}

// ---------------------------------------------------------------------------
// wiki

struct WikiArgs {
    std::string seed_page;
    std::string month;
    std::string cache_dir;
    std::string user_agent;
    double rate = 10.0;
    std::uint64_t seed = 0;
    bool offline = false;
    std::string out_graph = "wiki_graph.txt";
    std::string out_values = "wiki_metrics.csv";
};

int run_wiki(const WikiArgs& a) {
    std::string cache = a.cache_dir;
    if (cache.empty()) {
        if (const char* env = std::getenv("NETCORR_CACHE_DIR"); env && *env) cache = env;
    }
    if (cache.empty()) cache = "wiki_cache";

    WikiOptions options;
    options.rate_per_second = a.rate;
    options.seed = a.seed;
    options.offline = a.offline;
    if (!a.user_agent.empty()) options.user_agent = a.user_agent;

    WikiClient client(cache, options);
    Diagnostics diag;
    Graph g = client.build_ego_minus_ego(a.seed_page, &diag);
    std::cout << "seed = " << canonical_title(a.seed_page) << "\n";
    std::cout << "nodes = " << g.n_nodes() << "\n";
    std::cout << "edges = " << g.n_edges() << "\n";

    auto records = client.fetch_metrics(g.labels(), a.month, &diag);
    print_diagnostics(diag);

    const auto n = static_cast<std::size_t>(g.n_nodes());
    NodeData views = NodeData::full(std::vector<double>(n, 0.0), "views");
    NodeData watchers = NodeData::full(std::vector<double>(n, 0.0), "watchers");
    NodeData length = NodeData::full(std::vector<double>(n, 0.0), "length_bytes");
    NodeData edits = NodeData::full(std::vector<double>(n, 0.0), "edits");
    for (std::size_t i = 0; i < n; ++i) {
        if (!records[i]) { // metrics fetch failed: mask the whole row
            views.mask[i] = watchers.mask[i] = length.mask[i] = edits.mask[i] = 0;
            continue;
        }
        const PageRecord& rec = *records[i];
        views.values[i] = static_cast<double>(rec.views);
        if (rec.watchers)
            watchers.values[i] = static_cast<double>(*rec.watchers);
        else
            watchers.mask[i] = 0; // privacy-suppressed watcher count
        length.values[i] = static_cast<double>(rec.length_bytes);
        edits.values[i] = static_cast<double>(rec.edits);
    }

    write_edge_list(g, a.out_graph);
    write_values_csv(g, {views, watchers, length, edits}, a.out_values);
    std::cerr << "wrote " << a.out_graph << "\n";
    std::cerr << "wrote " << a.out_values << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"netcorr: exploratory statistics for node-valued networks"};
    app.require_subcommand(1);

    GlobalArgs ga;
    auto* global = app.add_subcommand("global", "global autocorrelation / correlation statistic");
    add_data_flags(global, ga.data, true);
    global->add_option("--stat", ga.stat, "statistic (default moran)")
        ->check(CLI::IsMember({"moran", "geary", "getis", "assort", "coscia"}));
    global->add_flag("--self-loops", ga.self_loops, "row-normalized weights with self-loops");
    add_null_flags(global, ga.null, {"data", "config", "both", "none"}, "data");
    add_output_flags(global, ga.output);

    LocalArgs la;
    auto* local = app.add_subcommand("local", "node Moran indices with per-node p-values");
    add_data_flags(local, la.data, false);
    local->add_flag("--self-loops", la.self_loops, "row-normalized weights with self-loops");
    local->add_option("--figure", la.figure, "render the index histogram to this SVG file");
    add_null_flags(local, la.null, {"cond", "config", "both", "none"}, "cond");
    add_output_flags(local, la.output);

    BivarArgs ba;
    auto* bivar = app.add_subcommand("bivar", "Lee's L and Pearson's r side by side");
    add_data_flags(bivar, ba.data, true);
    bivar->add_flag("--self-loops,!--no-self-loops", ba.self_loops,
                    "row-normalized weights with self-loops (default on)");
    add_null_flags(bivar, ba.null, {"data", "config", "both", "none"}, "both");
    add_output_flags(bivar, ba.output);

    CorrelogramArgs ca;
    auto* corr = app.add_subcommand("correlogram", "Moran index by distance class");
    add_data_flags(corr, ca.data, false);
    corr->add_option("--dmax", ca.dmax, "largest distance class (default 5)");
    corr->add_flag("--row-normalize", ca.row_normalize, "row-normalize each distance class");
    corr->add_option("--figure", ca.figure, "render the correlogram to this SVG file");
    add_null_flags(corr, ca.null, {"data", "config", "none"}, "data");
    add_output_flags(corr, ca.output);

    ScatterArgs sa;
    auto* scatter = app.add_subcommand("scatter", "Moran scatter table and plot");
    add_data_flags(scatter, sa.data, false);
    scatter->add_flag("--self-loops", sa.self_loops, "row-normalized weights with self-loops");
    scatter->add_option("--outliers", sa.outliers,
                        "label points more than k residual standard deviations out (0 = never)");
    scatter->add_option("--figure", sa.figure, "render the scatter to this SVG file");
    add_null_flags(scatter, sa.null, {"cond", "none"}, "none");
    add_output_flags(scatter, sa.output);

    SynthArgs sy;
    auto* synth = app.add_subcommand("synth", "generate a synthetic graph and node values");
    synth->add_option("--kind", sy.kind, "er | planted | karate")
        ->required()
        ->check(CLI::IsMember({"er", "planted", "karate"}));
    synth->add_option("--n", sy.n, "node count (er, planted; default 100)");
    synth->add_option("--p", sy.p, "edge probability (er; default 0.05)");
    synth->add_option("--blocks", sy.blocks, "block count (planted; default 4)");
    synth->add_option("--pin", sy.p_in, "within-block probability (planted; default 0.3)");
    synth->add_option("--pout", sy.p_out, "across-block probability (planted; default 0.01)");
    synth->add_option("--seed", sy.seed, "random seed (default 0)");
    synth->add_option("--source", sy.source, "propagation source node label (default: first node)");
    synth->add_option("--steps", sy.steps, "propagation rounds (default 0)");
    synth->add_option("--sigma", sy.sigma, "sd of the Gaussian noise added last (default 0)");
    synth->add_option("--out-graph", sy.out_graph, "edge-list output (default synth_graph.txt)");
    synth->add_option("--out-values", sy.out_values, "values CSV output (omit to skip values)");

    WikiArgs wa;
    auto* wiki = app.add_subcommand("wiki", "build a Wikipedia EgoMinusEgo network + metrics");
    wiki->add_option("--seed-page", wa.seed_page, "seed article title")->required();
    wiki->add_option("--month", wa.month, "metrics month, YYYY-MM")->required();
    wiki->add_option("--cache-dir", wa.cache_dir,
                     "response cache directory (default $NETCORR_CACHE_DIR or ./wiki_cache)");
    wiki->add_flag("--offline", wa.offline, "serve from the cache only; misses fail");
    wiki->add_option("--rate", wa.rate, "request ceiling per second (default 10)");
    wiki->add_option("--user-agent", wa.user_agent, "override the HTTP User-Agent");
    wiki->add_option("--seed", wa.seed, "seed for retry-backoff jitter (default 0)");
    wiki->add_option("--out-graph", wa.out_graph, "edge-list output (default wiki_graph.txt)");
    wiki->add_option("--out-values", wa.out_values, "metrics CSV output (default wiki_metrics.csv)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n\n" << app.help() << "\n";
        return 1;
    }

    try {
        if (global->parsed()) return run_global(ga);
        if (local->parsed()) return run_local(la);
        if (bivar->parsed()) return run_bivar(ba);
        if (corr->parsed()) return run_correlogram(ca);
        if (scatter->parsed()) return run_scatter(sa);
        if (synth->parsed()) return run_synth(sy);
        if (wiki->parsed()) return run_wiki(wa);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
