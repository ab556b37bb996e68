#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "netcorr/dataio.hpp"
#include "netcorr/error.hpp"
#include "netcorr/graph.hpp"
#include "netcorr/inference.hpp"
#include "netcorr/node_data.hpp"
#include "netcorr/report.hpp"
#include "netcorr/stats.hpp"
#include "netcorr/synth.hpp"
#include "netcorr/weights.hpp"
#include "netcorr/wiki.hpp"

namespace py = pybind11;
using namespace netcorr;

// The null-model entry points release the GIL for the duration of the C++
// call. Statistics passed through as bound functions (global_moran, lee_l,
// ...) are unwrapped to plain C++ calls; genuine Python callables reacquire
// the GIL per evaluation, so they stay correct at any thread count.
PYBIND11_MODULE(_core, m) {
    m.doc() = "Exploratory statistics for node-valued networks";
    m.attr("__version__") = "0.1.0";

    // errors ----------------------------------------------------------------
    static py::exception<Error> err(m, "Error");
    py::register_exception<InputError>(m, "InputError", err);
    py::register_exception<NotRewireableError>(m, "NotRewireableError", err);
    py::register_exception<PageNotFoundError>(m, "PageNotFoundError", err);
    py::register_exception<OfflineError>(m, "OfflineError", err);

    // graph -----------------------------------------------------------------
    py::class_<Graph>(m, "Graph",
                      "Undirected simple graph with contiguous node indices and a label per "
                      "node. Immutable after construction.")
        .def(py::init<>())
        .def(py::init<int, std::vector<std::pair<int, int>>, std::vector<std::string>>(),
             py::arg("n_nodes"), py::arg("edges"), py::arg("labels"),
             "Edges must be simple; pairs are normalized and sorted. One unique label per node.")
        .def("n_nodes", &Graph::n_nodes)
        .def("n_edges", &Graph::n_edges)
        .def("edges", &Graph::edges)
        .def("neighbors", &Graph::neighbors, py::arg("u"))
        .def("degree", &Graph::degree, py::arg("u"))
        .def("degrees", &Graph::degrees)
        .def("has_edge", &Graph::has_edge, py::arg("u"), py::arg("v"))
        .def("labels", &Graph::labels)
        .def("label", &Graph::label, py::arg("u"))
        .def("index_of", &Graph::index_of, py::arg("label"))
        .def("__repr__", [](const Graph& g) {
            return "Graph(n_nodes=" + std::to_string(g.n_nodes()) +
                   ", n_edges=" + std::to_string(g.n_edges()) + ")";
        });

    m.def("build_graph", &build_graph, py::arg("edge_pairs"),
          py::arg("declared_nodes") = std::vector<std::string>{},
          "Build a graph from labelled edge pairs; self-loops are dropped and duplicates "
          "collapse. declared_nodes registers nodes up front (the only way to get isolated "
          "nodes).");
    m.def("bfs_distances", &bfs_distances, py::arg("g"), py::arg("source"),
          "Hop distances from source; -1 for unreachable nodes.");
    m.def("is_connected", &is_connected, py::arg("g"));

    // node data ---------------------------------------------------------------
    py::class_<NodeData>(m, "NodeData",
                         "A real value per node plus a present/absent mask (1 = present). "
                         "Statistics use only the present nodes.")
        .def(py::init([](std::vector<double> values,
                         std::optional<std::vector<std::uint8_t>> mask, std::string name) {
                 if (!mask) return NodeData::full(std::move(values), std::move(name));
                 return NodeData(std::move(values), std::move(*mask), std::move(name));
             }),
             py::arg("values"), py::arg("mask") = py::none(), py::arg("name") = "",
             "Without a mask every node is present.")
        .def_readwrite("values", &NodeData::values)
        .def_readwrite("mask", &NodeData::mask)
        .def_readwrite("name", &NodeData::name)
        .def("n", &NodeData::n)
        .def("n_present", &NodeData::n_present)
        .def("present", &NodeData::present, py::arg("i"))
        .def("all_present", &NodeData::all_present)
        .def("__repr__", [](const NodeData& x) {
            return "NodeData(n=" + std::to_string(x.n()) +
                   ", present=" + std::to_string(x.n_present()) +
                   (x.name.empty() ? std::string() : ", name='" + x.name + "'") + ")";
        });

    // weights -----------------------------------------------------------------
    py::class_<Diagnostics>(m, "Diagnostics", "Collects non-fatal warnings.")
        .def(py::init<>())
        .def_readwrite("warnings", &Diagnostics::warnings)
        .def("empty", &Diagnostics::empty);

    py::enum_<WeightKind>(m, "WeightKind")
        .value("binary_adjacency", WeightKind::binary_adjacency)
        .value("row_normalized", WeightKind::row_normalized)
        .value("row_normalized_self_loops", WeightKind::row_normalized_self_loops)
        .value("distance_class", WeightKind::distance_class);

    py::class_<WeightMatrix>(m, "WeightMatrix", "Sparse row-oriented interaction weights w_ij.")
        .def_readonly("n", &WeightMatrix::n)
        .def_readonly("kind", &WeightMatrix::kind)
        .def_readonly("distance", &WeightMatrix::distance)
        .def_readonly("rows", &WeightMatrix::rows)
        .def_readonly("total_weight", &WeightMatrix::total_weight)
        .def("row_sum", &WeightMatrix::row_sum, py::arg("i"))
        .def("__repr__", [](const WeightMatrix& W) {
            return "WeightMatrix(kind=" + to_string(W.kind) + ", n=" + std::to_string(W.n) + ")";
        });

    m.def("binary_adjacency", &binary_adjacency, py::arg("g"),
          "w_ij = 1 for every edge, both directions; |W| = 2E.");
    m.def(
        "row_normalized",
        [](const Graph& g, bool self_loops, Diagnostics* diag) {
            return row_normalized(g, self_loops, diag);
        },
        py::arg("g"), py::arg("self_loops") = false, py::arg("diag") = nullptr,
        "w_ij = 1/k_i over the neighbors of i; with self_loops the diagonal is included "
        "before normalization.");
    m.def("distance_class", &distance_class, py::arg("g"), py::arg("d"),
          "Binary symmetric matrix with w_ij = 1 iff the shortest path is exactly d.");
    m.def("distance_classes", &distance_classes, py::arg("g"), py::arg("d_max"),
          "All distance classes 1..d_max from one BFS sweep.");
    m.def("restricted", &restricted, py::arg("W"), py::arg("present"),
          "Restrict W to the present nodes; row-normalized kinds are renormalized.");
    m.def("lag", &lag, py::arg("W"), py::arg("z"),
          "Lagged vector: out_i = sum_j w_ij z_j. Zero rows give 0.");

    // statistics ----------------------------------------------------------------
    py::enum_<Quadrant>(m, "Quadrant")
        .value("HH", Quadrant::HH)
        .value("HL", Quadrant::HL)
        .value("LH", Quadrant::LH)
        .value("LL", Quadrant::LL);

    py::class_<MoranScatter>(m, "MoranScatter",
                             "Centered values against their lag, present nodes only. The slope "
                             "equals the global Moran index when |W| = N.")
        .def_readonly("nodes", &MoranScatter::nodes)
        .def_readonly("z", &MoranScatter::z)
        .def_readonly("z_lag", &MoranScatter::z_lag)
        .def_readonly("quadrant", &MoranScatter::quadrant)
        .def_readonly("slope", &MoranScatter::slope);

    py::class_<CorrelogramPoint>(m, "CorrelogramPoint")
        .def_readonly("d", &CorrelogramPoint::d)
        .def_readonly("value", &CorrelogramPoint::value)
        .def_readonly("total_weight", &CorrelogramPoint::total_weight)
        .def_readonly("p_value", &CorrelogramPoint::p_value);

    m.def("center", &center, py::arg("x"),
          "Mean-centered values over the present nodes; absent nodes carry 0.");
    m.def("global_moran", &global_moran, py::arg("W"), py::arg("x"),
          "Global Moran index I = (N/|W|) (z . z~) / |z|^2 over present nodes.");
    m.def("local_moran", &local_moran, py::arg("W"), py::arg("x"),
          "Node Moran indices I_i = z_i z~_i / |z|^2. Absent nodes get NaN.");
    m.def("moran_scatter", &moran_scatter, py::arg("W"), py::arg("x"),
          "Requires a row-normalized weight kind.");
    m.def("geary_c", &geary_c, py::arg("W"), py::arg("x"));
    m.def("getis_ord_global", &getis_ord_global, py::arg("W"), py::arg("x"),
          "Requires nonnegative data with at least one nonzero value.");
    m.def("getis_ord_local", &getis_ord_local, py::arg("W"), py::arg("x"),
          "Per-node G_i; nodes whose denominator is zero report None.");
    m.def("assortativity_continuous",
          py::overload_cast<const Graph&, const NodeData&>(&assortativity_continuous),
          py::arg("g"), py::arg("x"),
          "Continuous assortativity with binary adjacency on the present-node subgraph.");
    m.def("assortativity_continuous",
          py::overload_cast<const WeightMatrix&, const NodeData&>(&assortativity_continuous),
          py::arg("W"), py::arg("x"),
          "Same statistic read off a binary-adjacency matrix (for configuration nulls).");
    m.def("coscia_rho", &coscia_rho, py::arg("W"), py::arg("x"), py::arg("y"),
          "Network correlation with one lag factor, on mean-centered data.");
    m.def("lee_l", &lee_l, py::arg("W"), py::arg("x"), py::arg("y"),
          "Lee's L; conventionally computed with row-normalized self-loop weights.");
    m.def("pearson_r", &pearson_r, py::arg("x"), py::arg("y"),
          "Pearson correlation over jointly present nodes.");
    m.def("pearson_p_two_sided", &pearson_p_two_sided, py::arg("r"), py::arg("n"),
          "Two-sided p-value from the t distribution with n - 2 degrees of freedom.");
    m.def("correlogram", &correlogram, py::arg("g"), py::arg("x"), py::arg("d_max"),
          py::arg("null") = py::none(), py::arg("row_normalize") = false,
          py::call_guard<py::gil_scoped_release>(),
          "Moran index per distance class 1..d_max; a NullSpec attaches p-values.");

    // inference -----------------------------------------------------------------
    py::enum_<NullKind>(m, "NullKind")
        .value("data_permutation", NullKind::data_permutation)
        .value("conditional_permutation", NullKind::conditional_permutation)
        .value("configuration", NullKind::configuration);

    py::enum_<Tail>(m, "Tail")
        .value("upper", Tail::upper)
        .value("lower", Tail::lower)
        .value("two_sided", Tail::two_sided);

    py::class_<NullSpec>(m, "NullSpec")
        .def(py::init([](NullKind kind, int replicates, std::uint64_t seed,
                         std::optional<int> swaps_per_sample, Tail tail, int threads) {
                 NullSpec spec;
                 spec.kind = kind;
                 spec.replicates = replicates;
                 spec.seed = seed;
                 spec.swaps_per_sample = swaps_per_sample;
                 spec.tail = tail;
                 spec.threads = threads;
                 return spec;
             }),
             py::arg("kind") = NullKind::data_permutation, py::arg("replicates") = 999,
             py::arg("seed") = 0, py::arg("swaps_per_sample") = py::none(),
             py::arg("tail") = Tail::upper, py::arg("threads") = 1)
        .def_readwrite("kind", &NullSpec::kind)
        .def_readwrite("replicates", &NullSpec::replicates)
        .def_readwrite("seed", &NullSpec::seed)
        .def_readwrite("swaps_per_sample", &NullSpec::swaps_per_sample)
        .def_readwrite("tail", &NullSpec::tail)
        .def_readwrite("threads", &NullSpec::threads);

    py::class_<NullResult>(m, "NullResult",
                           "Monte Carlo summary for one statistic under one null model. The "
                           "p-value uses the plus-one estimator, so it is never exactly 0.")
        .def_readonly("observed", &NullResult::observed)
        .def_readonly("p_value", &NullResult::p_value)
        .def_readonly("replicate_values", &NullResult::replicate_values)
        .def_readonly("null_mean", &NullResult::null_mean)
        .def_readonly("null_sd", &NullResult::null_sd)
        .def_readonly("failed", &NullResult::failed)
        .def("__repr__", [](const NullResult& r) {
            return "NullResult(observed=" + std::to_string(r.observed) +
                   ", p_value=" + std::to_string(r.p_value) + ")";
        });

    m.def("permutation_null",
          py::overload_cast<const UnivariateStat&, const WeightMatrix&, const NodeData&,
                            const NullSpec&>(&permutation_null),
          py::arg("stat"), py::arg("W"), py::arg("x"), py::arg("spec"),
          py::call_guard<py::gil_scoped_release>(),
          "Data-permutation null: each replicate shuffles the present values of x.");
    m.def("permutation_null",
          py::overload_cast<const BivariateStat&, const WeightMatrix&, const NodeData&,
                            const NodeData&, const NullSpec&>(&permutation_null),
          py::arg("stat"), py::arg("W"), py::arg("x"), py::arg("y"), py::arg("spec"),
          py::call_guard<py::gil_scoped_release>(),
          "Bivariate variant: permutes x only, holding y and the network fixed.");
    m.def("conditional_permutation_local", &conditional_permutation_local, py::arg("W"),
          py::arg("x"), py::arg("spec"), py::call_guard<py::gil_scoped_release>(),
          "Conditional randomization for the node Moran indices, one NullResult per node.");
    m.def("double_edge_swap", &double_edge_swap, py::arg("g"), py::arg("n_swaps"),
          py::arg("seed"), py::call_guard<py::gil_scoped_release>(),
          "Degree-preserving rewiring with n_swaps accepted double edge swaps.");
    m.def("configuration_null",
          py::overload_cast<const UnivariateStat&, const Graph&, const WeightsBuilder&,
                            const NodeData&, const NullSpec&>(&configuration_null),
          py::arg("stat"), py::arg("g"), py::arg("make_weights"), py::arg("x"), py::arg("spec"),
          py::call_guard<py::gil_scoped_release>(),
          "Configuration-model null: each replicate rewires a fresh copy of the graph.");
    m.def("configuration_null",
          py::overload_cast<const BivariateStat&, const Graph&, const WeightsBuilder&,
                            const NodeData&, const NodeData&, const NullSpec&>(
              &configuration_null),
          py::arg("stat"), py::arg("g"), py::arg("make_weights"), py::arg("x"), py::arg("y"),
          py::arg("spec"), py::call_guard<py::gil_scoped_release>());
    m.def("configuration_local", &configuration_local, py::arg("g"), py::arg("make_weights"),
          py::arg("x"), py::arg("spec"), py::call_guard<py::gil_scoped_release>(),
          "Per-node configuration null for the node Moran indices.");

    // synthetic data ---------------------------------------------------------
    py::class_<PropagationSpec>(m, "PropagationSpec",
                                "Value propagation: a unit source diffused by neighbour "
                                "averaging.")
        .def(py::init([](int source, int steps, double noise_sd, std::uint64_t seed) {
                 PropagationSpec spec;
                 spec.source = source;
                 spec.steps = steps;
                 spec.noise_sd = noise_sd;
                 spec.seed = seed;
                 return spec;
             }),
             py::arg("source") = 0, py::arg("steps") = 0, py::arg("noise_sd") = 0.0,
             py::arg("seed") = 0)
        .def_readwrite("source", &PropagationSpec::source)
        .def_readwrite("steps", &PropagationSpec::steps)
        .def_readwrite("noise_sd", &PropagationSpec::noise_sd)
        .def_readwrite("seed", &PropagationSpec::seed);

    m.def("propagate", &propagate, py::arg("g"), py::arg("x"), py::arg("source"),
          py::arg("steps"),
          "Synchronous neighbour-averaging rounds with the source pinned to 1 during each "
          "round; after the last round the source carries its own averaged value.");
    m.def(
        "value_propagation",
        [](const Graph& g, const PropagationSpec& spec, Diagnostics* diag) {
            return value_propagation(g, spec, diag);
        },
        py::arg("g"), py::arg("spec"), py::arg("diag") = nullptr,
        "Indicator of the source, `steps` rounds of propagate(), then Gaussian noise on "
        "every node.");
    m.def("er_graph", &er_graph, py::arg("n"), py::arg("p"), py::arg("seed"),
          "Erdos-Renyi G(n, p).");

    py::class_<PlantedPartition>(m, "PlantedPartition",
                                 "A planted-partition graph plus its ground-truth block per "
                                 "node.")
        .def_readonly("graph", &PlantedPartition::graph)
        .def_readonly("block", &PlantedPartition::block);

    m.def("planted_partition", &planted_partition, py::arg("n"), py::arg("blocks"),
          py::arg("p_in"), py::arg("p_out"), py::arg("seed"),
          "n nodes split evenly into contiguous blocks; within-block pairs wired with p_in, "
          "across-block pairs with p_out.");
    m.def("karate", &karate, "Zachary's karate club (34 nodes, 78 edges), labels '1'..'34'.");

    // file I/O -----------------------------------------------------------------
    m.def("read_edge_list", &read_edge_list, py::arg("path"),
          "One edge per line, two whitespace-separated labels; '#' starts a comment.");
    m.def("write_edge_list", &write_edge_list, py::arg("g"), py::arg("path"));
    m.def(
        "read_node_values",
        [](const std::string& path, const Graph& g, const std::string& column,
           bool log10_transform, Diagnostics* diag) {
            return read_node_values(path, g, column, log10_transform, diag);
        },
        py::arg("path"), py::arg("g"), py::arg("column"), py::arg("log10") = false,
        py::arg("diag") = nullptr,
        "Read one numeric column from a delimited file and align it to g by label. Graph "
        "nodes missing from the file are masked; with log10, nonpositive values are masked "
        "too.");
    m.def("write_values_csv", &write_values_csv, py::arg("g"), py::arg("columns"),
          py::arg("path"), "One row per node, labels quoted, absent cells empty.");
    m.def("file_digest", &file_digest, py::arg("path"),
          "Hex digest of a file's bytes, for result provenance metadata.");

    // report -------------------------------------------------------------------
    py::class_<PlotStyle>(m, "PlotStyle",
                          "Styling for all renderers. Rendering is pure: byte-identical "
                          "output for identical inputs.")
        .def(py::init<>())
        .def_readwrite("width", &PlotStyle::width)
        .def_readwrite("height", &PlotStyle::height)
        .def_readwrite("margin", &PlotStyle::margin)
        .def_readwrite("marker_radius", &PlotStyle::marker_radius)
        .def_readwrite("outlier_k", &PlotStyle::outlier_k)
        .def_readwrite("label_outliers", &PlotStyle::label_outliers)
        .def_readwrite("font_size", &PlotStyle::font_size)
        .def_readwrite("font", &PlotStyle::font)
        .def_readwrite("color_hh", &PlotStyle::color_hh)
        .def_readwrite("color_hl", &PlotStyle::color_hl)
        .def_readwrite("color_lh", &PlotStyle::color_lh)
        .def_readwrite("color_ll", &PlotStyle::color_ll)
        .def_readwrite("color_axis", &PlotStyle::color_axis)
        .def_readwrite("color_zero", &PlotStyle::color_zero)
        .def_readwrite("color_marker", &PlotStyle::color_marker)
        .def_readwrite("color_highlight", &PlotStyle::color_highlight);

    m.def("render_scatter", &render_scatter, py::arg("scatter"), py::arg("out_path"),
          py::arg("p_values") = std::vector<double>{},
          py::arg("labels") = std::vector<std::string>{}, py::arg("alpha") = 0.01,
          py::arg("style") = PlotStyle{},
          "Moran scatter SVG; with p_values, points with p < alpha are solid.");
    m.def("render_correlogram", &render_correlogram, py::arg("points"), py::arg("alpha"),
          py::arg("out_path"), py::arg("style") = PlotStyle{},
          "Correlogram SVG: I(d) against d, markers solid when p < alpha.");
    m.def("render_local_histogram", &render_local_histogram, py::arg("values"),
          py::arg("p_values"), py::arg("alpha"), py::arg("out_path"),
          py::arg("style") = PlotStyle{},
          "Histogram of node Moran indices; bins holding a node with p < alpha are "
          "highlighted.");

    // wiki ----------------------------------------------------------------------
    m.def("canonical_title", &canonical_title, py::arg("title"),
          "Canonical page title: trimmed, spaces to single underscores, first letter "
          "upper-cased.");
    m.def("url_encode", &url_encode, py::arg("s"));

    py::class_<PageRecord>(m, "PageRecord", "Per-page measurements for one month.")
        .def_readonly("title", &PageRecord::title)
        .def_readonly("views", &PageRecord::views)
        .def_readonly("watchers", &PageRecord::watchers)
        .def_readonly("length_bytes", &PageRecord::length_bytes)
        .def_readonly("edits", &PageRecord::edits);

    py::class_<CachedResponse>(m, "CachedResponse")
        .def(py::init([](int status, std::string body) {
                 CachedResponse r;
                 r.status = status;
                 r.body = std::move(body);
                 return r;
             }),
             py::arg("status"), py::arg("body"))
        .def_readwrite("status", &CachedResponse::status)
        .def_readwrite("body", &CachedResponse::body);

    py::class_<WikiCache>(m, "WikiCache",
                          "Content-addressed response cache, one JSON file per request. "
                          "Entries are immutable; a recorded directory doubles as an offline "
                          "fixture.")
        .def(py::init<std::string>(), py::arg("dir"))
        .def("get", &WikiCache::get, py::arg("key"))
        .def("put", &WikiCache::put, py::arg("key"), py::arg("response"))
        .def("dir", &WikiCache::dir)
        .def_static("entry_name", &WikiCache::entry_name, py::arg("key"));

    py::class_<WikiOptions>(m, "WikiOptions")
        .def(py::init([](std::string api_host, std::string views_host, std::string user_agent,
                         double rate_per_second, int max_retries, std::uint64_t seed,
                         bool offline) {
                 WikiOptions opt;
                 opt.api_host = std::move(api_host);
                 opt.views_host = std::move(views_host);
                 opt.user_agent = std::move(user_agent);
                 opt.rate_per_second = rate_per_second;
                 opt.max_retries = max_retries;
                 opt.seed = seed;
                 opt.offline = offline;
                 return opt;
             }),
             py::arg("api_host") = WikiOptions{}.api_host,
             py::arg("views_host") = WikiOptions{}.views_host,
             py::arg("user_agent") = WikiOptions{}.user_agent,
             py::arg("rate_per_second") = WikiOptions{}.rate_per_second,
             py::arg("max_retries") = WikiOptions{}.max_retries, py::arg("seed") = 0,
             py::arg("offline") = false)
        .def_readwrite("api_host", &WikiOptions::api_host)
        .def_readwrite("views_host", &WikiOptions::views_host)
        .def_readwrite("user_agent", &WikiOptions::user_agent)
        .def_readwrite("rate_per_second", &WikiOptions::rate_per_second)
        .def_readwrite("max_retries", &WikiOptions::max_retries)
        .def_readwrite("seed", &WikiOptions::seed)
        .def_readwrite("offline", &WikiOptions::offline);

    py::class_<WikiClient>(m, "WikiClient",
                           "MediaWiki client with the mandatory cache in front of every "
                           "request.")
        .def(py::init([](std::string cache_dir, WikiOptions options) {
                 return new WikiClient(std::move(cache_dir), std::move(options));
             }),
             py::arg("cache_dir"), py::arg("options") = WikiOptions{})
        .def("fetch_outlinks", &WikiClient::fetch_outlinks, py::arg("title"),
             py::call_guard<py::gil_scoped_release>(),
             "All article-namespace outgoing links, sorted, unique, canonical.")
        .def(
            "build_ego_minus_ego",
            [](WikiClient& client, const std::string& seed_title, Diagnostics* diag) {
                py::gil_scoped_release release;
                return client.build_ego_minus_ego(seed_title, diag);
            },
            py::arg("seed_title"), py::arg("diag") = nullptr,
            "The EgoMinusEgo graph of a seed page: the seed's outlinks, wired when either "
            "page links the other; the seed itself is excluded.")
        .def(
            "fetch_metrics",
            [](WikiClient& client, const std::vector<std::string>& titles,
               const std::string& month, Diagnostics* diag) {
                py::gil_scoped_release release;
                return client.fetch_metrics(titles, month, diag);
            },
            py::arg("titles"), py::arg("month"), py::arg("diag") = nullptr,
            "Views summed over month ('YYYY-MM') plus info-page metrics; failed titles come "
            "back as None.")
        .def("cache", &WikiClient::cache, py::return_value_policy::reference_internal);
}
