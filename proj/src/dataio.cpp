#include "netcorr/dataio.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "netcorr/detail/hash.hpp"
#include "netcorr/detail/text.hpp"
#include "netcorr/error.hpp"

namespace netcorr {

namespace {

using ordered_json = nlohmann::ordered_json;

std::ifstream open_for_read(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    return in;
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + path);
    out << body;
    if (!out) throw Error("cannot write " + path);
}

std::string u64_string(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw InputError("bad " + what + ": " + s);
    return v;
}

ordered_json summary_to_json(const NullSummary& s) {
    ordered_json j;
    j["kind"] = s.kind;
    j["tail"] = s.tail;
    j["replicates"] = s.replicates;
    j["seed"] = u64_string(s.seed); // string: 64-bit seeds overflow JSON readers
    if (s.swaps) j["swaps"] = *s.swaps;
    j["column"] = s.column;
    if (s.p_value) j["p_value"] = *s.p_value;
    if (s.null_mean) j["null_mean"] = *s.null_mean;
    if (s.null_sd) j["null_sd"] = *s.null_sd;
    if (s.failed) j["failed"] = *s.failed;
    return j;
}

NullSummary summary_from_json(const ordered_json& j) {
    NullSummary s;
    s.kind = j.at("kind").get<std::string>();
    s.tail = j.at("tail").get<std::string>();
    s.replicates = j.at("replicates").get<int>();
    s.seed = parse_u64(j.at("seed").get<std::string>(), "seed");
    if (j.contains("swaps")) s.swaps = j["swaps"].get<int>();
    s.column = j.at("column").get<std::string>();
    if (j.contains("p_value")) s.p_value = j["p_value"].get<double>();
    if (j.contains("null_mean")) s.null_mean = j["null_mean"].get<double>();
    if (j.contains("null_sd")) s.null_sd = j["null_sd"].get<double>();
    if (j.contains("failed")) s.failed = j["failed"].get<int>();
    return s;
}

std::string render_json(const ResultDocument& doc) {
    ordered_json j;
    j["statistic"] = doc.statistic;
    if (!doc.weights.empty()) j["weights"] = doc.weights;
    if (doc.value) j["value"] = *doc.value;
    if (!doc.nulls.empty()) {
        auto& arr = j["nulls"] = ordered_json::array();
        for (const auto& s : doc.nulls) arr.push_back(summary_to_json(s));
    }
    if (!doc.columns.empty()) {
        j["columns"] = doc.columns;
        auto& rows = j["rows"] = ordered_json::array();
        for (const auto& row : doc.rows) {
            ordered_json jr = ordered_json::array();
            for (const auto& cell : row) {
                if (std::holds_alternative<std::monostate>(cell))
                    jr.push_back(nullptr);
                else if (std::holds_alternative<double>(cell))
                    jr.push_back(std::get<double>(cell));
                else
                    jr.push_back(std::get<std::string>(cell));
            }
            rows.push_back(std::move(jr));
        }
    }
    if (!doc.meta.empty()) {
        auto& m = j["meta"] = ordered_json::object();
        for (const auto& [k, v] : doc.meta) m[k] = v;
    }
    return j.dump(2) + "\n";
}

ResultDocument parse_json(const std::string& body, const std::string& path) {
    ordered_json j = ordered_json::parse(body, nullptr, false);
    if (j.is_discarded()) throw InputError("not a structured result document: " + path);
    ResultDocument doc;
    doc.statistic = j.value("statistic", std::string{});
    doc.weights = j.value("weights", std::string{});
    if (j.contains("value")) doc.value = j["value"].get<double>();
    if (j.contains("nulls"))
        for (const auto& s : j["nulls"]) doc.nulls.push_back(summary_from_json(s));
    if (j.contains("columns")) {
        doc.columns = j["columns"].get<std::vector<std::string>>();
        for (const auto& jr : j.at("rows")) {
            std::vector<Cell> row;
            for (const auto& cell : jr) {
                if (cell.is_null())
                    row.emplace_back(std::monostate{});
                else if (cell.is_number())
                    row.emplace_back(cell.get<double>());
                else
                    row.emplace_back(cell.get<std::string>());
            }
            doc.rows.push_back(std::move(row));
        }
    }
    if (j.contains("meta"))
        for (const auto& [k, v] : j["meta"].items()) doc.meta.emplace_back(k, v.get<std::string>());
    return doc;
}

std::string summary_to_line(const NullSummary& s) {
    std::ostringstream os;
    os << "# null: column=" << s.column << " kind=" << s.kind << " tail=" << s.tail
       << " replicates=" << s.replicates << " seed=" << u64_string(s.seed);
    if (s.swaps) os << " swaps=" << *s.swaps;
    if (s.p_value) os << " p_value=" << detail::format_double(*s.p_value);
    if (s.null_mean) os << " null_mean=" << detail::format_double(*s.null_mean);
    if (s.null_sd) os << " null_sd=" << detail::format_double(*s.null_sd);
    if (s.failed) os << " failed=" << *s.failed;
    return os.str();
}

NullSummary summary_from_line(const std::string& line) {
    NullSummary s;
    for (const auto& tok : detail::split_whitespace(line)) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) continue;
        std::string key = tok.substr(0, eq);
        std::string val = tok.substr(eq + 1);
        if (key == "column")
            s.column = val;
        else if (key == "kind")
            s.kind = val;
        else if (key == "tail")
            s.tail = val;
        else if (key == "replicates")
            s.replicates = static_cast<int>(parse_u64(val, "replicates"));
        else if (key == "seed")
            s.seed = parse_u64(val, "seed");
        else if (key == "swaps")
            s.swaps = static_cast<int>(parse_u64(val, "swaps"));
        else if (key == "p_value")
            s.p_value = detail::parse_double(val).value();
        else if (key == "null_mean")
            s.null_mean = detail::parse_double(val).value();
        else if (key == "null_sd")
            s.null_sd = detail::parse_double(val).value();
        else if (key == "failed")
            s.failed = static_cast<int>(parse_u64(val, "failed"));
    }
    return s;
}

std::string render_csv(const ResultDocument& doc) {
    std::ostringstream os;
    os << "# statistic: " << doc.statistic << "\n";
    if (!doc.weights.empty()) os << "# weights: " << doc.weights << "\n";
    if (doc.value) os << "# value: " << detail::format_double(*doc.value) << "\n";
    for (const auto& s : doc.nulls) os << summary_to_line(s) << "\n";
    for (const auto& [k, v] : doc.meta) os << "# meta: " << k << "=" << v << "\n";
    if (!doc.columns.empty()) {
        for (std::size_t c = 0; c < doc.columns.size(); ++c) {
            if (c) os << ",";
            os << doc.columns[c];
        }
        os << "\n";
        for (const auto& row : doc.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) {
                if (c) os << ",";
                const auto& cell = row[c];
                if (std::holds_alternative<double>(cell))
                    os << detail::format_double(std::get<double>(cell));
                else if (std::holds_alternative<std::string>(cell))
                    os << detail::csv_quote(std::get<std::string>(cell));
                // absent: empty field
            }
            os << "\n";
        }
    }
    return os.str();
}

ResultDocument parse_csv(const std::string& body, const std::string& path) {
    ResultDocument doc;
    std::istringstream in(body);
    std::string line;
    bool have_header = false;
    int line_no = 0;
    auto starts_with = [](const std::string& s, const char* prefix) {
        return s.rfind(prefix, 0) == 0;
    };
    while (std::getline(in, line)) {
        ++line_no;
        std::string t(detail::trim(line));
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (starts_with(t, "# statistic: "))
                doc.statistic = t.substr(13);
            else if (starts_with(t, "# weights: "))
                doc.weights = t.substr(11);
            else if (starts_with(t, "# value: "))
                doc.value = detail::parse_double(t.substr(9)).value();
            else if (starts_with(t, "# null: "))
                doc.nulls.push_back(summary_from_line(t.substr(8)));
            else if (starts_with(t, "# meta: ")) {
                std::string kv = t.substr(8);
                auto eq = kv.find('=');
                if (eq == std::string::npos)
                    throw InputError(path + ":" + std::to_string(line_no) + ": bad meta line");
                doc.meta.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
            }
            continue;
        }
        auto fields = detail::csv_split(t);
        if (!fields)
            throw InputError(path + ":" + std::to_string(line_no) + ": unbalanced quotes");
        if (!have_header) {
            doc.columns = *fields;
            have_header = true;
            continue;
        }
        std::vector<Cell> row;
        row.reserve(fields->size());
        for (std::size_t c = 0; c < fields->size(); ++c) {
            const std::string& f = (*fields)[c];
            if (c == 0) {
                row.emplace_back(f); // key column is always text
            } else if (f.empty()) {
                row.emplace_back(std::monostate{});
            } else if (auto v = detail::parse_double(f)) {
                row.emplace_back(*v);
            } else {
                row.emplace_back(f);
            }
        }
        doc.rows.push_back(std::move(row));
    }
    return doc;
}

} // namespace

NullSummary make_summary(const NullResult& result, const NullSpec& spec, std::string column) {
    NullSummary s = make_summary(spec, std::move(column));
    s.p_value = result.p_value;
    s.null_mean = result.null_mean;
    s.null_sd = result.null_sd;
    s.failed = result.failed;
    return s;
}

NullSummary make_summary(const NullSpec& spec, std::string column) {
    NullSummary s;
    s.kind = to_string(spec.kind);
    s.tail = to_string(spec.tail);
    s.replicates = spec.replicates;
    s.seed = spec.seed;
    if (spec.kind == NullKind::configuration) s.swaps = spec.swaps_per_sample;
    s.column = std::move(column);
    return s;
}

std::string render_results(const ResultDocument& doc, ResultFormat fmt) {
    return fmt == ResultFormat::structured_text ? render_json(doc) : render_csv(doc);
}

void write_results(const ResultDocument& doc, const std::string& path, ResultFormat fmt) {
    write_text(path, render_results(doc, fmt));
}

ResultDocument read_results(const std::string& path, ResultFormat fmt) {
    auto in = open_for_read(path);
    std::ostringstream body;
    body << in.rdbuf();
    return fmt == ResultFormat::structured_text ? parse_json(body.str(), path)
                                                : parse_csv(body.str(), path);
}

Graph read_edge_list(const std::string& path) {
    auto in = open_for_read(path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto tokens = detail::split_whitespace(line);
        if (tokens.empty()) continue;
        if (tokens.size() != 2)
            throw InputError(path + ":" + std::to_string(line_no) +
                             ": expected two whitespace-separated labels");
        pairs.emplace_back(std::move(tokens[0]), std::move(tokens[1]));
    }
    try {
        return build_graph(pairs);
    } catch (const InputError& e) {
        throw InputError(path + ": " + e.what());
    }
}

void write_edge_list(const Graph& g, const std::string& path) {
    std::ostringstream os;
    for (const auto& label : g.labels()) {
        if (label.find_first_of(" \t#") != std::string::npos)
            throw InputError("label not representable in edge-list format: " + label);
    }
    for (const auto& [u, v] : g.edges()) os << g.label(u) << " " << g.label(v) << "\n";
    write_text(path, os.str());
}

NodeData read_node_values(const std::string& path, const Graph& g, const std::string& column,
                          bool log10_transform, Diagnostics* diag) {
    auto in = open_for_read(path);
    std::string line;
    int line_no = 0;

    // header
    std::size_t col_idx = 0;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::csv_split(line);
        if (!fields) throw InputError(path + ":" + std::to_string(line_no) + ": unbalanced quotes");
        header = *fields;
        break;
    }
    if (header.size() < 2) throw InputError(path + ": expected a label column and a value column");
    bool found = false;
    for (std::size_t c = 1; c < header.size(); ++c) {
        if (header[c] == column) {
            col_idx = c;
            found = true;
            break;
        }
    }
    if (!found) throw InputError(path + ": no column named " + column);

    std::vector<double> values(static_cast<std::size_t>(g.n_nodes()), 0.0);
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(g.n_nodes()), 0);
    std::unordered_set<std::string> seen;
    std::vector<std::string> unmatched;
    std::vector<std::uint8_t> filled(static_cast<std::size_t>(g.n_nodes()), 0);

    while (std::getline(in, line)) {
        ++line_no;
        if (detail::trim(line).empty()) continue;
        auto fields = detail::csv_split(line);
        if (!fields) throw InputError(path + ":" + std::to_string(line_no) + ": unbalanced quotes");
        if (fields->size() != header.size())
            throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                             std::to_string(header.size()) + " fields");
        const std::string& label = (*fields)[0];
        if (!seen.insert(label).second)
            throw InputError(path + ":" + std::to_string(line_no) + ": duplicate label " + label);
        auto idx = g.index_of(label);
        if (!idx) {
            unmatched.push_back(label);
            continue;
        }
        const std::string& cell = (*fields)[col_idx];
        filled[static_cast<std::size_t>(*idx)] = 1;
        if (detail::trim(cell).empty()) continue; // stays masked
        auto v = detail::parse_double(cell);
        if (!v)
            throw InputError(path + ":" + std::to_string(line_no) + ": column " + column +
                             ": not a number: " + cell);
        if (log10_transform) {
            if (*v <= 0.0) {
                if (diag)
                    diag->warn("log10: nonpositive value at " + label + " masked");
                continue;
            }
            *v = std::log10(*v);
        }
        values[static_cast<std::size_t>(*idx)] = *v;
        mask[static_cast<std::size_t>(*idx)] = 1;
    }

    if (!unmatched.empty()) {
        std::string msg = path + ": labels not in the graph:";
        for (const auto& label : unmatched) msg += " " + label;
        throw InputError(msg);
    }
    if (diag) {
        for (int i = 0; i < g.n_nodes(); ++i)
            if (!filled[static_cast<std::size_t>(i)])
                diag->warn("no row for node " + g.label(i) + "; masked");
    }
    return NodeData(std::move(values), std::move(mask), column);
}

void write_values_csv(const Graph& g, const std::vector<NodeData>& columns,
                      const std::string& path) {
    for (const auto& col : columns) {
        if (col.n() != g.n_nodes()) throw InputError("column length does not match graph");
        if (col.name.empty()) throw InputError("value column needs a name");
    }
    std::ostringstream os;
    os << "node";
    for (const auto& col : columns) os << "," << col.name;
    os << "\n";
    for (int i = 0; i < g.n_nodes(); ++i) {
        os << detail::csv_quote(g.label(i));
        for (const auto& col : columns) {
            os << ",";
            if (col.present(i)) os << detail::format_double(col.values[static_cast<std::size_t>(i)]);
        }
        os << "\n";
    }
    write_text(path, os.str());
}

std::string file_digest(const std::string& path) {
    auto in = open_for_read(path);
    std::ostringstream body;
    body << in.rdbuf();
    return detail::fnv1a64_hex(body.str());
}

} // namespace netcorr
