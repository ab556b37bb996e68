#include "netcorr/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "netcorr/error.hpp"

namespace netcorr {

Graph::Graph(int n_nodes, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels)
    : n_(n_nodes), edges_(std::move(edges)), labels_(std::move(labels)) {
    if (n_ < 0) throw InputError("negative node count");
    if (static_cast<int>(labels_.size()) != n_) throw InputError("label count does not match node count");

    adj_.assign(static_cast<std::size_t>(n_), {});
    for (auto& [u, v] : edges_) {
        if (u < 0 || v < 0 || u >= n_ || v >= n_) throw InputError("edge endpoint out of range");
        if (u == v) throw InputError("self-loop in edge list");
        if (u > v) std::swap(u, v);
    }
    std::sort(edges_.begin(), edges_.end());
    if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
        throw InputError("duplicate edge in edge list");

    for (const auto& [u, v] : edges_) {
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : adj_) std::sort(nbrs.begin(), nbrs.end());

    index_.reserve(labels_.size());
    for (int i = 0; i < n_; ++i) {
        if (!index_.emplace(labels_[static_cast<std::size_t>(i)], i).second)
            throw InputError("duplicate node label: " + labels_[static_cast<std::size_t>(i)]);
    }
}

std::vector<int> Graph::degrees() const {
    std::vector<int> k(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i) k[static_cast<std::size_t>(i)] = degree(i);
    return k;
}

bool Graph::has_edge(int u, int v) const {
    const auto& nbrs = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::optional<int> Graph::index_of(const std::string& label) const {
    auto it = index_.find(label);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edge_pairs,
                  const std::vector<std::string>& declared_nodes) {
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> index;
    auto intern = [&](const std::string& label) {
        auto [it, inserted] = index.emplace(label, static_cast<int>(labels.size()));
        if (inserted) labels.push_back(label);
        return it->second;
    };

    for (const auto& label : declared_nodes) intern(label);

    std::set<std::pair<int, int>> edge_set;
    for (const auto& [a, b] : edge_pairs) {
        int u = intern(a);
        int v = intern(b);
        if (u == v) continue;
        edge_set.emplace(std::min(u, v), std::max(u, v));
    }

    if (labels.empty()) throw InputError("empty graph");
    int n = static_cast<int>(labels.size());
    return Graph(n, std::vector<std::pair<int, int>>(edge_set.begin(), edge_set.end()),
                 std::move(labels));
}

std::vector<int> bfs_distances(const Graph& g, int source) {
    if (source < 0 || source >= g.n_nodes()) throw InputError("BFS source out of range");
    std::vector<int> dist(static_cast<std::size_t>(g.n_nodes()), -1);
    std::deque<int> queue;
    dist[static_cast<std::size_t>(source)] = 0;
    queue.push_back(source);
    while (!queue.empty()) {
        int u = queue.front();
        queue.pop_front();
        for (int v : g.neighbors(u)) {
            if (dist[static_cast<std::size_t>(v)] < 0) {
                dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
                queue.push_back(v);
            }
        }
    }
    return dist;
}

bool is_connected(const Graph& g) {
    if (g.n_nodes() == 0) return true;
    auto dist = bfs_distances(g, 0);
    return std::none_of(dist.begin(), dist.end(), [](int d) { return d < 0; });
}

} // namespace netcorr
