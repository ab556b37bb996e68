#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace netcorr {

/// Undirected simple graph with contiguous node indices and a label per node.
/// Immutable after construction; safe to share across threads.
class Graph {
public:
    Graph() = default;

    /// `edges` must be simple (no self-loops, no duplicates); pairs are
    /// normalized to u < v and sorted. Labels must be unique, one per node.
    Graph(int n_nodes, std::vector<std::pair<int, int>> edges, std::vector<std::string> labels);

    int n_nodes() const { return n_; }
    int n_edges() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int u) const { return adj_[static_cast<std::size_t>(u)]; }
    int degree(int u) const { return static_cast<int>(adj_[static_cast<std::size_t>(u)].size()); }
    std::vector<int> degrees() const;
    bool has_edge(int u, int v) const;

    const std::vector<std::string>& labels() const { return labels_; }
    const std::string& label(int u) const { return labels_[static_cast<std::size_t>(u)]; }
    std::optional<int> index_of(const std::string& label) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<std::string> labels_;
    std::unordered_map<std::string, int> index_;
};

/// Build a graph from labelled edge pairs. Self-loops are dropped, duplicate
/// edges collapse to one, and labels map to indices 0..N-1 in order of first
/// appearance. `declared_nodes` registers nodes up front (the only way to get
/// isolated nodes). Throws InputError("empty graph") when nothing is declared.
Graph build_graph(const std::vector<std::pair<std::string, std::string>>& edge_pairs,
                  const std::vector<std::string>& declared_nodes = {});

/// Hop distances from `source`; -1 for unreachable nodes.
std::vector<int> bfs_distances(const Graph& g, int source);

bool is_connected(const Graph& g);

} // namespace netcorr
