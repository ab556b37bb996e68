#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace netcorr {

/// A real value per node plus a present/absent mask. Statistics use only the
/// present nodes: absent nodes are excluded from means, norms and sums, and
/// their weight-matrix rows and columns are ignored.
struct NodeData {
    std::vector<double> values;
    std::vector<std::uint8_t> mask; // 1 = present
    std::string name;

    NodeData() = default;
    NodeData(std::vector<double> v, std::vector<std::uint8_t> m, std::string n = "")
        : values(std::move(v)), mask(std::move(m)), name(std::move(n)) {}

    /// All-present data.
    static NodeData full(std::vector<double> v, std::string n = "") {
        std::vector<std::uint8_t> m(v.size(), 1);
        return NodeData(std::move(v), std::move(m), std::move(n));
    }

    int n() const { return static_cast<int>(values.size()); }

    int n_present() const {
        int c = 0;
        for (auto m : mask) c += m ? 1 : 0;
        return c;
    }

    bool present(int i) const { return mask[static_cast<std::size_t>(i)] != 0; }

    bool all_present() const { return n_present() == n(); }
};

} // namespace netcorr
