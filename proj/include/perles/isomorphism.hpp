#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "perles/graph.hpp"
#include "perles/polytope.hpp"

namespace perles {

namespace detail {

// Color refinement on the disjoint union a + b; b's nodes are offset by |a|.
class IsoSearch {
  public:
    IsoSearch(const Graph& a, const Graph& b) : a_(a), b_(b), na_(a.node_count()) {}

    std::optional<std::vector<Node>> run() {
        if (a_.node_count() != b_.node_count() || a_.edge_count() != b_.edge_count()) return std::nullopt;
        std::vector<int> colors(static_cast<std::size_t>(2 * na_), 0);
        return search(std::move(colors));
    }

  private:
    const std::vector<Node>& nbrs(Node x) const { return x < na_ ? a_.neighbors(x) : b_.neighbors(x - na_); }
    Node offset(Node x) const { return x < na_ ? 0 : na_; }

    // Refines to a stable partition; false if some class is unbalanced.
    bool refine(std::vector<int>& colors) const {
        const Node total = 2 * na_;
        int classes = -1;
        while (true) {
            std::vector<std::pair<std::vector<int>, Node>> sig(static_cast<std::size_t>(total));
            for (Node x = 0; x < total; ++x) {
                std::vector<int> s{colors[x]};
                for (Node w : nbrs(x)) s.push_back(colors[w + offset(x)]);
                std::sort(s.begin() + 1, s.end());
                sig[x] = {std::move(s), x};
            }
            std::map<std::vector<int>, int> ids;
            for (auto& [s, x] : sig) ids.emplace(s, 0);
            int next = 0;
            for (auto& [s, id] : ids) id = next++;
            for (auto& [s, x] : sig) colors[x] = ids[s];
            if (next == classes) break;
            classes = next;
        }
        std::vector<int> balance(static_cast<std::size_t>(classes), 0);
        for (Node x = 0; x < total; ++x) balance[colors[x]] += x < na_ ? 1 : -1;
        return std::all_of(balance.begin(), balance.end(), [](int c) { return c == 0; });
    }

    std::optional<std::vector<Node>> search(std::vector<int> colors) const {
        if (!refine(colors)) return std::nullopt;
        const Node total = 2 * na_;
        std::vector<int> size(static_cast<std::size_t>(total), 0);
        for (Node x = 0; x < na_; ++x) size[colors[x]]++;
        // smallest non-singleton class
        int pick = -1;
        for (int c = 0; c < total; ++c)
            if (size[c] > 1 && (pick < 0 || size[c] < size[pick])) pick = c;
        if (pick < 0) {
            std::vector<Node> map(static_cast<std::size_t>(na_), -1);
            std::vector<Node> by_color(static_cast<std::size_t>(total), -1);
            for (Node y = na_; y < total; ++y) by_color[colors[y]] = y - na_;
            for (Node x = 0; x < na_; ++x) map[x] = by_color[colors[x]];
            for (auto [u, v] : a_.edges())
                if (!b_.has_edge(map[u], map[v])) return std::nullopt;
            return map;
        }
        Node x = 0;
        while (colors[x] != pick) ++x;
        const int fresh = total;
        for (Node y = na_; y < total; ++y) {
            if (colors[y] != pick) continue;
            auto next = colors;
            next[x] = fresh;
            next[y] = fresh;
            if (auto found = search(std::move(next))) return found;
        }
        return std::nullopt;
    }

    const Graph& a_;
    const Graph& b_;
    Node na_;
};

}  // namespace detail

// An isomorphism a -> b as a node map, if one exists.
inline std::optional<std::vector<Node>> find_isomorphism(const Graph& a, const Graph& b) {
    return detail::IsoSearch(a, b).run();
}

inline bool graphs_isomorphic(const Graph& a, const Graph& b) { return find_isomorphism(a, b).has_value(); }

/**
 * Combinatorial equivalence of simple polytope models through their graphs.
 * A found graph isomorphism is additionally checked to carry facets to facets.
 */
inline bool models_equivalent(const SimplePolytopeModel& p, const SimplePolytopeModel& q) {
    if (p.dim() != q.dim() || p.facet_count() != q.facet_count()) return false;
    auto map = find_isomorphism(p.graph(), q.graph());
    if (!map) return false;
    auto target = facet_subgraph_vertex_sets(q);
    for (const auto& f : p.facets()) {
        VertexSet g;
        for (Node v : f) g.push_back((*map)[v]);
        std::sort(g.begin(), g.end());
        if (!std::binary_search(target.begin(), target.end(), g)) return false;
    }
    return true;
}

}  // namespace perles
