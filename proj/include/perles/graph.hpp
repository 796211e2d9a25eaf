#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <queue>
#include <span>
#include <utility>
#include <vector>

#include "perles/error.hpp"

namespace perles {

using Node = std::int32_t;

/**
 * Simple undirected graph on nodes 0..node_count-1.
 *
 * Adjacency lists are kept sorted, so neighbor iteration order and every
 * derived result are deterministic.
 */
class Graph {
  public:
    Graph() = default;
    explicit Graph(Node node_count) : adj_(static_cast<std::size_t>(node_count)) {}

    static Graph from_edges(Node node_count, std::span<const std::pair<Node, Node>> edges) {
        Graph g(node_count);
        for (auto [u, w] : edges) g.add_edge(u, w);
        return g;
    }

    // Ignores duplicate edges; loops are rejected.
    void add_edge(Node u, Node w) {
        require(u != w, "graph: loop at node " + std::to_string(u));
        require(valid(u) && valid(w), "graph: edge endpoint out of range");
        auto insert = [](std::vector<Node>& list, Node x) {
            auto it = std::lower_bound(list.begin(), list.end(), x);
            if (it == list.end() || *it != x) list.insert(it, x);
        };
        insert(adj_[u], w);
        insert(adj_[w], u);
    }

    Node node_count() const { return static_cast<Node>(adj_.size()); }
    bool valid(Node v) const { return v >= 0 && v < node_count(); }

    const std::vector<Node>& neighbors(Node v) const { return adj_[v]; }
    int degree(Node v) const { return static_cast<int>(adj_[v].size()); }

    bool has_edge(Node u, Node w) const {
        return std::binary_search(adj_[u].begin(), adj_[u].end(), w);
    }

    std::size_t edge_count() const {
        std::size_t twice = 0;
        for (const auto& list : adj_) twice += list.size();
        return twice / 2;
    }

    // Edges (u, w) with u < w in lexicographic order.
    std::vector<std::pair<Node, Node>> edges() const {
        std::vector<std::pair<Node, Node>> out;
        for (Node u = 0; u < node_count(); ++u)
            for (Node w : adj_[u])
                if (u < w) out.emplace_back(u, w);
        return out;
    }

    int min_degree() const {
        int best = std::numeric_limits<int>::max();
        for (Node v = 0; v < node_count(); ++v) best = std::min(best, degree(v));
        return adj_.empty() ? 0 : best;
    }

    friend bool operator==(const Graph&, const Graph&) = default;

  private:
    std::vector<std::vector<Node>> adj_;
};

struct InducedSubgraph {
    Graph graph;
    std::vector<Node> to_parent;  // subgraph node i is parent node to_parent[i]
};

inline InducedSubgraph induced_subgraph(const Graph& g, std::span<const Node> nodes) {
    std::vector<Node> sorted(nodes.begin(), nodes.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<Node> local(static_cast<std::size_t>(g.node_count()), -1);
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        require(g.valid(sorted[i]), "induced_subgraph: invalid node " + std::to_string(sorted[i]));
        local[sorted[i]] = static_cast<Node>(i);
    }
    InducedSubgraph out{Graph(static_cast<Node>(sorted.size())), sorted};
    for (std::size_t i = 0; i < sorted.size(); ++i)
        for (Node w : g.neighbors(sorted[i]))
            if (local[w] > static_cast<Node>(i)) out.graph.add_edge(static_cast<Node>(i), local[w]);
    return out;
}

struct RegularityCheck {
    bool regular = true;
    std::optional<Node> witness;  // first node whose degree differs
};

inline RegularityCheck is_k_regular(const Graph& g, int k) {
    for (Node v = 0; v < g.node_count(); ++v)
        if (g.degree(v) != k) return {false, v};
    return {};
}

// Components sorted internally and by least element.
inline std::vector<std::vector<Node>> connected_components(const Graph& g) {
    std::vector<std::vector<Node>> out;
    std::vector<char> seen(static_cast<std::size_t>(g.node_count()), 0);
    for (Node root = 0; root < g.node_count(); ++root) {
        if (seen[root]) continue;
        std::vector<Node> comp{root};
        seen[root] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (Node w : g.neighbors(comp[head]))
                if (!seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

inline bool is_connected(const Graph& g) {
    return g.node_count() <= 1 || connected_components(g).size() == 1;
}

/**
 * Counts internally vertex-disjoint paths between two nodes with unit node
 * capacities on the split graph (node v becomes in(v) -> out(v)).
 *
 * The arc structure is built once; each query resets the flow. Queries take a
 * cap so that callers asking "at least k?" stop after k augmentations.
 */
class DisjointPathCounter {
  public:
    explicit DisjointPathCounter(const Graph& g) : n_(g.node_count()) {
        head_.assign(static_cast<std::size_t>(2 * n_), -1);
        for (Node v = 0; v < n_; ++v) add_arc(in(v), out(v));
        for (auto [u, w] : g.edges()) {
            add_arc(out(u), in(w));
            add_arc(out(w), in(u));
        }
    }

    int count(Node s, Node t, int cap = std::numeric_limits<int>::max()) {
        require(s != t, "disjoint paths: endpoints coincide");
        std::fill(flow_.begin(), flow_.end(), 0);
        // The endpoints themselves are not capacity-limited.
        source_ = s;
        sink_ = t;
        int paths = 0;
        while (paths < cap && augment(out(s), in(t))) ++paths;
        return paths;
    }

  private:
    static int in(Node v) { return 2 * v; }
    static int out(Node v) { return 2 * v + 1; }

    void add_arc(int from, int to) {
        // forward arc index 2i, reverse arc 2i+1
        to_.push_back(to);
        next_.push_back(head_[from]);
        head_[from] = static_cast<int>(to_.size()) - 1;
        flow_.push_back(0);
        to_.push_back(from);
        next_.push_back(head_[to]);
        head_[to] = static_cast<int>(to_.size()) - 1;
        flow_.push_back(0);
    }

    int residual(int arc) const {
        // forward arcs have capacity 1, reverse arcs capacity 0
        return ((arc & 1) == 0 ? 1 : 0) - flow_[arc];
    }

    bool augment(int from, int to) {
        std::vector<int> parent_arc(head_.size(), -1);
        std::vector<char> seen(head_.size(), 0);
        std::queue<int> queue;
        queue.push(from);
        seen[from] = 1;
        while (!queue.empty() && !seen[to]) {
            int x = queue.front();
            queue.pop();
            for (int a = head_[x]; a != -1; a = next_[a]) {
                int y = to_[a];
                if (seen[y] || residual(a) <= 0) continue;
                // never route through the split arcs of the endpoints
                if (y == in(source_) || y == out(sink_)) continue;
                seen[y] = 1;
                parent_arc[y] = a;
                queue.push(y);
            }
        }
        if (!seen[to]) return false;
        for (int y = to; y != from;) {
            int a = parent_arc[y];
            flow_[a] += 1;
            flow_[a ^ 1] -= 1;
            y = to_[a ^ 1];
        }
        return true;
    }

    Node n_;
    Node source_ = 0, sink_ = 0;
    std::vector<int> head_, next_, to_, flow_;
};

inline int local_connectivity(const Graph& g, Node s, Node t, int cap = std::numeric_limits<int>::max()) {
    DisjointPathCounter counter(g);
    return counter.count(s, t, cap);
}

/**
 * Vertex connectivity by Menger's theorem (Even's scheme): some node among the
 * first kappa+1 avoids a minimum separator, so only pairs (v_i, v_j) with
 * i <= current bound and j > i need a flow computation. Complete graphs on n
 * nodes have connectivity n-1.
 */
inline int vertex_connectivity(const Graph& g) {
    require(g.node_count() >= 2, "vertex_connectivity: graph needs at least 2 nodes");
    if (!is_connected(g)) return 0;
    const Node n = g.node_count();
    int best = std::min(g.min_degree(), n - 1);
    DisjointPathCounter counter(g);
    for (Node i = 0; i <= best && i < n; ++i)
        for (Node j = i + 1; j < n; ++j) {
            if (g.has_edge(i, j)) continue;
            best = std::min(best, counter.count(i, j, best));
            if (best == 0) return 0;
        }
    return best;
}

struct NaatzCheck {
    bool k_connected = true;
    bool connected = true;
    std::optional<std::pair<Node, Node>> witness;  // distance-2 pair with < k paths
};

/**
 * k-connectivity from distance-2 pairs only: a connected graph on at least
 * k+1 nodes is k-connected iff every pair at distance exactly 2 is joined by
 * k internally disjoint paths.
 */
inline NaatzCheck naatz_k_connected(const Graph& g, int k) {
    require(g.node_count() >= k + 1, "naatz_k_connected: need more than k nodes");
    NaatzCheck result;
    if (!is_connected(g)) {
        result.k_connected = false;
        result.connected = false;
        return result;
    }
    DisjointPathCounter counter(g);
    std::vector<Node> mark(static_cast<std::size_t>(g.node_count()), -1);
    for (Node v = 0; v < g.node_count(); ++v) {
        for (Node u : g.neighbors(v))
            for (Node w : g.neighbors(u)) {
                if (w <= v || g.has_edge(v, w) || mark[w] == v) continue;
                mark[w] = v;
                if (counter.count(v, w, k) < k) {
                    result.k_connected = false;
                    result.witness = {v, w};
                    return result;
                }
            }
    }
    return result;
}

inline Graph cartesian_product(const Graph& a, const Graph& b) {
    const Node nb = b.node_count();
    Graph out(a.node_count() * nb);
    auto id = [nb](Node x, Node y) { return x * nb + y; };
    for (Node x = 0; x < a.node_count(); ++x)
        for (Node y = 0; y < nb; ++y) {
            for (Node x2 : a.neighbors(x))
                if (x2 > x) out.add_edge(id(x, y), id(x2, y));
            for (Node y2 : b.neighbors(y))
                if (y2 > y) out.add_edge(id(x, y), id(x, y2));
        }
    return out;
}

// Adjacency-list text block: "<node>: <neighbors...>" per line.
inline void write_adjacency(std::ostream& os, const Graph& g) {
    for (Node v = 0; v < g.node_count(); ++v) {
        os << v << ':';
        for (Node w : g.neighbors(v)) os << ' ' << w;
        os << '\n';
    }
}

}  // namespace perles
