#pragma once

// Test-only oracles. Nothing here calls into the code paths it is used to check.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "perles/graph.hpp"

namespace oracle {

using perles::Graph;
using perles::Node;
using BigInt = boost::multiprecision::cpp_int;

inline Graph complete(Node n) {
    Graph g(n);
    for (Node i = 0; i < n; ++i)
        for (Node j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph cycle(Node n) {
    Graph g(n);
    for (Node i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph path(Node n) {
    Graph g(n);
    for (Node i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

inline Graph petersen() {
    Graph g(10);
    for (Node i = 0; i < 5; ++i) {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(i, i + 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
    }
    return g;
}

inline Graph cube_graph() {
    Graph g(8);
    for (Node v = 0; v < 8; ++v)
        for (int b = 0; b < 3; ++b)
            if (!(v & (1 << b))) g.add_edge(v, v | (1 << b));
    return g;
}

// Graph on n nodes from a bitmask over the n(n-1)/2 pairs.
inline Graph from_mask(Node n, std::uint64_t mask) {
    Graph g(n);
    int bit = 0;
    for (Node i = 0; i < n; ++i)
        for (Node j = i + 1; j < n; ++j, ++bit)
            if (mask & (std::uint64_t{1} << bit)) g.add_edge(i, j);
    return g;
}

inline Graph random_graph(Node n, double p, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (Node i = 0; i < n; ++i)
        for (Node j = i + 1; j < n; ++j)
            if (coin(rng)) g.add_edge(i, j);
    return g;
}

inline bool connected_without(const Graph& g, std::uint32_t removed) {
    const Node n = g.node_count();
    Node start = -1;
    int remaining = 0;
    for (Node v = 0; v < n; ++v)
        if (!(removed & (1u << v))) {
            ++remaining;
            if (start < 0) start = v;
        }
    if (remaining <= 1) return true;
    std::vector<char> seen(n, 0);
    std::vector<Node> stack{start};
    seen[start] = 1;
    int reached = 1;
    while (!stack.empty()) {
        Node v = stack.back();
        stack.pop_back();
        for (Node w : g.neighbors(v))
            if (!seen[w] && !(removed & (1u << w))) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == remaining;
}

// Smallest node set whose removal disconnects g or leaves <= 1 node.
inline int brute_force_connectivity(const Graph& g) {
    const Node n = g.node_count();
    int best = n - 1;
    for (std::uint32_t removed = 0; removed < (1u << n); ++removed) {
        int size = __builtin_popcount(removed);
        if (size >= best) continue;
        if (!connected_without(g, removed)) best = size;
    }
    return best;
}

// Determinant by Bareiss fraction-free elimination.
inline BigInt determinant(std::vector<std::vector<BigInt>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && a[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

/**
 * Elementary divisors from determinantal divisors: D_k = gcd of all k x k
 * minors, d_k = D_k / D_{k-1}. Exponential; small matrices only.
 */
inline std::vector<BigInt> divisors_by_minors(const std::vector<std::vector<long long>>& m) {
    const std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<BigInt> out;
    BigInt prev = 1;
    for (std::size_t k = 1; k <= std::min(rows, cols); ++k) {
        BigInt g = 0;
        std::vector<std::size_t> rs(k), cs(k);
        auto next_combo = [](std::vector<std::size_t>& pick, std::size_t n) {
            std::size_t k = pick.size();
            std::size_t i = k;
            while (i > 0 && pick[i - 1] == n - k + i - 1) --i;
            if (i == 0) return false;
            ++pick[i - 1];
            for (std::size_t j = i; j < k; ++j) pick[j] = pick[j - 1] + 1;
            return true;
        };
        std::iota(rs.begin(), rs.end(), 0);
        do {
            std::iota(cs.begin(), cs.end(), 0);
            do {
                std::vector<std::vector<BigInt>> sub(k, std::vector<BigInt>(k));
                for (std::size_t i = 0; i < k; ++i)
                    for (std::size_t j = 0; j < k; ++j) sub[i][j] = m[rs[i]][cs[j]];
                BigInt det = determinant(sub);
                g = boost::multiprecision::gcd(g, abs(det));
            } while (next_combo(cs, cols));
        } while (next_combo(rs, rows));
        if (g == 0) break;
        out.push_back(g / prev);
        prev = g;
    }
    return out;
}

}  // namespace oracle
