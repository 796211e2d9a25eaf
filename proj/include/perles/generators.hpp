#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <vector>

#include "perles/complex.hpp"
#include "perles/error.hpp"
#include "perles/polytope.hpp"

namespace perles {

// Boundary of the d-simplex: d+1 facets on {0..d}, each omitting one vertex.
inline SimplicialComplex simplex_boundary(int d) {
    require(d >= 1, "simplex_boundary: d must be >= 1");
    std::vector<Simplex> facets;
    for (Vertex skip = 0; skip <= d; ++skip) {
        std::vector<Vertex> f;
        for (Vertex v = 0; v <= d; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(Simplex::sorted(std::move(f)));
    }
    return SimplicialComplex::from_facets(std::move(facets));
}

struct CyclicSpec {
    int d = 0;
    int n = 0;
};

// Linear Gale evenness: any two non-members are separated by an even number of members.
inline bool gale_evenness(const std::vector<Vertex>& s, int n) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Vertex v : s) in[v] = 1;
    int last_out = -1, between = 0;
    for (int i = 0; i < n; ++i) {
        if (in[i]) {
            ++between;
            continue;
        }
        if (last_out >= 0 && between % 2 != 0) return false;
        last_out = i;
        between = 0;
    }
    return true;
}

/**
 * Boundary of the cyclic polytope C_d(n). Facets are built as runs: a
 * d-subset satisfies evenness iff its interior runs (not touching 0 or n-1)
 * all have even length, so the search extends sets by pairs or by end runs.
 */
inline SimplicialComplex cyclic_facets_gale(const CyclicSpec& spec) {
    require(spec.d >= 2 && spec.n > spec.d, "cyclic_facets_gale: need d >= 2 and n > d");
    std::vector<Simplex> facets;
    std::vector<Vertex> cur;
    auto rec = [&](auto&& self, int pos) -> void {
        const int need = spec.d - static_cast<int>(cur.size());
        if (need == 0) {
            facets.push_back(Simplex::sorted(cur));
            return;
        }
        if (pos >= spec.n) return;
        // run ending at n-1 may have any length
        if (spec.n - need >= pos) {
            for (int v = spec.n - need; v < spec.n; ++v) cur.push_back(v);
            facets.push_back(Simplex::sorted(cur));
            cur.resize(cur.size() - static_cast<std::size_t>(need));
        }
        // interior pair starting at p >= pos
        for (int p = pos; p + 1 < spec.n - 1 && need >= 2; ++p) {
            cur.push_back(p);
            cur.push_back(p + 1);
            self(self, p + 2);
            cur.resize(cur.size() - 2);
        }
    };
    // leading run starting at 0 of length k (k >= 0)
    for (int k = 0; k <= spec.d; ++k) {
        cur.clear();
        for (int v = 0; v < k; ++v) cur.push_back(v);
        if (k == spec.d) {
            facets.push_back(Simplex::sorted(cur));
            continue;
        }
        rec(rec, k + 1);
    }
    std::sort(facets.begin(), facets.end());
    facets.erase(std::unique(facets.begin(), facets.end()), facets.end());
    return SimplicialComplex::from_facets(std::move(facets), spec.n);
}

// ---- simple polytope models ----

inline SimplePolytopeModel simplex_model(int d) {
    require(d >= 1, "simplex_model: d must be >= 1");
    std::vector<VertexSet> facets;
    for (Node skip = 0; skip <= d; ++skip) {
        VertexSet f;
        for (Node v = 0; v <= d; ++v)
            if (v != skip) f.push_back(v);
        facets.push_back(std::move(f));
    }
    return SimplePolytopeModel::create(d, std::move(facets));
}

inline SimplePolytopeModel segment_model() { return SimplePolytopeModel::create(1, {{0}, {1}}); }

inline SimplePolytopeModel polygon_model(int n) {
    require(n >= 3, "polygon_model: need n >= 3");
    std::vector<VertexSet> facets;
    for (Node i = 0; i < n; ++i) facets.push_back({i, static_cast<Node>((i + 1) % n)});
    return SimplePolytopeModel::create(2, std::move(facets));
}

// Vertex (x, y) gets id x * |V2| + y, matching cartesian_product.
inline SimplePolytopeModel product_model(const SimplePolytopeModel& p1, const SimplePolytopeModel& p2) {
    const Node n2 = p2.vertex_count();
    std::vector<VertexSet> facets;
    for (const auto& f : p1.facets()) {
        VertexSet g;
        for (Node x : f)
            for (Node y = 0; y < n2; ++y) g.push_back(x * n2 + y);
        facets.push_back(std::move(g));
    }
    for (const auto& f : p2.facets()) {
        VertexSet g;
        for (Node x = 0; x < p1.vertex_count(); ++x)
            for (Node y : f) g.push_back(x * n2 + y);
        facets.push_back(std::move(g));
    }
    return SimplePolytopeModel::create(p1.dim() + p2.dim(), std::move(facets), ErrorKind::invariant);
}

/**
 * Wedge over facet F. Vertices of F keep one copy; every other vertex w gets a
 * top copy w_T and a bottom copy w_B, numbered in vertex order (w_T before
 * w_B). Facets: the top copy, the bottom copy, then the wedged facets over
 * every G != F in the original order.
 */
struct WedgeResult {
    SimplePolytopeModel model;
    std::vector<Node> top, bottom;  // per original vertex; equal for vertices of F
};

inline WedgeResult wedge_model_with_maps(const SimplePolytopeModel& p, std::size_t facet) {
    require(facet < p.facet_count(), "wedge_model: invalid facet index");
    const auto& f = p.facet(facet);
    std::vector<char> in_f(static_cast<std::size_t>(p.vertex_count()), 0);
    for (Node v : f) in_f[v] = 1;
    WedgeResult out;
    Node next = 0;
    for (Node v = 0; v < p.vertex_count(); ++v) {
        if (in_f[v]) {
            out.top.push_back(next);
            out.bottom.push_back(next++);
        } else {
            out.top.push_back(next++);
            out.bottom.push_back(next++);
        }
    }
    std::vector<VertexSet> facets;
    VertexSet top, bottom;
    for (Node v = 0; v < p.vertex_count(); ++v) {
        top.push_back(out.top[v]);
        bottom.push_back(out.bottom[v]);
    }
    facets.push_back(std::move(top));
    facets.push_back(std::move(bottom));
    for (std::size_t j = 0; j < p.facet_count(); ++j) {
        if (j == facet) continue;
        VertexSet g;
        for (Node v : p.facet(j)) {
            g.push_back(out.top[v]);
            if (!in_f[v]) g.push_back(out.bottom[v]);
        }
        facets.push_back(std::move(g));
    }
    out.model = SimplePolytopeModel::create(p.dim() + 1, std::move(facets), ErrorKind::invariant);
    return out;
}

inline SimplePolytopeModel wedge_model(const SimplePolytopeModel& p, std::size_t facet) {
    return wedge_model_with_maps(p, facet).model;
}

/**
 * Cuts off vertex v. With neighbors u_1 < ... < u_d, the new vertex v_i is
 * adjacent to u_i; v_1 reuses id v and v_2..v_d get ids n..n+d-2. Each old
 * facet through v keeps the v_i whose u_i it contains; the new facet is
 * {v_1..v_d} and comes last.
 */
inline SimplePolytopeModel truncate_vertex_model(const SimplePolytopeModel& p, Node v) {
    require(v >= 0 && v < p.vertex_count(), "truncate_vertex_model: invalid vertex");
    const auto& nbrs = p.graph().neighbors(v);
    const Node n = p.vertex_count();
    std::vector<Node> copy_id(nbrs.size());
    for (std::size_t i = 0; i < nbrs.size(); ++i) copy_id[i] = i == 0 ? v : n + static_cast<Node>(i) - 1;
    std::vector<VertexSet> facets;
    for (const auto& f : p.facets()) {
        if (!std::binary_search(f.begin(), f.end(), v)) {
            facets.push_back(f);
            continue;
        }
        VertexSet g;
        for (Node w : f)
            if (w != v) g.push_back(w);
        std::size_t kept = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            if (std::binary_search(f.begin(), f.end(), nbrs[i])) {
                g.push_back(copy_id[i]);
                ++kept;
            }
        if (static_cast<int>(kept) != p.dim() - 1)
            fail(ErrorKind::invariant, "truncate_vertex_model: facet through the vertex misses a neighbor count");
        facets.push_back(std::move(g));
    }
    facets.push_back(copy_id);
    return SimplePolytopeModel::create(p.dim(), std::move(facets), ErrorKind::invariant);
}

// Stacking: facet F (by index in the current canonical order) is replaced by
// the cone over its boundary from a fresh vertex.
inline SimplicialComplex stacked_boundary(int d, const std::vector<std::size_t>& stackings) {
    require(d >= 2, "stacked_boundary: d must be >= 2");
    auto k_cx = simplex_boundary(d);
    for (std::size_t idx : stackings) {
        require(idx < k_cx.facet_count(), "stacked_boundary: invalid facet index");
        k_cx = stellar_subdivide(k_cx, k_cx.facet(idx), k_cx.vertex_count());
    }
    return k_cx;
}

// ---- cube piles ----

struct PileSpec {
    int a = 1, b = 1, c = 1;  // extents along x, y, z

    Vertex id(int x, int y, int z) const { return static_cast<Vertex>((x * (b + 1) + y) * (c + 1) + z); }
    std::array<int, 3> coords(Vertex v) const {
        int z = v % (c + 1);
        int rest = v / (c + 1);
        return {rest / (b + 1), rest % (b + 1), z};
    }
    Vertex point_count() const { return static_cast<Vertex>((a + 1) * (b + 1) * (c + 1)); }
};

/**
 * Freudenthal triangulation: per unit cube with least corner p and per axis
 * permutation (lexicographic), the path p, p+e_i, p+e_i+e_j, p+(1,1,1).
 */
inline SimplicialComplex pile_triangulation(const PileSpec& s) {
    require(s.a >= 1 && s.b >= 1 && s.c >= 1, "pile_triangulation: extents must be >= 1");
    std::vector<Simplex> tets;
    std::array<int, 3> perm{0, 1, 2};
    for (int x = 0; x < s.a; ++x)
        for (int y = 0; y < s.b; ++y)
            for (int z = 0; z < s.c; ++z) {
                std::sort(perm.begin(), perm.end());
                do {
                    std::array<int, 3> p{x, y, z};
                    std::vector<Vertex> t{s.id(p[0], p[1], p[2])};
                    for (int axis : perm) {
                        ++p[axis];
                        t.push_back(s.id(p[0], p[1], p[2]));
                    }
                    tets.push_back(Simplex(std::move(t)));
                } while (std::next_permutation(perm.begin(), perm.end()));
            }
    return SimplicialComplex::from_facets(std::move(tets), s.point_count());
}

// Boundary subcomplex of a pure complex: its free ridges.
inline SimplicialComplex boundary_complex(const SimplicialComplex& k_cx) {
    std::vector<Simplex> ridges;
    for (auto& fr : free_ridges(k_cx)) ridges.push_back(fr.ridge);
    require(!ridges.empty(), "boundary_complex: no free ridges");
    return SimplicialComplex::from_facets(std::move(ridges), k_cx.vertex_count());
}

// Pile plus the cone over its boundary; the apex is the last vertex id.
inline SimplicialComplex sphere_from_pile(const PileSpec& s) {
    auto pile = pile_triangulation(s);
    auto cone = cone_over(boundary_complex(pile), s.point_count());
    auto facets = pile.facets();
    facets.insert(facets.end(), cone.facets().begin(), cone.facets().end());
    return SimplicialComplex::from_facets(std::move(facets), s.point_count() + 1);
}

}  // namespace perles
