#pragma once

#include <algorithm>
#include <array>
#include <chrono>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "perles/complex.hpp"
#include "perles/error.hpp"
#include "perles/generators.hpp"
#include "perles/graph.hpp"
#include "perles/homology.hpp"
#include "perles/perles.hpp"

namespace perles {

/**
 * A pure 2-dimensional subcomplex of a sphere with a partial vertex coloring.
 * Vertices added by subdivisions stay uncolored.
 */
struct ColoredSubcomplex {
    SimplicialComplex complex;
    std::map<Vertex, int> color;
};

/**
 * Bing's house with two rooms and without the two walls that usually make the
 * room interiors simply connected, inside the pile [0,a] x [0,b] x [0,c].
 * The x axis is vertical (a >= 2 layers):
 *
 *   x = a  roof        hole over y in [1,2], z in [2,3]   (top of upper chimney)
 *          upstairs    upper chimney: column y in [1,2], z in [2,3], x in [1,a]
 *   x = 1  mid floor   holes at z in [1,2] and z in [2,3] (both y in [1,2])
 *          downstairs  lower chimney: cell y in [1,2], z in [1,2], x in [0,1]
 *   x = 0  floor       hole under y in [1,2], z in [1,2]  (bottom of lower chimney)
 *
 * The side walls are the pile's side faces. The downstairs room reaches the
 * outside through the upper chimney and the upstairs room through the lower
 * one. Every unit square is split along its Freudenthal diagonal.
 */
struct BingSquare {
    std::array<int, 3> corner;  // least corner
    int axis_i, axis_j;         // spanning axes, axis_i < axis_j
    enum Part { shell, mid_floor, upper_chimney, lower_chimney } part;
};

struct BingTable {
    PileSpec spec;
    std::vector<BingSquare> squares;
    std::array<int, 3> upper_cell{1, 1, 2};  // designated chimney cells
    std::array<int, 3> lower_cell{0, 1, 1};
};

inline BingTable bing_table(const PileSpec& s) {
    require(s.a >= 2 && s.b >= 3 && s.c >= 4, "embed_bing_house: pile extents must be at least (2,3,4)");
    BingTable t;
    t.spec = s;
    const std::array<int, 3> ext{s.a, s.b, s.c};
    auto add = [&](std::array<int, 3> p, int i, int j, BingSquare::Part part) {
        t.squares.push_back({p, i, j, part});
    };
    // pile boundary, minus the bottom and roof holes
    for (int normal = 0; normal < 3; ++normal) {
        int i = normal == 0 ? 1 : 0, j = normal == 2 ? 1 : 2;
        for (int level : {0, ext[normal]})
            for (int u = 0; u < ext[i]; ++u)
                for (int w = 0; w < ext[j]; ++w) {
                    std::array<int, 3> p{};
                    p[normal] = level;
                    p[i] = u;
                    p[j] = w;
                    if (normal == 0 && level == 0 && u == 1 && w == 1) continue;
                    if (normal == 0 && level == s.a && u == 1 && w == 2) continue;
                    add(p, i, j, BingSquare::shell);
                }
    }
    for (int y = 0; y < s.b; ++y)
        for (int z = 0; z < s.c; ++z)
            if (!(y == 1 && (z == 1 || z == 2))) add({1, y, z}, 1, 2, BingSquare::mid_floor);
    for (int x = 1; x < s.a; ++x) {
        add({x, 1, 2}, 0, 2, BingSquare::upper_chimney);
        add({x, 2, 2}, 0, 2, BingSquare::upper_chimney);
        add({x, 1, 2}, 0, 1, BingSquare::upper_chimney);
        add({x, 1, 3}, 0, 1, BingSquare::upper_chimney);
    }
    add({0, 1, 1}, 0, 2, BingSquare::lower_chimney);
    add({0, 2, 1}, 0, 2, BingSquare::lower_chimney);
    add({0, 1, 1}, 0, 1, BingSquare::lower_chimney);
    add({0, 1, 2}, 0, 1, BingSquare::lower_chimney);
    return t;
}

inline int lattice_color(const PileSpec& s, Vertex v) {
    auto p = s.coords(v);
    return (p[0] + p[1] + p[2]) % 3;
}

// Triangles of a square: {p, p+e_i, p+e_i+e_j} and {p, p+e_j, p+e_i+e_j}.
inline std::array<Simplex, 2> square_triangles(const PileSpec& s, const BingSquare& q) {
    auto at = [&](int di, int dj) {
        auto p = q.corner;
        p[q.axis_i] += di;
        p[q.axis_j] += dj;
        return s.id(p[0], p[1], p[2]);
    };
    return {Simplex{at(0, 0), at(1, 0), at(1, 1)}, Simplex{at(0, 0), at(0, 1), at(1, 1)}};
}

inline ColoredSubcomplex embed_bing_house(const PileSpec& s) {
    auto table = bing_table(s);
    auto pile = pile_triangulation(s);
    std::vector<Simplex> triangles;
    ColoredSubcomplex b;
    for (const auto& q : table.squares)
        for (auto& t : square_triangles(s, q)) {
            if (!pile.contains(t)) fail(ErrorKind::invariant, "embed_bing_house: triangle not in the pile");
            for (Vertex v : t) b.color[v] = lattice_color(s, v);
            triangles.push_back(t);
        }
    b.complex = SimplicialComplex::from_facets(std::move(triangles), pile.vertex_count());
    return b;
}

struct BingCheck {
    bool pure_2d = false;
    bool edge_degrees_2_or_3 = false;
    std::optional<Simplex> bad_edge;
    bool no_monochromatic_edge = false;
    std::optional<Simplex> monochromatic_edge;
    HomologyProfile homology;
    bool betti2_zero = false;
    bool h1_torsion_free = false;

    bool all() const {
        return pure_2d && edge_degrees_2_or_3 && no_monochromatic_edge && betti2_zero && h1_torsion_free;
    }
};

inline BingCheck check_bing(const ColoredSubcomplex& b) {
    BingCheck r;
    r.pure_2d = !b.complex.empty() && b.complex.is_pure() && b.complex.dim() == 2;
    if (!r.pure_2d) return r;
    r.edge_degrees_2_or_3 = true;
    for (const auto& [edge, ids] : ridge_incidence(b.complex))
        if (ids.size() != 2 && ids.size() != 3) {
            r.edge_degrees_2_or_3 = false;
            r.bad_edge = edge;
            break;
        }
    r.no_monochromatic_edge = true;
    for (const auto& e : k_faces(b.complex, 1)) {
        auto c0 = b.color.find(e[0]), c1 = b.color.find(e[1]);
        if (c0 != b.color.end() && c1 != b.color.end() && c0->second == c1->second) {
            r.no_monochromatic_edge = false;
            r.monochromatic_edge = e;
            break;
        }
    }
    r.homology = homology_profile(b.complex);
    r.betti2_zero = r.homology.betti.size() < 3 || r.homology.betti[2] == 0;
    r.h1_torsion_free = r.homology.torsion.size() < 2 || r.homology.torsion[1].empty();
    return r;
}

// ---- chimney subdivisions ----

struct ChimneyResult {
    SimplicialComplex sphere;
    ColoredSubcomplex b;
    std::vector<Simplex> subdivided_edges;  // in pipeline order
    std::vector<Vertex> new_vertices;
    std::vector<Simplex> separation_edges;  // sorted
    SimplicialComplex membrane;             // sphere triangles through a separation edge, not in B
};

namespace detail {

/**
 * Vertical edges of a chimney cell whose (bottom, top) colors match; the
 * vertical axis is x.
 */
inline std::vector<Simplex> chimney_edges(const ColoredSubcomplex& b, const PileSpec& s, std::array<int, 3> cell,
                                          int bottom_color, int top_color) {
    std::vector<Simplex> out;
    for (int dy : {0, 1})
        for (int dz : {0, 1}) {
            Vertex lo = s.id(cell[0], cell[1] + dy, cell[2] + dz);
            Vertex hi = s.id(cell[0] + 1, cell[1] + dy, cell[2] + dz);
            Simplex e{lo, hi};
            if (!b.complex.contains(e)) continue;
            if (b.color.at(lo) == bottom_color && b.color.at(hi) == top_color) out.push_back(e);
        }
    return out;
}

}  // namespace detail

/**
 * Upper chimney: the two vertical edges colored 0 over 2; lower chimney: the
 * two colored 1 over 0. Each gets a new uncolored vertex m; the B-edges from m
 * to the link of the old edge in B mark the inside/outside boundary.
 */
inline ChimneyResult subdivide_chimneys(const SimplicialComplex& sphere, const ColoredSubcomplex& b,
                                        const PileSpec& s) {
    auto table = bing_table(s);
    ChimneyResult r{sphere, b, {}, {}, {}, {}};
    auto upper = detail::chimney_edges(b, s, table.upper_cell, 2, 0);
    auto lower = detail::chimney_edges(b, s, table.lower_cell, 0, 1);
    if (upper.size() != 2 || lower.size() != 2)
        fail(ErrorKind::stage, "subdivide_chimneys: expected two designated edges per chimney, found " +
                                   std::to_string(upper.size()) + " and " + std::to_string(lower.size()));
    std::vector<Simplex> edges = upper;
    edges.insert(edges.end(), lower.begin(), lower.end());
    for (const auto& e : edges) {
        Vertex m = r.sphere.vertex_count();
        auto opposite = link(r.b.complex, e);
        for (const auto& f : opposite.facets()) r.separation_edges.push_back(Simplex{f[0], m});
        r.sphere = stellar_subdivide(r.sphere, e, m);
        r.b.complex = stellar_subdivide(r.b.complex, e, m);
        r.subdivided_edges.push_back(e);
        r.new_vertices.push_back(m);
    }
    std::sort(r.separation_edges.begin(), r.separation_edges.end());
    std::set<Simplex> membrane;
    for (const auto& e : r.separation_edges)
        for (std::size_t i : r.sphere.facets_containing(e))
            for (auto& t : r.sphere.facet(i).boundary_faces())
                if (e.is_subset_of(t) && !r.b.complex.facet_index(t)) membrane.insert(t);
    r.membrane = SimplicialComplex::from_facets({membrane.begin(), membrane.end()}, r.sphere.vertex_count());
    return r;
}

// ---- making B induced ----

struct InducedResult {
    SimplicialComplex sphere;
    ColoredSubcomplex b;
    SimplicialComplex membrane;  // carried through every subdivision
    std::size_t non_face_subdivisions = 0;
    std::size_t color_subdivisions = 0;
};

namespace detail {

inline std::vector<char> membership(const SimplicialComplex& b, Vertex n) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (Vertex v : b.vertices()) in[v] = 1;
    return in;
}

// Least minimal non-face of B among faces of the sphere, by dimension then lexicographically.
inline std::optional<Simplex> least_minimal_non_face(const SimplicialComplex& sphere, const SimplicialComplex& b) {
    auto in_b = membership(b, sphere.vertex_count());
    for (int k = 1; k <= sphere.dim(); ++k) {
        std::set<Simplex> seen;
        for (const auto& f : sphere.facets()) {
            std::vector<Vertex> bv;
            for (Vertex v : f)
                if (in_b[v]) bv.push_back(v);
            if (static_cast<int>(bv.size()) < k + 1) continue;
            std::vector<Simplex> subs;
            subsets_of_size(Simplex::sorted(bv), static_cast<std::size_t>(k + 1), subs);
            for (auto& sub : subs) seen.insert(std::move(sub));
        }
        for (const auto& sigma : seen) {
            if (b.contains(sigma)) continue;
            bool proper_in_b = true;
            for (auto& r : sigma.boundary_faces()) proper_in_b &= b.contains(r);
            if (proper_in_b) return sigma;
        }
    }
    return std::nullopt;
}

// Least edge {w, v} with w outside B adjacent to two colored B-vertices of v's color (v the smaller one).
inline std::optional<Simplex> least_color_conflict(const SimplicialComplex& sphere, const ColoredSubcomplex& b) {
    auto in_b = membership(b.complex, sphere.vertex_count());
    std::optional<Simplex> best;
    for (Vertex w : sphere.vertices()) {
        if (in_b[w]) continue;
        std::array<std::vector<Vertex>, 3> by_color;
        std::set<Vertex> nbrs;
        for (std::size_t i : sphere.facets_containing(w))
            for (Vertex v : sphere.facet(i)) nbrs.insert(v);
        for (Vertex v : nbrs) {
            if (!in_b[v]) continue;
            auto c = b.color.find(v);
            if (c != b.color.end()) by_color[c->second].push_back(v);
        }
        for (auto& group : by_color)
            if (group.size() >= 2) {
                Simplex e{w, group.front()};
                if (!best || e < *best) best = e;
            }
    }
    return best;
}

}  // namespace detail

/**
 * (a) Stellar subdivisions of minimal non-faces of B until B is induced;
 * (b) while an outside vertex w sees two B-vertices of one color, subdivide
 * the least such edge {w, v}. New vertices are never in B. The membrane is
 * subdivided along with the sphere so that it keeps separating the chimneys.
 */
inline InducedResult make_induced(const SimplicialComplex& sphere, const ColoredSubcomplex& b,
                                  const SimplicialComplex& membrane, std::size_t iteration_cap = 100000) {
    InducedResult r{sphere, b, membrane, 0, 0};
    auto step = [&](const Simplex& face) {
        Vertex m = r.sphere.vertex_count();
        r.sphere = stellar_subdivide(r.sphere, face, m);
        r.b.complex = SimplicialComplex::from_facets(r.b.complex.facets(), r.sphere.vertex_count());
        if (!r.membrane.empty() && r.membrane.contains(face))
            r.membrane = stellar_subdivide(r.membrane, face, m);
    };
    while (auto face = detail::least_minimal_non_face(r.sphere, r.b.complex)) {
        if (++r.non_face_subdivisions > iteration_cap) fail(ErrorKind::stage, "make_induced: iteration cap exceeded");
        step(*face);
    }
    while (auto edge = detail::least_color_conflict(r.sphere, r.b)) {
        if (++r.color_subdivisions > iteration_cap) fail(ErrorKind::stage, "make_induced: iteration cap exceeded");
        step(*edge);
    }
    return r;
}

// ---- regions and Gamma ----

enum class Region { outside = 0, upstairs = 1, downstairs = 2 };

inline const char* to_string(Region r) {
    switch (r) {
        case Region::outside: return "outside";
        case Region::upstairs: return "upstairs";
        case Region::downstairs: return "downstairs";
    }
    return "?";
}

struct RegionLabeling {
    std::vector<Region> region;  // per sphere facet
    std::array<std::size_t, 3> sizes{};
};

/**
 * Flood fill over the sphere's facets, cut across triangles of B and of the
 * membrane (triangles through a separation edge when the chimneys were
 * subdivided, as refined by later subdivisions). The component with the cone apex is
 * outside; of the other two, the one with larger mean height (x coordinate of
 * its lattice vertices) is upstairs.
 */
inline RegionLabeling classify_regions(const SimplicialComplex& sphere, const SimplicialComplex& b,
                                       const SimplicialComplex& membrane, const PileSpec& s, Vertex apex) {
    auto cut = [&](const Simplex& t) { return b.facet_index(t) || membrane.facet_index(t); };
    Graph g(static_cast<Node>(sphere.facet_count()));
    for (const auto& [ridge, ids] : ridge_incidence(sphere))
        if (ids.size() == 2 && !cut(ridge)) g.add_edge(static_cast<Node>(ids[0]), static_cast<Node>(ids[1]));
    auto comps = connected_components(g);
    if (comps.size() != 3)
        fail(ErrorKind::stage, "classify_regions: expected 3 regions, found " + std::to_string(comps.size()));
    RegionLabeling out;
    out.region.assign(sphere.facet_count(), Region::outside);
    std::optional<std::size_t> outside;
    std::vector<double> mean_height(3, 0);
    for (std::size_t c = 0; c < 3; ++c) {
        double sum = 0;
        long long count = 0;
        for (Node f : comps[c]) {
            const auto& facet = sphere.facet(static_cast<std::size_t>(f));
            if (facet.contains(apex)) {
                if (outside && *outside != c) fail(ErrorKind::stage, "classify_regions: apex in two regions");
                outside = c;
            }
            for (Vertex v : facet)
                if (v < s.point_count()) {
                    sum += s.coords(v)[0];
                    ++count;
                }
        }
        mean_height[c] = count ? sum / static_cast<double>(count) : 0;
    }
    if (!outside) fail(ErrorKind::stage, "classify_regions: no region contains the apex");
    std::vector<std::size_t> rooms;
    for (std::size_t c = 0; c < 3; ++c)
        if (c != *outside) rooms.push_back(c);
    if (mean_height[rooms[0]] < mean_height[rooms[1]]) std::swap(rooms[0], rooms[1]);
    for (Node f : comps[*outside]) out.region[f] = Region::outside;
    for (Node f : comps[rooms[0]]) out.region[f] = Region::upstairs;
    for (Node f : comps[rooms[1]]) out.region[f] = Region::downstairs;
    for (auto r : out.region) out.sizes[static_cast<int>(r)]++;
    return out;
}

/**
 * Gamma is the union of partial vertex stars: a facet in region c belongs to
 * the star piece of its B-vertex of color c (0 outside, 1 upstairs,
 * 2 downstairs), if it has one.
 */
inline SimplicialComplex assemble_gamma(const SimplicialComplex& sphere, const ColoredSubcomplex& b,
                                        const RegionLabeling& regions) {
    auto in_b = detail::membership(b.complex, sphere.vertex_count());
    std::vector<std::size_t> ids;
    for (std::size_t i = 0; i < sphere.facet_count(); ++i) {
        int want = static_cast<int>(regions.region[i]);
        int owners = 0;
        for (Vertex v : sphere.facet(i)) {
            if (!in_b[v]) continue;
            auto c = b.color.find(v);
            if (c != b.color.end() && c->second == want) ++owners;
        }
        if (owners > 1) {
            std::ostringstream msg;
            msg << "assemble_gamma: facet " << sphere.facet(i) << " claimed by " << owners << " partial stars";
            fail(ErrorKind::stage, msg.str());
        }
        if (owners == 1) ids.push_back(i);
    }
    if (ids.empty()) fail(ErrorKind::stage, "assemble_gamma: Gamma is empty");
    return induced_pure_subcomplex(sphere, ids);
}

// ---- certificate ----

struct CertificateCheck {
    std::string name;
    bool pass = false;
    std::string witness;  // empty when passing
};

struct Certificate {
    std::size_t sphere_vertices = 0, sphere_facets = 0;
    std::size_t gamma_facets = 0, core_triangles = 0, gb_star_nodes = 0, gb_star_edges = 0;
    int gamma_dual_connectivity = 0;
    std::optional<bool> h_planar;  // recorded only, never asserted
    HomologyProfile sphere_homology, core_homology;
    std::vector<CertificateCheck> checks;
    double elapsed_ms = 0;  // reported in the timing header only

    bool counterexample() const {
        return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
    }
    const CertificateCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

namespace detail {

template <typename T>
std::string show(const T& x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

inline bool is_planar(const Graph& g) {
    using BGraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
    BGraph bg(static_cast<std::size_t>(g.node_count()));
    for (auto [u, v] : g.edges()) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), bg);
    return boost::boyer_myrvold_planarity_test(bg);
}

}  // namespace detail

/**
 * Auxiliary graph on core triangles: tau_1 ~ tau_2 when they share an edge rho
 * and some Gamma-facets through tau_1 and tau_2 are joined by a dual path
 * inside star(rho; Gamma).
 */
inline Graph gb_star_graph(const SimplicialComplex& gamma, const SimplicialComplex& core) {
    Graph g(static_cast<Node>(core.facet_count()));
    for (const auto& [rho, tris] : ridge_incidence(core)) {
        // facets of Gamma through rho, joined across triangles through rho
        auto around = gamma.facets_containing(rho);
        std::map<std::size_t, Node> local;
        for (std::size_t i = 0; i < around.size(); ++i) local[around[i]] = static_cast<Node>(i);
        Graph star_graph(static_cast<Node>(around.size()));
        for (std::size_t i = 0; i < around.size(); ++i)
            for (std::size_t j = i + 1; j < around.size(); ++j)
                if (gamma.facet(around[i]).intersection(gamma.facet(around[j])).size() == rho.size() + 1)
                    star_graph.add_edge(static_cast<Node>(i), static_cast<Node>(j));
        std::vector<int> comp(around.size(), -1);
        auto comps = connected_components(star_graph);
        for (std::size_t c = 0; c < comps.size(); ++c)
            for (Node x : comps[c]) comp[x] = static_cast<int>(c);
        std::vector<std::set<int>> reach(tris.size());
        for (std::size_t t = 0; t < tris.size(); ++t)
            for (std::size_t i = 0; i < around.size(); ++i)
                if (core.facet(tris[t]).is_subset_of(gamma.facet(around[i]))) reach[t].insert(comp[i]);
        for (std::size_t t = 0; t < tris.size(); ++t)
            for (std::size_t u = t + 1; u < tris.size(); ++u) {
                bool joined = std::any_of(reach[t].begin(), reach[t].end(), [&](int c) { return reach[u].count(c); });
                if (joined) g.add_edge(static_cast<Node>(tris[t]), static_cast<Node>(tris[u]));
            }
    }
    return g;
}

/**
 * Checks a candidate (sphere, Gamma) pair from the facet lists alone. Failed
 * checks carry a witness; the order of checks is fixed.
 */
inline Certificate verify_certificate(const SimplicialComplex& sphere, const SimplicialComplex& gamma) {
    auto started = std::chrono::steady_clock::now();
    Certificate cert;
    auto add = [&](const std::string& name, bool pass, std::string witness = {}) {
        cert.checks.push_back({name, pass, pass ? std::string{} : std::move(witness)});
        return pass;
    };
    cert.sphere_vertices = sphere.vertices().size();
    cert.sphere_facets = sphere.facet_count();
    cert.gamma_facets = gamma.facet_count();

    auto closed = is_closed_pseudomanifold(sphere);
    if (!add("sphere_closed_pseudomanifold", closed.closed && sphere.dim() == 3,
             closed.bad_ridge ? detail::show(*closed.bad_ridge) : "dimension or dual connectivity"))
        return cert;
    cert.sphere_homology = homology_profile(sphere);
    add("sphere_homology",
        cert.sphere_homology.betti == std::vector<long long>{1, 0, 0, 1} && cert.sphere_homology.torsion_free(),
        detail::show(cert.sphere_homology));
    bool pure = !gamma.empty() && gamma.is_pure() && gamma.dim() == 3;
    bool inside = true;
    std::string outside_witness;
    for (const auto& f : gamma.facets())
        if (!sphere.facet_index(f)) {
            inside = false;
            outside_witness = detail::show(f);
            break;
        }
    add("gamma_pure_3d", pure && inside, pure ? "facet not in sphere " + outside_witness : "not pure of dimension 3");
    if (!pure || !inside) return cert;

    auto dual = dual_graph(gamma);
    add("gamma_dually_connected", is_connected(dual), std::to_string(connected_components(dual).size()) + " components");

    auto incidence = ridge_incidence(gamma);
    std::string two_free;
    for (const auto& f : gamma.facets()) {
        int free = 0;
        for (auto& r : f.boundary_faces()) free += incidence[r].size() == 1 ? 1 : 0;
        if (free != 1) {
            two_free = detail::show(f) + " has " + std::to_string(free) + " free triangles";
            break;
        }
    }
    bool one_free = add("one_free_triangle_per_facet", two_free.empty(), two_free);

    add("non_separating", complement_connected(sphere, gamma), "complement of Gamma is disconnected");
    auto star_vertex = vertex_star_of(sphere, gamma);
    add("not_a_vertex_star", !star_vertex, star_vertex ? "star of vertex " + std::to_string(*star_vertex) : "");

    cert.gamma_dual_connectivity = dual.node_count() >= 2 ? vertex_connectivity(dual) : 0;
    bool dual3 = add("dually_3_connected", cert.gamma_dual_connectivity >= 3,
                     "vertex connectivity " + std::to_string(cert.gamma_dual_connectivity));
    if (dual.node_count() >= 4) {
        auto naatz = naatz_k_connected(dual, 3);
        add("naatz_agrees", naatz.k_connected == dual3,
            naatz.witness ? "pair " + std::to_string(naatz.witness->first) + "," + std::to_string(naatz.witness->second)
                          : "disagreement");
    } else {
        add("naatz_agrees", false, "fewer than 4 facets");
    }
    cert.h_planar = detail::is_planar(dual);

    if (!one_free) return cert;
    auto core = compute_core(sphere, gamma);
    cert.core_triangles = core.triangles.facet_count();
    bool nonempty = add("core_nonempty", !core.triangles.empty(), "empty core");
    if (!nonempty) return cert;
    auto free = free_ridges(core.triangles);
    add("core_no_free_edge", free.empty(), free.empty() ? "" : detail::show(free.front().ridge));
    cert.core_homology = homology_profile(core.triangles);
    bool h2_zero = cert.core_homology.betti.size() < 3 || cert.core_homology.betti[2] == 0;
    add("core_h2_zero", h2_zero, "betti_2 = " + std::to_string(cert.core_homology.betti.back()));
    add("core_dually_connected", is_connected(dual_graph(core.triangles)), "core dual graph disconnected");

    auto gb = gb_star_graph(gamma, core.triangles);
    cert.gb_star_nodes = static_cast<std::size_t>(gb.node_count());
    cert.gb_star_edges = gb.edge_count();
    int gb_conn = gb.node_count() >= 2 ? vertex_connectivity(gb) : 0;
    bool gb3 = add("gb_star_3_connected", gb_conn >= 3, "vertex connectivity " + std::to_string(gb_conn));
    std::string local_witness;
    for (Vertex v : core.triangles.vertices()) {
        auto ids = core.triangles.facets_containing(v);
        std::vector<Node> nodes(ids.begin(), ids.end());
        auto sub = induced_subgraph(gb, nodes);
        if (sub.graph.node_count() < 3 || vertex_connectivity(sub.graph) < 2) {
            local_witness = "vertex " + std::to_string(v);
            break;
        }
    }
    bool local2 = add("gb_star_locally_2_connected", local_witness.empty(), local_witness);
    add("connectivity_consistent", !(gb3 && local2) || dual3, "G_B* and local checks pass but Gamma is not 3-connected");
    cert.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return cert;
}

// ---- full pipeline ----

struct StageSizes {
    std::string stage;
    std::size_t vertices = 0, facets = 0;
};

struct Counterexample {
    PileSpec spec;
    SimplicialComplex sphere;  // P^Delta
    SimplicialComplex gamma;
    ColoredSubcomplex b;       // B'' inside P^Delta
    std::vector<Simplex> separation_edges;
    SimplicialComplex membrane;
    RegionLabeling regions;
    BingCheck bing;
    std::size_t non_face_subdivisions = 0, color_subdivisions = 0;
    std::vector<StageSizes> stages;
    Certificate certificate;
};

namespace detail {

template <typename F>
auto run_stage(const std::string& name, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        throw Error(ErrorKind::stage, "stage " + name + ": " + e.what());
    }
}

}  // namespace detail

inline Counterexample build_counterexample(const PileSpec& spec = {2, 3, 4}) {
    Counterexample out;
    out.spec = spec;
    auto sphere = detail::run_stage("sphere", [&] { return sphere_from_pile(spec); });
    const Vertex apex = spec.point_count();
    out.stages.push_back({"sphere", sphere.vertices().size(), sphere.facet_count()});
    auto b = detail::run_stage("embed", [&] { return embed_bing_house(spec); });
    out.bing = check_bing(b);
    if (!out.bing.all()) fail(ErrorKind::stage, "stage embed: B violates its invariants");
    auto chim = detail::run_stage("chimneys", [&] { return subdivide_chimneys(sphere, b, spec); });
    out.stages.push_back({"chimneys", chim.sphere.vertices().size(), chim.sphere.facet_count()});
    auto ind = detail::run_stage("induce", [&] { return make_induced(chim.sphere, chim.b, chim.membrane); });
    out.non_face_subdivisions = ind.non_face_subdivisions;
    out.color_subdivisions = ind.color_subdivisions;
    out.stages.push_back({"induce", ind.sphere.vertices().size(), ind.sphere.facet_count()});
    out.sphere = std::move(ind.sphere);
    out.b = std::move(ind.b);
    out.separation_edges = chim.separation_edges;
    out.membrane = std::move(ind.membrane);
    out.regions = detail::run_stage("regions", [&] {
        return classify_regions(out.sphere, out.b.complex, out.membrane, spec, apex);
    });
    out.gamma = detail::run_stage("gamma", [&] { return assemble_gamma(out.sphere, out.b, out.regions); });
    out.stages.push_back({"gamma", out.gamma.vertices().size(), out.gamma.facet_count()});
    out.certificate = verify_certificate(out.sphere, out.gamma);
    return out;
}

}  // namespace perles
