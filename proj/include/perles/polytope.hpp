#pragma once

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "perles/complex.hpp"
#include "perles/error.hpp"
#include "perles/graph.hpp"

namespace perles {

using VertexSet = std::vector<Node>;  // sorted, duplicate-free

/**
 * Combinatorial model of a simple d-polytope: the vertex sets of its facets.
 * Two vertices are adjacent iff they share exactly d-1 facets; the resulting
 * graph must be d-regular and connected.
 */
class SimplePolytopeModel {
  public:
    SimplePolytopeModel() = default;

    // Validates simplicity and the derived graph; throws with `kind` on failure.
    static SimplePolytopeModel create(int d, std::vector<VertexSet> facets,
                                      ErrorKind kind = ErrorKind::precondition) {
        SimplePolytopeModel p;
        p.d_ = d;
        if (d < 1) fail(kind, "model: dimension must be >= 1");
        if (facets.empty()) fail(kind, "model: no facets");
        Node max_id = -1;
        for (auto& f : facets) {
            std::sort(f.begin(), f.end());
            if (f.empty()) fail(kind, "model: empty facet");
            if (std::adjacent_find(f.begin(), f.end()) != f.end()) fail(kind, "model: repeated vertex in facet");
            if (f.front() < 0) fail(kind, "model: negative vertex id");
            max_id = std::max(max_id, f.back());
        }
        p.facets_ = std::move(facets);
        p.vertex_facets_.assign(static_cast<std::size_t>(max_id + 1), {});
        for (std::size_t i = 0; i < p.facets_.size(); ++i)
            for (Node v : p.facets_[i]) p.vertex_facets_[v].push_back(static_cast<Node>(i));
        for (Node v = 0; v <= max_id; ++v)
            if (static_cast<int>(p.vertex_facets_[v].size()) != d)
                fail(kind, "model: vertex " + std::to_string(v) + " lies in " +
                               std::to_string(p.vertex_facets_[v].size()) + " facets, expected " +
                               std::to_string(d));
        p.build_graph();
        auto regular = is_k_regular(p.graph_, d);
        if (!regular.regular)
            fail(kind, "model: graph not " + std::to_string(d) + "-regular at vertex " +
                           std::to_string(*regular.witness));
        if (!is_connected(p.graph_)) fail(kind, "model: graph is disconnected");
        return p;
    }

    int dim() const { return d_; }
    Node vertex_count() const { return static_cast<Node>(vertex_facets_.size()); }
    std::size_t facet_count() const { return facets_.size(); }
    const std::vector<VertexSet>& facets() const { return facets_; }
    const VertexSet& facet(std::size_t i) const { return facets_[i]; }
    const std::vector<Node>& facets_of(Node v) const { return vertex_facets_[v]; }
    const Graph& graph() const { return graph_; }

  private:
    void build_graph() {
        graph_ = Graph(vertex_count());
        // a segment's two vertices share no facet
        if (d_ == 1) {
            for (Node v = 0; v < vertex_count(); ++v)
                for (Node w = v + 1; w < vertex_count(); ++w) graph_.add_edge(v, w);
            return;
        }
        std::vector<int> shared(static_cast<std::size_t>(vertex_count()), 0);
        for (Node v = 0; v < vertex_count(); ++v) {
            std::vector<Node> touched;
            for (Node f : vertex_facets_[v])
                for (Node w : facets_[f])
                    if (w > v) {
                        if (shared[w]++ == 0) touched.push_back(w);
                    }
            for (Node w : touched) {
                if (shared[w] == d_ - 1) graph_.add_edge(v, w);
                shared[w] = 0;
            }
        }
    }

    int d_ = 0;
    std::vector<VertexSet> facets_;
    std::vector<std::vector<Node>> vertex_facets_;
    Graph graph_;
};

/**
 * Polar dual of a simplicial sphere as a simple polytope model. Model vertex i
 * is facet i of the complex; the model facets are the vertex stars, listed in
 * increasing order of the complex vertex they come from.
 */
struct DualModel {
    SimplePolytopeModel model;
    std::vector<Vertex> facet_vertex;  // model facet j <-> complex vertex facet_vertex[j]
};

inline DualModel dual_model(const SimplicialComplex& boundary) {
    require(!boundary.empty() && boundary.is_pure() && boundary.dim() >= 1,
            "from_simplicial_boundary: need a pure complex of dimension >= 1");
    auto closed = is_closed_pseudomanifold(boundary);
    require(closed.closed, "from_simplicial_boundary: complex is not a closed pseudomanifold");
    DualModel out;
    std::vector<VertexSet> facets;
    for (Vertex v : boundary.vertices()) {
        const auto& ids = boundary.facets_containing(v);
        facets.emplace_back(ids.begin(), ids.end());
        out.facet_vertex.push_back(v);
    }
    out.model = SimplePolytopeModel::create(boundary.dim() + 1, std::move(facets));
    return out;
}

inline SimplePolytopeModel from_simplicial_boundary(const SimplicialComplex& boundary) {
    return dual_model(boundary).model;
}

/**
 * Simplicial boundary of the polar dual: complex vertex j is model facet j,
 * and model vertex v becomes the facet {facets containing v}. The complex's
 * canonical facet order need not follow model vertex order; facet_of_vertex
 * records the correspondence.
 */
struct DualBoundary {
    SimplicialComplex complex;
    std::vector<std::size_t> facet_of_vertex;  // model vertex v <-> complex facet
};

inline DualBoundary dual_boundary(const SimplePolytopeModel& p) {
    std::vector<Simplex> faces;
    for (Node v = 0; v < p.vertex_count(); ++v) {
        const auto& fs = p.facets_of(v);
        faces.push_back(Simplex::sorted(std::vector<Vertex>(fs.begin(), fs.end())));
    }
    DualBoundary out;
    out.complex = SimplicialComplex::from_facets(faces, static_cast<Vertex>(p.facet_count()));
    require(out.complex.facet_count() == static_cast<std::size_t>(p.vertex_count()),
            "to_simplicial_boundary: two vertices share the same facet set");
    for (const auto& f : faces) out.facet_of_vertex.push_back(*out.complex.facet_index(f));
    return out;
}

inline SimplicialComplex to_simplicial_boundary(const SimplePolytopeModel& p) {
    return dual_boundary(p).complex;
}

// Facet vertex sets, sorted.
inline std::vector<VertexSet> facet_subgraph_vertex_sets(const SimplePolytopeModel& p) {
    auto out = p.facets();
    std::sort(out.begin(), out.end());
    return out;
}

// ---- model text format: "d <d>" then one facet vertex set per line ----

inline void write_model(std::ostream& os, const SimplePolytopeModel& p) {
    os << "d " << p.dim() << '\n';
    for (const auto& f : p.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i];
        os << '\n';
    }
}

inline SimplePolytopeModel read_model(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(ErrorKind::parse, "model: missing header");
    std::istringstream header(line);
    std::string kw;
    int d = 0;
    if (!(header >> kw >> d) || kw != "d") fail(ErrorKind::parse, "model: bad header '" + line + "'");
    std::vector<VertexSet> facets;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        VertexSet f;
        long long x;
        while (row >> x) {
            if (x < 0) fail(ErrorKind::parse, "model: negative vertex id");
            f.push_back(static_cast<Node>(x));
        }
        if (!row.eof()) fail(ErrorKind::parse, "model: non-integer token");
        facets.push_back(std::move(f));
    }
    return SimplePolytopeModel::create(d, std::move(facets));
}

}  // namespace perles
