#include <sstream>

#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "oracles.hpp"
#include "perles/polytope.hpp"

using namespace perles;

TEST_CASE("dual model of the simplex boundary", "[polytope]") {
    auto p = from_simplicial_boundary(corpus::simplex_boundary4());
    CHECK(p.dim() == 4);
    CHECK(p.vertex_count() == 5);
    CHECK(p.facet_count() == 5);
    CHECK(p.graph() == oracle::complete(5));
    auto sets = facet_subgraph_vertex_sets(p);
    REQUIRE(sets.size() == 5);
    for (const auto& s : sets) CHECK(s.size() == 4);
}

TEST_CASE("dual model of the octahedron is the cube", "[polytope]") {
    auto octa = corpus::octahedron();
    auto dual = dual_model(octa);
    const auto& p = dual.model;
    CHECK(p.dim() == 3);
    CHECK(p.vertex_count() == 8);
    CHECK(p.facet_count() == 6);
    CHECK(p.graph() == dual_graph(octa));
    CHECK(is_k_regular(p.graph(), 3).regular);
    // model facets are the vertex stars: facet j lists the triangles containing vertex j
    for (std::size_t j = 0; j < p.facet_count(); ++j)
        for (Node t : p.facet(j)) CHECK(octa.facet(static_cast<std::size_t>(t)).contains(dual.facet_vertex[j]));
    for (const auto& s : facet_subgraph_vertex_sets(p)) {
        auto sub = induced_subgraph(p.graph(), s);
        CHECK(sub.graph.node_count() == 4);
        CHECK(is_k_regular(sub.graph, 2).regular);
        CHECK(is_connected(sub.graph));
    }
}

TEST_CASE("dual model rejects non-closed complexes", "[polytope]") {
    CHECK_THROWS_AS(from_simplicial_boundary(corpus::two_triangles()), Error);
    CHECK_THROWS_AS(from_simplicial_boundary(corpus::two_tetrahedron_boundaries()), Error);
}

TEST_CASE("model validation", "[polytope]") {
    // square as a 2-polytope: edges are facets
    auto square = SimplePolytopeModel::create(2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
    CHECK(square.graph() == oracle::cycle(4));
    CHECK_THROWS_AS(SimplePolytopeModel::create(2, {{0, 1}, {1, 2}}), Error);
    CHECK_THROWS_AS(SimplePolytopeModel::create(2, {{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}}), Error);
    CHECK_THROWS_AS(SimplePolytopeModel::create(2, {}), Error);
}

TEST_CASE("primal and dual round trip", "[polytope][property]") {
    for (const auto& [name, k_cx] : corpus::complexes()) {
        if (!k_cx.is_pure() || k_cx.dim() < 1 || !is_closed_pseudomanifold(k_cx).closed) continue;
        INFO(name);
        auto dual = dual_model(k_cx);
        auto back = dual_boundary(dual.model);
        // relabel complex vertex facet_vertex[j] -> j and compare
        std::vector<Vertex> relabel(static_cast<std::size_t>(k_cx.vertex_count()), -1);
        for (std::size_t j = 0; j < dual.facet_vertex.size(); ++j) relabel[dual.facet_vertex[j]] = static_cast<Vertex>(j);
        std::vector<std::vector<Vertex>> faces;
        for (const auto& f : k_cx.facets()) {
            std::vector<Vertex> g;
            for (Vertex v : f) g.push_back(relabel[v]);
            faces.push_back(g);
        }
        CHECK(build_complex(faces) == back.complex);
        CHECK(dual_graph(back.complex).edge_count() == dual.model.graph().edge_count());
    }
}

TEST_CASE("model text round trip", "[polytope][io]") {
    auto p = from_simplicial_boundary(corpus::icosahedron());
    std::stringstream ss;
    write_model(ss, p);
    auto text = ss.str();
    std::istringstream in(text);
    auto q = read_model(in);
    CHECK(q.facets() == p.facets());
    std::ostringstream again;
    write_model(again, q);
    CHECK(again.str() == text);

    std::istringstream bad("dim 3\n0 1 2\n");
    CHECK_THROWS_AS(read_model(bad), Error);
    std::istringstream junk("d 2\n0 x\n");
    try {
        read_model(junk);
        FAIL("expected parse error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::parse);
    }
}
