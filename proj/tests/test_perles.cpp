#include <random>

#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "perles/perles.hpp"

using namespace perles;

namespace {

std::vector<VertexSet> sets_of(const std::vector<PerlesCandidate>& cs) {
    std::vector<VertexSet> out;
    for (const auto& c : cs) out.push_back(c.vertex_set);
    return out;
}

// Closed pseudomanifolds with small duals: corpus spheres and surfaces plus
// random stellar subdivisions of facets (vertex truncations on the primal side).
std::vector<std::pair<std::string, SimplicialComplex>> small_spheres() {
    std::vector<std::pair<std::string, SimplicialComplex>> out;
    for (auto& [name, k_cx] : corpus::complexes())
        if (k_cx.is_pure() && k_cx.dim() >= 1 && is_closed_pseudomanifold(k_cx).closed) out.emplace_back(name, k_cx);
    std::mt19937_64 rng(7);
    for (int base : {2, 3}) {
        auto k_cx = corpus::simplex_boundary_on(base + 1);
        for (int step = 0; step < 4; ++step) {
            const auto& f = k_cx.facet(rng() % k_cx.facet_count());
            k_cx = stellar_subdivide(k_cx, f, k_cx.vertex_count());
            if (k_cx.facet_count() <= 18) out.emplace_back("stacked" + std::to_string(base) + "_" + std::to_string(step), k_cx);
        }
    }
    auto octa = corpus::octahedron();
    out.emplace_back("truncated_cube", stellar_subdivide(octa, octa.facet(0), 6));
    // edge subdivision of the octahedron: not a vertex truncation
    out.emplace_back("octahedron_edge_split", stellar_subdivide(octa, Simplex{0, 2}, 6));
    return out;
}

}  // namespace

TEST_CASE("is_perles_subgraph flags", "[perles]") {
    auto simplex = from_simplicial_boundary(corpus::simplex_boundary4());
    auto facet = is_perles_subgraph(simplex, simplex.facet(0));
    CHECK(facet.all());
    auto single = is_perles_subgraph(simplex, {0});
    CHECK_FALSE(single.induced_regular);

    auto cube = from_simplicial_boundary(corpus::octahedron());
    // antipodal pair: the two vertices sharing no facet
    Node a = 0, b = -1;
    for (Node v = 1; v < 8; ++v) {
        bool share = false;
        for (Node f : cube.facets_of(a))
            for (Node g : cube.facets_of(v)) share |= f == g;
        if (!share) b = v;
    }
    REQUIRE(b >= 0);
    auto pair = is_perles_subgraph(cube, {a, b});
    CHECK_FALSE(pair.induced_regular);
    CHECK_FALSE(pair.connected);

    CHECK_THROWS_AS(is_perles_subgraph(simplex, {}), Error);
    CHECK_THROWS_AS(is_perles_subgraph(simplex, {0, 1, 2, 3, 4}), Error);
    CHECK_THROWS_AS(is_perles_subgraph(simplex, {9}), Error);
}

TEST_CASE("weak flag", "[perles]") {
    auto simplex = from_simplicial_boundary(corpus::simplex_boundary4());
    CHECK(weak_perles_flag(simplex, simplex.facet(0)));
    CHECK_FALSE(weak_perles_flag(simplex, {0}));
    auto cube = from_simplicial_boundary(corpus::octahedron());
    CHECK(weak_perles_flag(cube, cube.facet(0)));
}

TEST_CASE("enumeration on the simplex and the cube", "[perles]") {
    auto simplex = from_simplicial_boundary(corpus::simplex_boundary4());
    CHECK(sets_of(enumerate_perles_subgraphs(simplex)) == facet_subgraph_vertex_sets(simplex));
    CHECK(brute_force_perles_subgraphs(simplex).size() == 5);

    auto cube = from_simplicial_boundary(corpus::octahedron());
    CHECK(sets_of(enumerate_perles_subgraphs(cube)) == facet_subgraph_vertex_sets(cube));
    CHECK(brute_force_perles_subgraphs(cube).size() == 6);

    auto octa = corpus::octahedron();
    auto truncated = from_simplicial_boundary(stellar_subdivide(octa, octa.facet(0), 6));
    CHECK(truncated.vertex_count() == 10);
    CHECK(brute_force_perles_subgraphs(truncated).size() == 7);
}

TEST_CASE("enumeration agrees with the exhaustive scan", "[perles][property]") {
    for (const auto& [name, k_cx] : small_spheres()) {
        auto p = from_simplicial_boundary(k_cx);
        if (p.vertex_count() > 20) continue;
        INFO(name);
        auto fast = sets_of(enumerate_perles_subgraphs(p));
        CHECK(fast == sets_of(brute_force_perles_subgraphs(p)));
        CHECK(sets_of(enumerate_perles_subgraphs(p, 3)) == fast);
    }
}

TEST_CASE("facets are Perles candidates", "[perles][property]") {
    for (const auto& [name, k_cx] : small_spheres()) {
        INFO(name);
        auto p = from_simplicial_boundary(k_cx);
        for (const auto& f : p.facets()) CHECK(is_perles_subgraph(p, f).all());
    }
}

TEST_CASE("candidates give one free ridge per facet and a core", "[perles][property]") {
    for (const auto& [name, k_cx] : small_spheres()) {
        INFO(name);
        auto p = from_simplicial_boundary(k_cx);
        for (const auto& c : enumerate_perles_subgraphs(p)) {
            auto gamma = gamma_of_subgraph(k_cx, c.vertex_set);
            auto free = free_ridges(gamma);
            CHECK(free.size() == gamma.facet_count());
            std::set<Simplex> owners;
            for (const auto& fr : free) owners.insert(fr.facet);
            CHECK(owners.size() == gamma.facet_count());
            CoreComplex core;
            REQUIRE_NOTHROW(core = compute_core(k_cx, gamma));
            CHECK(core.free_vertex.size() == gamma.facet_count());
            for (const auto& [sigma, v] : core.free_vertex) CHECK(sigma.contains(v));
            CHECK(complement_connected(k_cx, gamma) == c.complement_connected);
            // Alexander duality needs a sphere
            if (name != "torus7" && name != "rp2") CHECK(separation_tests_agree(k_cx, gamma, c.complement_connected));
        }
    }
}

TEST_CASE("gamma and core of a vertex star", "[perles]") {
    auto sphere = corpus::simplex_boundary4();
    auto with0 = sphere.facets_containing(Vertex{0});
    VertexSet h(with0.begin(), with0.end());
    auto gamma = gamma_of_subgraph(sphere, h);
    CHECK(gamma == star(sphere, Simplex{0}));
    VertexSet all{0, 1, 2, 3, 4};
    CHECK(gamma_of_subgraph(sphere, all) == sphere);

    auto core = compute_core(sphere, gamma);
    CHECK(core.triangles.empty());
    for (const auto& [sigma, v] : core.free_vertex) CHECK(v == 0);
    auto report = check_obstruction(sphere, gamma, core);
    CHECK(report.all());
    CHECK(report.core_empty);
    CHECK(report.star_vertex == Vertex{0});
    CHECK_FALSE(report.gamma_separates);
}

TEST_CASE("compute_core rejects facets with two free ridges", "[perles]") {
    auto sphere = corpus::simplex_boundary4();
    VertexSet two{0, 1};
    CHECK_THROWS_AS(compute_core(sphere, gamma_of_subgraph(sphere, two)), Error);
    VertexSet one{0};
    CHECK_THROWS_AS(compute_core(sphere, gamma_of_subgraph(sphere, one)), Error);
}

TEST_CASE("conjecture verdicts on small spheres", "[perles]") {
    auto report = check_conjecture(corpus::simplex_boundary4(), {.brute_force = true});
    CHECK(report.satisfies());
    CHECK(report.candidates.size() == 5);
    for (const auto& c : report.candidates) CHECK(c.facet.has_value());

    auto octa = check_conjecture(corpus::octahedron(), {.homology_crosscheck = true});
    CHECK(octa.satisfies());
    CHECK(octa.candidates.size() == 6);
    CHECK(octa.crosscheck_agrees);

    // classification covers every candidate
    for (const auto& [name, k_cx] : small_spheres()) {
        INFO(name);
        auto r = check_conjecture(k_cx);
        std::size_t facets = 0;
        for (const auto& c : r.candidates) facets += c.facet ? 1 : 0;
        CHECK(facets + r.violations.size() == r.candidates.size());
    }
}

TEST_CASE("surfaces are not spheres: violations carry gamma and core", "[perles]") {
    // on the torus the complement test and the star test diverge
    auto r = check_conjecture(corpus::torus7(), {.homology_crosscheck = true});
    for (const auto& v : r.violations) {
        CHECK_FALSE(v.gamma.empty());
        if (v.core) CHECK(v.obstruction.has_value());
    }
}
