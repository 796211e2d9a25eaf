#include <catch_amalgamated.hpp>

#include "corpus.hpp"
#include "perles/complex.hpp"
#include "perles/homology.hpp"

using namespace perles;

namespace {

// binomial(n, k) by enumerating k-subsets of {0..n-1}
std::size_t count_subsets(int n, int k) {
    std::size_t count = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask)
        if (__builtin_popcount(mask) == k) ++count;
    return count;
}

}  // namespace

TEST_CASE("build_complex canonicalizes", "[complex]") {
    auto two = corpus::two_triangles();
    CHECK(two.facet_count() == 2);
    CHECK(two.dim() == 2);
    CHECK(two.vertex_count() == 4);

    auto absorbed = build_complex({{0, 1}, {0, 1, 2}});
    REQUIRE(absorbed.facet_count() == 1);
    CHECK(absorbed.facet(0) == Simplex{0, 1, 2});

    auto sphere = corpus::simplex_boundary4();
    CHECK(sphere.facet_count() == 5);
    CHECK(std::is_sorted(sphere.facets().begin(), sphere.facets().end()));

    CHECK_THROWS_AS(build_complex({}), Error);
    CHECK_THROWS_AS(build_complex({{0, 1, 1}}), Error);
}

TEST_CASE("canonical form is idempotent and closure-consistent", "[complex][property]") {
    for (const auto& [name, k_cx] : corpus::complexes()) {
        INFO(name);
        std::vector<std::vector<Vertex>> lists;
        for (const auto& f : k_cx.facets()) lists.push_back(f.vertices());
        // reversed input order must not matter
        std::reverse(lists.begin(), lists.end());
        CHECK(build_complex(lists) == k_cx);
        for (std::size_t i = 1; i < k_cx.facet_count(); ++i)
            for (std::size_t j = 0; j < i; ++j) CHECK_FALSE(k_cx.facet(i).is_subset_of(k_cx.facet(j)));
        for (const auto& f : k_cx.facets())
            for (auto& r : f.boundary_faces())
                if (!r.empty()) CHECK(k_cx.contains(r));
    }
}

TEST_CASE("k_faces", "[complex]") {
    auto sphere = corpus::simplex_boundary4();
    CHECK(k_faces(sphere, 0).size() == 5);
    CHECK(k_faces(sphere, 3).size() == 5);
    CHECK(k_faces(sphere, 2).size() == count_subsets(5, 3));
    CHECK_THROWS_AS(k_faces(sphere, 4), Error);
    CHECK_THROWS_AS(k_faces(sphere, -1), Error);
}

TEST_CASE("star and link", "[complex]") {
    auto sphere = corpus::simplex_boundary4();
    CHECK(star(sphere, Simplex{0}).facet_count() == 4);
    CHECK(star(corpus::two_triangles(), Simplex{1, 2}).facet_count() == 2);
    auto facet_star = star(sphere, Simplex{0, 1, 2, 3});
    REQUIRE(facet_star.facet_count() == 1);
    CHECK(facet_star.facet(0) == Simplex{0, 1, 2, 3});

    auto link0 = link(sphere, Simplex{0});
    CHECK(link0.facets() == build_complex({{1, 2, 3}, {1, 2, 4}, {1, 3, 4}, {2, 3, 4}}).facets());
    auto link01 = link(sphere, Simplex{0, 1});
    CHECK(link01.facets() == build_complex({{2, 3}, {2, 4}, {3, 4}}).facets());
    auto link12 = link(corpus::two_triangles(), Simplex{1, 2});
    CHECK(link12.facets() == std::vector<Simplex>{Simplex{0}, Simplex{3}});

    CHECK_THROWS_AS(star(sphere, Simplex{0, 7}), Error);
    CHECK_THROWS_AS(link(corpus::two_triangles(), Simplex{0, 3}), Error);
}

TEST_CASE("free ridges", "[complex]") {
    CHECK(free_ridges(corpus::triangle()).size() == 3);
    CHECK(free_ridges(corpus::simplex_boundary4()).empty());
    auto two = free_ridges(corpus::two_triangles());
    CHECK(two.size() == 4);
    for (const auto& fr : two) CHECK(fr.ridge != Simplex{1, 2});
    CHECK_THROWS_AS(free_ridges(build_complex({{0, 1, 2}, {2, 3}})), Error);
}

TEST_CASE("dual graph", "[complex]") {
    auto k5 = dual_graph(corpus::simplex_boundary4());
    CHECK(k5.node_count() == 5);
    CHECK(k5.edge_count() == 10);
    auto edge = dual_graph(corpus::two_triangles());
    CHECK(edge.edge_count() == 1);

    // octahedron: brute-force ridge adjacency over all facet pairs
    auto octa = corpus::octahedron();
    auto g = dual_graph(octa);
    for (std::size_t i = 0; i < octa.facet_count(); ++i)
        for (std::size_t j = i + 1; j < octa.facet_count(); ++j) {
            bool share_ridge = octa.facet(i).intersection(octa.facet(j)).size() == 2;
            CHECK(g.has_edge(static_cast<Node>(i), static_cast<Node>(j)) == share_ridge);
        }
    CHECK(g.node_count() == 8);
    CHECK(is_k_regular(g, 3).regular);
}

TEST_CASE("dual graph degree counts shared ridges", "[complex][property]") {
    for (const auto& [name, k_cx] : corpus::complexes()) {
        if (!k_cx.is_pure() || k_cx.dim() < 1) continue;
        INFO(name);
        auto g = dual_graph(k_cx);
        auto incidence = ridge_incidence(k_cx);
        for (std::size_t i = 0; i < k_cx.facet_count(); ++i) {
            int shared = 0;
            for (auto& r : k_cx.facet(i).boundary_faces()) shared += incidence[r].size() >= 2 ? 1 : 0;
            // in pseudomanifolds each shared ridge contributes one neighbor
            if (std::all_of(incidence.begin(), incidence.end(), [](auto& kv) { return kv.second.size() <= 2; }))
                CHECK(g.degree(static_cast<Node>(i)) == shared);
        }
        if (is_closed_pseudomanifold(k_cx)) CHECK(is_k_regular(g, k_cx.dim() + 1).regular);
    }
}

TEST_CASE("closed pseudomanifold check", "[complex]") {
    CHECK(is_closed_pseudomanifold(corpus::simplex_boundary4()).closed);
    auto tri = is_closed_pseudomanifold(corpus::triangle());
    CHECK_FALSE(tri.closed);
    CHECK(tri.bad_ridge.has_value());
    auto two = is_closed_pseudomanifold(corpus::two_tetrahedron_boundaries());
    CHECK_FALSE(two.closed);
    CHECK_FALSE(two.bad_ridge.has_value());
    CHECK(two.dual_components == 2);
    CHECK(is_closed_pseudomanifold(corpus::icosahedron()).closed);
    CHECK(is_closed_pseudomanifold(corpus::torus7()).closed);
}

TEST_CASE("induced pure subcomplex", "[complex]") {
    auto sphere = corpus::simplex_boundary4();
    std::vector<std::size_t> first{0};
    CHECK(induced_pure_subcomplex(sphere, first).facet_count() == 1);
    std::vector<std::size_t> all{0, 1, 2, 3, 4};
    CHECK(induced_pure_subcomplex(sphere, all) == sphere);
    auto with0 = sphere.facets_containing(Vertex{0});
    CHECK(induced_pure_subcomplex(sphere, with0) == star(sphere, Simplex{0}));
    std::vector<std::size_t> bad{5};
    CHECK_THROWS_AS(induced_pure_subcomplex(sphere, bad), Error);
}

TEST_CASE("stellar subdivision", "[complex]") {
    auto split = stellar_subdivide(corpus::triangle(), Simplex{0, 1}, 3);
    CHECK(split.facets() == build_complex({{0, 2, 3}, {1, 2, 3}}).facets());

    auto tet = corpus::simplex_boundary_on(3);
    auto sub = stellar_subdivide(tet, Simplex{0, 1}, 4);
    CHECK(sub.facet_count() == 6);
    CHECK(is_closed_pseudomanifold(sub).closed);

    auto sphere = corpus::simplex_boundary4();
    CHECK(stellar_subdivide(sphere, Simplex{0, 1, 2, 3}, 5).facet_count() == 8);

    CHECK_THROWS_AS(stellar_subdivide(sphere, Simplex{0, 1}, 3), Error);
    CHECK_THROWS_AS(stellar_subdivide(sphere, Simplex{0}, 9), Error);
    CHECK_THROWS_AS(stellar_subdivide(corpus::two_triangles(), Simplex{0, 3}, 9), Error);
}

TEST_CASE("stellar subdivision preserves closed pseudomanifolds", "[complex][property]") {
    for (const auto& [name, k_cx] : corpus::complexes()) {
        if (!k_cx.is_pure() || k_cx.dim() < 1 || !is_closed_pseudomanifold(k_cx)) continue;
        auto before = homology_profile(k_cx);
        for (int k = 1; k <= k_cx.dim(); ++k)
            for (const auto& face : k_faces(k_cx, k)) {
                INFO(name << " face " << face);
                auto sub = stellar_subdivide(k_cx, face, k_cx.vertex_count());
                CHECK(is_closed_pseudomanifold(sub).closed);
                CHECK(homology_profile(sub) == before);
            }
    }
}

TEST_CASE("cone", "[complex]") {
    auto cone = cone_over(corpus::simplex_boundary_on(3), 4);
    CHECK(cone == star(corpus::simplex_boundary4(), Simplex{4}));
    CHECK(cone_over(build_complex({{0, 1}}), 2).facets() == std::vector<Simplex>{Simplex{0, 1, 2}});
    CHECK_THROWS_AS(cone_over(SimplicialComplex{}, 0), Error);
    CHECK_THROWS_AS(cone_over(corpus::triangle(), 1), Error);
}

TEST_CASE("greedy collapse", "[complex]") {
    auto point = collapse_greedy(corpus::triangle());
    REQUIRE(point.facet_count() == 1);
    CHECK(point.dim() == 0);
    CHECK(collapse_greedy(corpus::simplex_boundary4()) == corpus::simplex_boundary4());
    // the dunce hat has no free edge, so nothing collapses
    CHECK(collapse_greedy(corpus::dunce_hat()) == corpus::dunce_hat());
    // the mixed complex is a circle after collapsing
    auto circle = collapse_greedy(build_complex({{0, 1, 2, 3}, {3, 4}, {4, 5, 6}, {6, 0}}));
    CHECK(circle.dim() == 1);
}

TEST_CASE(".cplx round trip", "[complex][io]") {
    for (const auto& [name, k_cx] : corpus::complexes()) {
        INFO(name);
        auto text = to_cplx(k_cx);
        auto back = from_cplx(text);
        CHECK(back == k_cx);
        CHECK(to_cplx(back) == text);
    }
    CHECK(to_cplx(corpus::two_triangles()) == "dim 2 vertices 4\n0 1 2\n1 2 3\n");
    CHECK_THROWS_AS(from_cplx("dim 2 vertexes 4\n0 1 2\n"), Error);
    CHECK_THROWS_AS(from_cplx("dim 2 vertices 3\n0 1 3\n"), Error);
    CHECK_THROWS_AS(from_cplx("dim 2 vertices 4\n0 2 1\n"), Error);
    CHECK_THROWS_AS(from_cplx("dim 1 vertices 4\n0 1 2\n"), Error);
}
