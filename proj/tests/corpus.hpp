#pragma once

// Small named complexes shared by the unit tests.

#include <string>
#include <utility>
#include <vector>

#include "perles/complex.hpp"

namespace corpus {

using perles::build_complex;
using perles::SimplicialComplex;
using perles::Vertex;

inline SimplicialComplex simplex_boundary_on(int d) {
    std::vector<std::vector<Vertex>> faces;
    for (Vertex skip = 0; skip <= d; ++skip) {
        std::vector<Vertex> f;
        for (Vertex v = 0; v <= d; ++v)
            if (v != skip) f.push_back(v);
        faces.push_back(f);
    }
    return build_complex(faces);
}

inline SimplicialComplex simplex_boundary4() { return simplex_boundary_on(4); }
inline SimplicialComplex triangle() { return build_complex({{0, 1, 2}}); }
inline SimplicialComplex two_triangles() { return build_complex({{0, 1, 2}, {1, 2, 3}}); }

inline SimplicialComplex octahedron() {
    // antipodal pairs (0,1), (2,3), (4,5)
    std::vector<std::vector<Vertex>> faces;
    for (Vertex a : {0, 1})
        for (Vertex b : {2, 3})
            for (Vertex c : {4, 5}) faces.push_back({a, b, c});
    return build_complex(faces);
}

inline SimplicialComplex icosahedron() {
    return build_complex({{0, 1, 2},  {0, 2, 3},  {0, 3, 4},  {0, 4, 5},  {0, 1, 5},  {1, 2, 6},  {2, 3, 7},
                          {3, 4, 8},  {4, 5, 9},  {1, 5, 10}, {2, 6, 7},  {3, 7, 8},  {4, 8, 9},  {5, 9, 10},
                          {1, 6, 10}, {6, 7, 11}, {7, 8, 11}, {8, 9, 11}, {9, 10, 11}, {6, 10, 11}});
}

// 8 vertices, 17 triangles; corner and boundary word a a a^-1 on the
// labels 0 -> 1 -> 2 -> 0.
inline SimplicialComplex dunce_hat() {
    return build_complex({{0, 1, 3}, {0, 1, 4}, {0, 1, 5}, {0, 2, 4}, {0, 2, 6}, {0, 2, 7},
                          {0, 3, 5}, {0, 6, 7}, {1, 2, 3}, {1, 2, 5}, {1, 2, 6}, {1, 4, 6},
                          {2, 3, 7}, {2, 4, 5}, {3, 5, 7}, {4, 5, 6}, {5, 6, 7}});
}

// Moebius' 7-vertex torus: {i, i+1, i+3} and {i, i+2, i+3} mod 7.
inline SimplicialComplex torus7() {
    std::vector<std::vector<Vertex>> faces;
    for (Vertex i = 0; i < 7; ++i) {
        faces.push_back({i, (i + 1) % 7, (i + 3) % 7});
        faces.push_back({i, (i + 2) % 7, (i + 3) % 7});
    }
    return build_complex(faces);
}

inline SimplicialComplex rp2_6() {
    return build_complex({{0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5}, {0, 1, 5},
                          {1, 2, 4}, {2, 3, 5}, {1, 3, 4}, {2, 4, 5}, {1, 3, 5}});
}

inline SimplicialComplex two_tetrahedron_boundaries() {
    return build_complex({{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {4, 5, 6}, {4, 5, 7}, {4, 6, 7}, {5, 6, 7}});
}

inline std::vector<std::pair<std::string, SimplicialComplex>> complexes() {
    return {
        {"simplex_boundary2", simplex_boundary_on(2)},
        {"simplex_boundary3", simplex_boundary_on(3)},
        {"simplex_boundary4", simplex_boundary4()},
        {"simplex_boundary5", simplex_boundary_on(5)},
        {"triangle", triangle()},
        {"two_triangles", two_triangles()},
        {"octahedron", octahedron()},
        {"icosahedron", icosahedron()},
        {"dunce_hat", dunce_hat()},
        {"torus7", torus7()},
        {"rp2", rp2_6()},
        {"two_tetrahedron_boundaries", two_tetrahedron_boundaries()},
        {"mixed", build_complex({{0, 1, 2, 3}, {3, 4}, {4, 5, 6}, {6, 0}})},
    };
}

}  // namespace corpus
