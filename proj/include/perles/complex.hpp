#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "perles/error.hpp"
#include "perles/graph.hpp"

namespace perles {

using Vertex = std::int32_t;

/**
 * A simplex as a strictly increasing list of vertex ids. Ordering is the
 * lexicographic order of the vertex lists, which is the canonical order used
 * for facets, face bases and files.
 */
class Simplex {
  public:
    Simplex() = default;
    Simplex(std::initializer_list<Vertex> vs) : Simplex(std::vector<Vertex>(vs)) {}

    // Sorts; rejects repeated or negative vertices.
    explicit Simplex(std::vector<Vertex> vs) : v_(std::move(vs)) {
        std::sort(v_.begin(), v_.end());
        for (std::size_t i = 0; i < v_.size(); ++i) {
            require(v_[i] >= 0, "simplex: negative vertex id");
            require(i == 0 || v_[i] != v_[i - 1],
                    "simplex: repeated vertex " + std::to_string(v_[i]));
        }
    }

    // Trusted constructor for lists already known to be strictly increasing.
    static Simplex sorted(std::vector<Vertex> vs) {
        Simplex s;
        s.v_ = std::move(vs);
        return s;
    }

    const std::vector<Vertex>& vertices() const { return v_; }
    std::size_t size() const { return v_.size(); }
    int dim() const { return static_cast<int>(v_.size()) - 1; }
    bool empty() const { return v_.empty(); }
    Vertex operator[](std::size_t i) const { return v_[i]; }
    auto begin() const { return v_.begin(); }
    auto end() const { return v_.end(); }

    bool contains(Vertex x) const { return std::binary_search(v_.begin(), v_.end(), x); }
    bool is_subset_of(const Simplex& other) const {
        return std::includes(other.v_.begin(), other.v_.end(), v_.begin(), v_.end());
    }

    Simplex without(Vertex x) const {
        std::vector<Vertex> out;
        out.reserve(v_.size());
        for (Vertex y : v_)
            if (y != x) out.push_back(y);
        return sorted(std::move(out));
    }
    Simplex with(Vertex x) const {
        std::vector<Vertex> out = v_;
        out.insert(std::lower_bound(out.begin(), out.end(), x), x);
        return sorted(std::move(out));
    }
    Simplex minus(const Simplex& other) const {
        std::vector<Vertex> out;
        std::set_difference(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
        return sorted(std::move(out));
    }
    Simplex intersection(const Simplex& other) const {
        std::vector<Vertex> out;
        std::set_intersection(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(),
                              std::back_inserter(out));
        return sorted(std::move(out));
    }
    Simplex united(const Simplex& other) const {
        std::vector<Vertex> out;
        std::set_union(v_.begin(), v_.end(), other.v_.begin(), other.v_.end(), std::back_inserter(out));
        return sorted(std::move(out));
    }

    // Codimension-one faces, i-th omits the i-th vertex.
    std::vector<Simplex> boundary_faces() const {
        std::vector<Simplex> out;
        out.reserve(v_.size());
        for (Vertex x : v_) out.push_back(without(x));
        return out;
    }

    friend auto operator<=>(const Simplex&, const Simplex&) = default;
    friend bool operator==(const Simplex&, const Simplex&) = default;

  private:
    std::vector<Vertex> v_;
};

inline std::ostream& operator<<(std::ostream& os, const Simplex& s) {
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) os << (i ? " " : "") << s[i];
    return os << ']';
}

/**
 * Finite simplicial complex stored by its facets (inclusion-maximal faces) in
 * lexicographic order. A simplex belongs to the complex iff it is contained in
 * some facet. Values are immutable; every operation returns a new complex.
 *
 * vertex_count is an id bound (all ids are < vertex_count). Subcomplexes keep
 * the id space of the complex they were cut from, so not every id below the
 * bound has to occur.
 */
class SimplicialComplex {
  public:
    SimplicialComplex() = default;

    // Canonicalizes: sorts, deduplicates, absorbs faces contained in others.
    static SimplicialComplex from_facets(std::vector<Simplex> faces, Vertex vertex_count = 0) {
        SimplicialComplex k;
        for (const auto& f : faces) require(!f.empty(), "complex: empty face");
        std::sort(faces.begin(), faces.end(),
                  [](const Simplex& a, const Simplex& b) {
                      return a.size() != b.size() ? a.size() > b.size() : a < b;
                  });
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
        Vertex max_id = -1;
        for (const auto& f : faces) max_id = std::max(max_id, f.vertices().back());
        std::vector<std::vector<std::size_t>> by_vertex(static_cast<std::size_t>(max_id + 1));
        std::vector<Simplex> kept;
        for (auto& f : faces) {
            bool absorbed = false;
            for (std::size_t idx : by_vertex[f[0]])
                if (kept[idx].size() > f.size() && f.is_subset_of(kept[idx])) {
                    absorbed = true;
                    break;
                }
            if (absorbed) continue;
            for (Vertex x : f) by_vertex[x].push_back(kept.size());
            kept.push_back(std::move(f));
        }
        std::sort(kept.begin(), kept.end());
        k.facets_ = std::move(kept);
        k.vertex_count_ = std::max<Vertex>(vertex_count, max_id + 1);
        k.index();
        return k;
    }

    const std::vector<Simplex>& facets() const { return facets_; }
    std::size_t facet_count() const { return facets_.size(); }
    const Simplex& facet(std::size_t i) const { return facets_[i]; }
    Vertex vertex_count() const { return vertex_count_; }
    int dim() const { return dim_; }
    bool empty() const { return facets_.empty(); }

    bool is_pure() const {
        return std::all_of(facets_.begin(), facets_.end(),
                           [&](const Simplex& f) { return f.dim() == dim_; });
    }

    // Ids that occur in some facet, increasing.
    std::vector<Vertex> vertices() const {
        std::vector<Vertex> out;
        for (Vertex v = 0; v < vertex_count_; ++v)
            if (!vertex_facets_[v].empty()) out.push_back(v);
        return out;
    }

    bool has_vertex(Vertex v) const {
        return v >= 0 && v < vertex_count_ && !vertex_facets_[v].empty();
    }

    // Indices of facets containing vertex v, increasing.
    const std::vector<std::size_t>& facets_containing(Vertex v) const { return vertex_facets_[v]; }

    // Indices of facets containing every vertex of s, increasing.
    std::vector<std::size_t> facets_containing(const Simplex& s) const {
        if (s.empty()) {
            std::vector<std::size_t> all(facets_.size());
            for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
            return all;
        }
        if (!has_vertex(s[0])) return {};
        // scan the shortest incidence list
        const std::vector<std::size_t>* best = &vertex_facets_[s[0]];
        for (Vertex x : s) {
            if (!has_vertex(x)) return {};
            if (vertex_facets_[x].size() < best->size()) best = &vertex_facets_[x];
        }
        std::vector<std::size_t> out;
        for (std::size_t i : *best)
            if (s.is_subset_of(facets_[i])) out.push_back(i);
        return out;
    }

    bool contains(const Simplex& s) const {
        if (s.empty()) return !facets_.empty();
        if (!has_vertex(s[0])) return false;
        const std::vector<std::size_t>* best = &vertex_facets_[s[0]];
        for (Vertex x : s) {
            if (!has_vertex(x)) return false;
            if (vertex_facets_[x].size() < best->size()) best = &vertex_facets_[x];
        }
        for (std::size_t i : *best)
            if (s.is_subset_of(facets_[i])) return true;
        return false;
    }

    std::optional<std::size_t> facet_index(const Simplex& s) const {
        auto it = std::lower_bound(facets_.begin(), facets_.end(), s);
        if (it == facets_.end() || *it != s) return std::nullopt;
        return static_cast<std::size_t>(it - facets_.begin());
    }

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
        return a.facets_ == b.facets_;
    }

  private:
    void index() {
        dim_ = -1;
        vertex_facets_.assign(static_cast<std::size_t>(vertex_count_), {});
        for (std::size_t i = 0; i < facets_.size(); ++i) {
            dim_ = std::max(dim_, facets_[i].dim());
            for (Vertex x : facets_[i]) vertex_facets_[x].push_back(i);
        }
    }

    std::vector<Simplex> facets_;
    Vertex vertex_count_ = 0;
    int dim_ = -1;
    std::vector<std::vector<std::size_t>> vertex_facets_;
};

inline SimplicialComplex build_complex(const std::vector<std::vector<Vertex>>& facet_list) {
    require(!facet_list.empty(), "build_complex: empty facet list");
    std::vector<Simplex> faces;
    faces.reserve(facet_list.size());
    for (const auto& f : facet_list) faces.emplace_back(f);
    return SimplicialComplex::from_facets(std::move(faces));
}

namespace detail {

inline void subsets_of_size(const Simplex& f, std::size_t size, std::vector<Simplex>& out) {
    const std::size_t n = f.size();
    if (size > n) return;
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    while (true) {
        std::vector<Vertex> vs(size);
        for (std::size_t i = 0; i < size; ++i) vs[i] = f[pick[i]];
        out.push_back(Simplex::sorted(std::move(vs)));
        std::size_t i = size;
        while (i > 0 && pick[i - 1] == n - size + i - 1) --i;
        if (i == 0) break;
        ++pick[i - 1];
        for (std::size_t j = i; j < size; ++j) pick[j] = pick[j - 1] + 1;
    }
}

}  // namespace detail

// All k-simplices, each once, lexicographic.
inline std::vector<Simplex> k_faces(const SimplicialComplex& k_cx, int k) {
    require(k >= 0 && k <= k_cx.dim(), "k_faces: dimension " + std::to_string(k) + " out of range");
    std::vector<Simplex> out;
    for (const auto& f : k_cx.facets()) detail::subsets_of_size(f, static_cast<std::size_t>(k + 1), out);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Face counts f_0..f_dim.
inline std::vector<std::size_t> f_vector(const SimplicialComplex& k_cx) {
    std::vector<std::size_t> out;
    for (int k = 0; k <= k_cx.dim(); ++k) out.push_back(k_faces(k_cx, k).size());
    return out;
}

inline long long euler_characteristic(const SimplicialComplex& k_cx) {
    long long chi = 0;
    auto f = f_vector(k_cx);
    for (std::size_t k = 0; k < f.size(); ++k) chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(f[k]);
    return chi;
}

inline SimplicialComplex subcomplex_of_facets(const SimplicialComplex& k_cx,
                                              std::span<const std::size_t> facet_ids) {
    std::vector<Simplex> faces;
    faces.reserve(facet_ids.size());
    for (std::size_t i : facet_ids) faces.push_back(k_cx.facet(i));
    return SimplicialComplex::from_facets(std::move(faces), k_cx.vertex_count());
}

inline SimplicialComplex star(const SimplicialComplex& k_cx, const Simplex& s) {
    auto ids = k_cx.facets_containing(s);
    require(!ids.empty(), "star: simplex is not a face");
    return subcomplex_of_facets(k_cx, ids);
}

// link(s) = { t : t disjoint from s, t u s in K }. The link of a facet is empty.
inline SimplicialComplex link(const SimplicialComplex& k_cx, const Simplex& s) {
    auto ids = k_cx.facets_containing(s);
    require(!ids.empty(), "link: simplex is not a face");
    std::vector<Simplex> faces;
    for (std::size_t i : ids) {
        Simplex rest = k_cx.facet(i).minus(s);
        if (!rest.empty()) faces.push_back(std::move(rest));
    }
    return SimplicialComplex::from_facets(std::move(faces), k_cx.vertex_count());
}

struct FreeRidge {
    Simplex ridge;
    Simplex facet;
    friend bool operator==(const FreeRidge&, const FreeRidge&) = default;
};

/**
 * Map from every ridge of a pure complex to the indices of the facets that
 * contain it (increasing).
 */
inline std::map<Simplex, std::vector<std::size_t>> ridge_incidence(const SimplicialComplex& k_cx) {
    std::map<Simplex, std::vector<std::size_t>> out;
    for (std::size_t i = 0; i < k_cx.facet_count(); ++i)
        for (auto& r : k_cx.facet(i).boundary_faces()) out[std::move(r)].push_back(i);
    return out;
}

// Ridges lying in exactly one facet, ordered by ridge.
inline std::vector<FreeRidge> free_ridges(const SimplicialComplex& k_cx) {
    require(k_cx.is_pure(), "free_ridges: complex is not pure");
    std::vector<FreeRidge> out;
    if (k_cx.dim() < 1) return out;
    for (auto& [ridge, ids] : ridge_incidence(k_cx))
        if (ids.size() == 1) out.push_back({ridge, k_cx.facet(ids[0])});
    return out;
}

// Nodes are facet indices; edges join facets sharing a ridge.
inline Graph dual_graph(const SimplicialComplex& k_cx) {
    require(k_cx.is_pure(), "dual_graph: complex is not pure");
    Graph g(static_cast<Node>(k_cx.facet_count()));
    if (k_cx.dim() < 1) return g;
    for (auto& [ridge, ids] : ridge_incidence(k_cx))
        for (std::size_t a = 0; a < ids.size(); ++a)
            for (std::size_t b = a + 1; b < ids.size(); ++b)
                g.add_edge(static_cast<Node>(ids[a]), static_cast<Node>(ids[b]));
    return g;
}

struct PseudomanifoldCheck {
    bool closed = true;
    std::optional<Simplex> bad_ridge;           // ridge not in exactly two facets
    std::size_t ridge_multiplicity = 0;         // its number of facets
    std::size_t dual_components = 0;
    explicit operator bool() const { return closed; }
};

// Closed pseudomanifold: every ridge in exactly two facets, dual graph connected.
inline PseudomanifoldCheck is_closed_pseudomanifold(const SimplicialComplex& k_cx) {
    require(!k_cx.empty() && k_cx.is_pure() && k_cx.dim() >= 1,
            "is_closed_pseudomanifold: need a pure complex of dimension >= 1");
    PseudomanifoldCheck out;
    for (auto& [ridge, ids] : ridge_incidence(k_cx))
        if (ids.size() != 2) {
            out.closed = false;
            out.bad_ridge = ridge;
            out.ridge_multiplicity = ids.size();
            break;
        }
    out.dual_components = connected_components(dual_graph(k_cx)).size();
    if (out.dual_components != 1) out.closed = false;
    return out;
}

inline SimplicialComplex induced_pure_subcomplex(const SimplicialComplex& k_cx,
                                                 std::span<const std::size_t> facet_ids) {
    for (std::size_t i : facet_ids)
        require(i < k_cx.facet_count(), "induced_pure_subcomplex: invalid facet index " + std::to_string(i));
    return subcomplex_of_facets(k_cx, facet_ids);
}

/**
 * Stellar subdivision of face s with a new vertex: each facet F containing s
 * is replaced by {new_vertex} u (F \ {x}) for every x in s.
 */
inline SimplicialComplex stellar_subdivide(const SimplicialComplex& k_cx, const Simplex& s, Vertex new_vertex) {
    require(s.dim() >= 1, "stellar_subdivide: face must have dimension >= 1");
    require(new_vertex >= 0 && !k_cx.has_vertex(new_vertex), "stellar_subdivide: vertex id collision");
    auto ids = k_cx.facets_containing(s);
    require(!ids.empty(), "stellar_subdivide: simplex is not a face");
    std::vector<Simplex> faces;
    faces.reserve(k_cx.facet_count() + ids.size() * s.size());
    std::size_t next = 0;
    for (std::size_t i = 0; i < k_cx.facet_count(); ++i) {
        if (next < ids.size() && ids[next] == i) {
            ++next;
            for (Vertex x : s) faces.push_back(k_cx.facet(i).without(x).with(new_vertex));
        } else {
            faces.push_back(k_cx.facet(i));
        }
    }
    return SimplicialComplex::from_facets(std::move(faces), std::max(k_cx.vertex_count(), new_vertex + 1));
}

inline SimplicialComplex cone_over(const SimplicialComplex& k_cx, Vertex apex) {
    require(!k_cx.empty(), "cone_over: empty complex");
    require(apex >= 0 && !k_cx.has_vertex(apex), "cone_over: apex id collision");
    std::vector<Simplex> faces;
    faces.reserve(k_cx.facet_count());
    for (const auto& f : k_cx.facets()) faces.push_back(f.with(apex));
    return SimplicialComplex::from_facets(std::move(faces), std::max(k_cx.vertex_count(), apex + 1));
}

/**
 * Greedy elementary collapses: repeatedly remove the lexicographically least
 * face that has exactly one proper coface, together with that coface.
 */
inline SimplicialComplex collapse_greedy(const SimplicialComplex& k_cx) {
    if (k_cx.empty()) return k_cx;
    // cofaces[f] = codimension-one cofaces of f still present
    std::map<Simplex, int> cofaces;
    for (int k = 0; k <= k_cx.dim(); ++k)
        for (auto& f : k_faces(k_cx, k)) cofaces.emplace(std::move(f), 0);
    for (auto& [f, count] : cofaces)
        if (f.size() > 1)
            for (auto& b : f.boundary_faces()) ++cofaces[b];

    auto unique_coface = [&](const Simplex& f) -> std::optional<Simplex> {
        // the single coface, if f is free
        auto it = cofaces.find(f);
        if (it == cofaces.end() || it->second != 1) return std::nullopt;
        // cofaces of f are f plus one vertex; find the one present
        for (const auto& facet_like : k_cx.facets_containing(f)) {
            const Simplex& big = k_cx.facet(facet_like);
            for (Vertex x : big) {
                if (f.contains(x)) continue;
                Simplex g = f.with(x);
                auto jt = cofaces.find(g);
                if (jt != cofaces.end()) return jt->second == 0 ? std::optional<Simplex>(g) : std::nullopt;
            }
        }
        return std::nullopt;
    };

    std::set<Simplex> candidates;
    for (auto& [f, count] : cofaces)
        if (count == 1) candidates.insert(f);

    while (!candidates.empty()) {
        Simplex f = *candidates.begin();
        candidates.erase(candidates.begin());
        auto g = unique_coface(f);
        if (!g) continue;
        cofaces.erase(f);
        cofaces.erase(*g);
        for (auto& b : g->boundary_faces()) {
            if (b == f) continue;
            auto it = cofaces.find(b);
            if (it == cofaces.end()) continue;
            --it->second;
            if (it->second == 1) candidates.insert(b);
            if (it->second == 0 && b.size() > 1)
                for (auto& c : b.boundary_faces()) candidates.insert(c);
        }
        if (f.size() > 1)
            for (auto& b : f.boundary_faces()) {
                auto it = cofaces.find(b);
                if (it == cofaces.end()) continue;
                --it->second;
                if (it->second == 1) candidates.insert(b);
                if (it->second == 0 && b.size() > 1)
                    for (auto& c : b.boundary_faces()) candidates.insert(c);
            }
    }
    std::vector<Simplex> maximal;
    for (auto& [f, count] : cofaces)
        if (count == 0) maximal.push_back(f);
    return SimplicialComplex::from_facets(std::move(maximal), k_cx.vertex_count());
}

// ---- .cplx text format -------------------------------------------------
// "dim <d> vertices <n>" then one facet per line, increasing ids.

inline void write_cplx(std::ostream& os, const SimplicialComplex& k_cx) {
    os << "dim " << k_cx.dim() << " vertices " << k_cx.vertex_count() << '\n';
    for (const auto& f : k_cx.facets()) {
        for (std::size_t i = 0; i < f.size(); ++i) os << (i ? " " : "") << f[i];
        os << '\n';
    }
}

inline std::string to_cplx(const SimplicialComplex& k_cx) {
    std::ostringstream os;
    write_cplx(os, k_cx);
    return os.str();
}

inline SimplicialComplex read_cplx(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) fail(ErrorKind::parse, "cplx: missing header");
    std::istringstream header(line);
    std::string dim_kw, vert_kw;
    int dim = 0;
    long long n = 0;
    if (!(header >> dim_kw >> dim >> vert_kw >> n) || dim_kw != "dim" || vert_kw != "vertices" || n < 0)
        fail(ErrorKind::parse, "cplx: bad header '" + line + "'");
    std::vector<Simplex> faces;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream row(line);
        std::vector<Vertex> vs;
        long long x;
        while (row >> x) {
            if (x < 0 || x >= n) fail(ErrorKind::parse, "cplx: vertex out of range on line " + std::to_string(line_no));
            vs.push_back(static_cast<Vertex>(x));
        }
        if (!row.eof()) fail(ErrorKind::parse, "cplx: non-integer token on line " + std::to_string(line_no));
        for (std::size_t i = 1; i < vs.size(); ++i)
            if (vs[i] <= vs[i - 1])
                fail(ErrorKind::parse, "cplx: facet not strictly increasing on line " + std::to_string(line_no));
        faces.push_back(Simplex::sorted(std::move(vs)));
    }
    auto k_cx = SimplicialComplex::from_facets(std::move(faces), static_cast<Vertex>(n));
    if (k_cx.dim() != dim) fail(ErrorKind::parse, "cplx: header dimension does not match facets");
    return k_cx;
}

inline SimplicialComplex from_cplx(const std::string& text) {
    std::istringstream is(text);
    return read_cplx(is);
}

}  // namespace perles
