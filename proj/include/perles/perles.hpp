#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <future>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "perles/complex.hpp"
#include "perles/error.hpp"
#include "perles/graph.hpp"
#include "perles/homology.hpp"
#include "perles/polytope.hpp"

namespace perles {

/**
 * Flags of a vertex set H of a simple d-polytope's graph. H is a Perles
 * candidate when its induced subgraph is (d-1)-regular and connected and the
 * complement V \ H induces a connected subgraph.
 */
struct PerlesCandidate {
    VertexSet vertex_set;
    bool induced_regular = false;
    bool connected = false;
    bool complement_connected = false;

    bool all() const { return induced_regular && connected && complement_connected; }
    friend bool operator==(const PerlesCandidate&, const PerlesCandidate&) = default;
};

namespace detail {

inline VertexSet canonical_set(VertexSet h) {
    std::sort(h.begin(), h.end());
    h.erase(std::unique(h.begin(), h.end()), h.end());
    return h;
}

inline VertexSet complement_of(const VertexSet& h, Node n) {
    VertexSet out;
    std::size_t i = 0;
    for (Node v = 0; v < n; ++v) {
        if (i < h.size() && h[i] == v)
            ++i;
        else
            out.push_back(v);
    }
    return out;
}

}  // namespace detail

inline PerlesCandidate is_perles_subgraph(const SimplePolytopeModel& p, const VertexSet& h_in) {
    VertexSet h = detail::canonical_set(h_in);
    require(!h.empty(), "is_perles_subgraph: empty vertex set");
    require(h.front() >= 0 && h.back() < p.vertex_count(), "is_perles_subgraph: vertex out of range");
    require(static_cast<Node>(h.size()) < p.vertex_count(), "is_perles_subgraph: H is the whole vertex set");
    PerlesCandidate c;
    auto sub = induced_subgraph(p.graph(), h);
    c.induced_regular = is_k_regular(sub.graph, p.dim() - 1).regular;
    c.connected = is_connected(sub.graph);
    auto rest = detail::complement_of(h, p.vertex_count());
    c.complement_connected = is_connected(induced_subgraph(p.graph(), rest).graph);
    c.vertex_set = std::move(h);
    return c;
}

// Weak condition: the induced subgraph on H is (d-1)-connected.
inline bool weak_perles_flag(const SimplePolytopeModel& p, const VertexSet& h) {
    auto sub = induced_subgraph(p.graph(), detail::canonical_set(h));
    if (sub.graph.node_count() < 2) return false;
    return vertex_connectivity(sub.graph) >= p.dim() - 1;
}

namespace detail {

/**
 * Three-valued depth-first search for Perles candidates.
 *
 * Each task fixes the least vertex of H (the root): smaller ids are out, the
 * root is in. H is then grown only through undecided neighbors of in-vertices,
 * so it stays connected, and propagation enforces the local degree rules of a
 * d-regular graph with target in-degree d-1:
 *   - an in-vertex has exactly one out-neighbor; once it has one, its other
 *     neighbors are in, and once it has d-1 in-neighbors the last one is out;
 *   - any vertex with two out-neighbors is out (closure rule).
 * Each node branches on the out-neighbor of the incomplete in-vertex with the
 * fewest undecided neighbors, and prunes when the out-vertices can no longer
 * be joined avoiding H. A leaf is reached when no in-vertex has an undecided
 * neighbor; remaining undecided vertices are out and complement connectivity
 * is checked.
 */
class CandidateSearch {
  public:
    explicit CandidateSearch(const SimplePolytopeModel& p)
        : g_(p.graph()), target_(p.dim() - 1), n_(p.graph().node_count()) {}

    // Stops once the shared node counter passes budget (0: unlimited).
    void set_budget(std::size_t budget, std::atomic<std::size_t>* shared) {
        budget_ = budget;
        shared_ = shared;
    }
    bool aborted() const { return aborted_; }

    std::vector<VertexSet> run_root(Node root) {
        reset();
        found_.clear();
        bool ok = true;
        for (Node v = 0; v < root && ok; ++v)
            if (state_[v] == undecided) ok = assign(v, out);
        if (ok && state_[root] == undecided && assign(root, in)) dfs();
        return std::move(found_);
    }

    std::size_t nodes_visited() const { return visited_; }

  private:
    static constexpr std::int8_t undecided = -1, out = 0, in = 1;

    void reset() {
        state_.assign(static_cast<std::size_t>(n_), undecided);
        in_count_.assign(static_cast<std::size_t>(n_), 0);
        out_count_.assign(static_cast<std::size_t>(n_), 0);
        trail_.clear();
        in_list_.clear();
    }

    void set(Node v, std::int8_t value) {
        state_[v] = value;
        trail_.push_back(v);
        if (value == in) in_list_.push_back(v);
        for (Node w : g_.neighbors(v)) (value == in ? in_count_[w] : out_count_[w])++;
    }

    void undo_to(std::size_t mark) {
        while (trail_.size() > mark) {
            Node v = trail_.back();
            trail_.pop_back();
            if (state_[v] == in) in_list_.pop_back();
            for (Node w : g_.neighbors(v)) (state_[v] == in ? in_count_[w] : out_count_[w])--;
            state_[v] = undecided;
        }
    }

    // Assigns and propagates; false on conflict (caller undoes).
    bool assign(Node v0, std::int8_t value) {
        std::vector<Node> work;
        set(v0, value);
        work.push_back(v0);
        for (Node w : g_.neighbors(v0)) work.push_back(w);
        while (!work.empty()) {
            Node x = work.back();
            work.pop_back();
            if (state_[x] == in) {
                if (out_count_[x] > 1 || in_count_[x] > target_) return false;
                std::int8_t force = undecided;
                if (out_count_[x] == 1)
                    force = in;
                else if (in_count_[x] == target_)
                    force = out;
                if (force == undecided) continue;
                for (Node w : g_.neighbors(x))
                    if (state_[w] == undecided) {
                        set(w, force);
                        work.push_back(w);
                        for (Node y : g_.neighbors(w)) work.push_back(y);
                    }
            } else if (state_[x] == undecided && out_count_[x] >= 2) {
                set(x, out);
                work.push_back(x);
                for (Node y : g_.neighbors(x)) work.push_back(y);
            }
        }
        return true;
    }

    void dfs() {
        ++visited_;
        if (shared_) {
            std::size_t before = shared_->fetch_add(1, std::memory_order_relaxed);
            if (budget_ > 0 && before >= budget_) aborted_ = true;
        }
        if (aborted_) return;
        if (!complement_can_connect()) return;
        // most constrained incomplete in-vertex, oldest first: it has no
        // out-neighbor yet, and exactly one of its undecided neighbors is out
        Node pick = -1;
        int pick_free = std::numeric_limits<int>::max();
        for (Node x : in_list_) {
            int free = static_cast<int>(g_.neighbors(x).size()) - in_count_[x] - out_count_[x];
            if (free > 0 && free < pick_free) {
                pick = x;
                pick_free = free;
                if (free == 1) break;
            }
        }
        if (pick < 0) {
            leaf();
            return;
        }
        std::vector<Node> choices;
        for (Node w : g_.neighbors(pick))
            if (state_[w] == undecided) choices.push_back(w);
        for (Node w : choices) {
            std::size_t mark = trail_.size();
            if (assign(w, out)) dfs();
            undo_to(mark);
        }
    }

    // Out-vertices must lie in one component of the graph without H.
    bool complement_can_connect() {
        Node start = -1, outs = 0;
        for (Node v : trail_)
            if (state_[v] == out) {
                ++outs;
                if (start < 0) start = v;
            }
        if (outs < 2) return true;
        ++stamp_;
        if (seen_.size() != static_cast<std::size_t>(n_)) seen_.assign(static_cast<std::size_t>(n_), 0);
        std::vector<Node>& stack = scratch_;
        stack.assign(1, start);
        seen_[start] = stamp_;
        Node reached_out = 1;
        while (!stack.empty() && reached_out < outs) {
            Node v = stack.back();
            stack.pop_back();
            for (Node w : g_.neighbors(v))
                if (seen_[w] != stamp_ && state_[w] != in) {
                    seen_[w] = stamp_;
                    if (state_[w] == out) ++reached_out;
                    stack.push_back(w);
                }
        }
        return reached_out == outs;
    }

    void leaf() {
        if (static_cast<Node>(in_list_.size()) == n_) return;
        // complement: every vertex not in H
        std::vector<char> seen(static_cast<std::size_t>(n_), 0);
        Node start = -1;
        Node outside = 0;
        for (Node v = 0; v < n_; ++v)
            if (state_[v] != in) {
                ++outside;
                if (start < 0) start = v;
            }
        std::vector<Node> stack{start};
        seen[start] = 1;
        Node reached = 1;
        while (!stack.empty()) {
            Node v = stack.back();
            stack.pop_back();
            for (Node w : g_.neighbors(v))
                if (!seen[w] && state_[w] != in) {
                    seen[w] = 1;
                    ++reached;
                    stack.push_back(w);
                }
        }
        if (reached != outside) return;
        VertexSet h = in_list_;
        std::sort(h.begin(), h.end());
        found_.push_back(std::move(h));
    }

    const Graph& g_;
    int target_;
    Node n_;
    std::vector<std::int8_t> state_;
    std::vector<int> in_count_, out_count_;
    std::vector<Node> trail_, in_list_;
    std::vector<VertexSet> found_;
    std::size_t visited_ = 0;
    std::vector<unsigned> seen_;
    unsigned stamp_ = 0;
    std::vector<Node> scratch_;
    std::size_t budget_ = 0;
    std::atomic<std::size_t>* shared_ = nullptr;
    bool aborted_ = false;
};

}  // namespace detail

struct CandidateEnumeration {
    std::vector<PerlesCandidate> candidates;
    bool complete = true;      // false when the node budget ran out
    std::size_t nodes = 0;     // search nodes visited
};

/**
 * Perles candidates, sorted by vertex set. Search tasks (one per least vertex
 * of H) are independent; with threads > 1 they run concurrently and the merged
 * result is sorted, so the output does not depend on scheduling. With a
 * nonzero budget the search stops after that many nodes in total and the
 * result lists only what was found so far.
 */
inline CandidateEnumeration enumerate_perles_subgraphs_bounded(const SimplePolytopeModel& p, unsigned threads,
                                                              std::size_t budget) {
    const Node n = p.vertex_count();
    std::atomic<std::size_t> shared{0};
    std::atomic<bool> aborted{false};
    auto work = [&p, n, budget, &shared, &aborted](Node first, Node step) {
        detail::CandidateSearch search(p);
        search.set_budget(budget, &shared);
        std::vector<VertexSet> local;
        for (Node root = first; root < n && !search.aborted(); root += step)
            for (auto& h : search.run_root(root)) local.push_back(std::move(h));
        if (search.aborted()) aborted = true;
        return local;
    };
    std::vector<VertexSet> sets;
    if (threads <= 1) {
        sets = work(0, 1);
    } else {
        std::vector<std::future<std::vector<VertexSet>>> tasks;
        for (unsigned t = 0; t < threads; ++t)
            tasks.push_back(std::async(std::launch::async, work, static_cast<Node>(t), static_cast<Node>(threads)));
        for (auto& task : tasks)
            for (auto& h : task.get()) sets.push_back(std::move(h));
    }
    std::sort(sets.begin(), sets.end());
    CandidateEnumeration out;
    out.complete = !aborted;
    out.nodes = shared.load();
    out.candidates.reserve(sets.size());
    for (auto& h : sets) out.candidates.push_back({std::move(h), true, true, true});
    return out;
}

inline std::vector<PerlesCandidate> enumerate_perles_subgraphs(const SimplePolytopeModel& p, unsigned threads = 1) {
    return enumerate_perles_subgraphs_bounded(p, threads, 0).candidates;
}

/**
 * Exhaustive subset scan with bitmask graph arithmetic; shares no code with
 * the search above.
 */
inline std::vector<PerlesCandidate> brute_force_perles_subgraphs(const SimplePolytopeModel& p) {
    const Node n = p.vertex_count();
    require(n <= 20, "brute_force_perles_subgraphs: more than 20 vertices");
    std::vector<std::uint32_t> adj(static_cast<std::size_t>(n), 0);
    for (auto [u, w] : p.graph().edges()) {
        adj[u] |= 1u << w;
        adj[w] |= 1u << u;
    }
    auto connected = [&](std::uint32_t set) {
        if (set == 0) return true;
        std::uint32_t reach = set & (~set + 1);
        while (true) {
            std::uint32_t grow = reach;
            for (Node v = 0; v < n; ++v)
                if (reach & (1u << v)) grow |= adj[v] & set;
            if (grow == reach) break;
            reach = grow;
        }
        return reach == set;
    };
    const std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
    std::vector<PerlesCandidate> out;
    for (std::uint32_t h = 1; h < full; ++h) {
        bool regular = true;
        for (Node v = 0; v < n && regular; ++v)
            if (h & (1u << v)) regular = __builtin_popcount(adj[v] & h) == p.dim() - 1;
        if (!regular || !connected(h) || !connected(full & ~h)) continue;
        VertexSet set;
        for (Node v = 0; v < n; ++v)
            if (h & (1u << v)) set.push_back(v);
        out.push_back({std::move(set), true, true, true});
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.vertex_set < b.vertex_set; });
    return out;
}

// Gamma(H): the pure subcomplex generated by the complex facets indexed by H.
inline SimplicialComplex gamma_of_subgraph(const SimplicialComplex& boundary, const VertexSet& h) {
    std::vector<std::size_t> ids(h.begin(), h.end());
    return induced_pure_subcomplex(boundary, ids);
}

/**
 * core(Gamma): each facet sigma of Gamma has one free ridge; v(sigma) is the
 * vertex opposite it. A ridge lies in the core when both facets of the
 * ambient sphere containing it are in Gamma and their free vertices differ.
 */
struct CoreComplex {
    SimplicialComplex triangles;               // pure, one dimension below Gamma; may be empty
    std::map<Simplex, Vertex> free_vertex;     // facet of Gamma -> v(facet)
};

inline CoreComplex compute_core(const SimplicialComplex& boundary, const SimplicialComplex& gamma) {
    require(!gamma.empty() && gamma.is_pure() && gamma.dim() == boundary.dim(),
            "compute_core: Gamma must be pure of the sphere's dimension");
    for (const auto& f : gamma.facets())
        require(boundary.facet_index(f).has_value(), "compute_core: Gamma facet not in the sphere");
    CoreComplex core;
    auto incidence = ridge_incidence(gamma);
    for (const auto& sigma : gamma.facets()) {
        std::optional<Simplex> free;
        int free_count = 0;
        for (auto& r : sigma.boundary_faces())
            if (incidence[r].size() == 1) {
                ++free_count;
                free = r;
            }
        if (free_count != 1) {
            std::ostringstream msg;
            msg << "compute_core: facet " << sigma << " has " << free_count << " free ridges";
            fail(ErrorKind::precondition, msg.str());
        }
        core.free_vertex.emplace(sigma, sigma.minus(*free)[0]);
    }
    std::vector<Simplex> ridges;
    for (const auto& [ridge, ids] : incidence) {
        if (ids.size() != 2) continue;
        if (core.free_vertex.at(gamma.facet(ids[0])) != core.free_vertex.at(gamma.facet(ids[1])))
            ridges.push_back(ridge);
    }
    if (!ridges.empty()) core.triangles = SimplicialComplex::from_facets(std::move(ridges), boundary.vertex_count());
    return core;
}

// Vertices v with Gamma == star(v); at most one for Gamma of full dimension.
inline std::optional<Vertex> vertex_star_of(const SimplicialComplex& boundary, const SimplicialComplex& gamma) {
    if (gamma.empty()) return std::nullopt;
    Simplex common = gamma.facet(0);
    for (const auto& f : gamma.facets()) common = common.intersection(f);
    for (Vertex v : common) {
        const auto& ids = boundary.facets_containing(v);
        if (ids.size() != gamma.facet_count()) continue;
        bool equal = true;
        for (std::size_t i : ids) equal &= gamma.facet_index(boundary.facet(i)).has_value();
        if (equal) return v;
    }
    return std::nullopt;
}

// Facets of `boundary` not in `gamma` form a connected dual subgraph.
inline bool complement_connected(const SimplicialComplex& boundary, const SimplicialComplex& gamma) {
    std::vector<Node> rest;
    for (std::size_t i = 0; i < boundary.facet_count(); ++i)
        if (!gamma.facet_index(boundary.facet(i))) rest.push_back(static_cast<Node>(i));
    if (rest.empty()) return true;
    return is_connected(induced_subgraph(dual_graph(boundary), rest).graph);
}

struct ObstructionReport {
    bool core_empty = true;
    bool core_has_no_free_ridge = true;
    std::optional<Simplex> free_ridge_witness;
    std::optional<Vertex> star_vertex;     // Gamma is the star of this vertex
    bool empty_iff_vertex_star = true;
    bool gamma_separates = false;
    bool core_top_homology_zero = true;    // H_{d-2}(core) = 0
    bool separation_law = true;            // non-separating Gamma => H_{d-2}(core) = 0
    bool core_dually_connected = true;     // vacuous for the empty core

    bool all() const {
        return core_has_no_free_ridge && empty_iff_vertex_star && separation_law && core_dually_connected;
    }
};

inline ObstructionReport check_obstruction(const SimplicialComplex& boundary, const SimplicialComplex& gamma,
                                           const CoreComplex& core) {
    ObstructionReport r;
    r.core_empty = core.triangles.empty();
    if (!r.core_empty) {
        auto free = free_ridges(core.triangles);
        r.core_has_no_free_ridge = free.empty();
        if (!free.empty()) r.free_ridge_witness = free.front().ridge;
        r.core_dually_connected = is_connected(dual_graph(core.triangles));
        auto h = homology_profile(core.triangles);
        r.core_top_homology_zero = h.betti.size() < 2 || h.betti.back() == 0;
    }
    r.star_vertex = vertex_star_of(boundary, gamma);
    r.empty_iff_vertex_star = r.core_empty == r.star_vertex.has_value();
    r.gamma_separates = !complement_connected(boundary, gamma);
    r.separation_law = r.gamma_separates || r.core_top_homology_zero;
    return r;
}

struct Violation {
    VertexSet vertex_set;
    SimplicialComplex gamma;
    std::optional<CoreComplex> core;   // absent if the core could not be formed
    std::string core_error;
    std::optional<ObstructionReport> obstruction;
    bool weak = false;                 // H is (d-1)-connected: violates the weak version too
};

struct ClassifiedCandidate {
    PerlesCandidate candidate;
    std::optional<std::size_t> facet;  // index into the model's facets when H is a facet
};

struct ConjectureOptions {
    bool brute_force = false;
    bool weak = true;                  // evaluate the weak flag on violations
    bool homology_crosscheck = false;  // Alexander-duality check of separation
    unsigned threads = 1;
    std::size_t budget = 0;            // search node limit, 0: unlimited
    std::vector<VertexSet> supplied;   // extra vertex sets to classify
    std::string id = "unnamed";
};

struct ConjectureReport {
    std::string id;
    int dimension = 0;
    Node vertex_count = 0;
    std::size_t facet_count = 0;
    std::string engine;
    bool complete = true;  // the search covered every vertex set
    std::size_t search_nodes = 0;
    std::vector<ClassifiedCandidate> candidates;
    std::vector<Violation> violations;
    bool crosscheck_run = false;
    bool crosscheck_agrees = true;
    double elapsed_ms = 0;

    // A verdict of "satisfies" needs a complete search.
    bool satisfies() const { return complete && violations.empty(); }
};

/**
 * Alexander duality in a (d-1)-sphere: the complement of Gamma has
 * 1 + rank H~_{d-2}(Gamma) components. Compares that count with the
 * graph-level complement test for a candidate.
 */
inline bool separation_tests_agree(const SimplicialComplex& boundary, const SimplicialComplex& gamma,
                                   bool complement_connected_in_graph) {
    auto h = homology_profile(gamma);
    const int k = boundary.dim() - 1;
    long long reduced = k < static_cast<int>(h.betti.size()) ? h.betti[k] : 0;
    if (k == 0) reduced -= 1;
    return (reduced == 0) == complement_connected_in_graph;
}

inline ConjectureReport check_conjecture(const SimplicialComplex& boundary, const ConjectureOptions& options = {}) {
    auto started = std::chrono::steady_clock::now();
    auto dual = dual_model(boundary);
    const auto& model = dual.model;
    ConjectureReport report;
    report.id = options.id;
    report.dimension = model.dim();
    report.vertex_count = model.vertex_count();
    report.facet_count = model.facet_count();
    report.engine = options.brute_force ? "brute-force" : "enumerate";
    std::vector<PerlesCandidate> candidates;
    if (options.brute_force) {
        candidates = brute_force_perles_subgraphs(model);
    } else {
        auto run = enumerate_perles_subgraphs_bounded(model, options.threads, options.budget);
        candidates = std::move(run.candidates);
        report.complete = run.complete;
        report.search_nodes = run.nodes;
    }
    for (const auto& h : options.supplied) {
        auto c = is_perles_subgraph(model, h);
        if (!c.all()) continue;
        auto at = std::lower_bound(candidates.begin(), candidates.end(), c,
                                   [](const auto& a, const auto& b) { return a.vertex_set < b.vertex_set; });
        if (at == candidates.end() || at->vertex_set != c.vertex_set) candidates.insert(at, std::move(c));
    }
    std::map<VertexSet, std::size_t> facet_lookup;
    for (std::size_t j = 0; j < model.facet_count(); ++j) facet_lookup.emplace(model.facet(j), j);
    report.crosscheck_run = options.homology_crosscheck;
    for (auto& c : candidates) {
        ClassifiedCandidate cc{c, std::nullopt};
        if (auto it = facet_lookup.find(c.vertex_set); it != facet_lookup.end()) cc.facet = it->second;
        if (options.homology_crosscheck)
            report.crosscheck_agrees &=
                separation_tests_agree(boundary, gamma_of_subgraph(boundary, c.vertex_set), c.complement_connected);
        if (!cc.facet) {
            Violation v;
            v.vertex_set = c.vertex_set;
            v.gamma = gamma_of_subgraph(boundary, c.vertex_set);
            try {
                v.core = compute_core(boundary, v.gamma);
                v.obstruction = check_obstruction(boundary, v.gamma, *v.core);
            } catch (const Error& e) {
                v.core_error = e.what();
            }
            if (options.weak) v.weak = weak_perles_flag(model, c.vertex_set);
            report.violations.push_back(std::move(v));
        }
        report.candidates.push_back(std::move(cc));
    }
    report.elapsed_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return report;
}

}  // namespace perles
