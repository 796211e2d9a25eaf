#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>

#include "perles/complex.hpp"
#include "perles/counterexample.hpp"
#include "perles/error.hpp"
#include "perles/generators.hpp"
#include "perles/graph.hpp"
#include "perles/homology.hpp"
#include "perles/perles.hpp"
#include "perles/polytope.hpp"
#include "perles/report.hpp"

using namespace perles;

namespace {

// Exit statuses. Errors map one-to-one onto ErrorKind.
enum Exit : int {
    ok = 0,
    negative = 1,    // violations found, certificate failed, graph not k-connected
    incomplete = 2,  // search budget ran out before any violation was found
    usage = 3,
    err_precondition = 10,
    err_parse = 11,
    err_invariant = 12,
    err_stage = 13,
    err_io = 14,
};

int exit_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::precondition: return err_precondition;
        case ErrorKind::parse: return err_parse;
        case ErrorKind::invariant: return err_invariant;
        case ErrorKind::stage: return err_stage;
        case ErrorKind::io: return err_io;
    }
    return err_invariant;
}

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write '" + path + "'");
    out << text;
    if (!out) fail(ErrorKind::io, "write failed for '" + path + "'");
}

// A file holds either a ".cplx" complex ("dim ...") or a model ("d ...").
using Loaded = std::variant<SimplicialComplex, SimplePolytopeModel>;

Loaded load(const std::string& path) {
    std::string text = slurp(path);
    std::istringstream is(text);
    if (text.rfind("dim ", 0) == 0) return read_cplx(is);
    if (text.rfind("d ", 0) == 0) return read_model(is);
    fail(ErrorKind::parse, "'" + path + "' is neither a .cplx complex nor a model file");
}

SimplicialComplex load_complex(const std::string& path) {
    auto x = load(path);
    if (auto* k = std::get_if<SimplicialComplex>(&x)) return *k;
    return to_simplicial_boundary(std::get<SimplePolytopeModel>(x));
}

SimplePolytopeModel load_model(const std::string& path) {
    auto x = load(path);
    if (auto* p = std::get_if<SimplePolytopeModel>(&x)) return *p;
    return from_simplicial_boundary(std::get<SimplicialComplex>(x));
}

SimplicialComplex load_sphere(const std::string& path) {
    auto k = load_complex(path);
    auto pm = is_closed_pseudomanifold(k);
    require(pm.closed, "'" + path + "' is not a closed pseudomanifold");
    return k;
}

// --factor values: simplex:D, polygon:N, segment, or a path.
SimplePolytopeModel factor_model(const std::string& spec) {
    auto colon = spec.find(':');
    std::string head = spec.substr(0, colon);
    auto arg = [&] {
        require(colon != std::string::npos, "factor '" + spec + "' needs a parameter");
        try {
            return std::stoi(spec.substr(colon + 1));
        } catch (const std::exception&) {
            fail(ErrorKind::precondition, "factor '" + spec + "': bad parameter");
        }
    };
    if (head == "simplex") return simplex_model(arg());
    if (head == "polygon") return polygon_model(arg());
    if (head == "segment") return segment_model();
    return load_model(spec);
}

std::string complex_summary(const std::string& kind, const SimplicialComplex& k) {
    std::ostringstream os;
    auto pm = is_closed_pseudomanifold(k);
    os << "gen " << kind << ": format cplx dim " << k.dim() << " facets " << k.facet_count() << " vertices "
       << k.vertex_count() << " pure " << (k.is_pure() ? "true" : "false") << " closed_pseudomanifold "
       << (pm.closed ? "true" : "false") << " euler " << euler_characteristic(k) << '\n';
    return os.str();
}

std::string model_summary(const std::string& kind, const SimplePolytopeModel& p) {
    std::ostringstream os;
    os << "gen " << kind << ": format model dim " << p.dim() << " facets " << p.facet_count() << " vertices "
       << p.vertex_count() << " regular " << (is_k_regular(p.graph(), p.dim()).regular ? "true" : "false")
       << " connected " << (is_connected(p.graph()) ? "true" : "false") << '\n';
    return os.str();
}

struct GenArgs {
    std::string kind, out, format, in;
    int d = 0, n = 0;
    std::vector<std::size_t> stack;
    std::vector<std::string> factors;
    std::size_t facet = 0;
    Node vertex = 0;
    std::vector<int> extents;
};

int run_gen(const GenArgs& a) {
    std::variant<SimplicialComplex, SimplePolytopeModel> result;
    auto pile = [&] {
        require(a.extents.size() == 3, "pile extents need three values");
        return PileSpec{a.extents[0], a.extents[1], a.extents[2]};
    };
    if (a.kind == "simplex") {
        result = simplex_boundary(a.d);
    } else if (a.kind == "cyclic") {
        result = cyclic_facets_gale({a.d, a.n});
    } else if (a.kind == "stacked") {
        result = stacked_boundary(a.d, a.stack);
    } else if (a.kind == "product") {
        require(a.factors.size() >= 2, "product needs at least two --factor values");
        auto p = factor_model(a.factors[0]);
        for (std::size_t i = 1; i < a.factors.size(); ++i) p = product_model(p, factor_model(a.factors[i]));
        result = p;
    } else if (a.kind == "wedge") {
        result = wedge_model(load_model(a.in), a.facet);
    } else if (a.kind == "truncate") {
        result = truncate_vertex_model(load_model(a.in), a.vertex);
    } else if (a.kind == "pile") {
        result = pile_triangulation(pile());
    } else if (a.kind == "sphere-from-pile") {
        result = sphere_from_pile(pile());
    } else {
        fail(ErrorKind::precondition, "unknown generator kind '" + a.kind + "'");
    }
    std::string format = a.format;
    if (format.empty()) format = std::holds_alternative<SimplicialComplex>(result) ? "cplx" : "model";
    std::ostringstream body;
    std::string summary;
    if (format == "cplx") {
        auto k = std::holds_alternative<SimplicialComplex>(result)
                     ? std::get<SimplicialComplex>(result)
                     : to_simplicial_boundary(std::get<SimplePolytopeModel>(result));
        write_cplx(body, k);
        summary = complex_summary(a.kind, k);
    } else {
        auto p = std::holds_alternative<SimplePolytopeModel>(result)
                     ? std::get<SimplePolytopeModel>(result)
                     : from_simplicial_boundary(std::get<SimplicialComplex>(result));
        write_model(body, p);
        summary = model_summary(a.kind, p);
    }
    emit(a.out, body.str());
    (a.out.empty() || a.out == "-" ? std::cerr : std::cout) << summary;
    return ok;
}

struct CheckArgs {
    std::string in, out, id;
    bool no_weak = false, brute_force = false, crosscheck = false;
    unsigned threads = 1;
    std::size_t budget = 0;
    std::vector<std::string> candidates;
};

int run_check(const CheckArgs& a) {
    auto sphere = load_sphere(a.in);
    ConjectureOptions options;
    options.brute_force = a.brute_force;
    options.weak = !a.no_weak;
    options.homology_crosscheck = a.crosscheck;
    options.threads = a.threads;
    options.budget = a.budget;
    options.id = a.id.empty() ? std::filesystem::path(a.in).stem().string() : a.id;
    for (const auto& path : a.candidates) {
        auto gamma = load_complex(path);
        VertexSet h;
        for (const auto& f : gamma.facets()) {
            auto idx = sphere.facet_index(f);
            std::ostringstream name;
            name << f;
            require(idx.has_value(), "candidate '" + path + "': " + name.str() + " is not a facet of the sphere");
            h.push_back(static_cast<Node>(*idx));
        }
        options.supplied.push_back(std::move(h));
    }
    auto report = check_conjecture(sphere, options);
    std::ostringstream os;
    write_conjecture_report(os, report);
    emit(a.out, os.str());
    std::cerr << "check " << report.id << ": candidates " << report.candidates.size() << " violations "
              << report.violations.size() << " verdict " << conjecture_verdict(report) << '\n';
    if (!report.violations.empty()) return negative;
    return report.complete ? ok : incomplete;
}

int run_core(const std::string& sphere_path, const std::string& gamma_path, const std::string& core_out,
             const std::string& report_out) {
    auto t0 = std::chrono::steady_clock::now();
    auto sphere = load_sphere(sphere_path);
    auto gamma = load_complex(gamma_path);
    auto core = compute_core(sphere, gamma);
    auto r = check_obstruction(sphere, gamma, core);
    if (!core_out.empty()) emit(core_out, to_cplx(core.triangles));
    std::ostringstream os;
    write_obstruction_report(os, core, r, ms_since(t0));
    emit(report_out, os.str());
    return r.all() ? ok : negative;
}

int run_homology(const std::string& in, const std::string& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto k = load_complex(in);
    auto h = homology_profile(k);
    std::ostringstream os;
    write_homology_report(os, k, h, ms_since(t0));
    emit(out, os.str());
    return ok;
}

// Graph of a model, or the dual graph of a complex.
int run_kconn(const std::string& in, int k, const std::string& out) {
    auto t0 = std::chrono::steady_clock::now();
    auto x = load(in);
    Graph g = std::holds_alternative<SimplePolytopeModel>(x) ? std::get<SimplePolytopeModel>(x).graph()
                                                              : dual_graph(std::get<SimplicialComplex>(x));
    auto naatz = naatz_k_connected(g, k);
    int kappa = vertex_connectivity(g);
    std::ostringstream os;
    os << "# timing elapsed_ms " << ms_since(t0) << '\n';
    os << "report kconn\n";
    os << "graph " << (std::holds_alternative<SimplePolytopeModel>(x) ? "model" : "dual") << '\n';
    os << "nodes " << g.node_count() << '\n';
    os << "edges " << g.edge_count() << '\n';
    os << "k " << k << '\n';
    os << "vertex_connectivity " << kappa << '\n';
    os << "naatz_k_connected " << (naatz.k_connected ? "true" : "false") << '\n';
    os << "naatz_witness ";
    if (naatz.witness)
        os << naatz.witness->first << ' ' << naatz.witness->second;
    else
        os << '-';
    os << '\n';
    os << "agree " << (naatz.k_connected == (kappa >= k) ? "true" : "false") << '\n';
    emit(out, os.str());
    if (naatz.k_connected != (kappa >= k)) fail(ErrorKind::invariant, "kconn: distance-2 test disagrees with flow");
    return naatz.k_connected ? ok : negative;
}

int run_counterexample(const std::string& out_dir, const std::vector<int>& extents) {
    require(extents.size() == 3, "counterexample extents need three values");
    auto ce = build_counterexample({extents[0], extents[1], extents[2]});
    std::filesystem::create_directories(out_dir);
    auto dir = std::filesystem::path(out_dir);
    emit((dir / "PDelta.cplx").string(), to_cplx(ce.sphere));
    emit((dir / "Gamma.cplx").string(), to_cplx(ce.gamma));
    emit((dir / "certificate.txt").string(), to_report(ce.certificate));
    std::cout << "counterexample: sphere vertices " << ce.sphere.vertex_count() << " facets "
              << ce.sphere.facet_count() << " gamma facets " << ce.gamma.facet_count() << " core triangles "
              << ce.certificate.core_triangles << " verdict "
              << (ce.certificate.counterexample() ? "counterexample" : "not-counterexample") << '\n';
    for (const auto& s : ce.stages)
        std::cout << "stage " << s.stage << " vertices " << s.vertices << " facets " << s.facets << '\n';
    return ce.certificate.counterexample() ? ok : negative;
}

int run_verify(const std::string& sphere_path, const std::string& gamma_path, const std::string& out) {
    auto sphere = load_complex(sphere_path);
    auto gamma = load_complex(gamma_path);
    auto cert = verify_certificate(sphere, gamma);
    emit(out, to_report(cert));
    for (const auto& c : cert.checks)
        if (!c.pass) std::cerr << "verify: " << c.name << " failed: " << c.witness << '\n';
    return cert.counterexample() ? ok : negative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Perles conjecture toolkit: generators, candidate search, core obstruction, counterexample"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a complex or simple polytope model");
    gen_cmd->add_option("kind", gen.kind, "simplex|cyclic|stacked|product|wedge|truncate|pile|sphere-from-pile")
        ->required()
        ->check(CLI::IsMember({"simplex", "cyclic", "stacked", "product", "wedge", "truncate", "pile",
                               "sphere-from-pile"}));
    gen_cmd->add_option("--d", gen.d, "dimension");
    gen_cmd->add_option("--n", gen.n, "vertex count (cyclic)");
    gen_cmd->add_option("--stack", gen.stack, "facet indices to stack on, in order");
    gen_cmd->add_option("--factor", gen.factors, "product factor: simplex:D, polygon:N, segment or a file");
    gen_cmd->add_option("--in", gen.in, "input model or .cplx (wedge, truncate)");
    gen_cmd->add_option("--facet", gen.facet, "facet index (wedge)");
    gen_cmd->add_option("--vertex", gen.vertex, "vertex id (truncate)");
    gen_cmd->add_option("--extents", gen.extents, "pile extents a b c")->expected(3);
    gen_cmd->add_option("--format", gen.format, "cplx or model")->check(CLI::IsMember({"cplx", "model"}));
    gen_cmd->add_option("-o,--out", gen.out, "output file (default stdout)");

    CheckArgs check;
    auto* check_cmd = app.add_subcommand("check", "enumerate Perles candidates and classify them");
    check_cmd->add_option("input", check.in, "simplicial sphere (.cplx) or model")->required();
    check_cmd->add_flag("--no-weak", check.no_weak, "skip the weak (d-1)-connectivity flag");
    check_cmd->add_flag("--brute-force", check.brute_force, "use the exhaustive subset scan");
    check_cmd->add_flag("--homology-crosscheck", check.crosscheck, "compare separation with Alexander duality");
    check_cmd->add_option("--threads", check.threads, "search threads");
    check_cmd->add_option("--budget", check.budget, "search node limit (0: none)");
    check_cmd->add_option("--candidate", check.candidates, "also classify this Gamma (.cplx of sphere facets)");
    check_cmd->add_option("--id", check.id, "polytope id in the report");
    check_cmd->add_option("-o,--out", check.out, "report file (default stdout)");

    std::string core_sphere, core_gamma, core_out, core_report;
    auto* core_cmd = app.add_subcommand("core", "compute core(Gamma) and check its laws");
    core_cmd->add_option("sphere", core_sphere)->required();
    core_cmd->add_option("gamma", core_gamma)->required();
    core_cmd->add_option("--core-out", core_out, "write the core as .cplx");
    core_cmd->add_option("-o,--out", core_report, "report file (default stdout)");

    std::string hom_in, hom_out;
    auto* hom_cmd = app.add_subcommand("homology", "integral homology profile of a complex");
    hom_cmd->add_option("input", hom_in)->required();
    hom_cmd->add_option("-o,--out", hom_out);

    std::string kconn_in, kconn_out;
    int kconn_k = 2;
    auto* kconn_cmd = app.add_subcommand("kconn", "k-connectivity of a model graph or a dual graph");
    kconn_cmd->add_option("input", kconn_in)->required();
    kconn_cmd->add_option("-k", kconn_k, "connectivity to test")->check(CLI::PositiveNumber);
    kconn_cmd->add_option("-o,--out", kconn_out);

    std::string ce_dir = ".";
    std::vector<int> ce_extents{2, 3, 4};
    auto* ce_cmd = app.add_subcommand("counterexample", "build the 4-dimensional counterexample and certify it");
    ce_cmd->add_option("out_dir", ce_dir, "directory for PDelta.cplx, Gamma.cplx, certificate.txt");
    ce_cmd->add_option("--extents", ce_extents, "pile extents")->expected(3);

    std::string ver_sphere, ver_gamma, ver_out;
    auto* ver_cmd = app.add_subcommand("verify", "certify a (sphere, Gamma) pair");
    ver_cmd->add_option("sphere", ver_sphere)->required();
    ver_cmd->add_option("gamma", ver_gamma)->required();
    ver_cmd->add_option("-o,--out", ver_out, "certificate file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        if (*gen_cmd) return run_gen(gen);
        if (*check_cmd) return run_check(check);
        if (*core_cmd) return run_core(core_sphere, core_gamma, core_out, core_report);
        if (*hom_cmd) return run_homology(hom_in, hom_out);
        if (*kconn_cmd) return run_kconn(kconn_in, kconn_k, kconn_out);
        if (*ce_cmd) return run_counterexample(ce_dir, ce_extents);
        if (*ver_cmd) return run_verify(ver_sphere, ver_gamma, ver_out);
    } catch (const Error& e) {
        std::cerr << "error " << to_string(e.kind()) << ": " << e.what() << '\n';
        return exit_for(e.kind());
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error io: " << e.what() << '\n';
        return err_io;
    }
    return usage;
}
