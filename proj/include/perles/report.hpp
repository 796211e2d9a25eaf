#pragma once

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "perles/complex.hpp"
#include "perles/counterexample.hpp"
#include "perles/error.hpp"
#include "perles/homology.hpp"
#include "perles/perles.hpp"

/*
 * Line-oriented reports. The first line is "# timing ..." and carries every
 * run-dependent number; everything after it is a function of the inputs.
 * Each following line is "<key> <value...>" in a fixed order. Complexes are
 * embedded as ".cplx" text between "begin <name>" and "end <name>".
 */

namespace perles {

namespace detail {

inline const char* yes_no(bool b) { return b ? "true" : "false"; }

inline std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

inline void write_set(std::ostream& os, const VertexSet& h) {
    for (Node v : h) os << ' ' << v;
}

inline void write_block(std::ostream& os, const std::string& name, const SimplicialComplex& k_cx) {
    os << "begin " << name << '\n';
    write_cplx(os, k_cx);
    os << "end " << name << '\n';
}

}  // namespace detail

// "betti 1 0 0 1 torsion -" or "... torsion 1:2 2:2,4" (dimension:orders).
inline void write_homology_value(std::ostream& os, const HomologyProfile& h) {
    os << "betti";
    for (auto b : h.betti) os << ' ' << b;
    os << " torsion";
    if (h.torsion_free()) {
        os << " -";
        return;
    }
    for (std::size_t k = 0; k < h.torsion.size(); ++k) {
        if (h.torsion[k].empty()) continue;
        os << ' ' << k << ':';
        for (std::size_t i = 0; i < h.torsion[k].size(); ++i) os << (i ? "," : "") << h.torsion[k][i];
    }
}

inline HomologyProfile parse_homology_value(const std::string& text) {
    std::istringstream is(text);
    std::string word;
    HomologyProfile h;
    if (!(is >> word) || word != "betti") fail(ErrorKind::parse, "report: homology must start with 'betti'");
    while (is >> word && word != "torsion") {
        try {
            h.betti.push_back(std::stoll(word));
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "report: bad betti number '" + word + "'");
        }
    }
    if (word != "torsion") fail(ErrorKind::parse, "report: homology lacks 'torsion'");
    h.torsion.assign(h.betti.size(), {});
    while (is >> word) {
        if (word == "-") continue;
        auto colon = word.find(':');
        if (colon == std::string::npos) fail(ErrorKind::parse, "report: bad torsion entry '" + word + "'");
        std::size_t k = std::stoul(word.substr(0, colon));
        if (k >= h.torsion.size()) fail(ErrorKind::parse, "report: torsion dimension out of range");
        std::istringstream orders(word.substr(colon + 1));
        std::string t;
        while (std::getline(orders, t, ',')) h.torsion[k].push_back(BigInt(t));
    }
    return h;
}

inline void write_homology_report(std::ostream& os, const SimplicialComplex& k_cx, const HomologyProfile& h,
                                  double elapsed_ms) {
    os << "# timing elapsed_ms " << elapsed_ms << '\n';
    os << "report homology\n";
    os << "dim " << k_cx.dim() << '\n';
    os << "vertices " << k_cx.vertex_count() << '\n';
    os << "facets " << k_cx.facet_count() << '\n';
    os << "f_vector";
    for (auto f : f_vector(k_cx)) os << ' ' << f;
    os << '\n';
    os << "euler " << euler_characteristic(k_cx) << '\n';
    os << "homology ";
    write_homology_value(os, h);
    os << '\n';
}

inline void write_obstruction_fields(std::ostream& os, const ObstructionReport& r, const std::string& indent = "") {
    os << indent << "core_empty " << detail::yes_no(r.core_empty) << '\n';
    os << indent << "core_no_free_ridge " << detail::yes_no(r.core_has_no_free_ridge) << '\n';
    os << indent << "free_ridge_witness ";
    if (r.free_ridge_witness)
        os << *r.free_ridge_witness;
    else
        os << '-';
    os << '\n';
    os << indent << "star_vertex ";
    if (r.star_vertex)
        os << *r.star_vertex;
    else
        os << '-';
    os << '\n';
    os << indent << "empty_iff_vertex_star " << detail::yes_no(r.empty_iff_vertex_star) << '\n';
    os << indent << "gamma_separates " << detail::yes_no(r.gamma_separates) << '\n';
    os << indent << "core_top_homology_zero " << detail::yes_no(r.core_top_homology_zero) << '\n';
    os << indent << "separation_law " << detail::yes_no(r.separation_law) << '\n';
    os << indent << "core_dually_connected " << detail::yes_no(r.core_dually_connected) << '\n';
}

inline void write_obstruction_report(std::ostream& os, const CoreComplex& core, const ObstructionReport& r,
                                     double elapsed_ms) {
    os << "# timing elapsed_ms " << elapsed_ms << '\n';
    os << "report obstruction\n";
    os << "core_triangles " << core.triangles.facet_count() << '\n';
    write_obstruction_fields(os, r);
    os << "verdict " << (r.all() ? "laws-hold" : "laws-fail") << '\n';
}

inline std::string conjecture_verdict(const ConjectureReport& r) {
    if (!r.violations.empty()) return "violated";
    return r.complete ? "satisfies" : "incomplete";
}

inline void write_conjecture_report(std::ostream& os, const ConjectureReport& r) {
    os << "# timing elapsed_ms " << r.elapsed_ms << " search_nodes " << r.search_nodes << '\n';
    os << "report conjecture\n";
    os << "id " << r.id << '\n';
    os << "dimension " << r.dimension << '\n';
    os << "vertices " << r.vertex_count << '\n';
    os << "facets " << r.facet_count << '\n';
    os << "engine " << r.engine << '\n';
    os << "complete " << detail::yes_no(r.complete) << '\n';
    os << "crosscheck ";
    if (!r.crosscheck_run)
        os << "skipped";
    else
        os << (r.crosscheck_agrees ? "agrees" : "disagrees");
    os << '\n';
    os << "candidates " << r.candidates.size() << '\n';
    for (const auto& c : r.candidates) {
        os << "candidate ";
        if (c.facet)
            os << "facet " << *c.facet;
        else
            os << "violation";
        os << " set";
        detail::write_set(os, c.candidate.vertex_set);
        os << '\n';
    }
    os << "violations " << r.violations.size() << '\n';
    for (std::size_t i = 0; i < r.violations.size(); ++i) {
        const auto& v = r.violations[i];
        os << "violation " << i << '\n';
        os << "  set";
        detail::write_set(os, v.vertex_set);
        os << '\n';
        os << "  weak " << detail::yes_no(v.weak) << '\n';
        os << "  core_error " << (v.core_error.empty() ? "-" : detail::one_line(v.core_error)) << '\n';
        if (v.obstruction) write_obstruction_fields(os, *v.obstruction, "  ");
        detail::write_block(os, "gamma", v.gamma);
        if (v.core) detail::write_block(os, "core", v.core->triangles);
    }
    os << "verdict " << conjecture_verdict(r) << '\n';
}

inline void write_certificate(std::ostream& os, const Certificate& c) {
    os << "# timing elapsed_ms " << c.elapsed_ms << '\n';
    os << "report certificate\n";
    os << "sphere_vertices " << c.sphere_vertices << '\n';
    os << "sphere_facets " << c.sphere_facets << '\n';
    os << "gamma_facets " << c.gamma_facets << '\n';
    os << "core_triangles " << c.core_triangles << '\n';
    os << "gb_star_nodes " << c.gb_star_nodes << '\n';
    os << "gb_star_edges " << c.gb_star_edges << '\n';
    os << "gamma_dual_connectivity " << c.gamma_dual_connectivity << '\n';
    os << "h_planar " << (c.h_planar ? detail::yes_no(*c.h_planar) : "-") << '\n';
    os << "sphere_homology ";
    write_homology_value(os, c.sphere_homology);
    os << '\n';
    os << "core_homology ";
    write_homology_value(os, c.core_homology);
    os << '\n';
    os << "checks " << c.checks.size() << '\n';
    for (const auto& k : c.checks) {
        os << "check " << k.name << ' ' << (k.pass ? "pass" : "fail");
        if (!k.witness.empty()) os << ' ' << detail::one_line(k.witness);
        os << '\n';
    }
    os << "verdict " << (c.counterexample() ? "counterexample" : "not-counterexample") << '\n';
}

inline std::string to_report(const Certificate& c) {
    std::ostringstream os;
    write_certificate(os, c);
    return os.str();
}

inline Certificate read_certificate(std::istream& is) {
    std::string line;
    Certificate c;
    std::getline(is, line);
    if (line.rfind("# timing", 0) != 0) fail(ErrorKind::parse, "certificate: missing timing header");
    {
        std::istringstream header(line.substr(8));
        std::string key;
        while (header >> key)
            if (key == "elapsed_ms") header >> c.elapsed_ms;
    }
    auto next = [&](const std::string& key) {
        if (!std::getline(is, line)) fail(ErrorKind::parse, "certificate: missing '" + key + "'");
        if (line.rfind(key + ' ', 0) != 0) fail(ErrorKind::parse, "certificate: expected '" + key + "', got '" + line + "'");
        return line.substr(key.size() + 1);
    };
    auto number = [&](const std::string& key) {
        std::string v = next(key);
        try {
            return std::stoull(v);
        } catch (const std::exception&) {
            fail(ErrorKind::parse, "certificate: bad number for '" + key + "'");
        }
    };
    if (next("report") != "certificate") fail(ErrorKind::parse, "certificate: not a certificate report");
    c.sphere_vertices = number("sphere_vertices");
    c.sphere_facets = number("sphere_facets");
    c.gamma_facets = number("gamma_facets");
    c.core_triangles = number("core_triangles");
    c.gb_star_nodes = number("gb_star_nodes");
    c.gb_star_edges = number("gb_star_edges");
    c.gamma_dual_connectivity = static_cast<int>(number("gamma_dual_connectivity"));
    std::string planar = next("h_planar");
    if (planar != "-") c.h_planar = planar == "true";
    c.sphere_homology = parse_homology_value(next("sphere_homology"));
    c.core_homology = parse_homology_value(next("core_homology"));
    auto count = number("checks");
    for (std::size_t i = 0; i < count; ++i) {
        std::istringstream row(next("check"));
        CertificateCheck k;
        std::string status;
        if (!(row >> k.name >> status) || (status != "pass" && status != "fail"))
            fail(ErrorKind::parse, "certificate: bad check line '" + line + "'");
        k.pass = status == "pass";
        std::getline(row >> std::ws, k.witness);
        c.checks.push_back(std::move(k));
    }
    std::string verdict = next("verdict");
    if (verdict != (c.counterexample() ? "counterexample" : "not-counterexample"))
        fail(ErrorKind::parse, "certificate: verdict does not match the checks");
    return c;
}

inline Certificate certificate_from_report(const std::string& text) {
    std::istringstream is(text);
    return read_certificate(is);
}

// Body of a report without its timing header.
inline std::string strip_timing(const std::string& report) {
    if (report.rfind("# timing", 0) != 0) return report;
    auto eol = report.find('\n');
    return eol == std::string::npos ? std::string{} : report.substr(eol + 1);
}

}  // namespace perles
