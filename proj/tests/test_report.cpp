#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "corpus.hpp"
#include "perles/generators.hpp"
#include "perles/report.hpp"

using namespace perles;

namespace {

std::vector<std::string> keys(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream is(text);
    std::string line;
    while (std::getline(is, line)) out.push_back(line.substr(0, line.find(' ')));
    return out;
}

}  // namespace

TEST_CASE("homology values round trip") {
    for (const auto& [name, k] : corpus::complexes()) {
        INFO(name);
        auto h = homology_profile(k);
        std::ostringstream os;
        write_homology_value(os, h);
        CHECK(parse_homology_value(os.str()) == h);
    }
    std::ostringstream os;
    write_homology_value(os, homology_profile(corpus::rp2_6()));
    CHECK(os.str() == "betti 1 0 0 torsion 1:2");
}

TEST_CASE("malformed homology values") {
    CHECK_THROWS_AS(parse_homology_value("bettix 1"), Error);
    CHECK_THROWS_AS(parse_homology_value("betti 1 x torsion -"), Error);
    CHECK_THROWS_AS(parse_homology_value("betti 1 0"), Error);
    CHECK_THROWS_AS(parse_homology_value("betti 1 torsion 4:2"), Error);
}

TEST_CASE("conjecture report layout") {
    auto r = check_conjecture(cyclic_facets_gale({4, 7}), {.id = "c47"});
    std::ostringstream os;
    write_conjecture_report(os, r);
    auto k = keys(os.str());
    std::vector<std::string> head{"#",       "report",     "id",         "dimension", "vertices",
                                  "facets",  "engine",     "complete",   "crosscheck", "candidates"};
    REQUIRE(k.size() == head.size() + 7 + 2);
    CHECK(std::vector<std::string>(k.begin(), k.begin() + 10) == head);
    for (std::size_t i = 10; i < 17; ++i) CHECK(k[i] == "candidate");
    CHECK(k[17] == "violations");
    CHECK(k[18] == "verdict");
    CHECK(os.str().find("verdict satisfies\n") != std::string::npos);
}

TEST_CASE("conjecture reports are deterministic apart from timing") {
    auto sphere = corpus::octahedron();
    auto once = [&](unsigned threads) {
        std::ostringstream os;
        write_conjecture_report(os, check_conjecture(sphere, {.threads = threads, .id = "octahedron"}));
        return strip_timing(os.str());
    };
    CHECK(once(1) == once(1));
    CHECK(once(1) == once(3));
}

TEST_CASE("violations carry gamma and core") {
    // the 7-vertex torus is not a sphere, and its dual graph has non-facet candidates
    auto r = check_conjecture(corpus::torus7(), {.id = "torus"});
    REQUIRE_FALSE(r.violations.empty());
    std::ostringstream os;
    write_conjecture_report(os, r);
    auto text = os.str();
    CHECK(text.find("begin gamma\n") != std::string::npos);
    CHECK(text.find("end gamma\n") != std::string::npos);
    CHECK(text.find("verdict violated\n") != std::string::npos);
    auto at = text.find("begin gamma\n") + 12;
    auto gamma = from_cplx(text.substr(at, text.find("end gamma\n") - at));
    CHECK(gamma == r.violations[0].gamma);
}

TEST_CASE("incomplete searches never claim success") {
    auto sphere = cyclic_facets_gale({4, 8});
    auto r = check_conjecture(sphere, {.budget = 3});
    CHECK_FALSE(r.complete);
    CHECK_FALSE(r.satisfies());
    CHECK(conjecture_verdict(r) == "incomplete");
    auto full = check_conjecture(sphere);
    CHECK(full.complete);
    CHECK(full.satisfies());
}

TEST_CASE("supplied candidates are classified") {
    auto sphere = corpus::simplex_boundary4();
    // the facet sets are already found; a non-candidate is ignored
    ConjectureOptions options;
    options.supplied = {{0}, {0, 1}};
    auto r = check_conjecture(sphere, options);
    CHECK(r.candidates.size() == 5);
    CHECK(r.violations.empty());
}

TEST_CASE("certificate reader rejects damage") {
    auto good = to_report(verify_certificate(corpus::simplex_boundary4(),
                                             star(corpus::simplex_boundary4(), Simplex::sorted({0}))));
    CHECK_NOTHROW(certificate_from_report(good));
    CHECK(to_report(certificate_from_report(good)) == good);
    CHECK_THROWS_AS(certificate_from_report(strip_timing(good)), Error);
    auto flipped = good;
    flipped.replace(flipped.find("verdict not-counterexample"), 26, "verdict counterexample");
    CHECK_THROWS_AS(certificate_from_report(flipped), Error);
}
