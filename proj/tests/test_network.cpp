#include "rdnet/errors.hpp"
#include "rdnet/network.hpp"
#include "rdnet/stoich.hpp"

#include <doctest.h>

#include <filesystem>

using namespace rdnet;

TEST_CASE("Rothe network parses to one reaction") {
    const auto spec = parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=1, kb=1;");
    CHECK(spec.num_species() == 3);
    REQUIRE(spec.num_reactions() == 1);
    CHECK(stoich::build_matrix(spec).column(0) == std::vector<int>{-1, -1, 1});
    CHECK(spec.diffusivities[0].kind == DiffusivityKind::Constant);
    CHECK(spec.diffusivities[0].lower_bound == 1);
}

TEST_CASE("dimerization with a doubled reactant") {
    const auto spec = parse_network("species A1 A2; 2 A1 <-> A2 : kf=0.5, kb=0;");
    CHECK(stoich::build_matrix(spec).column(0) == std::vector<int>{-2, 1});
    CHECK(spec.reactions[0].kf == Rational(1, 2));
    CHECK(spec.reactions[0].kb == 0);
}

TEST_CASE("dangling plus is a parse error at the plus") {
    try {
        parse_network("species A1 A3; A1 + <-> A3 : kf=1, kb=1;");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 1);
        CHECK(e.column() == 19);
        CHECK(e.token() == "+");
    }
}

TEST_CASE("parse error positions count lines and columns") {
    try {
        parse_network("species A1 A2 A3;\nA1 + A2 <=> A3 : kf=1, kb=1;");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
        CHECK(e.column() >= 9);
    }
}

TEST_CASE("semantic violations are validation errors") {
    CHECK_THROWS_AS(parse_network("species A1 A2; A1 + A3 <-> A2 : kf=1, kb=1;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=-1, kb=1;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1 A2; A1 + A2 <-> A1 : kf=1, kb=1;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=1, kb=1, gamma=0;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1 A1;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1 A2 A3; A1 + A2 -> A3 : kf=1, kb=1;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1; diff A1 = 0.5 - c1 : dmin=0.1;"), ValidationError);
    CHECK_THROWS_AS(parse_network("species A1; diff A1 = 1 + c2;"), ValidationError);
}

TEST_CASE("diffusivity classification") {
    const auto spec = parse_network("species A1 A2 A3;\n"
                                    "diff A1 = 2;\n"
                                    "diff A2 = 1 + c2^2 : dmin=1;\n"
                                    "diff A3 = 1 + exp(-t)*c1 : dmin=1;\n");
    CHECK(spec.diffusivities[0].kind == DiffusivityKind::Constant);
    CHECK(spec.diffusivities[0].lower_bound == 2);
    CHECK(spec.diffusivities[1].kind == DiffusivityKind::OwnConcentration);
    CHECK(spec.diffusivities[2].kind == DiffusivityKind::General);
}

TEST_CASE("missing dmin defaults to a sampled lower bound") {
    const auto spec = parse_network("species A1; diff A1 = 2 + c1;");
    CHECK(spec.diffusivities[0].lower_bound > 0);
    CHECK(spec.diffusivities[0].lower_bound <= 2);
}

TEST_CASE("format and parse round-trip for the corpus") {
    for (const auto& entry : std::filesystem::directory_iterator(RDNET_DATA_DIR)) {
        CAPTURE(entry.path().string());
        const auto spec = load_network_file(entry.path().string());
        CHECK(parse_network(format_network(spec)) == spec);
        CHECK(load_network_file(entry.path().string()) == spec);
    }
}

TEST_CASE("missing file is an IO error") {
    CHECK_THROWS_AS(load_network_file("/nonexistent/x.rxn"), IOError);
}
