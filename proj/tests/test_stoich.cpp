#include "oracles.hpp"

#include "rdnet/errors.hpp"
#include "rdnet/network.hpp"
#include "rdnet/stoich.hpp"

#include <doctest.h>

#include <random>

using namespace rdnet;
using namespace rdnet::stoich;

namespace {

const char* rothe = "species A1 A2 A3; A1 + A2 <-> A3 : kf=1, kb=1;";
const char* polymer = "species A1 A2 A3 A4; 2 A1 <-> A2 : kf=1, kb=1; A1 + A2 <-> A3 : kf=1, kb=1; "
                      "A1 + A3 <-> A4 : kf=1, kb=1;";
const char* mmh = "species A1 A2 A3 A4; A1 + A2 <-> A3 : kf=1, kb=1; A1 + A4 <-> A3 : kf=1, kb=1;";

std::vector<Rational> conservation(const StoichMatrix& M) {
    const auto r = find_conservation_vector(M);
    REQUIRE(std::holds_alternative<ConservationVector>(r));
    return std::get<ConservationVector>(r).e;
}

} // namespace

TEST_CASE("matrices of the worked examples") {
    const auto P = build_matrix(parse_network(polymer));
    CHECK(P.column(0) == std::vector<int>{-2, 1, 0, 0});
    CHECK(P.column(1) == std::vector<int>{-1, -1, 1, 0});
    CHECK(P.column(2) == std::vector<int>{-1, 0, -1, 1});
    CHECK(P.has_canonical_columns());
    const auto M = build_matrix(parse_network(mmh));
    CHECK(M.column(0) == std::vector<int>{-1, -1, 1, 0});
    CHECK(M.column(1) == std::vector<int>{-1, 0, 1, -1});
}

TEST_CASE("production rates by hand") {
    const auto spec = parse_network(rothe);
    const std::vector<double> eq{1, 1, 1}, a{2, 3, 0}, b{0, 5, 2};
    CHECK(production_rates(spec, eq).f == std::vector<double>{0, 0, 0});
    const auto ra = production_rates(spec, a);
    CHECK(ra.r == std::vector<double>{6});
    CHECK(ra.f == std::vector<double>{-6, -6, 6});
    CHECK(production_rates(spec, b).f[0] == 2.0);
    CHECK_THROWS_AS(production_rates(spec, std::vector<double>{-1, 0, 0}), DomainError);
}

TEST_CASE("rate decomposition by hand") {
    const auto spec = parse_network(rothe);
    const auto s = rate_decomposition(spec, std::vector<double>{2, 3, 4});
    CHECK(s.p[0] == 4.0);
    CHECK(s.q[0] == 3.0);
    CHECK(s.p[2] == 6.0);
    CHECK(s.q[2] == 1.0);
    const auto z = rate_decomposition(spec, std::vector<double>{0, 0, 0});
    CHECK(z.p == std::vector<double>{0, 0, 0});
}

TEST_CASE("rates match the exact rational oracle") {
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> num(0, 400);
    const auto spec = parse_network(polymer);
    for (int n = 0; n < 200; ++n) {
        std::vector<Rational> c;
        std::vector<double> cd;
        for (int i = 0; i < 4; ++i) {
            c.emplace_back(num(rng), 16);  // dyadic, so the double input is exact
            cd.push_back(to_double(c.back()));
        }
        const auto exact = oracle::exact_production(spec, c);
        const auto f = production_rates(spec, cd).f;
        for (int i = 0; i < 4; ++i) CHECK(f[i] == doctest::Approx(to_double(exact[i])).epsilon(1e-14));
        const auto s = rate_decomposition(spec, cd);
        for (int i = 0; i < 4; ++i) {
            CHECK(s.p[i] >= 0);
            CHECK(s.q[i] >= 0);
            CHECK(s.p[i] - s.q[i] * cd[i] == doctest::Approx(to_double(exact[i])).epsilon(1e-12));
        }
    }
}

TEST_CASE("conservation vectors") {
    CHECK(conservation(build_matrix(parse_network(rothe))) == std::vector<Rational>{1, 1, 2});
    CHECK(conservation(build_matrix(parse_network(polymer))) == std::vector<Rational>{1, 2, 3, 4});
    const auto bad = find_conservation_vector(StoichMatrix::from_columns(2, {{0, -1}}));
    REQUIRE(std::holds_alternative<Infeasible>(bad));
    CHECK(std::get<Infeasible>(bad).phase1_objective > 0);
}

TEST_CASE("random conservative networks: M^T e = 0 exactly and <e, f> ~ 0") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 10.0);
    for (int n = 0; n < 200; ++n) {
        const auto net = oracle::random_conservative_network(rng);
        const auto spec = parse_network(net.source);
        const auto M = build_matrix(spec);
        CHECK(M.has_canonical_columns());
        const auto e = conservation(M);
        for (std::size_t j = 0; j < M.cols(); ++j) {
            Rational dot = 0;
            for (std::size_t i = 0; i < M.rows(); ++i) dot += e[i] * M(i, j);
            CHECK(dot == 0);
        }
        Rational lo = e[0];
        for (const auto& v : e) lo = std::min(lo, v);
        CHECK(lo == 1);

        std::vector<double> c(spec.num_species());
        for (auto& v : c) v = u(rng);
        const auto f = production_rates(spec, c).f;
        double dot = 0, l1 = 0;
        for (std::size_t i = 0; i < f.size(); ++i) {
            dot += to_double(e[i]) * f[i];
            l1 += std::abs(f[i]);
        }
        CHECK(std::abs(dot) <= 1e-12 * std::max(l1, 1.0) * to_double(*std::max_element(e.begin(), e.end())));
    }
}

TEST_CASE("sorting the worked examples") {
    const auto p = sort_block_triangular(build_matrix(parse_network(polymer)));
    REQUIRE(std::holds_alternative<SortResult>(p));
    CHECK(std::get<SortResult>(p).row_perm == std::vector<std::size_t>{0, 1, 2, 3});
    CHECK(std::get<SortResult>(p).col_perm == std::vector<std::size_t>{0, 1, 2});

    const auto r = sort_block_triangular(build_matrix(parse_network("species A3 A1 A2; A1 + A2 <-> A3 : kf=1, kb=1;")));
    REQUIRE(std::holds_alternative<SortResult>(r));
    CHECK(std::get<SortResult>(r).row_perm.back() == 0);

    const auto m = sort_block_triangular(build_matrix(parse_network(mmh)));
    REQUIRE(std::holds_alternative<SortResult>(m));
    CHECK(std::get<SortResult>(m).row_perm == std::vector<std::size_t>{0, 1, 3, 2});
    CHECK(std::get<SortResult>(m).s == 3);
}

TEST_CASE("unsortable matrix is reported") {
    const auto out = sort_block_triangular(StoichMatrix::from_columns(2, {{0, -1}}));
    CHECK(std::holds_alternative<NotSortable>(out));
}

TEST_CASE("random conservative networks sort into block-triangular form") {
    std::mt19937_64 rng(9);
    for (int n = 0; n < 300; ++n) {
        const auto M = build_matrix(parse_network(oracle::random_conservative_network(rng).source));
        const auto out = sort_block_triangular(M);
        REQUIRE(std::holds_alternative<SortResult>(out));
        const auto sorted = permute(M, std::get<SortResult>(out));
        CHECK(oracle::plus_one_below_negatives(sorted));
        CHECK(is_block_triangular(sorted));
        CHECK(rank(sorted) == rank(M));
    }
}

TEST_CASE("growth bounds of sorted networks") {
    // f_k <= C sum c for never-product rows, f_k <= C (sum c + sum_{i<k} c_i^2) below them.
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(0.0, 20.0);
    for (int n = 0; n < 100; ++n) {
        const auto spec = parse_network(oracle::random_conservative_network(rng).source);
        const auto M = build_matrix(spec);
        const auto sr = std::get<SortResult>(sort_block_triangular(M));
        const double C = std::max(1.0, 2.0 * static_cast<double>(spec.num_reactions()));
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<double> c(spec.num_species());
            for (auto& v : c) v = u(rng);
            const auto f = production_rates(spec, c).f;
            double sum = 0;
            for (double v : c) sum += v;
            double squares = 0;
            for (std::size_t k = 0; k < sr.row_perm.size(); ++k) {
                const std::size_t i = sr.row_perm[k];
                const double bound = k < sr.s ? C * sum : C * (sum + squares);
                CHECK(f[i] <= bound * (1 + 1e-12));
                squares += c[i] * c[i];
            }
        }
    }
}

TEST_CASE("quasi-positivity") {
    const auto r = check_quasi_positivity(parse_network(rothe), 500);
    CHECK(r.sampled_pass);
    CHECK(r.structural_pass);
    CHECK(r.min_face_value[0] == 0.0);
    CHECK(check_quasi_positivity(parse_network(mmh), 500).sampled_pass);
    CHECK(check_quasi_positivity(parse_network(polymer), 500).sampled_pass);
    const auto frac = parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=1, kb=1, alpha=0.5, gamma=2;");
    CHECK(check_quasi_positivity(frac, 500).sampled_pass);
}

TEST_CASE("sink collects sub-linear consumption") {
    const auto spec = parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=1, kb=1, alpha=0.5;");
    const std::vector<double> c{4, 2, 1};
    const auto s = rate_decomposition(spec, c);
    CHECK(s.sink[0] == doctest::Approx(4.0));  // 4^0.5 * 2
    CHECK(s.q[0] == 0.0);
    const auto f = production_rates(spec, c).f;
    for (int i = 0; i < 3; ++i) CHECK(s.p[i] - s.q[i] * c[i] - s.sink[i] == doctest::Approx(f[i]));
}
