#pragma once

#include "rdnet/network.hpp"
#include "rdnet/rational.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace rdnet::stoich {

/// Dense P x R integer matrix, row-major. Column j is the net change
/// e_product - e_a - e_b of reaction j.
class StoichMatrix {
public:
    StoichMatrix() = default;
    StoichMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols, 0) {}

    /// Arbitrary integer entries, one inner vector per column. No structural
    /// checks: used for hand-built matrices outside the canonical class.
    static StoichMatrix from_columns(std::size_t rows, const std::vector<std::vector<int>>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
    int& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    std::span<const int> row_major() const { return entries_; }
    std::vector<int> column(std::size_t j) const;

    /// One +1 per column, negatives either a single -2 or two -1, column sum -1.
    bool has_canonical_columns() const;

    bool operator==(const StoichMatrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<int> entries_;
};

StoichMatrix build_matrix(const NetworkSpec& spec);

/// Mass-action rate evaluation precompiled from a NetworkSpec. Concentrations
/// are clamped below at 0 before any power is taken; no allocation per call.
class RateModel {
public:
    explicit RateModel(const NetworkSpec& spec);

    std::size_t num_species() const { return P_; }
    std::size_t num_reactions() const { return terms_.size(); }
    bool unit_exponents() const { return unit_; }

    /// r_j = kf c_a^alpha c_b^beta - kb c_p^gamma
    void rates(std::span<const double> c, std::span<double> r) const;
    /// f = M r, accumulated per species in reaction order.
    void production(std::span<const double> c, std::span<double> f) const;
    /// f = p - q*c - sink with p, q, sink >= 0. sink collects consumption terms
    /// whose own-species exponent is below 1 (no Lipschitz p - q c split there).
    void split(std::span<const double> c, std::span<double> p, std::span<double> q, std::span<double> sink) const;

private:
    struct Term {
        std::size_t a, b, prod;
        double kf, kb, alpha, beta, gamma;
        bool unit;
    };
    std::size_t P_ = 0;
    bool unit_ = true;
    std::vector<Term> terms_;
};

struct Rates {
    std::vector<double> r;  // per reaction
    std::vector<double> f;  // per species
};

/// Throws DomainError if any concentration is negative.
Rates production_rates(const NetworkSpec& spec, std::span<const double> c);

struct RateSplit {
    std::vector<double> p;
    std::vector<double> q;
    std::vector<double> sink;  // zero when all exponents are >= 1
};

RateSplit rate_decomposition(const NetworkSpec& spec, std::span<const double> c);

struct ConservationVector {
    std::vector<Rational> e;  // strictly positive, min entry 1
    std::size_t nullspace_dim = 0;
};

/// No strictly positive e with M^T e = 0. The phase-1 optimum of
/// min sum(artificials) over {M^T e = 0, e >= 1} is positive.
struct Infeasible {
    Rational phase1_objective;
    std::size_t nullspace_dim = 0;
};

using ConservationResult = std::variant<ConservationVector, Infeasible>;

ConservationResult find_conservation_vector(const StoichMatrix& M);

std::size_t rank(const StoichMatrix& M);

struct SortResult {
    std::vector<std::size_t> row_perm;  // sorted row i is original row row_perm[i]
    std::vector<std::size_t> col_perm;  // sorted column j is original column col_perm[j]
    std::size_t s = 0;                  // leading never-product rows
    std::vector<std::size_t> block_bounds;  // column offsets of blocks N1..Nk, plus R

    bool operator==(const SortResult&) const = default;
};

struct NotSortable {
    std::string reason;
    std::size_t rows_remaining = 0;
    std::size_t cols_remaining = 0;
};

using SortOutcome = std::variant<SortResult, NotSortable>;

SortOutcome sort_block_triangular(const StoichMatrix& M);

StoichMatrix permute(const StoichMatrix& M, const SortResult& s);

/// Every column's +1 sits strictly below each of its negative entries.
bool is_block_triangular(const StoichMatrix& M);

struct QuasiPositivityReport {
    std::vector<double> min_face_value;  // per species, min f_i over sampled points with c_i = 0
    std::size_t points_per_species = 0;
    bool sampled_pass = false;     // all minima >= -tolerance
    bool structural_pass = false;  // nonnegative constants and product not among reactants
    double tolerance = 1e-12;
};

QuasiPositivityReport check_quasi_positivity(const NetworkSpec& spec, std::size_t samples,
                                             std::uint64_t seed = 2024, double c_max = 10.0);

} // namespace rdnet::stoich
