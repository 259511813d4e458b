#include "rdnet/stoich.hpp"

#include "rdnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace rdnet::stoich {

StoichMatrix StoichMatrix::from_columns(std::size_t rows, const std::vector<std::vector<int>>& columns) {
    StoichMatrix M(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].size() != rows) throw std::invalid_argument("column length does not match row count");
        for (std::size_t i = 0; i < rows; ++i) M(i, j) = columns[j][i];
    }
    return M;
}

std::vector<int> StoichMatrix::column(std::size_t j) const {
    std::vector<int> col(rows_);
    for (std::size_t i = 0; i < rows_; ++i) col[i] = (*this)(i, j);
    return col;
}

bool StoichMatrix::has_canonical_columns() const {
    for (std::size_t j = 0; j < cols_; ++j) {
        int plus = 0, minus_one = 0, minus_two = 0, sum = 0;
        for (std::size_t i = 0; i < rows_; ++i) {
            const int v = (*this)(i, j);
            sum += v;
            if (v == 1) ++plus;
            else if (v == -1) ++minus_one;
            else if (v == -2) ++minus_two;
            else if (v != 0) return false;
        }
        const bool negatives_ok = (minus_one == 2 && minus_two == 0) || (minus_one == 0 && minus_two == 1);
        if (plus != 1 || !negatives_ok || sum != -1) return false;
    }
    return true;
}

StoichMatrix build_matrix(const NetworkSpec& spec) {
    StoichMatrix M(spec.num_species(), spec.num_reactions());
    for (std::size_t j = 0; j < spec.reactions.size(); ++j) {
        const auto& r = spec.reactions[j];
        M(r.product, j) += 1;
        M(r.reactant_a, j) -= 1;
        M(r.reactant_b, j) -= 1;
    }
    return M;
}

// ---------------------------------------------------------------------------
// Rates

RateModel::RateModel(const NetworkSpec& spec) : P_(spec.num_species()) {
    terms_.reserve(spec.reactions.size());
    for (const auto& r : spec.reactions) {
        Term t{r.reactant_a, r.reactant_b, r.product, to_double(r.kf), to_double(r.kb),
               to_double(r.alpha), to_double(r.beta), to_double(r.gamma), r.unit_exponents()};
        unit_ = unit_ && t.unit;
        terms_.push_back(t);
    }
}

namespace {

inline double nonneg(double x) { return x > 0.0 ? x : 0.0; }

inline double forward_term(double kf, double ca, double cb, double alpha, double beta, bool unit) {
    if (unit) return kf * ca * cb;
    return kf * std::pow(ca, alpha) * std::pow(cb, beta);
}

} // namespace

void RateModel::rates(std::span<const double> c, std::span<double> r) const {
    for (std::size_t j = 0; j < terms_.size(); ++j) {
        const Term& t = terms_[j];
        const double ca = nonneg(c[t.a]);
        const double cb = nonneg(c[t.b]);
        const double cp = nonneg(c[t.prod]);
        const double fwd = forward_term(t.kf, ca, cb, t.alpha, t.beta, t.unit);
        const double bwd = t.unit ? t.kb * cp : t.kb * std::pow(cp, t.gamma);
        r[j] = fwd - bwd;
    }
}

void RateModel::production(std::span<const double> c, std::span<double> f) const {
    std::fill(f.begin(), f.end(), 0.0);
    for (const Term& t : terms_) {
        const double ca = nonneg(c[t.a]);
        const double cb = nonneg(c[t.b]);
        const double cp = nonneg(c[t.prod]);
        const double rj = forward_term(t.kf, ca, cb, t.alpha, t.beta, t.unit) -
                          (t.unit ? t.kb * cp : t.kb * std::pow(cp, t.gamma));
        if (t.a == t.b) {
            f[t.a] += -2.0 * rj;
        } else {
            f[t.a] += -rj;
            f[t.b] += -rj;
        }
        f[t.prod] += rj;
    }
}

void RateModel::split(std::span<const double> c, std::span<double> p, std::span<double> q,
                      std::span<double> sink) const {
    std::fill(p.begin(), p.end(), 0.0);
    std::fill(q.begin(), q.end(), 0.0);
    std::fill(sink.begin(), sink.end(), 0.0);
    for (const Term& t : terms_) {
        const double ca = nonneg(c[t.a]);
        const double cb = nonneg(c[t.b]);
        const double cp = nonneg(c[t.prod]);
        const double bwd = t.unit ? t.kb * cp : t.kb * std::pow(cp, t.gamma);

        // Product: gains the forward flux, loses the backward flux.
        p[t.prod] += forward_term(t.kf, ca, cb, t.alpha, t.beta, t.unit);
        if (t.unit || t.gamma >= 1.0) q[t.prod] += t.unit ? t.kb : t.kb * std::pow(cp, t.gamma - 1.0);
        else sink[t.prod] += bwd;

        if (t.a == t.b) {
            p[t.a] += 2.0 * bwd;
            const double e = t.alpha + t.beta;
            if (t.unit) q[t.a] += 2.0 * t.kf * ca;
            else if (e >= 1.0) q[t.a] += 2.0 * t.kf * std::pow(ca, e - 1.0);
            else sink[t.a] += 2.0 * t.kf * std::pow(ca, e);
        } else {
            p[t.a] += bwd;
            p[t.b] += bwd;
            if (t.unit) {
                q[t.a] += t.kf * cb;
                q[t.b] += t.kf * ca;
            } else {
                const double fa = std::pow(ca, t.alpha);
                const double fb = std::pow(cb, t.beta);
                if (t.alpha >= 1.0) q[t.a] += t.kf * std::pow(ca, t.alpha - 1.0) * fb;
                else sink[t.a] += t.kf * fa * fb;
                if (t.beta >= 1.0) q[t.b] += t.kf * fa * std::pow(cb, t.beta - 1.0);
                else sink[t.b] += t.kf * fa * fb;
            }
        }
    }
}

namespace {

void require_nonnegative(std::span<const double> c, std::size_t P) {
    if (c.size() != P) throw std::invalid_argument("concentration vector has wrong length");
    for (double v : c)
        if (!(v >= 0.0)) throw DomainError("negative concentration");
}

} // namespace

Rates production_rates(const NetworkSpec& spec, std::span<const double> c) {
    require_nonnegative(c, spec.num_species());
    RateModel model(spec);
    Rates out{std::vector<double>(spec.num_reactions()), std::vector<double>(spec.num_species())};
    model.rates(c, out.r);
    // f = M r, left to right over reactions.
    const StoichMatrix M = build_matrix(spec);
    for (std::size_t i = 0; i < M.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < M.cols(); ++j)
            if (M(i, j) != 0) acc += M(i, j) * out.r[j];
        out.f[i] = acc;
    }
    return out;
}

RateSplit rate_decomposition(const NetworkSpec& spec, std::span<const double> c) {
    require_nonnegative(c, spec.num_species());
    RateModel model(spec);
    const std::size_t P = spec.num_species();
    RateSplit s{std::vector<double>(P), std::vector<double>(P), std::vector<double>(P)};
    model.split(c, s.p, s.q, s.sink);
    return s;
}

// ---------------------------------------------------------------------------
// Exact conservation vector

std::size_t rank(const StoichMatrix& M) {
    std::vector<std::vector<Rational>> a(M.rows(), std::vector<Rational>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) a[i][j] = M(i, j);
    std::size_t r = 0;
    for (std::size_t col = 0; col < M.cols() && r < M.rows(); ++col) {
        std::size_t piv = r;
        while (piv < M.rows() && a[piv][col] == 0) ++piv;
        if (piv == M.rows()) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < M.rows(); ++i) {
            if (a[i][col] == 0) continue;
            const Rational factor = a[i][col] / a[r][col];
            for (std::size_t k = col; k < M.cols(); ++k) a[i][k] -= factor * a[r][k];
        }
        ++r;
    }
    return r;
}

namespace {

/// Dense tableau simplex over exact rationals with Bland's rule.
/// Solves min c^T x s.t. A x = b, x >= 0 starting from a given feasible basis.
class ExactSimplex {
public:
    ExactSimplex(std::vector<std::vector<Rational>> rows, std::vector<Rational> rhs, std::vector<std::size_t> basis)
        : t_(std::move(rows)), rhs_(std::move(rhs)), basis_(std::move(basis)) {}

    /// Minimizes cost over the current tableau; returns the optimal objective.
    Rational minimize(const std::vector<Rational>& cost) {
        const std::size_t n = cost.size();
        for (;;) {
            // Reduced costs d_k = c_k - c_B^T B^{-1} A_k; the tableau already holds B^{-1} A.
            std::size_t entering = n;
            for (std::size_t k = 0; k < n && entering == n; ++k) {
                if (is_basic(k)) continue;
                Rational d = cost[k];
                for (std::size_t i = 0; i < t_.size(); ++i) d -= cost[basis_[i]] * t_[i][k];
                if (d < 0) entering = k;
            }
            if (entering == n) break;

            std::size_t leaving = t_.size();
            Rational best_ratio;
            for (std::size_t i = 0; i < t_.size(); ++i) {
                if (t_[i][entering] <= 0) continue;
                const Rational ratio = rhs_[i] / t_[i][entering];
                if (leaving == t_.size() || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = i;
                    best_ratio = ratio;
                }
            }
            if (leaving == t_.size()) throw std::logic_error("phase-1 simplex is unbounded");
            pivot(leaving, entering);
        }
        Rational obj = 0;
        for (std::size_t i = 0; i < t_.size(); ++i) obj += cost[basis_[i]] * rhs_[i];
        return obj;
    }

    std::vector<Rational> solution(std::size_t n) const {
        std::vector<Rational> x(n, Rational(0));
        for (std::size_t i = 0; i < t_.size(); ++i) x[basis_[i]] = rhs_[i];
        return x;
    }

private:
    bool is_basic(std::size_t k) const { return std::find(basis_.begin(), basis_.end(), k) != basis_.end(); }

    void pivot(std::size_t row, std::size_t col) {
        const Rational inv = 1 / t_[row][col];
        for (auto& v : t_[row]) v *= inv;
        rhs_[row] *= inv;
        for (std::size_t i = 0; i < t_.size(); ++i) {
            if (i == row || t_[i][col] == 0) continue;
            const Rational factor = t_[i][col];
            for (std::size_t k = 0; k < t_[i].size(); ++k)
                if (t_[row][k] != 0) t_[i][k] -= factor * t_[row][k];
            rhs_[i] -= factor * rhs_[row];
        }
        basis_[row] = col;
    }

    std::vector<std::vector<Rational>> t_;
    std::vector<Rational> rhs_;
    std::vector<std::size_t> basis_;
};

} // namespace

ConservationResult find_conservation_vector(const StoichMatrix& M) {
    const std::size_t P = M.rows();
    const std::size_t R = M.cols();
    const std::size_t nullity = P - rank(M);

    // e = 1 + y, y >= 0:  M^T y = -M^T 1.  Artificials a_j, one per reaction.
    std::vector<std::vector<Rational>> rows(R, std::vector<Rational>(P + R, Rational(0)));
    std::vector<Rational> rhs(R);
    std::vector<std::size_t> basis(R);
    for (std::size_t j = 0; j < R; ++j) {
        long colsum = 0;
        for (std::size_t i = 0; i < P; ++i) colsum += M(i, j);
        const int sign = colsum > 0 ? -1 : 1;  // make rhs = -colsum nonnegative
        for (std::size_t i = 0; i < P; ++i) rows[j][i] = sign * M(i, j);
        rows[j][P + j] = 1;
        rhs[j] = Rational(-sign * colsum);
        basis[j] = P + j;
    }
    std::vector<Rational> cost(P + R, Rational(0));
    for (std::size_t j = 0; j < R; ++j) cost[P + j] = 1;

    ExactSimplex lp(std::move(rows), std::move(rhs), std::move(basis));
    const Rational objective = lp.minimize(cost);
    if (objective > 0) return Infeasible{objective, nullity};

    const auto y = lp.solution(P + R);
    ConservationVector cv;
    cv.nullspace_dim = nullity;
    cv.e.resize(P);
    for (std::size_t i = 0; i < P; ++i) cv.e[i] = 1 + y[i];
    const Rational mn = *std::min_element(cv.e.begin(), cv.e.end());
    for (auto& v : cv.e) v /= mn;
    return cv;
}

// ---------------------------------------------------------------------------
// Block-triangular sorting

SortOutcome sort_block_triangular(const StoichMatrix& M) {
    const std::size_t P = M.rows();
    const std::size_t R = M.cols();
    std::vector<bool> row_active(P, true), col_active(R, true);
    std::size_t rows_left = P, cols_left = R;

    // Filled from the bottom-right corner upwards.
    std::vector<std::size_t> product_rows;               // in extraction order
    std::vector<std::vector<std::size_t>> product_cols;  // columns owned by each product row

    while (cols_left > 0) {
        std::size_t pick = P;
        for (std::size_t i = 0; i < P && pick == P; ++i) {
            if (!row_active[i]) continue;
            bool nonneg = true, nonzero = false;
            for (std::size_t j = 0; j < R; ++j) {
                if (!col_active[j]) continue;
                if (M(i, j) < 0) { nonneg = false; break; }
                if (M(i, j) > 0) nonzero = true;
            }
            if (nonneg && nonzero) pick = i;
        }
        if (pick == P)
            return NotSortable{"no remaining species is a pure product of the remaining reactions", rows_left, cols_left};

        std::vector<std::size_t> owned;
        for (std::size_t j = 0; j < R; ++j)
            if (col_active[j] && M(pick, j) > 0) owned.push_back(j);
        for (std::size_t j : owned) col_active[j] = false;
        row_active[pick] = false;
        --rows_left;
        cols_left -= owned.size();
        product_rows.push_back(pick);
        product_cols.push_back(std::move(owned));
    }

    SortResult out;
    for (std::size_t i = 0; i < P; ++i)
        if (row_active[i]) out.row_perm.push_back(i);
    out.s = out.row_perm.size();
    out.block_bounds.push_back(0);
    for (std::size_t k = product_rows.size(); k-- > 0;) {
        out.row_perm.push_back(product_rows[k]);
        for (std::size_t j : product_cols[k]) out.col_perm.push_back(j);
        out.block_bounds.push_back(out.col_perm.size());
    }
    // Columns never claimed by a product row (only possible when R == 0 here).
    for (std::size_t j = 0; j < R; ++j)
        if (col_active[j]) out.col_perm.push_back(j);
    return out;
}

StoichMatrix permute(const StoichMatrix& M, const SortResult& s) {
    StoichMatrix out(M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = M(s.row_perm[i], s.col_perm[j]);
    return out;
}

bool is_block_triangular(const StoichMatrix& M) {
    for (std::size_t j = 0; j < M.cols(); ++j) {
        std::size_t plus_row = M.rows();
        std::size_t lowest_negative = 0;
        bool any_negative = false;
        for (std::size_t i = 0; i < M.rows(); ++i) {
            if (M(i, j) > 0) plus_row = i;
            if (M(i, j) < 0) {
                lowest_negative = i;
                any_negative = true;
            }
        }
        if (plus_row == M.rows()) return false;
        if (any_negative && plus_row <= lowest_negative) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Quasi-positivity

QuasiPositivityReport check_quasi_positivity(const NetworkSpec& spec, std::size_t samples, std::uint64_t seed,
                                             double c_max) {
    if (samples < 1) throw std::invalid_argument("samples must be >= 1");
    const std::size_t P = spec.num_species();
    RateModel model(spec);
    QuasiPositivityReport rep;
    rep.min_face_value.assign(P, std::numeric_limits<double>::infinity());

    rep.structural_pass = true;
    for (const auto& r : spec.reactions)
        if (r.kf < 0 || r.kb < 0 || r.product == r.reactant_a || r.product == r.reactant_b) rep.structural_pass = false;

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, c_max);
    std::vector<double> c(P), f(P);
    const bool enumerate_vertices = P <= 17;
    for (std::size_t i = 0; i < P; ++i) {
        std::size_t count = 0;
        auto visit = [&] {
            c[i] = 0.0;
            model.production(c, f);
            rep.min_face_value[i] = std::min(rep.min_face_value[i], f[i]);
            ++count;
        };
        for (std::size_t s = 0; s < samples; ++s) {
            for (auto& v : c) v = u(rng);
            visit();
        }
        if (enumerate_vertices) {
            const std::uint64_t n = std::uint64_t{1} << (P - 1);
            for (std::uint64_t mask = 0; mask < n; ++mask) {
                std::size_t bit = 0;
                for (std::size_t k = 0; k < P; ++k) {
                    if (k == i) continue;
                    c[k] = (mask >> bit++) & 1U ? 1.0 : 0.0;
                }
                visit();
            }
        }
        rep.points_per_species = count;
    }
    rep.sampled_pass = true;
    for (double m : rep.min_face_value)
        if (m < -rep.tolerance) rep.sampled_pass = false;
    return rep;
}

} // namespace rdnet::stoich
