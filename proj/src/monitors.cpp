#include "rdnet/monitors.hpp"

#include "rdnet/errors.hpp"
#include "rdnet/stoich.hpp"

#include <algorithm>
#include <cmath>
#include <exception>

namespace rdnet {

double weighted_total(const Grid& grid, const State& s, std::span<const double> w) {
    const double vol = grid.cell_volume();
    double total = 0.0;
    for (std::size_t i = 0; i < s.fields.size() && i < w.size(); ++i) {
        double acc = 0.0;
        for (double v : s.fields[i]) acc += v;
        total += w[i] * (vol * acc);
    }
    return total;
}

} // namespace rdnet

namespace rdnet::monitors {

namespace {

const std::vector<double>& field(const Trajectory& traj, std::size_t k, std::size_t species) {
    if (species >= traj.samples[k].fields.size()) throw ValidationError("species index out of range");
    return traj.samples[k].fields[species];
}

void require_nonempty(const Trajectory& traj) {
    if (traj.empty()) throw DomainError("trajectory is empty");
}

double dt_after(const Trajectory& traj, std::size_t k) { return traj.samples[k + 1].t - traj.samples[k].t; }

double sum_pow(const std::vector<double>& f, double q) {
    double acc = 0.0;
    for (double v : f) acc += std::pow(std::abs(v), q);
    return acc;
}

double l2_squared(const Grid& g, const std::vector<double>& f) { return g.cell_volume() * sum_pow(f, 2.0); }

double grad_squared(const Grid& g, const std::vector<double>& f) {
    double acc = 0.0;
    const double vol = g.cell_volume();
    for (int a = 0; a < g.dim(); ++a) {
        const std::size_t st = g.stride(a);
        const double h = g.h(a);
        for (std::size_t c = 0; c < f.size(); ++c) {
            if (g.coords(c)[static_cast<std::size_t>(a)] + 1 == g.cells(a)) continue;
            const double d = (f[c + st] - f[c]) / h;
            acc += vol * d * d;
        }
    }
    return acc;
}

double lebesgue(std::span<const double> u, double vol, double p) {
    double m = 0.0;
    for (double v : u) m = std::max(m, std::abs(v));
    if (std::isinf(p) || m == 0.0) return m;
    // Scaled by the max so large p cannot overflow.
    double acc = 0.0;
    for (double v : u) acc += std::pow(std::abs(v) / m, p);
    return m * std::pow(vol * acc, 1.0 / p);
}

double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

} // namespace

double lq_spacetime(const Trajectory& traj, std::size_t species, double q) {
    if (!(q >= 1.0)) throw DomainError("lq_spacetime: q must be >= 1");
    require_nonempty(traj);
    if (std::isinf(q)) return linf(traj, species);
    const double vol = traj.grid.cell_volume();
    double acc = 0.0;
    for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k)
        acc += dt_after(traj, k) * vol * sum_pow(field(traj, k, species), q);
    return std::pow(acc, 1.0 / q);
}

double linf(const Trajectory& traj, std::size_t species) {
    require_nonempty(traj);
    double m = 0.0;
    for (std::size_t k = 0; k < traj.samples.size(); ++k)
        for (double v : field(traj, k, species)) m = std::max(m, std::abs(v));
    return m;
}

std::vector<double> conservation_residual(const Trajectory& traj, std::span<const double> e) {
    require_nonempty(traj);
    if (e.size() != traj.samples.front().num_species())
        throw ValidationError("conservation vector length does not match species count");
    const double initial = weighted_total(traj.grid, traj.samples.front(), e);
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) out.push_back(weighted_total(traj.grid, s, e) - initial);
    return out;
}

std::vector<double> equilibrium_residual(const Trajectory& traj, const NetworkSpec& spec) {
    const stoich::RateModel model(spec);
    const std::size_t P = spec.num_species();
    std::vector<double> c(P), r(model.num_reactions());
    std::vector<double> out;
    out.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        double m = 0.0;
        const std::size_t n = s.fields.empty() ? 0 : s.fields[0].size();
        for (std::size_t cell = 0; cell < n; ++cell) {
            for (std::size_t i = 0; i < P; ++i) c[i] = s.fields[i][cell];
            model.rates(c, r);
            for (double v : r) m = std::max(m, std::abs(v));
        }
        out.push_back(m);
    }
    return out;
}

HolderCheck holder_interpolation_check(std::span<const double> u, double cell_volume, double q, double r, double s,
                                       double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ExponentRelationViolated("alpha must lie in [0, 1]");
    if (!(q >= 1.0 && r >= 1.0 && s >= 1.0)) throw ExponentRelationViolated("exponents must be >= 1");
    const double gap = inv(q) - ((1.0 - alpha) * inv(r) + alpha * inv(s));
    if (std::abs(gap) > 1e-12) throw ExponentRelationViolated("1/q != (1-alpha)/r + alpha/s");
    HolderCheck h;
    h.lhs = lebesgue(u, cell_volume, q);
    h.rhs = std::pow(lebesgue(u, cell_volume, r), 1.0 - alpha) * std::pow(lebesgue(u, cell_volume, s), alpha);
    h.holds = h.lhs <= h.rhs * (1.0 + 1e-12);
    return h;
}

LevelSetEntry level_set_measure(const Trajectory& traj, std::size_t species, double k,
                                const std::vector<std::pair<double, double>>& pairs) {
    if (!(k >= 0.0)) throw DomainError("level_set_measure: k must be >= 0");
    require_nonempty(traj);
    LevelSetEntry e;
    e.species = species;
    e.k = k;
    e.pairs = pairs;
    const double vol = traj.grid.cell_volume();
    for (std::size_t t = 0; t < traj.samples.size(); ++t) {
        std::size_t count = 0;
        for (double v : field(traj, t, species))
            if (v > k) ++count;
        e.lambda_series.push_back(vol * static_cast<double>(count));
    }
    for (const auto& [r, q] : pairs) {
        double mu = 0.0;
        for (std::size_t t = 0; t + 1 < traj.samples.size(); ++t)
            if (e.lambda_series[t] > 0.0) mu += dt_after(traj, t) * std::pow(e.lambda_series[t], r / q);
        e.mu.push_back(mu);
    }
    return e;
}

double v2_norm(const Trajectory& traj, std::size_t species) {
    require_nonempty(traj);
    double sup = 0.0;
    double integral = 0.0;
    for (std::size_t k = 0; k < traj.samples.size(); ++k) {
        const auto& f = field(traj, k, species);
        const double l2 = l2_squared(traj.grid, f);
        sup = std::max(sup, l2);
        if (k + 1 < traj.samples.size()) integral += dt_after(traj, k) * (l2 + grad_squared(traj.grid, f));
    }
    return std::sqrt(sup + integral);
}

NormReport compute_report(const Trajectory& traj, const NetworkSpec& spec, const MonitorSet& set) {
    require_nonempty(traj);
    NormReport rep;
    for (const auto& s : traj.samples) rep.times.push_back(s.t);
    const std::size_t P = traj.samples.front().num_species();
    rep.species.resize(P);

    std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(P); ++i) {
        try {
            const auto sp = static_cast<std::size_t>(i);
            SpeciesNorms& n = rep.species[sp];
            for (double q : set.q_values) n.lq.emplace_back(q, lq_spacetime(traj, sp, q));
            n.linf = linf(traj, sp);
            if (set.v2) n.v2 = v2_norm(traj, sp);
        } catch (...) {
#pragma omp critical(rdnet_monitor_error)
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);

    if (set.e) rep.conservation_drift = conservation_residual(traj, *set.e);
    else if (!traj.conservation_weights.empty())
        rep.conservation_drift = conservation_residual(traj, traj.conservation_weights);
    if (set.equilibrium) rep.equilibrium_residual = equilibrium_residual(traj, spec);
    for (const auto& req : set.level_sets) rep.level_sets.push_back(level_set_measure(traj, req.species, req.k, req.pairs));
    return rep;
}

} // namespace rdnet::monitors
