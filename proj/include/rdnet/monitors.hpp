#pragma once

#include "rdnet/network.hpp"
#include "rdnet/trajectory.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace rdnet::monitors {

/// Space-time norm (sum_k dt_k sum_cells h^N |c|^q)^(1/q) with left-endpoint
/// quadrature over the samples; q = +inf gives the max over all samples.
/// Throws DomainError for q < 1 or an empty trajectory.
double lq_spacetime(const Trajectory& traj, std::size_t species, double q);

double linf(const Trajectory& traj, std::size_t species);

/// <e, h^N sum c(t)> - <e, h^N sum c(0)> per sample.
/// Throws ValidationError when e does not match the species count.
std::vector<double> conservation_residual(const Trajectory& traj, std::span<const double> e);

/// max_j max_cells |r_j(c(t))| per sample.
std::vector<double> equilibrium_residual(const Trajectory& traj, const NetworkSpec& spec);

struct HolderCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// ||u||_q <= ||u||_r^(1-alpha) ||u||_s^alpha on the measure cell_volume per
/// cell. Exponents may be +inf. Throws ExponentRelationViolated unless
/// 1/q = (1-alpha)/r + alpha/s (to 1e-12) with alpha in [0, 1] and q, r, s >= 1.
HolderCheck holder_interpolation_check(std::span<const double> field, double cell_volume, double q, double r,
                                       double s, double alpha);

struct LevelSetEntry {
    std::size_t species = 0;
    double k = 0.0;
    std::vector<double> lambda_series;           // |{c > k}| per sample
    std::vector<std::pair<double, double>> pairs;  // (r, q)
    std::vector<double> mu;                        // sum_k dt_k lambda^(r/q), one per pair
};

/// Throws DomainError for k < 0.
LevelSetEntry level_set_measure(const Trajectory& traj, std::size_t species, double k,
                                const std::vector<std::pair<double, double>>& pairs);

/// (sup_t ||c||^2 + sum_k dt_k (||c||^2 + ||grad c||^2))^(1/2) with forward
/// face differences; boundary faces contribute nothing.
double v2_norm(const Trajectory& traj, std::size_t species);

struct SpeciesNorms {
    std::vector<std::pair<double, double>> lq;  // (q, value)
    double linf = 0.0;
    double v2 = 0.0;
};

struct NormReport {
    std::vector<double> times;
    std::vector<SpeciesNorms> species;
    std::vector<double> conservation_drift;    // empty without weights
    std::vector<double> equilibrium_residual;  // empty when disabled
    std::vector<LevelSetEntry> level_sets;
};

struct LevelSetRequest {
    std::size_t species = 0;
    double k = 0.0;
    std::vector<std::pair<double, double>> pairs;
};

struct MonitorSet {
    std::vector<double> q_values{1.0, 2.0};
    bool v2 = true;
    bool equilibrium = true;
    /// Conservation weights; when unset, the trajectory's own weights are used.
    std::optional<std::vector<double>> e;
    std::vector<LevelSetRequest> level_sets;
};

NormReport compute_report(const Trajectory& traj, const NetworkSpec& spec, const MonitorSet& set);

} // namespace rdnet::monitors
