#pragma once

#include "rdnet/grid.hpp"
#include "rdnet/kernels.hpp"
#include "rdnet/monitors.hpp"
#include "rdnet/network.hpp"
#include "rdnet/stoich.hpp"
#include "rdnet/trajectory.hpp"

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

namespace rdnet::solver {

enum class Scheme { Explicit, SemiImplicitDiffusion };

/// Strict: c + dt (L c + f), exactly conservative, dt <= 1/(diffusion rate + q).
/// Patankar: (c + dt (L c + p - sink)) / (1 + dt q), positive for any q.
enum class ReactionMode { Strict, Patankar };

/// Auto runs small grids serially, where thread start-up dominates.
enum class Backend { Auto, Serial, OpenMP };

struct SolverConfig {
    Scheme scheme = Scheme::Explicit;
    double t_end = 1.0;
    double dt_max = 0.01;
    double safety = 0.9;
    double cg_tol = 1e-10;
    std::size_t cg_max_iters = 10000;
    std::size_t output_every = 100;      // steps between stored samples
    std::size_t diagnostics_every = 1;   // steps between diagnostics rows
    bool filtration_mode = false;
    ReactionMode reaction_mode = ReactionMode::Strict;
    Backend backend = Backend::Auto;
    kernels::FaceAverage face_average = kernels::FaceAverage::Arithmetic;

    /// Throws ValidationError on t_end <= 0, safety outside (0, 1], cg_tol <= 0, ...
    void validate() const;
};

/// Flat key=value text, one pair per line, '#' comments. Keys mirror the
/// SolverConfig fields; unknown keys are a ValidationError.
SolverConfig parse_config(std::string_view text);
SolverConfig load_config_file(const std::string& path);
std::string format_config(const SolverConfig& cfg);

/// Reusable stepping state for one (spec, grid, config). Buffers are sized once.
class Stepper {
public:
    Stepper(const NetworkSpec& spec, const Grid& grid, const SolverConfig& cfg);
    ~Stepper();
    Stepper(Stepper&&) noexcept;
    Stepper& operator=(Stepper&&) noexcept;

    /// Advances `state` in place by one step of at most `dt_cap`; returns the
    /// dt taken. Throws LinearSolveFailure, NonFiniteState, DomainError.
    double step(State& state, double dt_cap);

    /// Largest admissible dt at `state` (before the t_end clamp).
    double stable_dt(const State& state);

    /// CG iterations used by the last semi-implicit step, summed over species.
    std::size_t last_cg_iterations() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// One step with a fresh Stepper. Returns the new state and the dt used.
std::pair<State, double> advance_step(const NetworkSpec& spec, const Grid& grid, const State& state,
                                      const SolverConfig& cfg);

struct SimulationResult {
    Trajectory trajectory;
    monitors::NormReport report;
};

SimulationResult run_simulation(const NetworkSpec& spec, const Grid& grid, const SolverConfig& cfg,
                                const InitialCondition& ic, const monitors::MonitorSet& monitors = {});

/// Same, from an explicit initial state.
SimulationResult run_simulation(const NetworkSpec& spec, const Grid& grid, const SolverConfig& cfg,
                                const State& initial, const monitors::MonitorSet& monitors = {});

/// D(y) = integral of d over [0, y] for a diffusivity d(c_owner) (0-based
/// owner). Closed form for polynomials, adaptive Simpson (tol 1e-12) otherwise.
class Antiderivative {
public:
    Antiderivative(const expr::Expr& d, std::size_t owner, std::size_t num_species);
    double operator()(double y) const;
    bool closed_form() const { return !poly_.empty(); }

private:
    expr::Expr d_;
    std::size_t owner_;
    std::size_t P_;
    std::vector<double> poly_;  // coefficients of D, lowest degree first
};

/// Single reversible reaction kf, kb > 0 rescaled to kf = kb = 1:
/// c_hat = lambda c with lambda = kf/kb, t_hat = kb t, and diffusivities
/// d_hat(t_hat, x, c_hat) = d(t_hat/kb, x, c_hat/lambda) / kb.
struct Rescaled {
    NetworkSpec spec;
    double lambda = 1.0;
    double time_scale = 1.0;  // t_hat = time_scale * t
};

/// Throws ValidationError unless the network has exactly one reaction with
/// positive kf and kb.
Rescaled rescale_to_unit_rates(const NetworkSpec& spec);

std::string to_string(Scheme s);
std::string to_string(ReactionMode m);
std::string to_string(Backend b);

} // namespace rdnet::solver
