#include "rdnet/solver.hpp"

#include "rdnet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <limits>
#include <sstream>

namespace rdnet::solver {

using kernels::Fields;

std::string to_string(Scheme s) { return s == Scheme::Explicit ? "explicit" : "semi_implicit_diffusion"; }
std::string to_string(ReactionMode m) { return m == ReactionMode::Strict ? "strict" : "patankar"; }

std::string to_string(Backend b) {
    switch (b) {
    case Backend::Auto: return "auto";
    case Backend::Serial: return "serial";
    case Backend::OpenMP: return "openmp";
    }
    return "?";
}

void SolverConfig::validate() const {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ValidationError("t_end must be positive");
    if (!(dt_max > 0.0) || !std::isfinite(dt_max)) throw ValidationError("dt_max must be positive");
    if (!(safety > 0.0 && safety <= 1.0)) throw ValidationError("safety must lie in (0, 1]");
    if (!(cg_tol > 0.0)) throw ValidationError("cg_tol must be positive");
    if (cg_max_iters == 0) throw ValidationError("cg_max_iters must be positive");
    if (output_every == 0) throw ValidationError("output_every must be positive");
    if (diagnostics_every == 0) throw ValidationError("diagnostics_every must be positive");
}

// ---------------------------------------------------------------- config I/O

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size())
        throw ValidationError("config: bad number for " + key + ": '" + v + "'");
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    std::size_t out = 0;
    const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc() || p != v.data() + v.size())
        throw ValidationError("config: bad integer for " + key + ": '" + v + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ValidationError("config: bad boolean for " + key + ": '" + v + "'");
}

std::string fmt(double v) {
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

} // namespace

SolverConfig parse_config(std::string_view text) {
    SolverConfig cfg;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos)
            throw ValidationError("config line " + std::to_string(lineno) + ": expected key=value");
        const std::string key = trim(std::string_view(t).substr(0, eq));
        const std::string val = trim(std::string_view(t).substr(eq + 1));
        if (key == "scheme") {
            if (val == "explicit") cfg.scheme = Scheme::Explicit;
            else if (val == "semi_implicit_diffusion" || val == "semi_implicit") cfg.scheme = Scheme::SemiImplicitDiffusion;
            else throw ValidationError("config: unknown scheme '" + val + "'");
        } else if (key == "t_end") {
            cfg.t_end = parse_double(key, val);
        } else if (key == "dt_max") {
            cfg.dt_max = parse_double(key, val);
        } else if (key == "safety") {
            cfg.safety = parse_double(key, val);
        } else if (key == "cg_tol") {
            cfg.cg_tol = parse_double(key, val);
        } else if (key == "cg_max_iters") {
            cfg.cg_max_iters = parse_count(key, val);
        } else if (key == "output_every") {
            cfg.output_every = parse_count(key, val);
        } else if (key == "diagnostics_every") {
            cfg.diagnostics_every = parse_count(key, val);
        } else if (key == "filtration_mode") {
            cfg.filtration_mode = parse_bool(key, val);
        } else if (key == "reaction_mode") {
            if (val == "strict") cfg.reaction_mode = ReactionMode::Strict;
            else if (val == "patankar") cfg.reaction_mode = ReactionMode::Patankar;
            else throw ValidationError("config: unknown reaction_mode '" + val + "'");
        } else if (key == "backend") {
            if (val == "auto") cfg.backend = Backend::Auto;
            else if (val == "serial") cfg.backend = Backend::Serial;
            else if (val == "openmp") cfg.backend = Backend::OpenMP;
            else throw ValidationError("config: unknown backend '" + val + "'");
        } else if (key == "face_average") {
            if (val == "arithmetic") cfg.face_average = kernels::FaceAverage::Arithmetic;
            else if (val == "harmonic") cfg.face_average = kernels::FaceAverage::Harmonic;
            else throw ValidationError("config: unknown face_average '" + val + "'");
        } else {
            throw ValidationError("config: unknown key '" + key + "'");
        }
    }
    cfg.validate();
    return cfg;
}

SolverConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string format_config(const SolverConfig& cfg) {
    std::ostringstream out;
    out << "scheme = " << to_string(cfg.scheme) << '\n'
        << "t_end = " << fmt(cfg.t_end) << '\n'
        << "dt_max = " << fmt(cfg.dt_max) << '\n'
        << "safety = " << fmt(cfg.safety) << '\n'
        << "cg_tol = " << fmt(cfg.cg_tol) << '\n'
        << "cg_max_iters = " << cfg.cg_max_iters << '\n'
        << "output_every = " << cfg.output_every << '\n'
        << "diagnostics_every = " << cfg.diagnostics_every << '\n'
        << "filtration_mode = " << (cfg.filtration_mode ? "true" : "false") << '\n'
        << "reaction_mode = " << to_string(cfg.reaction_mode) << '\n'
        << "backend = " << to_string(cfg.backend) << '\n'
        << "face_average = " << (cfg.face_average == kernels::FaceAverage::Harmonic ? "harmonic" : "arithmetic")
        << '\n';
    return out.str();
}

// ------------------------------------------------------------ antiderivative

namespace {

struct Integrand {
    const expr::Expr& d;
    std::size_t owner;
    mutable std::vector<double> c;

    double operator()(double y) const {
        c[owner] = y;
        return expr::eval(d, expr::Env{std::nullopt, {}, c});
    }
};

double simpson(const Integrand& f, double a, double b, double fa, double fm, double fb, double whole, double tol,
               int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

} // namespace

Antiderivative::Antiderivative(const expr::Expr& d, std::size_t owner, std::size_t num_species)
    : d_(d), owner_(owner), P_(num_species) {
    const expr::Variable v{expr::VarKind::Conc, static_cast<int>(owner) + 1};
    if (auto coeffs = expr::as_polynomial(d, v)) {
        poly_.assign(coeffs->size() + 1, 0.0);
        for (std::size_t k = 0; k < coeffs->size(); ++k) poly_[k + 1] = (*coeffs)[k] / static_cast<double>(k + 1);
    }
}

double Antiderivative::operator()(double y) const {
    if (y <= 0.0) return 0.0;
    if (!poly_.empty()) {
        double acc = 0.0;
        for (std::size_t k = poly_.size(); k-- > 0;) acc = acc * y + poly_[k];
        return acc;
    }
    const Integrand f{d_, owner_, std::vector<double>(P_, 0.0)};
    const double fa = f(0.0), fm = f(0.5 * y), fb = f(y);
    const double whole = y / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, 0.0, y, fa, fm, fb, whole, 1e-12, 50);
}

// ------------------------------------------------------------------- stepper

namespace {

struct KernelTable {
    decltype(&kernels::serial::diffusion_apply) diffusion_apply;
    decltype(&kernels::serial::helmholtz_apply) helmholtz_apply;
    decltype(&kernels::serial::helmholtz_diagonal) helmholtz_diagonal;
    decltype(&kernels::serial::reaction_production) reaction_production;
    decltype(&kernels::serial::reaction_split) reaction_split;
    decltype(&kernels::serial::axpy) axpy;
    bool parallel;
};

constexpr KernelTable serial_table{kernels::serial::diffusion_apply, kernels::serial::helmholtz_apply,
                                   kernels::serial::helmholtz_diagonal, kernels::serial::reaction_production,
                                   kernels::serial::reaction_split, kernels::serial::axpy, false};
constexpr KernelTable omp_table{kernels::omp::diffusion_apply, kernels::omp::helmholtz_apply,
                                kernels::omp::helmholtz_diagonal, kernels::omp::reaction_production,
                                kernels::omp::reaction_split, kernels::omp::axpy, true};

constexpr std::size_t auto_parallel_threshold = 4096;

enum class Coefficient { Unit, Constant, Field };

struct SpeciesLaw {
    const DiffusivityLaw* law = nullptr;
    Coefficient coefficient = Coefficient::Field;
    double constant = 1.0;
    bool filtration = false;
    bool time_or_space = false;
    std::optional<Antiderivative> D;
};

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

struct Stepper::Impl {
    const NetworkSpec& spec;
    Grid grid;
    SolverConfig cfg;
    stoich::RateModel model;
    KernelTable k;
    std::size_t P, n;
    std::vector<SpeciesLaw> laws;
    double inv_h2_sum = 0.0;

    Fields coeff, work, f, p, q, sink;
    std::vector<double> diag, rhs, r, z, dir, Ad, precond;
    std::size_t cg_iters = 0;

    Impl(const NetworkSpec& s, const Grid& g, const SolverConfig& c)
        : spec(s), grid(g), cfg(c), model(s), P(s.num_species()), n(g.num_cells()) {
        cfg.validate();
        if (s.diffusivities.size() != P) throw ValidationError("one diffusivity per species required");
        const bool par = cfg.backend == Backend::OpenMP || (cfg.backend == Backend::Auto && n >= auto_parallel_threshold);
        k = par ? omp_table : serial_table;
        for (int a = 0; a < g.dim(); ++a) inv_h2_sum += 1.0 / (g.h(a) * g.h(a));

        laws.resize(P);
        for (std::size_t i = 0; i < P; ++i) {
            SpeciesLaw& L = laws[i];
            L.law = &s.diffusivities[i];
            if (L.law->kind == DiffusivityKind::Constant) {
                L.constant = expr::eval(L.law->expression, expr::Env{});
                L.coefficient = L.constant == 1.0 ? Coefficient::Unit : Coefficient::Constant;
            }
            L.filtration = cfg.filtration_mode && L.law->kind != DiffusivityKind::General;
            for (const auto& v : expr::variables(L.law->expression))
                if (v.kind != expr::VarKind::Conc) L.time_or_space = true;
            if (L.filtration && cfg.scheme == Scheme::Explicit) L.D.emplace(L.law->expression, i, P);
        }

        coeff.assign(P, std::vector<double>(n, 1.0));
        for (std::size_t i = 0; i < P; ++i)
            if (laws[i].coefficient == Coefficient::Constant) std::fill(coeff[i].begin(), coeff[i].end(), laws[i].constant);
        work.assign(P, std::vector<double>(n, 0.0));
        f = p = q = sink = work;
        diag.assign(n, 1.0);
        rhs = r = z = dir = Ad = precond = diag;
    }

    std::span<const double> coeff_span(std::size_t i) const {
        if (laws[i].coefficient == Coefficient::Unit) return {};
        return coeff[i];
    }

    /// d_i(t, x, c) per cell for variable laws. Filtration species in explicit
    /// mode also get D_i(c_i) in work[i].
    void evaluate_diffusivities(const State& s) {
        for (std::size_t i = 0; i < P; ++i) {
            const SpeciesLaw& L = laws[i];
            if (L.coefficient != Coefficient::Field && !L.D) continue;
            std::exception_ptr failure;
            const auto N = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel if (k.parallel)
            {
                std::vector<double> c(P);
#pragma omp for schedule(static)
                for (std::ptrdiff_t cell = 0; cell < N; ++cell) {
                    const auto idx = static_cast<std::size_t>(cell);
                    try {
                        for (std::size_t j = 0; j < P; ++j) c[j] = std::max(0.0, s.fields[j][idx]);
                        if (L.coefficient == Coefficient::Field) {
                            expr::Env env{s.t, {}, c};
                            if (L.time_or_space) {
                                const auto x = grid.center(idx);
                                for (int a = 0; a < grid.dim(); ++a)
                                    env.x[static_cast<std::size_t>(a)] = x[static_cast<std::size_t>(a)];
                            }
                            coeff[i][idx] = expr::eval(L.law->expression, env);
                        }
                        if (L.D) work[i][idx] = (*L.D)(c[i]);
                    } catch (...) {
#pragma omp critical(rdnet_solver_error)
                        if (!failure) failure = std::current_exception();
                    }
                }
            }
            if (failure) std::rethrow_exception(failure);
        }
    }

    double max_d(std::size_t i) const {
        if (laws[i].coefficient == Coefficient::Unit) return 1.0;
        if (laws[i].coefficient == Coefficient::Constant) return laws[i].constant;
        return *std::max_element(coeff[i].begin(), coeff[i].end());
    }

    /// Step bound from positivity: dt * (diffusion rate + implicit-free loss rate) <= 1.
    double bound(const State& s) const {
        const bool explicit_diffusion = cfg.scheme == Scheme::Explicit;
        const bool strict = cfg.reaction_mode == ReactionMode::Strict;
        double rate = 0.0;
        double sink_rate = 0.0;
        for (std::size_t i = 0; i < P; ++i) {
            const double diff = explicit_diffusion ? 2.0 * max_d(i) * inv_h2_sum : 0.0;
            double loss = 0.0;
            double sink_loss = 0.0;
            const auto& c = s.fields[i];
            for (std::size_t cell = 0; cell < n; ++cell) {
                if (strict) loss = std::max(loss, q[i][cell]);
                if (sink[i][cell] > 0.0)
                    sink_loss = std::max(sink_loss, c[cell] > 0.0 ? sink[i][cell] / c[cell]
                                                                  : std::numeric_limits<double>::infinity());
            }
            rate = std::max(rate, diff + loss);
            sink_rate = std::max(sink_rate, diff + loss + sink_loss);
        }
        double dt = cfg.dt_max;
        if (rate > 0.0) dt = std::min(dt, 1.0 / rate);
        // c^gamma with gamma < 1 is not Lipschitz at 0: the sink bound tends to
        // zero there, so it is floored at a fixed fraction of the regular bound.
        if (sink_rate > rate) dt = std::max(std::min(dt, 1.0 / sink_rate), 1e-6 * dt);
        return cfg.safety * dt;
    }

    void reactions(const State& s) {
        k.reaction_split(model, s.fields, p, q, sink);
        if (cfg.reaction_mode == ReactionMode::Strict) k.reaction_production(model, s.fields, f);
    }

    std::size_t solve(std::size_t i, double dt, std::vector<double>& x) {
        const auto cs = coeff_span(i);
        const auto avg = cfg.face_average;
        k.helmholtz_diagonal(grid, cs, diag, dt, precond, avg);
        k.helmholtz_apply(grid, cs, diag, dt, x, Ad, avg);
        for (std::size_t c = 0; c < n; ++c) r[c] = rhs[c] - Ad[c];
        const double bnorm = std::sqrt(dot(rhs, rhs));
        const double target = cfg.cg_tol * (bnorm > 0.0 ? bnorm : 1.0);
        if (std::sqrt(dot(r, r)) <= target) return 0;
        for (std::size_t c = 0; c < n; ++c) z[c] = r[c] / precond[c];
        dir = z;
        double rz = dot(r, z);
        for (std::size_t it = 1; it <= cfg.cg_max_iters; ++it) {
            k.helmholtz_apply(grid, cs, diag, dt, dir, Ad, avg);
            const double dAd = dot(dir, Ad);
            if (!(dAd > 0.0)) throw LinearSolveFailure("conjugate gradient breakdown (operator not positive)");
            const double alpha = rz / dAd;
            k.axpy(x, alpha, dir, x);
            k.axpy(r, -alpha, Ad, r);
            if (std::sqrt(dot(r, r)) <= target) return it;
            for (std::size_t c = 0; c < n; ++c) z[c] = r[c] / precond[c];
            const double rz_new = dot(r, z);
            const double beta = rz_new / rz;
            rz = rz_new;
            for (std::size_t c = 0; c < n; ++c) dir[c] = z[c] + beta * dir[c];
        }
        throw LinearSolveFailure("conjugate gradient did not reach cg_tol within cg_max_iters (" +
                                 std::to_string(cfg.cg_max_iters) + ")");
    }

    double prepare(const State& s) {
        if (s.fields.size() != P) throw ValidationError("state species count does not match the network");
        for (const auto& fld : s.fields)
            if (fld.size() != n) throw ValidationError("state shape does not match the grid");
        evaluate_diffusivities(s);
        reactions(s);
        return bound(s);
    }

    double step(State& s, double dt_cap) {
        double dt = std::min(prepare(s), dt_cap);
        if (!(dt > 0.0)) throw DomainError("non-positive time step");
        const bool strict = cfg.reaction_mode == ReactionMode::Strict;
        cg_iters = 0;

        if (cfg.scheme == Scheme::Explicit) {
            std::vector<double>& lap = rhs;
            for (std::size_t i = 0; i < P; ++i) {
                auto& c = s.fields[i];
                if (laws[i].filtration) k.diffusion_apply(grid, {}, work[i], lap, cfg.face_average);
                else k.diffusion_apply(grid, coeff_span(i), c, lap, cfg.face_average);
                if (strict) {
                    for (std::size_t cell = 0; cell < n; ++cell) c[cell] += dt * (lap[cell] + f[i][cell]);
                } else {
                    for (std::size_t cell = 0; cell < n; ++cell)
                        c[cell] = (c[cell] + dt * (lap[cell] + p[i][cell] - sink[i][cell])) / (1.0 + dt * q[i][cell]);
                }
            }
        } else {
            for (std::size_t i = 0; i < P; ++i) {
                auto& c = s.fields[i];
                for (std::size_t cell = 0; cell < n; ++cell) {
                    if (strict) {
                        diag[cell] = 1.0;
                        rhs[cell] = c[cell] + dt * f[i][cell];
                    } else {
                        diag[cell] = 1.0 + dt * q[i][cell];
                        rhs[cell] = c[cell] + dt * (p[i][cell] - sink[i][cell]);
                    }
                }
                cg_iters += solve(i, dt, c);
            }
        }

        for (const auto& fld : s.fields)
            for (double v : fld)
                if (!std::isfinite(v)) throw NonFiniteState("non-finite concentration at t = " + std::to_string(s.t));
        s.t += dt;
        return dt;
    }
};

Stepper::Stepper(const NetworkSpec& spec, const Grid& grid, const SolverConfig& cfg)
    : impl_(std::make_unique<Impl>(spec, grid, cfg)) {}
Stepper::~Stepper() = default;
Stepper::Stepper(Stepper&&) noexcept = default;
Stepper& Stepper::operator=(Stepper&&) noexcept = default;

double Stepper::step(State& state, double dt_cap) { return impl_->step(state, dt_cap); }
double Stepper::stable_dt(const State& state) { return impl_->prepare(state); }
std::size_t Stepper::last_cg_iterations() const { return impl_->cg_iters; }

std::pair<State, double> advance_step(const NetworkSpec& spec, const Grid& grid, const State& state,
                                      const SolverConfig& cfg) {
    for (const auto& fld : state.fields)
        for (double v : fld)
            if (v < 0.0) throw DomainError("advance_step requires a nonnegative state");
    Stepper st(spec, grid, cfg);
    State next = state;
    const double dt = st.step(next, std::numeric_limits<double>::infinity());
    return {std::move(next), dt};
}

// ---------------------------------------------------------------- simulation

namespace {

std::vector<double> conservation_weights(const NetworkSpec& spec) {
    const auto res = stoich::find_conservation_vector(stoich::build_matrix(spec));
    if (const auto* e = std::get_if<stoich::ConservationVector>(&res)) {
        std::vector<double> w;
        for (const auto& v : e->e) w.push_back(to_double(v));
        return w;
    }
    return std::vector<double>(spec.num_species(), 1.0);
}

double min_value(const State& s) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& fld : s.fields)
        for (double v : fld) m = std::min(m, v);
    return m;
}

} // namespace

SimulationResult run_simulation(const NetworkSpec& spec, const Grid& grid, const SolverConfig& cfg,
                                const InitialCondition& ic, const monitors::MonitorSet& mon) {
    return run_simulation(spec, grid, cfg, init_state(spec, grid, ic), mon);
}

SimulationResult run_simulation(const NetworkSpec& spec, const Grid& grid, const SolverConfig& cfg,
                                const State& initial, const monitors::MonitorSet& mon) {
    cfg.validate();
    Stepper stepper(spec, grid, cfg);
    SimulationResult res;
    Trajectory& traj = res.trajectory;
    traj.grid = grid;
    traj.conservation_weights = conservation_weights(spec);
    traj.samples.push_back(initial);

    State s = initial;
    std::size_t steps = 0;
    while (s.t < cfg.t_end) {
        const double remaining = cfg.t_end - s.t;
        const double dt = stepper.step(s, remaining);
        if (dt >= remaining) s.t = cfg.t_end;
        ++steps;
        const bool last = s.t >= cfg.t_end;
        if (steps % cfg.diagnostics_every == 0 || last)
            traj.diagnostics.push_back({s.t, dt, min_value(s), weighted_total(grid, s, traj.conservation_weights)});
        if (steps % cfg.output_every == 0 || last) traj.samples.push_back(s);
    }
    res.report = monitors::compute_report(traj, spec, mon);
    return res;
}

// ----------------------------------------------------------------- rescaling

Rescaled rescale_to_unit_rates(const NetworkSpec& spec) {
    if (spec.reactions.size() != 1) throw ValidationError("rescaling needs exactly one reaction");
    const ReactionSpec& r = spec.reactions[0];
    if (!(r.kf > 0) || !(r.kb > 0)) throw ValidationError("rescaling needs kf > 0 and kb > 0");
    if (!r.unit_exponents()) throw ValidationError("rescaling needs unit exponents");
    Rescaled out;
    out.spec = spec;
    const Rational lambda = r.kf / r.kb;
    out.lambda = to_double(lambda);
    out.time_scale = to_double(r.kb);
    out.spec.reactions[0].kf = 1;
    out.spec.reactions[0].kb = 1;

    const double inv_kb = to_double(1 / r.kb);
    const double inv_lambda = to_double(1 / lambda);
    for (auto& d : out.spec.diffusivities) {
        if (d.kind == DiffusivityKind::Constant) {
            d.expression = expr::Expr::number(expr::eval(d.expression, expr::Env{}) * inv_kb);
        } else {
            auto sub = expr::substitute(d.expression, [&](expr::Variable v) {
                const auto leaf = expr::Expr::variable(v);
                if (v.kind == expr::VarKind::Time) return expr::Expr::binary(expr::Op::Mul, leaf, expr::Expr::number(inv_kb));
                if (v.kind == expr::VarKind::Conc)
                    return expr::Expr::binary(expr::Op::Mul, leaf, expr::Expr::number(inv_lambda));
                return leaf;
            });
            d.expression = expr::Expr::binary(expr::Op::Mul, std::move(sub), expr::Expr::number(inv_kb));
        }
        d.lower_bound = d.lower_bound / r.kb;
    }
    return out;
}

} // namespace rdnet::solver
