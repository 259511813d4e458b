#include "oracles.hpp"

#include "rdnet/errors.hpp"
#include "rdnet/expr.hpp"
#include "rdnet/network.hpp"
#include "rdnet/solver.hpp"

#include <doctest.h>

#include <cmath>

using namespace rdnet;
using namespace rdnet::solver;

namespace {

NetworkSpec corpus(const std::string& name) { return load_network_file(std::string(RDNET_DATA_DIR) + "/" + name); }

double total(const Grid& g, const State& s, std::vector<double> e) { return weighted_total(g, s, e); }

double min_of(const State& s) {
    double m = INFINITY;
    for (const auto& f : s.fields)
        for (double v : f) m = std::min(m, v);
    return m;
}

double max_diff(const State& a, const State& b) {
    double m = 0;
    for (std::size_t i = 0; i < a.fields.size(); ++i)
        for (std::size_t c = 0; c < a.fields[i].size(); ++c) m = std::max(m, std::abs(a.fields[i][c] - b.fields[i][c]));
    return m;
}

} // namespace

TEST_CASE("equilibrium is a fixed point") {
    const auto spec = corpus("rothe.rxn");
    const auto g = Grid::square(8);
    const auto s0 = init_state(spec, g, parse_initial_condition("uniform:1,1,1"));
    for (auto scheme : {Scheme::Explicit, Scheme::SemiImplicitDiffusion}) {
        SolverConfig cfg;
        cfg.scheme = scheme;
        const auto [s1, dt] = advance_step(spec, g, s0, cfg);
        CHECK(dt > 0);
        CHECK(max_diff(s0, s1) <= 1e-14);
        CHECK(s1.t == dt);
    }
}

TEST_CASE("one step conserves mass to rounding") {
    const auto spec = corpus("rothe.rxn");
    for (const Grid& g : {Grid::line(50), Grid::square(12), Grid(3, {5, 6, 7}, {1, 2, 1})}) {
        for (auto scheme : {Scheme::Explicit, Scheme::SemiImplicitDiffusion}) {
            SolverConfig cfg;
            cfg.scheme = scheme;
            cfg.cg_tol = 1e-13;
            const auto s0 = init_state(spec, g, parse_initial_condition("random:0,2,seed=3"));
            const auto [s1, dt] = advance_step(spec, g, s0, cfg);
            const double before = total(g, s0, {1, 1, 2});
            CHECK(std::abs(total(g, s1, {1, 1, 2}) - before) <= 1e-12 * before);
        }
    }
    // Pure diffusion of a single species: c2 = c3 = 0 keeps the reaction idle.
    const auto g = Grid::line(40);
    auto s0 = init_state(spec, g, parse_initial_condition("uniform:0,0,0"));
    for (std::size_t c = 0; c < 40; ++c) s0.fields[0][c] = 1.0 + std::sin(0.3 * static_cast<double>(c));
    const auto [s1, dt] = advance_step(spec, g, s0, SolverConfig{});
    CHECK(total(g, s1, {1, 0, 0}) == doctest::Approx(total(g, s0, {1, 0, 0})).epsilon(1e-15));
    CHECK(s1.fields[1] == s0.fields[1]);
}

TEST_CASE("explicit time step respects the stability bound") {
    const auto spec = corpus("rothe.rxn");
    const auto g = Grid::line(20);
    SolverConfig cfg;
    cfg.dt_max = 1.0;
    Stepper stepper(spec, g, cfg);
    const auto s = init_state(spec, g, parse_initial_condition("uniform:2,3,0"));
    // d_max = 2, sum 1/h^2 = 400, q_max = kf max(c1, c2) = 3
    CHECK(stepper.stable_dt(s) == doctest::Approx(0.9 / (2 * 2 * 400 + 3)));
}

TEST_CASE("Patankar update stays nonnegative for large steps") {
    const auto spec = corpus("rothe.rxn");
    const auto g = Grid::line(4);
    SolverConfig cfg;
    cfg.scheme = Scheme::SemiImplicitDiffusion;
    cfg.reaction_mode = ReactionMode::Patankar;
    cfg.dt_max = 100;
    cfg.safety = 1;
    const auto s0 = init_state(spec, g, parse_initial_condition("uniform:2,3,0"));
    const auto [s1, dt] = advance_step(spec, g, s0, cfg);
    CHECK(dt == 100);
    // p1 = kb c3 = 0, q1 = kf c2 = 3; p2 = 0, q2 = kf c1 = 2; p3 = kf c1 c2 = 6, q3 = kb = 1.
    CHECK(s1.fields[0][0] == doctest::Approx(2.0 / 301));
    CHECK(s1.fields[1][0] == doctest::Approx(3.0 / 201));
    CHECK(s1.fields[2][0] == doctest::Approx(600.0 / 101));
    CHECK(min_of(s1) >= 0);
}

TEST_CASE("filtration mode matches general mode for constant diffusivities") {
    const auto spec = corpus("rothe.rxn");
    const auto g = Grid::square(10);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    cfg.output_every = 5;
    const auto a = run_simulation(spec, g, cfg, parse_initial_condition("checkerboard:0,2"));
    cfg.filtration_mode = true;
    const auto b = run_simulation(spec, g, cfg, parse_initial_condition("checkerboard:0,2"));
    REQUIRE(a.trajectory.samples.size() == b.trajectory.samples.size());
    for (std::size_t k = 0; k < a.trajectory.samples.size(); ++k)
        CHECK(max_diff(a.trajectory.samples[k], b.trajectory.samples[k]) <= 1e-12);
}

TEST_CASE("filtration mode runs with concentration-dependent diffusivities") {
    const auto spec = corpus("rothe_filtration.rxn");
    const auto g = Grid::line(32);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    cfg.filtration_mode = true;
    const auto r = run_simulation(spec, g, cfg, parse_initial_condition("checkerboard:0.5,1.5"));
    const auto& last = r.trajectory.samples.back();
    CHECK(min_of(last) >= 0);
    const auto& first = r.trajectory.samples.front();
    CHECK(total(g, last, {1, 1, 2}) == doctest::Approx(total(g, first, {1, 1, 2})).epsilon(1e-12));
}

TEST_CASE("semi-implicit and explicit diffusion agree on the heat equation") {
    const auto spec = corpus("rothe.rxn");
    const std::size_t n = 64;
    const auto g = Grid::line(n);
    auto s0 = init_state(spec, g, parse_initial_condition("uniform:0,0,0"));
    s0.fields[0] = oracle::heat_cell_averages(n, 0.0, 1.0);
    SolverConfig cfg;
    cfg.t_end = 0.05;
    cfg.dt_max = 2e-5;
    cfg.cg_tol = 1e-13;
    monitors::MonitorSet none;
    none.q_values = {};
    none.v2 = false;
    none.equilibrium = false;
    const auto ex = run_simulation(spec, g, cfg, s0, none).trajectory.samples.back();
    cfg.scheme = Scheme::SemiImplicitDiffusion;
    const auto si = run_simulation(spec, g, cfg, s0, none).trajectory.samples.back();
    const auto exact = oracle::heat_cell_averages(n, 0.05, 1.0);
    double e1 = 0, e2 = 0;
    for (std::size_t c = 0; c < n; ++c) {
        e1 = std::max(e1, std::abs(ex.fields[0][c] - exact[c]));
        e2 = std::max(e2, std::abs(si.fields[0][c] - exact[c]));
    }
    CHECK(e1 < 1e-3);
    CHECK(e2 < 1e-3);
    CHECK(max_diff(ex, si) < 1e-4);
}

TEST_CASE("linear solver failure is reported") {
    const auto spec = corpus("rothe.rxn");
    const auto g = Grid::square(16);
    SolverConfig cfg;
    cfg.scheme = Scheme::SemiImplicitDiffusion;
    cfg.dt_max = 1.0;
    cfg.cg_tol = 1e-14;
    cfg.cg_max_iters = 1;
    const auto s0 = init_state(spec, g, parse_initial_condition("random:0,2,seed=1"));
    CHECK_THROWS_AS(advance_step(spec, g, s0, cfg), LinearSolveFailure);
}

TEST_CASE("negative states are rejected") {
    const auto spec = corpus("rothe.rxn");
    const auto g = Grid::line(4);
    auto s = init_state(spec, g, parse_initial_condition("uniform:1,1,1"));
    s.fields[1][2] = -0.5;
    CHECK_THROWS_AS(advance_step(spec, g, s, SolverConfig{}), DomainError);
}

TEST_CASE("serial and OpenMP backends give identical trajectories") {
    const auto spec = corpus("rothe_general.rxn");
    const auto g = Grid::square(48);
    SolverConfig cfg;
    cfg.t_end = 0.002;
    cfg.output_every = 10;
    for (auto scheme : {Scheme::Explicit, Scheme::SemiImplicitDiffusion}) {
        cfg.scheme = scheme;
        cfg.backend = Backend::Serial;
        const auto a = run_simulation(spec, g, cfg, parse_initial_condition("random:0.5,1.5,seed=4"));
        cfg.backend = Backend::OpenMP;
        const auto b = run_simulation(spec, g, cfg, parse_initial_condition("random:0.5,1.5,seed=4"));
        REQUIRE(a.trajectory.samples.size() == b.trajectory.samples.size());
        for (std::size_t k = 0; k < a.trajectory.samples.size(); ++k)
            CHECK(a.trajectory.samples[k].fields == b.trajectory.samples[k].fields);
    }
}

TEST_CASE("trajectory bookkeeping") {
    const auto spec = corpus("mmh.rxn");
    const auto g = Grid::line(16);
    SolverConfig cfg;
    cfg.t_end = 0.3;
    cfg.dt_max = 0.01;
    cfg.output_every = 7;
    cfg.diagnostics_every = 3;
    const auto r = run_simulation(spec, g, cfg, parse_initial_condition("checkerboard:0,2"));
    const auto& tr = r.trajectory;
    REQUIRE(tr.samples.size() >= 2);
    CHECK(tr.samples.front().t == 0.0);
    CHECK(tr.samples.back().t == doctest::Approx(0.3).epsilon(1e-14));
    for (std::size_t k = 1; k < tr.samples.size(); ++k) CHECK(tr.samples[k].t > tr.samples[k - 1].t);
    for (const auto& s : tr.samples) CHECK(min_of(s) >= 0);
    CHECK(tr.diagnostics.back().t == doctest::Approx(0.3).epsilon(1e-14));
    for (const auto& d : tr.diagnostics)
        CHECK(d.conserved_total == doctest::Approx(tr.diagnostics.front().conserved_total).epsilon(1e-12));
    CHECK(r.report.times.size() == tr.samples.size());
}

TEST_CASE("sub-linear exponents keep the state nonnegative") {
    const auto spec = parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=1, kb=1, alpha=0.5, gamma=0.5;"
                                    "diff A1 = 1; diff A2 = 1; diff A3 = 1;");
    const auto g = Grid::line(16);
    for (auto mode : {ReactionMode::Strict, ReactionMode::Patankar}) {
        SolverConfig cfg;
        cfg.t_end = 0.5;
        cfg.reaction_mode = mode;
        cfg.output_every = 10;
        const auto r = run_simulation(spec, g, cfg, parse_initial_condition("checkerboard:0,1"));
        for (const auto& s : r.trajectory.samples) CHECK(min_of(s) >= 0);
    }
}

TEST_CASE("solver configuration text") {
    SolverConfig cfg;
    cfg.scheme = Scheme::SemiImplicitDiffusion;
    cfg.t_end = 2.5;
    cfg.safety = 0.5;
    cfg.output_every = 3;
    cfg.filtration_mode = true;
    cfg.reaction_mode = ReactionMode::Patankar;
    cfg.backend = Backend::Serial;
    cfg.face_average = kernels::FaceAverage::Harmonic;
    const auto back = parse_config(format_config(cfg));
    CHECK(back.scheme == cfg.scheme);
    CHECK(back.t_end == 2.5);
    CHECK(back.safety == 0.5);
    CHECK(back.output_every == 3);
    CHECK(back.filtration_mode);
    CHECK(back.reaction_mode == ReactionMode::Patankar);
    CHECK(back.backend == Backend::Serial);
    CHECK(back.face_average == kernels::FaceAverage::Harmonic);
    CHECK(format_config(back) == format_config(cfg));

    CHECK(parse_config("# comment\n\nt_end = 3  # trailing\n").t_end == 3.0);
    CHECK_THROWS_AS(parse_config("dt = 1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("scheme = implicit\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("safety = 0\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("t_end = -1\n"), ValidationError);
    CHECK_THROWS_AS(parse_config("cg_tol = 0\n"), ValidationError);
    CHECK_THROWS_AS(load_config_file("/nonexistent/solver.cfg"), IOError);
}

TEST_CASE("antiderivatives of diffusivities") {
    const Antiderivative poly(expr::parse_expression("1 + c1^2"), 0, 1);
    CHECK(poly.closed_form());
    CHECK(poly(0.0) == 0.0);
    CHECK(poly(3.0) == doctest::Approx(3.0 + 9.0));
    const Antiderivative e(expr::parse_expression("exp(c2)"), 1, 2);
    CHECK_FALSE(e.closed_form());
    CHECK(e(1.5) == doctest::Approx(std::exp(1.5) - 1).epsilon(1e-11));
    const Antiderivative frac(expr::parse_expression("0.5 + c3/(1 + c3)"), 2, 3);
    CHECK(frac(2.0) == doctest::Approx(0.5 * 2 + 2 - std::log(3.0)).epsilon(1e-11));
}

TEST_CASE("rescaling to unit rate constants") {
    const auto spec = parse_network("species A1 A2 A3; A1 + A2 <-> A3 : kf=2, kb=4; diff A1 = 2; diff A2 = 1 + c2 : dmin=1;"
                                    "diff A3 = 1;");
    const auto r = rescale_to_unit_rates(spec);
    CHECK(r.lambda == 0.5);
    CHECK(r.time_scale == 4.0);
    CHECK(r.spec.reactions[0].kf == 1);
    CHECK(r.spec.reactions[0].kb == 1);
    CHECK(expr::eval(r.spec.diffusivities[0].expression, {}) == 0.5);
    const std::vector<double> c{0, 3, 0};
    expr::Env env;
    env.c = c;
    // d_hat(c_hat) = d(c_hat / lambda) / kb = (1 + 6) / 4
    CHECK(expr::eval(r.spec.diffusivities[1].expression, env) == doctest::Approx(7.0 / 4));

    // Homogeneous dynamics: c_hat(t_hat) = lambda c(t_hat / kb).
    const auto ode = oracle::rothe_ode({1, 2, 0.5}, 2, 4, 0.5, 20000);
    const auto scaled = oracle::rothe_ode({0.5, 1, 0.25}, 1, 1, 2.0, 20000);
    for (int i = 0; i < 3; ++i) CHECK(scaled[static_cast<std::size_t>(i)] == doctest::Approx(0.5 * ode[static_cast<std::size_t>(i)]));

    CHECK_THROWS_AS(rescale_to_unit_rates(corpus("mmh.rxn")), ValidationError);
}
