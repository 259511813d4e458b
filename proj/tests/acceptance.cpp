// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "oracles.hpp"

#include "rdnet/certify.hpp"
#include "rdnet/monitors.hpp"
#include "rdnet/network.hpp"
#include "rdnet/solver.hpp"
#include "rdnet/stoich.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace rdnet;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

const char* rothe_src = "species A1 A2 A3;\nA1 + A2 <-> A3 : kf=1, kb=1;\ndiff A1 = 1;\ndiff A2 = 1;\ndiff A3 = 1;\n";

NetworkSpec corpus(const std::string& name) { return load_network_file(std::string(RDNET_DATA_DIR) + "/" + name); }

Outcome dimension_thresholds() {
    using certify::DiffusivityClass;
    struct Row {
        certify::ProblemKind kind;
        DiffusivityClass cls;
        int last;
    };
    const Row rows[] = {{certify::ProblemKind::rothe(), DiffusivityClass::General, 5},
                        {certify::ProblemKind::rothe(), DiffusivityClass::OwnConcentration, 9},
                        {certify::ProblemKind::network(), DiffusivityClass::General, 3},
                        {certify::ProblemKind::network(), DiffusivityClass::OwnConcentration, 5}};
    std::ostringstream d;
    bool ok = true;
    for (const auto& r : rows) {
        for (int N = 1; N <= r.last + 1; ++N) {
            const auto c = certify::check_global_existence(r.kind, r.cls, N);
            if (c.certified != (N <= r.last)) ok = false;
        }
        const auto c = certify::check_global_existence(r.kind, r.cls, r.last);
        if (!c.max_certified_dim || *c.max_certified_dim != r.last) ok = false;
        d << certify::to_string(r.kind.kind) << '/' << certify::to_string(r.cls) << "<="
          << (c.max_certified_dim ? std::to_string(*c.max_certified_dim) : "inf") << ' ';
    }
    return {ok, d.str()};
}

Outcome generalized_limit() {
    const auto k = certify::ProblemKind::generalized(1, 1, 2);
    const auto c2 = certify::check_global_existence(k, certify::DiffusivityClass::OwnConcentration, 2);
    const auto c1 = certify::check_global_existence(k, certify::DiffusivityClass::OwnConcentration, 1);
    bool exact = false;
    for (const auto& c : c2.conditions)
        if (!c.satisfied && c.lhs == 2 && c.rhs == 2) exact = true;  // 2 (2 - 1) vs 1 + 1
    return {!c2.certified && c1.certified && exact,
            std::string("N=2 ") + (c2.certified ? "certified" : "not certified") + ", N=1 " +
                (c1.certified ? "certified" : "not certified")};
}

Outcome conservation() {
    const NetworkSpec spec = parse_network(rothe_src);
    solver::SolverConfig cfg;
    cfg.t_end = 5.0;
    cfg.output_every = 1000000;
    const auto res = solver::run_simulation(spec, Grid::line(64), cfg, ic::Checkerboard{0.0, 2.0});
    const std::vector<double> e{1, 1, 2};
    const double initial = weighted_total(res.trajectory.grid, res.trajectory.samples.front(), e);
    double drift = 0.0;
    for (const auto& d : res.trajectory.diagnostics) drift = std::max(drift, std::abs(d.conserved_total - initial));
    const double rel = drift / initial;
    char buf[96];
    std::snprintf(buf, sizeof buf, "max relative drift %.3e over %zu steps", rel, res.trajectory.diagnostics.size());
    return {rel <= 1e-10, buf};
}

Outcome positivity() {
    const std::string names[] = {"rothe.rxn", "mmh.rxn", "polymer.rxn"};
    double worst = INFINITY;
    std::size_t steps = 0;
    for (int seed = 0; seed < 20; ++seed) {
        const NetworkSpec spec = corpus(names[seed % 3]);
        const Grid g = (seed / 3) % 2 == 0 ? Grid::line(48) : Grid::square(16);
        solver::SolverConfig cfg;
        cfg.t_end = 1.0;
        cfg.output_every = 1000000;
        State s0 = init_state(spec, g, ic::RandomUniform{0.0, 3.0, static_cast<std::uint64_t>(seed)});
        if (seed >= 10)  // start from exact zeros in roughly a third of the cells
            for (auto& f : s0.fields)
                for (auto& v : f)
                    if (v < 1.0) v = 0.0;
        const auto res = solver::run_simulation(spec, g, cfg, s0);
        for (const auto& d : res.trajectory.diagnostics) worst = std::min(worst, d.min_c);
        steps += res.trajectory.diagnostics.size();
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "min concentration %.3e over %zu steps", worst, steps);
    return {worst >= 0.0, buf};
}

Outcome ode_oracle() {
    const NetworkSpec spec = parse_network(rothe_src);
    solver::SolverConfig cfg;
    cfg.t_end = 1.0;
    cfg.dt_max = 2e-7;
    cfg.safety = 1.0;
    cfg.output_every = 100000000;
    cfg.diagnostics_every = 100000000;
    const auto res = solver::run_simulation(spec, Grid::line(2), cfg, ic::Uniform{{2.0, 1.0, 0.0}});
    const auto ref = oracle::rothe_ode({2.0, 1.0, 0.0}, 1.0, 1.0, 1.0, 20000);
    double err = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (double v : res.trajectory.samples.back().fields[i]) err = std::max(err, std::abs(v - ref[i]));
    char buf[64];
    std::snprintf(buf, sizeof buf, "max error %.3e", err);
    return {err <= 1e-6, buf};
}

double heat_error(std::size_t n) {
    const NetworkSpec spec = parse_network("species U;\ndiff U = 1;\n");
    solver::SolverConfig cfg;
    cfg.t_end = 0.1;
    cfg.output_every = 1000000;
    const auto res = solver::run_simulation(spec, Grid::line(n), cfg, ic::CosineBump{0, 1.0, 1.0});
    const auto exact = oracle::heat_cell_averages(n, 0.1, 1.0);
    const auto& u = res.trajectory.samples.back().fields[0];
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += (u[i] - exact[i]) * (u[i] - exact[i]);
    return std::sqrt(acc / static_cast<double>(n));
}

Outcome heat_oracle() {
    const double e1 = heat_error(32), e2 = heat_error(64);
    const double ratio = e1 / e2;
    char buf[96];
    std::snprintf(buf, sizeof buf, "L2 errors %.3e, %.3e, ratio %.3f", e1, e2, ratio);
    return {ratio >= 3.2 && ratio <= 4.8, buf};
}

Outcome sorting() {
    std::mt19937_64 rng(7);
    std::size_t ok = 0;
    for (int n = 0; n < 1000; ++n) {
        const auto net = oracle::random_conservative_network(rng);
        const auto M = stoich::build_matrix(parse_network(net.source));
        const auto out = stoich::sort_block_triangular(M);
        if (const auto* s = std::get_if<stoich::SortResult>(&out))
            if (oracle::plus_one_below_negatives(stoich::permute(M, *s))) ++ok;
    }
    const auto poly = stoich::sort_block_triangular(stoich::build_matrix(corpus("polymer.rxn")));
    bool identity = false;
    if (const auto* s = std::get_if<stoich::SortResult>(&poly)) {
        identity = true;
        for (std::size_t i = 0; i < s->row_perm.size(); ++i) identity = identity && s->row_perm[i] == i;
        for (std::size_t j = 0; j < s->col_perm.size(); ++j) identity = identity && s->col_perm[j] == j;
    }
    return {ok == 1000 && identity,
            std::to_string(ok) + "/1000 random networks sorted, polymerization " + (identity ? "identity" : "permuted")};
}

Outcome conservation_vector() {
    auto e_of = [](const stoich::StoichMatrix& M) -> std::vector<Rational> {
        const auto r = stoich::find_conservation_vector(M);
        if (const auto* v = std::get_if<stoich::ConservationVector>(&r)) return v->e;
        return {};
    };
    const auto rothe = e_of(stoich::build_matrix(parse_network(rothe_src)));
    const auto poly = e_of(stoich::build_matrix(corpus("polymer.rxn")));
    // A1 + A2 -> A1: column e_1 - e_1 - e_2.
    const auto bad = stoich::find_conservation_vector(stoich::StoichMatrix::from_columns(2, {{0, -1}}));
    const bool ok = rothe == std::vector<Rational>{1, 1, 2} && poly == std::vector<Rational>{1, 2, 3, 4} &&
                    std::holds_alternative<stoich::Infeasible>(bad);
    return {ok, "rothe (1,1,2), polymerization (1,2,3,4), A1+A2<->A1 infeasible"};
}

Outcome bootstrap() {
    const Rational cap = 50;
    const auto a = certify::bootstrap_sequence(2, 3, certify::default_epsilon(2, 3), cap, 200);
    const auto b = certify::bootstrap_sequence(Rational(13, 10), 5, certify::default_epsilon(Rational(13, 10), 5), cap, 200);
    const auto c = certify::check_global_existence(certify::ProblemKind::rothe(), certify::DiffusivityClass::General, 6);
    const auto d = certify::bootstrap_sequence(Rational(4, 3), 6, Rational(1, 100), cap, 200);
    const bool ok = a.outcome == certify::BootstrapOutcome::Diverged && a.sequence.back() >= cap &&
                    b.outcome == certify::BootstrapOutcome::Diverged && b.sequence.back() >= cap && !c.certified &&
                    c.bootstrap && c.bootstrap->outcome == certify::BootstrapOutcome::Infeasible &&
                    d.outcome == certify::BootstrapOutcome::Infeasible;
    return {ok, "steps " + std::to_string(a.sequence.size() - 1) + " and " + std::to_string(b.sequence.size() - 1) +
                    ", N=6 " + certify::to_string(c.bootstrap ? c.bootstrap->outcome : certify::BootstrapOutcome::Stalled)};
}

Outcome holder() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_int_distribution<std::size_t> cells(1, 200);
    std::size_t holds = 0;
    for (int n = 0; n < 1000; ++n) {
        std::vector<double> f(cells(rng));
        for (auto& v : f) v = u01(rng) < 0.2 ? 0.0 : std::pow(10.0, 4.0 * u01(rng) - 2.0);
        auto exponent = [&] { return u01(rng) < 0.15 ? INFINITY : 1.0 + 9.0 * u01(rng); };
        const double r = exponent(), s = exponent(), alpha = u01(rng);
        const double inv_q = (1.0 - alpha) * (std::isinf(r) ? 0.0 : 1.0 / r) + alpha * (std::isinf(s) ? 0.0 : 1.0 / s);
        const double q = inv_q == 0.0 ? INFINITY : 1.0 / inv_q;
        const double vol = 1.0 / static_cast<double>(f.size()) * (0.5 + u01(rng));
        if (monitors::holder_interpolation_check(f, vol, q, r, s, alpha).holds) ++holds;
    }
    return {holds == 1000, std::to_string(holds) + "/1000 fields"};
}

Outcome equilibrium() {
    const NetworkSpec spec = parse_network(rothe_src);
    solver::SolverConfig cfg;
    cfg.t_end = 50.0;
    cfg.output_every = 1000000;
    const auto res = solver::run_simulation(spec, Grid::line(64), cfg, ic::CosineBump{0, 0.5, 1.0});
    const double r = res.report.equilibrium_residual.back();
    char buf[64];
    std::snprintf(buf, sizeof buf, "||c1 c2 - c3||_inf = %.3e", r);
    return {r <= 1e-4, buf};
}

} // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const Criterion criteria[] = {
        {"dimension thresholds", 1, dimension_thresholds},
        {"generalized-rate limit case", 1, generalized_limit},
        {"discrete conservation", 10, conservation},
        {"positivity over corpus", 300, positivity},
        {"ODE oracle", 10, ode_oracle},
        {"heat-equation oracle", 60, heat_oracle},
        {"block-triangular sorting", 30, sorting},
        {"conservation vectors", 1, conservation_vector},
        {"bootstrap traces", 1, bootstrap},
        {"Hoelder inequality", 10, holder},
        {"equilibrium attraction", 60, equilibrium},
    };
    int failures = 0;
    int index = 0;
    for (const auto& c : criteria) {
        ++index;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.pass && in_time;
        if (!pass) ++failures;
        std::printf("[%s] %2d %-28s %s (%.3f s%s)\n", pass ? "PASS" : "FAIL", index, c.name, o.detail.c_str(), secs,
                    in_time ? "" : ", over budget");
    }
    std::printf("%d/%d criteria passed\n", index - failures, index);
    return failures == 0 ? 0 : 1;
}
