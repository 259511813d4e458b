#include "rdnet/cli.hpp"

#include "rdnet/certify.hpp"
#include "rdnet/errors.hpp"
#include "rdnet/kernels.hpp"
#include "rdnet/network.hpp"
#include "rdnet/serialize.hpp"
#include "rdnet/solver.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>

namespace rdnet::cli {

namespace {

constexpr int exit_ok = 0;
constexpr int exit_domain = 1;
constexpr int exit_usage = 2;

struct Usage : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Rational rational_arg(const std::string& name, const std::string& text) {
    if (const auto slash = text.find('/'); slash != std::string::npos) {
        const auto p = parse_decimal(text.substr(0, slash));
        const auto q = parse_decimal(text.substr(slash + 1));
        if (p && q && *q != 0) return *p / *q;
    } else if (auto v = parse_decimal(text)) {
        return *v;
    }
    throw Usage("--" + name + ": expected a decimal or p/q, got '" + text + "'");
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IOError("cannot write " + path);
    f << text;
    if (!f) throw IOError("write failed for " + path);
}

certify::DiffusivityClass class_of(const NetworkSpec& spec) {
    for (const auto& d : spec.diffusivities)
        if (d.kind == DiffusivityKind::General) return certify::DiffusivityClass::General;
    return certify::DiffusivityClass::OwnConcentration;
}

certify::ProblemKind kind_of(const NetworkSpec& spec) {
    if (spec.reactions.size() == 1) {
        const auto& r = spec.reactions[0];
        if (r.unit_exponents()) return certify::ProblemKind::rothe();
        return certify::ProblemKind::generalized(r.alpha, r.beta, r.gamma);
    }
    for (const auto& r : spec.reactions)
        if (!r.unit_exponents()) throw ValidationError("no certificate for networks with non-unit exponents");
    return certify::ProblemKind::network();
}

struct AnalyzeArgs {
    std::string file;
    std::size_t samples = 1000;
    std::uint64_t seed = 2024;
};

struct CertifyArgs {
    std::string file;
    std::string kind;
    std::string cls = "general";
    std::optional<int> dim;
    std::string alpha = "1", beta = "1", gamma = "1";
    std::string cap = "1000";
    bool strict = false;
    bool no_bootstrap = false;
};

struct BootstrapArgs {
    std::string r0;
    int dim = 0;
    std::string epsilon;
    std::string cap = "1000";
    std::size_t max_steps = 1000000;
};

struct SimulateArgs {
    std::string file;
    std::string config;
    std::string ic;
    std::optional<int> dim;
    std::vector<std::size_t> cells{64};
    std::vector<double> lengths{1.0};
    std::optional<double> t_end;
    std::string out;
    std::string report;
    std::string report_csv;
    std::string diagnostics;
    bool summary = false;
    bool rescale = false;
    std::vector<double> q_values{1.0, 2.0};
    std::vector<double> levels;
};

int do_analyze(const AnalyzeArgs& a, std::ostream& out) {
    const NetworkSpec spec = load_network_file(a.file);
    const auto doc = io::analysis_json(spec, a.samples, a.seed);
    out << doc.dump(2) << '\n';
    const bool ok = doc["conservation"]["feasible"].get<bool>() && doc["sort"]["sortable"].get<bool>();
    return ok ? exit_ok : exit_domain;
}

int do_certify(const CertifyArgs& a, std::ostream& out, std::ostream& err) {
    if (a.file.empty() == a.kind.empty()) throw Usage("certify needs exactly one of a network file or --kind");
    certify::ProblemKind kind;
    certify::DiffusivityClass cls = a.cls == "own" ? certify::DiffusivityClass::OwnConcentration
                                                   : certify::DiffusivityClass::General;
    std::optional<int> dim = a.dim;
    if (!a.file.empty()) {
        const NetworkSpec spec = load_network_file(a.file);
        kind = kind_of(spec);
        cls = class_of(spec);
        if (!dim) dim = spec.dim_hint;
    } else if (a.kind == "rothe") {
        kind = certify::ProblemKind::rothe();
    } else if (a.kind == "network") {
        kind = certify::ProblemKind::network();
    } else {
        kind = certify::ProblemKind::generalized(rational_arg("alpha", a.alpha), rational_arg("beta", a.beta),
                                                 rational_arg("gamma", a.gamma));
    }
    if (!dim) throw Usage("certify needs --dim");
    certify::CertifyOptions opts;
    opts.with_bootstrap = !a.no_bootstrap;
    opts.cap = rational_arg("cap", a.cap);
    const auto cert = certify::check_global_existence(kind, cls, *dim, opts);
    out << io::to_json(cert).dump(2) << '\n';
    if (!cert.certified && a.strict) {
        err << "not certified\n";
        return exit_domain;
    }
    return exit_ok;
}

int do_bootstrap(const BootstrapArgs& a, std::ostream& out, std::ostream& err) {
    const Rational r0 = rational_arg("r0", a.r0);
    const Rational eps = a.epsilon.empty() ? certify::default_epsilon(r0, a.dim) : rational_arg("epsilon", a.epsilon);
    const auto trace = certify::bootstrap_sequence(r0, a.dim, eps, rational_arg("cap", a.cap), a.max_steps);
    out << io::to_json(trace).dump(2) << '\n';
    if (trace.outcome == certify::BootstrapOutcome::Infeasible) {
        err << "infeasible: need r0 > 1 and 0 < epsilon < 6/(N+2) - 1/r0\n";
        return exit_domain;
    }
    return exit_ok;
}

int do_simulate(const SimulateArgs& a, std::ostream& out) {
    NetworkSpec spec = load_network_file(a.file);
    solver::SolverConfig cfg = a.config.empty() ? solver::SolverConfig{} : solver::load_config_file(a.config);
    if (a.t_end) cfg.t_end = *a.t_end;
    cfg.validate();

    const int dim = a.dim.value_or(spec.dim_hint.value_or(1));
    if (dim < 1 || dim > 3) throw Usage("--dim must be 1, 2 or 3");
    auto expand = [dim](auto v, const char* what) {
        if (v.size() == 1) v.resize(static_cast<std::size_t>(dim), v[0]);
        if (v.size() != static_cast<std::size_t>(dim))
            throw Usage(std::string("--") + what + " needs 1 or " + std::to_string(dim) + " values");
        return v;
    };
    const Grid grid(dim, expand(a.cells, "cells"), expand(a.lengths, "length"));
    State initial = init_state(spec, grid, parse_initial_condition(a.ic));
    if (a.rescale) {
        auto r = solver::rescale_to_unit_rates(spec);
        spec = std::move(r.spec);
        for (auto& f : initial.fields)
            for (double& v : f) v *= r.lambda;
        cfg.t_end *= r.time_scale;
    }

    monitors::MonitorSet mon;
    mon.q_values = a.q_values;
    for (double k : a.levels)
        for (std::size_t i = 0; i < spec.num_species(); ++i) mon.level_sets.push_back({i, k, {{2.0, 4.0}}});

    const auto res = solver::run_simulation(spec, grid, cfg, initial, mon);
    if (!a.out.empty())
        write_file(a.out, a.summary ? io::trajectory_summary_csv(res.trajectory, spec)
                                    : io::trajectory_csv(res.trajectory, spec));
    if (!a.diagnostics.empty()) write_file(a.diagnostics, io::diagnostics_csv(res.trajectory));
    if (!a.report_csv.empty()) write_file(a.report_csv, io::norm_report_csv(res.report, spec));
    const std::string json = io::to_json(res.report, spec).dump(2) + "\n";
    if (a.report.empty()) out << json;
    else write_file(a.report, json);
    return exit_ok;
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    kernels::apply_thread_cap_from_env();

    CLI::App app{"Analyze, certify and simulate mass-action reaction-diffusion networks", "rdnet"};
    app.require_subcommand(1);

    AnalyzeArgs an;
    auto* analyze = app.add_subcommand("analyze", "Stoichiometry, conservation, quasi-positivity and sorting");
    analyze->add_option("file", an.file, "Network file (.rxn)")->required();
    analyze->add_option("--samples", an.samples, "Quasi-positivity samples per species")->capture_default_str();
    analyze->add_option("--seed", an.seed, "Quasi-positivity sampling seed")->capture_default_str();

    CertifyArgs ce;
    auto* cert = app.add_subcommand("certify", "Evaluate the global-existence conditions");
    cert->add_option("file", ce.file, "Network file; kind and class are derived from it");
    cert->add_option("--kind", ce.kind, "rothe, network or generalized")
        ->check(CLI::IsMember({"rothe", "network", "generalized"}));
    cert->add_option("--class", ce.cls, "general or own")->check(CLI::IsMember({"general", "own"}))->capture_default_str();
    cert->add_option("--dim", ce.dim, "Space dimension N")->check(CLI::PositiveNumber);
    cert->add_option("--alpha", ce.alpha, "Forward exponent of the first reactant")->capture_default_str();
    cert->add_option("--beta", ce.beta, "Forward exponent of the second reactant")->capture_default_str();
    cert->add_option("--gamma", ce.gamma, "Backward exponent")->capture_default_str();
    cert->add_option("--cap", ce.cap, "Bootstrap divergence cap")->capture_default_str();
    cert->add_flag("--strict", ce.strict, "Exit 1 when not certified");
    cert->add_flag("--no-bootstrap", ce.no_bootstrap, "Omit the bootstrap trace");

    BootstrapArgs bo;
    auto* boot = app.add_subcommand("bootstrap", "Trace the integrability exponent recursion");
    boot->add_option("--r0", bo.r0, "Initial exponent (decimal or p/q)")->required();
    boot->add_option("--dim", bo.dim, "Space dimension N")->required()->check(CLI::PositiveNumber);
    boot->add_option("--epsilon", bo.epsilon, "Step slack; default half the admissible gap");
    boot->add_option("--cap", bo.cap, "Divergence cap")->capture_default_str();
    boot->add_option("--max-steps", bo.max_steps, "Step limit")->capture_default_str();

    SimulateArgs si;
    auto* sim = app.add_subcommand("simulate", "Integrate the reaction-diffusion system");
    sim->add_option("file", si.file, "Network file (.rxn)")->required();
    sim->add_option("--ic", si.ic, "Initial condition, e.g. uniform:1,1,1 or random:0,2,seed=7")->required();
    sim->add_option("--config", si.config, "Solver config file (key=value)");
    sim->add_option("--dim", si.dim, "Space dimension; default from the network or 1");
    sim->add_option("--cells", si.cells, "Cells per axis (one value or one per axis)")->delimiter(',');
    sim->add_option("--length", si.lengths, "Domain length per axis")->delimiter(',');
    sim->add_option("--t-end", si.t_end, "Override t_end from the config");
    sim->add_option("--out", si.out, "Trajectory CSV path");
    sim->add_flag("--summary", si.summary, "Write per-sample min/max/mean instead of cell values");
    sim->add_option("--report", si.report, "NormReport JSON path (default: stdout)");
    sim->add_option("--report-csv", si.report_csv, "NormReport CSV path");
    sim->add_option("--diagnostics", si.diagnostics, "Per-step diagnostics CSV path");
    sim->add_flag("--rescale", si.rescale, "Rescale a single reaction to kf = kb = 1 first");
    sim->add_option("--q", si.q_values, "Space-time norm exponents")->delimiter(',');
    sim->add_option("--level", si.levels, "Level-set thresholds k")->delimiter(',');

    auto* version = app.add_subcommand("version", "Print the version");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            for (auto* s : app.get_subcommands()) out << s->help();
            return exit_ok;
        }
        err << "rdnet: " << e.what() << '\n';
        err << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
        return exit_usage;
    }

    try {
        if (*analyze) return do_analyze(an, out);
        if (*cert) return do_certify(ce, out, err);
        if (*boot) return do_bootstrap(bo, out, err);
        if (*sim) return do_simulate(si, out);
        if (*version) {
            out << "rdnet " << RDNET_VERSION << '\n';
            return exit_ok;
        }
    } catch (const Usage& e) {
        err << "rdnet: " << e.what() << '\n' << app.get_subcommands().front()->help();
        return exit_usage;
    } catch (const ParseError& e) {
        err << "rdnet: parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ValidationError& e) {
        err << "rdnet: invalid input: " << e.what() << '\n';
        return exit_usage;
    } catch (const IOError& e) {
        err << "rdnet: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        err << "rdnet: " << e.what() << '\n';
        return exit_domain;
    }
    return exit_usage;
}

} // namespace rdnet::cli
