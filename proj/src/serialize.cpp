#include "rdnet/serialize.hpp"

#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

namespace rdnet::io {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

namespace {

Json number(double v) {
    if (std::isfinite(v)) return v;
    return format_double(v);
}

Json integer(const BigInt& v) {
    if (v >= std::numeric_limits<long long>::min() && v <= std::numeric_limits<long long>::max())
        return v.convert_to<long long>();
    return v.str();
}

} // namespace

Json to_json(const stoich::StoichMatrix& m) {
    Json j;
    j["rows"] = m.rows();
    j["cols"] = m.cols();
    j["entries"] = Json::array();
    for (int v : m.row_major()) j["entries"].push_back(v);
    return j;
}

Json to_json(const stoich::ConservationResult& r) {
    Json j;
    if (const auto* e = std::get_if<stoich::ConservationVector>(&r)) {
        j["feasible"] = true;
        j["e"] = Json::array();
        for (const auto& v : e->e) j["e"].push_back(Json::array({integer(numerator_of(v)), integer(denominator_of(v))}));
        j["nullspace_dim"] = e->nullspace_dim;
    } else {
        const auto& inf = std::get<stoich::Infeasible>(r);
        j["feasible"] = false;
        j["phase1_objective"] = to_string(inf.phase1_objective);
        j["nullspace_dim"] = inf.nullspace_dim;
    }
    return j;
}

Json to_json(const stoich::SortOutcome& s) {
    Json j;
    if (const auto* r = std::get_if<stoich::SortResult>(&s)) {
        j["sortable"] = true;
        j["row_perm"] = r->row_perm;
        j["col_perm"] = r->col_perm;
        j["s"] = r->s;
        j["block_bounds"] = r->block_bounds;
    } else {
        const auto& ns = std::get<stoich::NotSortable>(s);
        j["sortable"] = false;
        j["reason"] = ns.reason;
        j["rows_remaining"] = ns.rows_remaining;
        j["cols_remaining"] = ns.cols_remaining;
    }
    return j;
}

Json to_json(const stoich::QuasiPositivityReport& q) {
    Json j;
    j["sampled_pass"] = q.sampled_pass;
    j["structural_pass"] = q.structural_pass;
    j["points_per_species"] = q.points_per_species;
    j["tolerance"] = q.tolerance;
    j["min_face_value"] = Json::array();
    for (double v : q.min_face_value) j["min_face_value"].push_back(number(v));
    return j;
}

Json to_json(const certify::BootstrapTrace& t) {
    Json j;
    j["epsilon"] = to_string(t.epsilon);
    j["sequence"] = Json::array();
    for (const auto& r : t.sequence) j["sequence"].push_back(to_string(r));
    j["steps"] = t.sequence.empty() ? 0 : t.sequence.size() - 1;
    j["outcome"] = certify::to_string(t.outcome);
    return j;
}

Json to_json(const certify::Certificate& c) {
    Json j;
    j["kind"] = certify::to_string(c.kind.kind);
    if (c.kind.kind == certify::Kind::GeneralizedRothe)
        j["exponents"] = {{"alpha", to_string(c.kind.alpha)},
                          {"beta", to_string(c.kind.beta)},
                          {"gamma", to_string(c.kind.gamma)}};
    j["class"] = certify::to_string(c.diffusivity);
    j["dim"] = c.dim;
    j["certified"] = c.certified;
    j["r0"] = to_string(c.r0);
    j["r0_is_limit"] = c.r0_is_limit;
    j["conditions"] = Json::array();
    for (const auto& k : c.conditions)
        j["conditions"].push_back({{"name", k.name},
                                   {"lhs", to_string(k.lhs)},
                                   {"rel", certify::to_string(k.rel)},
                                   {"rhs", to_string(k.rhs)},
                                   {"ok", k.satisfied}});
    j["bootstrap"] = c.bootstrap ? to_json(*c.bootstrap) : Json(nullptr);
    j["max_certified_dim"] = c.max_certified_dim ? Json(*c.max_certified_dim) : Json(nullptr);
    return j;
}

Json to_json(const monitors::NormReport& r, const NetworkSpec& spec) {
    Json j;
    j["times"] = Json::array();
    for (double t : r.times) j["times"].push_back(number(t));
    j["species"] = Json::array();
    for (std::size_t i = 0; i < r.species.size(); ++i) {
        const auto& s = r.species[i];
        Json lq = Json::array();
        for (const auto& [q, v] : s.lq) lq.push_back({{"q", number(q)}, {"value", number(v)}});
        j["species"].push_back({{"name", i < spec.species.size() ? spec.species[i] : std::to_string(i + 1)},
                                {"lq_spacetime", lq},
                                {"linf", number(s.linf)},
                                {"v2", number(s.v2)}});
    }
    j["conservation_drift"] = Json::array();
    for (double v : r.conservation_drift) j["conservation_drift"].push_back(number(v));
    j["equilibrium_residual"] = Json::array();
    for (double v : r.equilibrium_residual) j["equilibrium_residual"].push_back(number(v));
    j["level_sets"] = Json::array();
    for (const auto& e : r.level_sets) {
        Json mu = Json::array();
        for (std::size_t k = 0; k < e.pairs.size(); ++k)
            mu.push_back({{"r", number(e.pairs[k].first)}, {"q", number(e.pairs[k].second)}, {"mu", number(e.mu[k])}});
        Json lam = Json::array();
        for (double v : e.lambda_series) lam.push_back(number(v));
        j["level_sets"].push_back({{"species", e.species < spec.species.size() ? spec.species[e.species] : ""},
                                   {"k", number(e.k)},
                                   {"lambda", lam},
                                   {"mu", mu}});
    }
    return j;
}

Json analysis_json(const NetworkSpec& spec, std::size_t qp_samples, std::uint64_t qp_seed) {
    const auto M = stoich::build_matrix(spec);
    Json j;
    j["species"] = spec.species;
    j["matrix"] = to_json(M);
    j["rank"] = stoich::rank(M);
    j["conservation"] = to_json(stoich::find_conservation_vector(M));
    j["quasi_positivity"] = to_json(stoich::check_quasi_positivity(spec, qp_samples, qp_seed));
    j["sort"] = to_json(stoich::sort_block_triangular(M));
    return j;
}

namespace {

const std::string& name_of(const NetworkSpec& spec, std::size_t i) {
    static const std::string unknown = "?";
    return i < spec.species.size() ? spec.species[i] : unknown;
}

} // namespace

std::string norm_report_csv(const monitors::NormReport& r, const NetworkSpec& spec) {
    std::ostringstream out;
    out << "t,metric,species,value\n";
    const double t_end = r.times.empty() ? 0.0 : r.times.back();
    for (std::size_t i = 0; i < r.species.size(); ++i) {
        for (const auto& [q, v] : r.species[i].lq)
            out << format_double(t_end) << ",lq_spacetime_" << format_double(q) << ',' << name_of(spec, i) << ','
                << format_double(v) << '\n';
        out << format_double(t_end) << ",linf," << name_of(spec, i) << ',' << format_double(r.species[i].linf) << '\n';
        out << format_double(t_end) << ",v2," << name_of(spec, i) << ',' << format_double(r.species[i].v2) << '\n';
    }
    for (std::size_t k = 0; k < r.conservation_drift.size() && k < r.times.size(); ++k)
        out << format_double(r.times[k]) << ",conservation_drift,," << format_double(r.conservation_drift[k]) << '\n';
    for (std::size_t k = 0; k < r.equilibrium_residual.size() && k < r.times.size(); ++k)
        out << format_double(r.times[k]) << ",equilibrium_residual,," << format_double(r.equilibrium_residual[k])
            << '\n';
    for (const auto& e : r.level_sets) {
        for (std::size_t k = 0; k < e.lambda_series.size() && k < r.times.size(); ++k)
            out << format_double(r.times[k]) << ",level_set_lambda_" << format_double(e.k) << ','
                << name_of(spec, e.species) << ',' << format_double(e.lambda_series[k]) << '\n';
    }
    return out.str();
}

std::string trajectory_csv(const Trajectory& traj, const NetworkSpec& spec) {
    std::ostringstream out;
    out << "t,species,cell,value\n";
    for (const auto& s : traj.samples)
        for (std::size_t i = 0; i < s.fields.size(); ++i)
            for (std::size_t c = 0; c < s.fields[i].size(); ++c)
                out << format_double(s.t) << ',' << name_of(spec, i) << ',' << c << ',' << format_double(s.fields[i][c])
                    << '\n';
    return out.str();
}

std::string trajectory_summary_csv(const Trajectory& traj, const NetworkSpec& spec) {
    std::ostringstream out;
    out << "t,species,min,max,mean\n";
    for (const auto& s : traj.samples)
        for (std::size_t i = 0; i < s.fields.size(); ++i) {
            const auto& f = s.fields[i];
            double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0.0;
            for (double v : f) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
                sum += v;
            }
            out << format_double(s.t) << ',' << name_of(spec, i) << ',' << format_double(lo) << ','
                << format_double(hi) << ',' << format_double(f.empty() ? 0.0 : sum / static_cast<double>(f.size()))
                << '\n';
        }
    return out.str();
}

std::string diagnostics_csv(const Trajectory& traj) {
    std::ostringstream out;
    out << "row,t,dt,min_c,conserved_total\n";
    for (std::size_t k = 0; k < traj.diagnostics.size(); ++k) {
        const auto& d = traj.diagnostics[k];
        out << k << ',' << format_double(d.t) << ',' << format_double(d.dt) << ',' << format_double(d.min_c) << ','
            << format_double(d.conserved_total) << '\n';
    }
    return out.str();
}

} // namespace rdnet::io
