#include "rdnet/certify.hpp"

#include "rdnet/errors.hpp"

#include <cmath>

namespace rdnet::certify {

std::string to_string(Kind k) {
    switch (k) {
    case Kind::Rothe: return "rothe";
    case Kind::Network: return "network";
    case Kind::GeneralizedRothe: return "generalized_rothe";
    }
    return "?";
}

std::string to_string(DiffusivityClass c) { return c == DiffusivityClass::General ? "general" : "own"; }

std::string to_string(Relation r) { return r == Relation::Less ? "<" : "<="; }

std::string to_string(BootstrapOutcome o) {
    switch (o) {
    case BootstrapOutcome::Diverged: return "diverged";
    case BootstrapOutcome::Stalled: return "stalled";
    case BootstrapOutcome::Infeasible: return "infeasible";
    }
    return "?";
}

RegularityGain regularity_gain(const Rational& r, int N) {
    if (r < 1) throw DomainError("regularity_gain: r must be >= 1");
    if (N < 1) throw DomainError("regularity_gain: N must be >= 1");
    const Rational a = N + 2;
    if (r == 1) {
        if (N == 1) return {ExtendedRational::finite(2), false};
        // 1/q > 1 - 2/(N+2) = N/(N+2)
        return {ExtendedRational::finite(a / N), false};
    }
    const Rational gain = N >= 3 ? Rational(2 / a) : Rational(1, 2);
    const Rational inv_q = 1 / r - gain;
    if (inv_q <= 0) return {ExtendedRational::inf(), false};  // every finite q, none attaining +inf
    return {ExtendedRational::finite(1 / inv_q), N != 2};
}

namespace {

Condition make(std::string name, Rational lhs, Relation rel, Rational rhs) {
    Condition c{std::move(name), std::move(lhs), rel, std::move(rhs), false};
    c.satisfied = rel == Relation::Less ? c.lhs < c.rhs : c.lhs <= c.rhs;
    return c;
}

struct Evaluation {
    Rational r0{1};
    bool r0_is_limit = false;
    std::vector<Condition> conditions;
};

void validate(const ProblemKind& k, int N) {
    if (N < 1) throw DomainError("dimension must be >= 1");
    if (k.kind == Kind::GeneralizedRothe && (k.alpha <= 0 || k.beta <= 0 || k.gamma <= 0))
        throw DomainError("rate exponents must be positive");
}

Condition one_dimensional() { return make("N = 1", 1, Relation::LessEqual, 1); }

/// Picks 1/r0 in the open interval (lo, hi) when it is nonempty; otherwise
/// returns the limit 1/lo, i.e. r0 = (N+2)/N.
std::pair<Rational, bool> choose_r0(const Rational& lo, const Rational& hi) {
    if (lo < hi) return {2 / (lo + hi), false};
    return {1 / lo, true};
}

Rational min3(const Rational& a, const Rational& b, const Rational& c) { return std::min(a, std::min(b, c)); }

Evaluation evaluate(const ProblemKind& k, DiffusivityClass cls, int N) {
    validate(k, N);
    const Rational a = N + 2;
    const bool own = cls == DiffusivityClass::OwnConcentration;
    Evaluation ev;

    switch (k.kind) {
    case Kind::Rothe: {
        if (N == 1) {
            ev.r0 = own ? Rational(2) : Rational(3, 2);
            ev.conditions.push_back(one_dimensional());
            return ev;
        }
        if (own) {
            ev.r0 = 2;
        } else {
            const Rational lo = Rational(N) / a;  // r0 < (N+2)/N
            const Rational hi = min3(1, (1 + 4 / a) / 2, 6 / a);
            std::tie(ev.r0, ev.r0_is_limit) = choose_r0(lo, hi);
            if (!ev.r0_is_limit) {
                ev.conditions.push_back(make("r0 > 1", 1, Relation::Less, ev.r0));
                ev.conditions.push_back(make("r0 < (N+2)/N", ev.r0, Relation::Less, a / N));
            }
        }
        ev.conditions.push_back(make("2/r0 - 4/(N+2) < 1", 2 / ev.r0 - 4 / a, Relation::Less, 1));
        ev.conditions.push_back(make("1/r0 < 6/(N+2)", 1 / ev.r0, Relation::Less, 6 / a));
        return ev;
    }
    case Kind::Network: {
        if (N == 1) {
            ev.r0 = own ? Rational(2) : Rational(3, 2);
            ev.conditions.push_back(one_dimensional());
            return ev;
        }
        if (own) {
            ev.r0 = 2;
        } else {
            const Rational lo = Rational(N) / a;
            const Rational hi = std::min(Rational(1), Rational(4 / a));
            std::tie(ev.r0, ev.r0_is_limit) = choose_r0(lo, hi);
            if (!ev.r0_is_limit) {
                ev.conditions.push_back(make("r0 > 1", 1, Relation::Less, ev.r0));
                ev.conditions.push_back(make("r0 < (N+2)/N", ev.r0, Relation::Less, a / N));
            }
        }
        ev.conditions.push_back(make("2/r0 - 6/(N+2) < 1/r0 - 2/(N+2)", 2 / ev.r0 - 6 / a, Relation::Less,
                                     1 / ev.r0 - 2 / a));
        ev.conditions.push_back(make("2/r0 - 4/(N+2) < 1", 2 / ev.r0 - 4 / a, Relation::Less, 1));
        return ev;
    }
    case Kind::GeneralizedRothe: {
        const Rational s = k.alpha + k.beta;
        if (own) {
            ev.r0 = 2;
            ev.conditions.push_back(make("gamma <= 2", k.gamma, Relation::LessEqual, 2));
            if (N >= 2)
                ev.conditions.push_back(make("(alpha+beta)(gamma - 4/(N+2)) < 1 + 4/(N+2)", s * (k.gamma - 4 / a),
                                             Relation::Less, 1 + 4 / a));
        } else {
            ev.r0 = N == 1 ? Rational(3, 2) : Rational(a / N);
            ev.r0_is_limit = N >= 2;
            ev.conditions.push_back(make("gamma <= 1", k.gamma, Relation::LessEqual, 1));
            if (N >= 2) {
                ev.conditions.push_back(make("gamma < (N+2)/N", k.gamma, Relation::Less, a / N));
                ev.conditions.push_back(
                    make("(alpha+beta)(gamma N - 2) < N + 2", s * (k.gamma * N - 2), Relation::Less, a));
            }
        }
        return ev;
    }
    }
    return ev;
}

bool all_satisfied(const std::vector<Condition>& cs) {
    for (const auto& c : cs)
        if (!c.satisfied) return false;
    return true;
}

/// nullopt when certified in every dimension.
std::optional<int> max_dimension(const ProblemKind& k, DiffusivityClass cls) {
    if (k.kind == Kind::GeneralizedRothe) {
        const Rational s = k.alpha + k.beta;
        const Rational gamma_cap = cls == DiffusivityClass::OwnConcentration ? 2 : 1;
        if (k.gamma <= gamma_cap && s * k.gamma <= 1) return std::nullopt;
    }
    if (!is_certified(k, cls, 1)) return 0;
    // Verdicts are monotone in N: bracket the first failure, then bisect.
    int good = 1, bad = 2;
    while (is_certified(k, cls, bad)) {
        good = bad;
        if (bad > (1 << 29)) return std::nullopt;
        bad *= 2;
    }
    while (bad - good > 1) {
        const int mid = good + (bad - good) / 2;
        (is_certified(k, cls, mid) ? good : bad) = mid;
    }
    return good;
}

} // namespace

bool is_certified(const ProblemKind& kind, DiffusivityClass cls, int N) {
    return all_satisfied(evaluate(kind, cls, N).conditions);
}

Rational default_epsilon(const Rational& r0, int N) { return (Rational(6) / (N + 2) - 1 / r0) / 2; }

Certificate check_global_existence(const ProblemKind& kind, DiffusivityClass cls, int N, const CertifyOptions& opts) {
    Evaluation ev = evaluate(kind, cls, N);
    Certificate cert;
    cert.kind = kind;
    cert.diffusivity = cls;
    cert.dim = N;
    cert.r0 = ev.r0;
    cert.r0_is_limit = ev.r0_is_limit;
    cert.conditions = std::move(ev.conditions);
    cert.certified = all_satisfied(cert.conditions);
    cert.max_certified_dim = max_dimension(kind, cls);
    if (opts.with_bootstrap && kind.kind == Kind::Rothe && N >= 2)
        cert.bootstrap = bootstrap_sequence(cert.r0, N, default_epsilon(cert.r0, N), opts.cap, opts.max_steps);
    return cert;
}

BootstrapTrace bootstrap_sequence(const Rational& r0, int N, const Rational& epsilon, const Rational& cap,
                                  std::size_t max_steps) {
    if (N < 1) throw DomainError("dimension must be >= 1");
    BootstrapTrace trace;
    trace.epsilon = epsilon;
    const Rational six_over = Rational(6) / (N + 2);
    if (!(r0 > 1) || !(epsilon > 0) || !(epsilon < six_over - 1 / r0)) {
        trace.outcome = BootstrapOutcome::Infeasible;
        return trace;
    }
    trace.sequence.push_back(r0);
    std::size_t steps = 0;
    while (trace.sequence.back() < cap && steps < max_steps) {
        const Rational& r = trace.sequence.back();
        const Rational gap = 2 / r - six_over;
        trace.sequence.push_back(gap < 0 ? Rational(r + 1) : Rational(1 / (gap + epsilon)));
        ++steps;
    }
    trace.outcome = trace.sequence.back() >= cap ? BootstrapOutcome::Diverged : BootstrapOutcome::Stalled;
    return trace;
}

SequenceLemmaResult sequence_lemma_check(double C, double b, double theta, double y0, std::size_t n_max) {
    SequenceLemmaResult res;
    const double threshold = std::pow(C, -1.0 / theta) * std::pow(b, -1.0 / (theta * theta));
    res.predicate = b > 1.0 && y0 <= threshold;
    res.trace.reserve(n_max + 1);
    res.trace.push_back(y0);
    double bn = 1.0;
    for (std::size_t n = 0; n < n_max; ++n) {
        res.trace.push_back(C * bn * std::pow(res.trace.back(), 1.0 + theta));
        bn *= b;
    }
    return res;
}

} // namespace rdnet::certify
