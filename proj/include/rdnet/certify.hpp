#pragma once

#include "rdnet/rational.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace rdnet::certify {

enum class Kind { Rothe, Network, GeneralizedRothe };

/// Problem class: the single reaction A1 + A2 <-> A3, a general network of
/// A_i + A_j <-> A_k reactions, or the single reaction with power-law rate
/// c1^alpha c2^beta - c3^gamma.
struct ProblemKind {
    Kind kind = Kind::Rothe;
    Rational alpha{1};
    Rational beta{1};
    Rational gamma{1};

    static ProblemKind rothe() { return {Kind::Rothe, 1, 1, 1}; }
    static ProblemKind network() { return {Kind::Network, 1, 1, 1}; }
    static ProblemKind generalized(Rational a, Rational b, Rational g) {
        return {Kind::GeneralizedRothe, std::move(a), std::move(b), std::move(g)};
    }
};

/// General: d_i(t, x, c).  OwnConcentration: d_i(c_i), filtration form.
enum class DiffusivityClass { General, OwnConcentration };

/// Exponent that may be +infinity.
struct ExtendedRational {
    bool infinite = false;
    Rational value{0};

    static ExtendedRational inf() { return {true, 0}; }
    static ExtendedRational finite(Rational v) { return {false, std::move(v)}; }
    bool operator==(const ExtendedRational&) const = default;
};

struct RegularityGain {
    ExtendedRational q_sup;
    bool attained = false;
};

/// Supremum of the integrability exponent q for which a nonnegative
/// subsolution of a uniformly parabolic Neumann problem with right-hand side
/// in L^r(Q_T) is bounded in L^q(Q_T), and whether the supremum is admissible.
/// Throws DomainError for r < 1 or N < 1.
RegularityGain regularity_gain(const Rational& r, int N);

enum class Relation { Less, LessEqual };

struct Condition {
    std::string name;
    Rational lhs;
    Relation rel = Relation::Less;
    Rational rhs;
    bool satisfied = false;
};

enum class BootstrapOutcome { Diverged, Stalled, Infeasible };

struct BootstrapTrace {
    Rational epsilon{0};
    std::vector<Rational> sequence;
    BootstrapOutcome outcome = BootstrapOutcome::Infeasible;
};

struct Certificate {
    bool certified = false;
    ProblemKind kind;
    DiffusivityClass diffusivity = DiffusivityClass::General;
    int dim = 1;
    Rational r0{1};
    /// True when r0 is the supremum of an open interval rather than an
    /// admissible value; the conditions are then evaluated at that limit.
    bool r0_is_limit = false;
    std::vector<Condition> conditions;
    std::optional<BootstrapTrace> bootstrap;
    /// Largest certified dimension; nullopt when every dimension is certified.
    std::optional<int> max_certified_dim;
};

struct CertifyOptions {
    bool with_bootstrap = true;
    Rational cap{1000};
    std::size_t max_steps = 1000000;
};

/// Evaluates the global-existence conditions for (kind, class, N) exactly.
/// Throws DomainError for N < 1 or non-positive exponents.
Certificate check_global_existence(const ProblemKind& kind, DiffusivityClass cls, int N,
                                   const CertifyOptions& opts = {});

/// Same verdict without conditions or trace; used for dimension scans.
bool is_certified(const ProblemKind& kind, DiffusivityClass cls, int N);

/// Iterates 1/r_{n+1} = 2/r_n - 6/(N+2) + eps while 2/r_n - 6/(N+2) >= 0,
/// r_{n+1} = r_n + 1 afterwards, until r_n >= cap or max_steps.
BootstrapTrace bootstrap_sequence(const Rational& r0, int N, const Rational& epsilon, const Rational& cap,
                                  std::size_t max_steps);

/// Half of the admissible gap 6/(N+2) - 1/r0.
Rational default_epsilon(const Rational& r0, int N);

struct SequenceLemmaResult {
    bool predicate = false;
    std::vector<double> trace;
};

/// Checks b > 1 and y0 <= C^(-1/theta) b^(-1/theta^2), and iterates the
/// extremal sequence y_{n+1} = C b^n y_n^(1+theta) for n_max steps.
SequenceLemmaResult sequence_lemma_check(double C, double b, double theta, double y0, std::size_t n_max);

std::string to_string(Kind k);
std::string to_string(DiffusivityClass c);
std::string to_string(Relation r);
std::string to_string(BootstrapOutcome o);

} // namespace rdnet::certify
