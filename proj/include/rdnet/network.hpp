#pragma once

#include "rdnet/expr.hpp"
#include "rdnet/rational.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rdnet {

/// One reaction A_a + A_b <-> A_p with rate kf c_a^alpha c_b^beta - kb c_p^gamma.
/// Species indices are 0-based; reactant_a == reactant_b encodes 2 A_a.
struct ReactionSpec {
    std::size_t reactant_a = 0;
    std::size_t reactant_b = 0;
    std::size_t product = 0;
    Rational kf{1};
    Rational kb{1};
    Rational alpha{1};
    Rational beta{1};
    Rational gamma{1};

    bool operator==(const ReactionSpec&) const = default;

    bool unit_exponents() const { return alpha == 1 && beta == 1 && gamma == 1; }
};

enum class DiffusivityKind { Constant, OwnConcentration, General };

struct DiffusivityLaw {
    DiffusivityKind kind = DiffusivityKind::Constant;
    expr::Expr expression = expr::Expr::number(1.0);
    Rational lower_bound{1};

    bool operator==(const DiffusivityLaw&) const = default;
};

struct NetworkSpec {
    std::vector<std::string> species;
    std::vector<ReactionSpec> reactions;
    std::vector<DiffusivityLaw> diffusivities;  // one per species
    std::optional<int> dim_hint;

    bool operator==(const NetworkSpec&) const = default;

    std::size_t num_species() const { return species.size(); }
    std::size_t num_reactions() const { return reactions.size(); }
    std::optional<std::size_t> index_of(std::string_view name) const;
};

/// Sampling box on which diffusivities must stay above their lower bound.
struct AdmissibleBox {
    double c_lo = 0.0;
    double c_hi = 100.0;
    double t_lo = 0.0;
    double t_hi = 10.0;
    std::array<double, 3> x_lo{0.0, 0.0, 0.0};
    std::array<double, 3> x_hi{1.0, 1.0, 1.0};
    std::size_t samples = 10000;
    std::uint64_t seed = 12345;
};

/// Parses the .rxn network language. Throws ParseError on syntax errors and
/// ValidationError on semantic ones.
NetworkSpec parse_network(std::string_view text, const AdmissibleBox& box = {});

/// Checks all NetworkSpec invariants, throwing ValidationError on the first
/// violation. parse_network calls this; programmatic builders should too.
void validate_network(const NetworkSpec& spec, const AdmissibleBox& box = {});

/// Classifies a diffusivity expression for species `owner` (0-based).
DiffusivityKind classify_diffusivity(const expr::Expr& e, std::size_t owner);

/// Canonical .rxn rendering; parse_network(format_network(s)) == s.
std::string format_network(const NetworkSpec& spec);

NetworkSpec load_network_file(const std::string& path, const AdmissibleBox& box = {});

} // namespace rdnet
