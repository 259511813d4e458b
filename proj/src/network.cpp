#include "rdnet/network.hpp"

#include "expr_parser.hpp"
#include "rdnet/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>

namespace rdnet {

std::optional<std::size_t> NetworkSpec::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < species.size(); ++i)
        if (species[i] == name) return i;
    return std::nullopt;
}

DiffusivityKind classify_diffusivity(const expr::Expr& e, std::size_t owner) {
    const auto vars = expr::variables(e);
    if (vars.empty()) return DiffusivityKind::Constant;
    const expr::Variable own{expr::VarKind::Conc, static_cast<int>(owner) + 1};
    if (vars.size() == 1 && *vars.begin() == own) return DiffusivityKind::OwnConcentration;
    return DiffusivityKind::General;
}

namespace {

using detail::Lexer;
using detail::Tok;
using detail::Token;

struct RawTerm {
    int coefficient = 1;
    Token name;
};

struct RawReaction {
    std::vector<RawTerm> reactants;
    Token arrow;
    Token product;
    Rational kf, kb;
    Rational alpha{1}, beta{1}, gamma{1};
};

struct RawDiff {
    Token name;
    expr::Expr expression;
    std::optional<Rational> dmin;
};

Rational parse_signed_number(Lexer& lex) {
    const bool negative = lex.accept(Tok::Minus);
    const Token num = lex.expect(Tok::Number, "number");
    auto value = parse_decimal(num.text);
    if (!value) Lexer::fail(num, "malformed number");
    return negative ? Rational(-*value) : *value;
}

void expect_key(Lexer& lex, const char* key) {
    const Token& t = lex.peek();
    if (t.kind != Tok::Ident || t.text != key) Lexer::fail(t, std::string("expected '") + key + "='");
    lex.next();
    lex.expect(Tok::Equals, "'='");
}

RawTerm parse_term(Lexer& lex) {
    RawTerm term;
    if (lex.peek().kind == Tok::Number) {
        const Token n = lex.next();
        if (n.text.find_first_not_of("0123456789") != std::string::npos)
            Lexer::fail(n, "stoichiometric coefficient must be a positive integer");
        term.coefficient = std::stoi(n.text);
        if (term.coefficient < 1) Lexer::fail(n, "stoichiometric coefficient must be a positive integer");
    }
    term.name = lex.expect(Tok::Ident, "species name");
    return term;
}

RawReaction parse_reaction(Lexer& lex) {
    RawReaction r;
    r.reactants.push_back(parse_term(lex));
    while (lex.peek().kind == Tok::Plus) {
        const Token plus = lex.next();
        const Tok k = lex.peek().kind;
        if (k != Tok::Ident && k != Tok::Number) Lexer::fail(plus, "dangling '+': expected a species after it");
        r.reactants.push_back(parse_term(lex));
    }
    const Tok k = lex.peek().kind;
    if (k != Tok::ArrowBoth && k != Tok::ArrowFwd && k != Tok::ArrowBack)
        Lexer::fail(lex.peek(), "expected '<->', '->' or '<-'");
    r.arrow = lex.next();
    r.product = lex.expect(Tok::Ident, "product species name");
    lex.expect(Tok::Colon, "':' before rate constants");
    expect_key(lex, "kf");
    r.kf = parse_signed_number(lex);
    lex.expect(Tok::Comma, "','");
    expect_key(lex, "kb");
    r.kb = parse_signed_number(lex);
    std::set<std::string> seen;
    while (lex.accept(Tok::Comma)) {
        const Token key = lex.expect(Tok::Ident, "'alpha', 'beta' or 'gamma'");
        if (key.text != "alpha" && key.text != "beta" && key.text != "gamma")
            Lexer::fail(key, "unknown reaction parameter");
        if (!seen.insert(key.text).second) Lexer::fail(key, "duplicate reaction parameter");
        lex.expect(Tok::Equals, "'='");
        Rational v = parse_signed_number(lex);
        if (key.text == "alpha") r.alpha = v;
        else if (key.text == "beta") r.beta = v;
        else r.gamma = v;
    }
    return r;
}

std::string where(const Token& t) {
    return "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": ";
}

/// Largest decimal with six significant digits not exceeding m > 0.
Rational round_down_6(double m) {
    const int k = static_cast<int>(std::floor(std::log10(m))) - 5;
    Rational scale = 1;
    for (int i = 0; i < std::abs(k); ++i) scale *= 10;
    if (k < 0) scale = 1 / scale;
    const Rational q = from_double(m) / scale;
    const BigInt fl = numerator_of(q) / denominator_of(q);  // q > 0: truncation == floor
    return Rational(fl) * scale;
}

/// Sample points (t, x1..x3, c1..cP) in the admissible box, plus its two
/// extreme corners.
std::vector<std::vector<double>> box_samples(const AdmissibleBox& box, std::size_t P) {
    std::vector<std::vector<double>> pts;
    pts.reserve(box.samples + 2);
    std::vector<double> lo{box.t_lo, box.x_lo[0], box.x_lo[1], box.x_lo[2]};
    std::vector<double> hi{box.t_hi, box.x_hi[0], box.x_hi[1], box.x_hi[2]};
    lo.resize(4 + P, box.c_lo);
    hi.resize(4 + P, box.c_hi);
    pts.push_back(lo);
    pts.push_back(hi);
    std::mt19937_64 rng(box.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (std::size_t s = 0; s < box.samples; ++s) {
        std::vector<double> p(4 + P);
        for (std::size_t k = 0; k < p.size(); ++k) p[k] = lo[k] + (hi[k] - lo[k]) * u(rng);
        pts.push_back(std::move(p));
    }
    return pts;
}

double sampled_minimum(const expr::Expr& e, const std::vector<std::vector<double>>& pts, std::size_t P,
                       const std::string& species) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& p : pts) {
        expr::Env env;
        env.t = p[0];
        env.x = {p[1], p[2], p[3]};
        env.c = std::span<const double>(p.data() + 4, P);
        try {
            m = std::min(m, expr::eval(e, env));
        } catch (const DomainError& err) {
            throw ValidationError("diffusivity of " + species + " is undefined on the admissible box: " + err.what());
        }
    }
    return m;
}

} // namespace

void validate_network(const NetworkSpec& spec, const AdmissibleBox& box) {
    const std::size_t P = spec.species.size();
    if (P == 0) throw ValidationError("network declares no species");
    std::set<std::string> names;
    for (const auto& s : spec.species)
        if (!names.insert(s).second) throw ValidationError("duplicate species '" + s + "'");
    for (std::size_t j = 0; j < spec.reactions.size(); ++j) {
        const auto& r = spec.reactions[j];
        const std::string tag = "reaction " + std::to_string(j + 1) + ": ";
        if (r.reactant_a >= P || r.reactant_b >= P || r.product >= P) throw ValidationError(tag + "unknown species");
        if (r.kf < 0 || r.kb < 0) throw ValidationError(tag + "negative rate constant");
        if (r.product == r.reactant_a || r.product == r.reactant_b)
            throw ValidationError(tag + "product equals a reactant");
        if (r.alpha <= 0 || r.beta <= 0 || r.gamma <= 0) throw ValidationError(tag + "non-positive rate exponent");
    }
    if (spec.diffusivities.size() != P) throw ValidationError("one diffusivity law per species is required");
    if (spec.dim_hint && (*spec.dim_hint < 1)) throw ValidationError("dimension hint must be positive");

    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < P; ++i) {
        const auto& d = spec.diffusivities[i];
        if (d.lower_bound <= 0) throw ValidationError("diffusivity lower bound of " + spec.species[i] + " must be positive");
        for (const auto& v : expr::variables(d.expression))
            if (v.kind == expr::VarKind::Conc && static_cast<std::size_t>(v.index) > P)
                throw ValidationError("diffusivity of " + spec.species[i] + " references unknown species " + v.name());
        if (classify_diffusivity(d.expression, i) != d.kind)
            throw ValidationError("diffusivity kind of " + spec.species[i] + " does not match its expression");
        if (pts.empty() && d.kind != DiffusivityKind::Constant) pts = box_samples(box, P);
        const double m = d.kind == DiffusivityKind::Constant
                             ? sampled_minimum(d.expression, {std::vector<double>(4 + P, 0.0)}, P, spec.species[i])
                             : sampled_minimum(d.expression, pts, P, spec.species[i]);
        if (m < to_double(d.lower_bound))
            throw ValidationError("diffusivity of " + spec.species[i] + " drops below its lower bound (sampled minimum " +
                                  std::to_string(m) + ")");
    }
}

NetworkSpec parse_network(std::string_view text, const AdmissibleBox& box) {
    Lexer lex(text);
    std::vector<Token> species_tokens;
    std::vector<RawReaction> raw_reactions;
    std::vector<RawDiff> raw_diffs;
    std::optional<int> dim_hint;

    while (lex.peek().kind != Tok::End) {
        const Token& head = lex.peek();
        if (head.kind == Tok::Ident && head.text == "species") {
            lex.next();
            species_tokens.push_back(lex.expect(Tok::Ident, "species name"));
            while (lex.peek().kind == Tok::Ident) species_tokens.push_back(lex.next());
        } else if (head.kind == Tok::Ident && head.text == "diff") {
            lex.next();
            RawDiff d;
            d.name = lex.expect(Tok::Ident, "species name");
            lex.expect(Tok::Equals, "'='");
            d.expression = detail::parse_expr(lex);
            if (lex.accept(Tok::Colon)) {
                expect_key(lex, "dmin");
                d.dmin = parse_signed_number(lex);
            }
            raw_diffs.push_back(std::move(d));
        } else if (head.kind == Tok::Ident && head.text == "dim") {
            lex.next();
            const Token n = lex.expect(Tok::Number, "integer dimension");
            if (n.text.find_first_not_of("0123456789") != std::string::npos) Lexer::fail(n, "dimension must be an integer");
            dim_hint = std::stoi(n.text);
        } else if (head.kind == Tok::Ident || head.kind == Tok::Number) {
            raw_reactions.push_back(parse_reaction(lex));
        } else {
            Lexer::fail(head, "expected 'species', 'diff', 'dim' or a reaction");
        }
        lex.expect(Tok::Semicolon, "';'");
    }

    NetworkSpec spec;
    spec.dim_hint = dim_hint;
    for (const auto& t : species_tokens) {
        if (spec.index_of(t.text)) throw ValidationError(where(t) + "duplicate species '" + t.text + "'");
        spec.species.push_back(t.text);
    }
    const std::size_t P = spec.species.size();
    if (P == 0) throw ValidationError("network declares no species");

    auto resolve = [&](const Token& t) {
        auto idx = spec.index_of(t.text);
        if (!idx) throw ValidationError(where(t) + "unknown species '" + t.text + "'");
        return *idx;
    };

    for (const auto& raw : raw_reactions) {
        const std::string at = where(raw.arrow);
        ReactionSpec r;
        int molecules = 0;
        for (const auto& term : raw.reactants) molecules += term.coefficient;
        if (molecules != 2) throw ValidationError(at + "a reaction needs exactly two reactant molecules");
        if (raw.reactants.size() == 1) {
            r.reactant_a = r.reactant_b = resolve(raw.reactants[0].name);
        } else {
            r.reactant_a = resolve(raw.reactants[0].name);
            r.reactant_b = resolve(raw.reactants[1].name);
        }
        r.product = resolve(raw.product);
        r.kf = raw.kf;
        r.kb = raw.kb;
        r.alpha = raw.alpha;
        r.beta = raw.beta;
        r.gamma = raw.gamma;
        if (r.kf < 0 || r.kb < 0) throw ValidationError(at + "negative rate constant");
        if (raw.arrow.kind == Tok::ArrowFwd && r.kb != 0) throw ValidationError(at + "'->' requires kb=0");
        if (raw.arrow.kind == Tok::ArrowBack && r.kf != 0) throw ValidationError(at + "'<-' requires kf=0");
        if (r.product == r.reactant_a || r.product == r.reactant_b)
            throw ValidationError(at + "product equals a reactant");
        if (r.alpha <= 0 || r.beta <= 0 || r.gamma <= 0) throw ValidationError(at + "non-positive rate exponent");
        spec.reactions.push_back(r);
    }

    spec.diffusivities.assign(P, DiffusivityLaw{});
    std::vector<bool> declared(P, false);
    std::vector<std::vector<double>> pts;
    for (const auto& d : raw_diffs) {
        const std::size_t i = resolve(d.name);
        if (declared[i]) throw ValidationError(where(d.name) + "duplicate diffusivity for '" + d.name.text + "'");
        declared[i] = true;
        for (const auto& v : expr::variables(d.expression))
            if (v.kind == expr::VarKind::Conc && static_cast<std::size_t>(v.index) > P)
                throw ValidationError(where(d.name) + "diffusivity references unknown species " + v.name());
        DiffusivityLaw law;
        law.expression = d.expression;
        law.kind = classify_diffusivity(d.expression, i);
        if (d.dmin) {
            if (*d.dmin <= 0) throw ValidationError(where(d.name) + "dmin must be positive");
            law.lower_bound = *d.dmin;
        } else {
            if (pts.empty()) pts = box_samples(box, P);
            const double m = law.kind == DiffusivityKind::Constant
                                 ? sampled_minimum(d.expression, {std::vector<double>(4 + P, 0.0)}, P, d.name.text)
                                 : sampled_minimum(d.expression, pts, P, d.name.text);
            if (!(m > 0.0))
                throw ValidationError(where(d.name) + "diffusivity of '" + d.name.text + "' is not bounded away from zero");
            law.lower_bound = law.kind == DiffusivityKind::Constant ? from_double(m) : round_down_6(m);
            if (law.kind == DiffusivityKind::Constant) {
                // Constant literals are decimal; recover the exact decimal value.
                if (auto exact = parse_decimal(expr::to_string(d.expression)); exact && to_double(*exact) == m)
                    law.lower_bound = *exact;
                else
                    law.lower_bound = round_down_6(m);
            }
        }
        spec.diffusivities[i] = std::move(law);
    }

    validate_network(spec, box);
    return spec;
}

namespace {

std::string format_term_pair(const NetworkSpec& s, const ReactionSpec& r) {
    if (r.reactant_a == r.reactant_b) return "2 " + s.species[r.reactant_a];
    return s.species[r.reactant_a] + " + " + s.species[r.reactant_b];
}

} // namespace

std::string format_network(const NetworkSpec& spec) {
    std::ostringstream out;
    out << "species";
    for (const auto& s : spec.species) out << ' ' << s;
    out << ";\n";
    if (spec.dim_hint) out << "dim " << *spec.dim_hint << ";\n";
    for (const auto& r : spec.reactions) {
        out << format_term_pair(spec, r) << " <-> " << spec.species[r.product] << " : kf=" << to_decimal_string(r.kf)
            << ", kb=" << to_decimal_string(r.kb);
        if (r.alpha != 1) out << ", alpha=" << to_decimal_string(r.alpha);
        if (r.beta != 1) out << ", beta=" << to_decimal_string(r.beta);
        if (r.gamma != 1) out << ", gamma=" << to_decimal_string(r.gamma);
        out << ";\n";
    }
    for (std::size_t i = 0; i < spec.diffusivities.size(); ++i) {
        const auto& d = spec.diffusivities[i];
        out << "diff " << spec.species[i] << " = " << expr::to_string(d.expression)
            << " : dmin=" << to_decimal_string(d.lower_bound) << ";\n";
    }
    return out.str();
}

NetworkSpec load_network_file(const std::string& path, const AdmissibleBox& box) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IOError("cannot open network file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_network(buf.str(), box);
}

} // namespace rdnet
