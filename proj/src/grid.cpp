#include "rdnet/grid.hpp"

#include "rdnet/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

namespace rdnet {

Grid::Grid(int dim, std::vector<std::size_t> cells, std::vector<double> lengths) : dim_(dim) {
    if (dim < 1 || dim > 3) throw DomainError("grid dimension must be 1, 2 or 3");
    if (cells.size() != static_cast<std::size_t>(dim) || lengths.size() != static_cast<std::size_t>(dim))
        throw DomainError("grid needs one cell count and one length per axis");
    cells_ = {1, 1, 1};
    lengths_ = {1.0, 1.0, 1.0};
    for (std::size_t a = 0; a < cells.size(); ++a) {
        if (cells[a] < 2) throw DomainError("grid needs at least 2 cells per axis");
        if (!(lengths[a] > 0.0) || !std::isfinite(lengths[a])) throw DomainError("grid lengths must be positive");
        cells_[a] = cells[a];
        lengths_[a] = lengths[a];
    }
}

double Grid::min_h() const {
    double m = h(0);
    for (int a = 1; a < dim_; ++a) m = std::min(m, h(a));
    return m;
}

std::size_t Grid::stride(int axis) const {
    std::size_t s = 1;
    for (int a = axis + 1; a < 3; ++a) s *= cells_[static_cast<std::size_t>(a)];
    return s;
}

double Grid::cell_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= h(a);
    return v;
}

double Grid::domain_volume() const {
    double v = 1.0;
    for (int a = 0; a < dim_; ++a) v *= length(a);
    return v;
}

std::array<std::size_t, 3> Grid::coords(std::size_t index) const {
    std::array<std::size_t, 3> ijk{0, 0, 0};
    for (int a = 0; a < 3; ++a) ijk[static_cast<std::size_t>(a)] = (index / stride(a)) % cells(a);
    return ijk;
}

std::array<double, 3> Grid::center(std::size_t index) const {
    const auto ijk = coords(index);
    std::array<double, 3> x{0.0, 0.0, 0.0};
    for (int a = 0; a < dim_; ++a) x[static_cast<std::size_t>(a)] = (static_cast<double>(ijk[static_cast<std::size_t>(a)]) + 0.5) * h(a);
    return x;
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_number(const std::string& raw, const std::string& context) {
    const std::string s = trim(raw);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
        throw ValidationError("bad number '" + s + "' in " + context);
    return v;
}

} // namespace

InitialCondition parse_initial_condition(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ValidationError("initial condition needs 'kind:args': " + text);
    const std::string kind = trim(text.substr(0, colon));
    const std::string args = text.substr(colon + 1);

    if (kind == "csv") return ic::FromCsv{trim(args)};
    if (kind == "uniform") {
        ic::Uniform u;
        for (const auto& v : split(args, ',')) u.values.push_back(to_number(v, text));
        return u;
    }
    if (kind == "checkerboard") {
        const auto v = split(args, ',');
        if (v.size() != 2) throw ValidationError("checkerboard needs lo,hi");
        return ic::Checkerboard{to_number(v[0], text), to_number(v[1], text)};
    }
    if (kind == "cosine") {
        ic::CosineBump c;
        for (const auto& kv : split(args, ',')) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw ValidationError("cosine expects key=value pairs");
            const std::string key = trim(kv.substr(0, eq));
            const double v = to_number(kv.substr(eq + 1), text);
            if (key == "species") {
                if (v < 1 || v != std::floor(v)) throw ValidationError("cosine species must be a positive integer");
                c.species = static_cast<std::size_t>(v) - 1;
            } else if (key == "amplitude") {
                c.amplitude = v;
            } else if (key == "background") {
                c.background = v;
            } else {
                throw ValidationError("unknown cosine key '" + key + "'");
            }
        }
        return c;
    }
    if (kind == "random") {
        ic::RandomUniform r;
        const auto v = split(args, ',');
        if (v.size() < 2 || v.size() > 3) throw ValidationError("random needs lo,hi[,seed=n]");
        r.lo = to_number(v[0], text);
        r.hi = to_number(v[1], text);
        if (v.size() == 3) {
            const std::string s = trim(v[2]);
            if (s.rfind("seed=", 0) != 0) throw ValidationError("random expects seed=n as third argument");
            const std::string num = s.substr(5);
            const auto [ptr, ec] = std::from_chars(num.data(), num.data() + num.size(), r.seed);
            if (num.empty() || ec != std::errc() || ptr != num.data() + num.size())
                throw ValidationError("bad seed in " + text);
        }
        return r;
    }
    throw ValidationError("unknown initial condition kind '" + kind + "'");
}

namespace {

std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t P, std::size_t cells) {
    std::ifstream in(path);
    if (!in) throw IOError("cannot read initial condition file " + path);
    std::vector<std::vector<double>> fields(P, std::vector<double>(cells));
    std::string line;
    std::size_t row = 0;
    bool first = true;
    while (std::getline(in, line)) {
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto cols = split(t, ',');
        if (first) {
            first = false;
            double probe = 0.0;
            const std::string c0 = trim(cols[0]);
            const auto [ptr, ec] = std::from_chars(c0.data(), c0.data() + c0.size(), probe);
            if (ec != std::errc() || ptr != c0.data() + c0.size()) continue;  // header
        }
        if (row >= cells) throw ValidationError(path + ": more rows than grid cells");
        if (cols.size() != P) throw ValidationError(path + ": expected " + std::to_string(P) + " columns");
        for (std::size_t i = 0; i < P; ++i) fields[i][row] = to_number(cols[i], path);
        ++row;
    }
    if (row != cells) throw ValidationError(path + ": expected " + std::to_string(cells) + " rows");
    return fields;
}

/// Exact cell average of cos(pi x / L) over [a, b].
double cosine_average(double a, double b, double L) {
    const double k = std::numbers::pi / L;
    return (std::sin(k * b) - std::sin(k * a)) / (k * (b - a));
}

} // namespace

State init_state(const NetworkSpec& spec, const Grid& grid, const InitialCondition& ic) {
    const std::size_t P = spec.num_species();
    const std::size_t n = grid.num_cells();
    State s;
    s.fields.assign(P, std::vector<double>(n, 0.0));

    std::visit(
        [&](const auto& d) {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, ic::Uniform>) {
                if (d.values.size() != P) throw ValidationError("uniform needs one value per species");
                for (std::size_t i = 0; i < P; ++i) std::fill(s.fields[i].begin(), s.fields[i].end(), d.values[i]);
            } else if constexpr (std::is_same_v<T, ic::CosineBump>) {
                if (d.species >= P) throw ValidationError("cosine species out of range");
                for (auto& f : s.fields) std::fill(f.begin(), f.end(), d.background);
                const double h = grid.h(0);
                for (std::size_t c = 0; c < n; ++c) {
                    const double a = static_cast<double>(grid.coords(c)[0]) * h;
                    s.fields[d.species][c] = d.background + d.amplitude * cosine_average(a, a + h, grid.length(0));
                }
            } else if constexpr (std::is_same_v<T, ic::Checkerboard>) {
                for (std::size_t c = 0; c < n; ++c) {
                    const auto ijk = grid.coords(c);
                    const double v = (ijk[0] + ijk[1] + ijk[2]) % 2 == 0 ? d.lo : d.hi;
                    for (auto& f : s.fields) f[c] = v;
                }
            } else if constexpr (std::is_same_v<T, ic::RandomUniform>) {
                if (!(d.lo <= d.hi)) throw ValidationError("random needs lo <= hi");
                std::mt19937_64 rng(d.seed);
                std::uniform_real_distribution<double> u(d.lo, d.hi);
                for (auto& f : s.fields)
                    for (auto& v : f) v = u(rng);
            } else {
                s.fields = read_csv(d.path, P, n);
            }
        },
        ic);

    for (const auto& f : s.fields)
        for (double v : f) {
            if (!std::isfinite(v)) throw DomainError("initial condition is not finite");
            if (v < 0.0) throw DomainError("initial condition must be nonnegative");
        }
    return s;
}

} // namespace rdnet
