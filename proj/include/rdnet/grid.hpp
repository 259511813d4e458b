#pragma once

#include "rdnet/network.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace rdnet {

/// Structured box grid on (0, L1) x ... x (0, LN), N in {1, 2, 3}.
/// Cells are numbered lexicographically: the first axis varies slowest.
class Grid {
public:
    Grid() = default;
    Grid(int dim, std::vector<std::size_t> cells, std::vector<double> lengths);

    static Grid line(std::size_t n, double length = 1.0) { return Grid(1, {n}, {length}); }
    static Grid square(std::size_t n, double length = 1.0) { return Grid(2, {n, n}, {length, length}); }

    int dim() const { return dim_; }
    std::size_t cells(int axis) const { return cells_[static_cast<std::size_t>(axis)]; }
    double length(int axis) const { return lengths_[static_cast<std::size_t>(axis)]; }
    double h(int axis) const { return lengths_[static_cast<std::size_t>(axis)] / static_cast<double>(cells(axis)); }
    double min_h() const;
    std::size_t num_cells() const { return cells_[0] * cells_[1] * cells_[2]; }
    std::size_t stride(int axis) const;
    double cell_volume() const;
    double domain_volume() const;

    std::array<std::size_t, 3> coords(std::size_t index) const;
    std::array<double, 3> center(std::size_t index) const;

    bool operator==(const Grid&) const = default;

private:
    int dim_ = 1;
    std::array<std::size_t, 3> cells_{2, 1, 1};
    std::array<double, 3> lengths_{1.0, 1.0, 1.0};
};

/// Cell-averaged concentrations, one array per species (species-major).
struct State {
    double t = 0.0;
    std::vector<std::vector<double>> fields;

    std::size_t num_species() const { return fields.size(); }
};

namespace ic {

struct Uniform {
    std::vector<double> values;  // one per species
};

/// background + amplitude * cos(pi x1 / L1) for one species, background elsewhere.
struct CosineBump {
    std::size_t species = 0;
    double amplitude = 1.0;
    double background = 1.0;
};

/// lo on cells with even index sum, hi on odd, for every species.
struct Checkerboard {
    double lo = 0.0;
    double hi = 1.0;
};

/// Independent uniform samples in [lo, hi] per cell and species.
struct RandomUniform {
    double lo = 0.0;
    double hi = 1.0;
    std::uint64_t seed = 1;
};

/// One row per cell in lexicographic order, one column per species. An
/// optional non-numeric header line is skipped.
struct FromCsv {
    std::string path;
};

} // namespace ic

using InitialCondition = std::variant<ic::Uniform, ic::CosineBump, ic::Checkerboard, ic::RandomUniform, ic::FromCsv>;

/// "uniform:1,1,1", "cosine:species=1,amplitude=1,background=1",
/// "checkerboard:0,2", "random:0,2,seed=7", "csv:path". Species are 1-based.
InitialCondition parse_initial_condition(const std::string& text);

/// Throws DomainError on negative values, IOError on unreadable CSV.
State init_state(const NetworkSpec& spec, const Grid& grid, const InitialCondition& ic);

} // namespace rdnet
