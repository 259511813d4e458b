#pragma once

// Per-cell arithmetic shared by the serial and OpenMP kernel loops.

#include "rdnet/kernels.hpp"

#include <array>
#include <cstddef>

namespace rdnet::kernels::detail {

struct Stencil {
    int dim = 1;
    std::array<std::size_t, 3> n{1, 1, 1};
    std::array<std::size_t, 3> stride{1, 1, 1};
    std::array<double, 3> inv_h2{0, 0, 0};

    explicit Stencil(const Grid& g) : dim(g.dim()) {
        for (int a = 0; a < 3; ++a) {
            n[static_cast<std::size_t>(a)] = g.cells(a);
            stride[static_cast<std::size_t>(a)] = g.stride(a);
        }
        for (int a = 0; a < dim; ++a) inv_h2[static_cast<std::size_t>(a)] = 1.0 / (g.h(a) * g.h(a));
    }

    std::size_t coord(std::size_t c, std::size_t axis) const { return (c / stride[axis]) % n[axis]; }
};

inline double face_weight(const double* coeff, std::size_t a, std::size_t b, FaceAverage avg) {
    if (coeff == nullptr) return 1.0;
    const double da = coeff[a];
    const double db = coeff[b];
    if (avg == FaceAverage::Harmonic) return 2.0 * (da * db) / (da + db);
    return 0.5 * (da + db);
}

/// Net diffusive flux into cell c. Each face term is the exact negative of
/// the one computed from the neighbouring cell.
inline double diffusion_cell(const Stencil& s, std::size_t c, const double* coeff, const double* u,
                             FaceAverage avg) {
    double acc = 0.0;
    for (std::size_t a = 0; a < static_cast<std::size_t>(s.dim); ++a) {
        const std::size_t i = s.coord(c, a);
        if (i > 0) {
            const std::size_t nb = c - s.stride[a];
            acc += face_weight(coeff, c, nb, avg) * (u[nb] - u[c]) * s.inv_h2[a];
        }
        if (i + 1 < s.n[a]) {
            const std::size_t nb = c + s.stride[a];
            acc += face_weight(coeff, c, nb, avg) * (u[nb] - u[c]) * s.inv_h2[a];
        }
    }
    return acc;
}

inline double helmholtz_diag_cell(const Stencil& s, std::size_t c, const double* coeff, double diag, double dt,
                                  FaceAverage avg) {
    double acc = 0.0;
    for (std::size_t a = 0; a < static_cast<std::size_t>(s.dim); ++a) {
        const std::size_t i = s.coord(c, a);
        if (i > 0) acc += face_weight(coeff, c, c - s.stride[a], avg) * s.inv_h2[a];
        if (i + 1 < s.n[a]) acc += face_weight(coeff, c, c + s.stride[a], avg) * s.inv_h2[a];
    }
    return diag + dt * acc;
}

inline void gather(const Fields& f, std::size_t cell, std::vector<double>& out) {
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = f[i][cell];
}

inline void scatter(const std::vector<double>& in, std::size_t cell, Fields& f) {
    for (std::size_t i = 0; i < f.size(); ++i) f[i][cell] = in[i];
}

} // namespace rdnet::kernels::detail
