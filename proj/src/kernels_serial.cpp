#include "kernel_bodies.hpp"

#include <algorithm>
#include <cmath>

namespace rdnet::kernels::serial {

using detail::Stencil;

void diffusion_apply(const Grid& g, std::span<const double> coeff, std::span<const double> u,
                     std::span<double> out, FaceAverage avg) {
    const Stencil s(g);
    const double* k = coeff.empty() ? nullptr : coeff.data();
    const auto n = static_cast<std::ptrdiff_t>(g.num_cells());
    for (std::ptrdiff_t c = 0; c < n; ++c)
        out[static_cast<std::size_t>(c)] = detail::diffusion_cell(s, static_cast<std::size_t>(c), k, u.data(), avg);
}

void helmholtz_apply(const Grid& g, std::span<const double> coeff, std::span<const double> diag, double dt,
                     std::span<const double> x, std::span<double> y, FaceAverage avg) {
    const Stencil s(g);
    const double* k = coeff.empty() ? nullptr : coeff.data();
    const auto n = static_cast<std::ptrdiff_t>(g.num_cells());
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        const auto i = static_cast<std::size_t>(c);
        y[i] = diag[i] * x[i] - dt * detail::diffusion_cell(s, i, k, x.data(), avg);
    }
}

void helmholtz_diagonal(const Grid& g, std::span<const double> coeff, std::span<const double> diag, double dt,
                        std::span<double> out, FaceAverage avg) {
    const Stencil s(g);
    const double* k = coeff.empty() ? nullptr : coeff.data();
    const auto n = static_cast<std::ptrdiff_t>(g.num_cells());
    for (std::ptrdiff_t c = 0; c < n; ++c) {
        const auto i = static_cast<std::size_t>(c);
        out[i] = detail::helmholtz_diag_cell(s, i, k, diag[i], dt, avg);
    }
}

void reaction_production(const stoich::RateModel& model, const Fields& c, Fields& f) {
    const std::size_t P = model.num_species();
    const auto n = static_cast<std::ptrdiff_t>(c.empty() ? 0 : c[0].size());
    {
        std::vector<double> cv(P), fv(P);
        for (std::ptrdiff_t cell = 0; cell < n; ++cell) {
            const auto i = static_cast<std::size_t>(cell);
            detail::gather(c, i, cv);
            model.production(cv, fv);
            detail::scatter(fv, i, f);
        }
    }
}

void reaction_split(const stoich::RateModel& model, const Fields& c, Fields& p, Fields& q, Fields& sink) {
    const std::size_t P = model.num_species();
    const auto n = static_cast<std::ptrdiff_t>(c.empty() ? 0 : c[0].size());
    {
        std::vector<double> cv(P), pv(P), qv(P), sv(P);
        for (std::ptrdiff_t cell = 0; cell < n; ++cell) {
            const auto i = static_cast<std::size_t>(cell);
            detail::gather(c, i, cv);
            model.split(cv, pv, qv, sv);
            detail::scatter(pv, i, p);
            detail::scatter(qv, i, q);
            detail::scatter(sv, i, sink);
        }
    }
}

void axpy(std::span<const double> a, double s, std::span<const double> b, std::span<double> out) {
    const auto n = static_cast<std::ptrdiff_t>(out.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        out[k] = a[k] + s * b[k];
    }
}

double max_value(std::span<const double> v) {
    double m = -INFINITY;
    const auto n = static_cast<std::ptrdiff_t>(v.size());
    for (std::ptrdiff_t i = 0; i < n; ++i) m = std::max(m, v[static_cast<std::size_t>(i)]);
    return m;
}

} // namespace rdnet::kernels::serial
