#pragma once

#include "rdnet/grid.hpp"
#include "rdnet/stoich.hpp"

#include <span>
#include <vector>

// Per-cell kernels of the finite-volume update. Each kernel exists twice with
// identical signatures: `serial` is the reference implementation and `omp`
// distributes the cell loop over OpenMP threads. Both compute every cell with
// the same arithmetic, so their results agree bitwise.
namespace rdnet::kernels {

enum class FaceAverage { Arithmetic, Harmonic };

/// Species-major fields: fields[i] is species i over all cells.
using Fields = std::vector<std::vector<double>>;

namespace serial {

/// out[c] = sum over faces of w_f (u_nb - u_c) / h_axis^2, with w_f averaged
/// from `coeff` (empty span: w_f = 1). Boundary faces carry no flux.
void diffusion_apply(const Grid& g, std::span<const double> coeff, std::span<const double> u,
                     std::span<double> out, FaceAverage avg);

/// y = diag .* x - dt * diffusion_apply(coeff, x)
void helmholtz_apply(const Grid& g, std::span<const double> coeff, std::span<const double> diag, double dt,
                     std::span<const double> x, std::span<double> y, FaceAverage avg);

/// Diagonal of the helmholtz_apply operator (Jacobi preconditioner).
void helmholtz_diagonal(const Grid& g, std::span<const double> coeff, std::span<const double> diag, double dt,
                        std::span<double> out, FaceAverage avg);

/// f = M r(c) in every cell.
void reaction_production(const stoich::RateModel& model, const Fields& c, Fields& f);

/// f = p - q c - sink in every cell.
void reaction_split(const stoich::RateModel& model, const Fields& c, Fields& p, Fields& q, Fields& sink);

/// out = a + s * b
void axpy(std::span<const double> a, double s, std::span<const double> b, std::span<double> out);

double max_value(std::span<const double> v);

} // namespace serial

namespace omp {

void diffusion_apply(const Grid& g, std::span<const double> coeff, std::span<const double> u,
                     std::span<double> out, FaceAverage avg);

void helmholtz_apply(const Grid& g, std::span<const double> coeff, std::span<const double> diag, double dt,
                     std::span<const double> x, std::span<double> y, FaceAverage avg);

void helmholtz_diagonal(const Grid& g, std::span<const double> coeff, std::span<const double> diag, double dt,
                        std::span<double> out, FaceAverage avg);

void reaction_production(const stoich::RateModel& model, const Fields& c, Fields& f);

void reaction_split(const stoich::RateModel& model, const Fields& c, Fields& p, Fields& q, Fields& sink);

void axpy(std::span<const double> a, double s, std::span<const double> b, std::span<double> out);

double max_value(std::span<const double> v);

} // namespace omp

/// Number of OpenMP threads in use (1 when built without OpenMP).
int omp_threads();

/// Applies the RDNET_THREADS cap, if set, to the OpenMP runtime.
void apply_thread_cap_from_env();

} // namespace rdnet::kernels
