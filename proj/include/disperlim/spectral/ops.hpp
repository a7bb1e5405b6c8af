#pragma once
// Fourier-multiplier operators and norms.

#include <string_view>
#include <vector>

#include "disperlim/spectral/fft.hpp"
#include "disperlim/spectral/scaling.hpp"

namespace disperlim::spectral {

// ---- derivatives --------------------------------------------------------

/// Multiply by (i k_axis)^order; the Nyquist plane is zeroed for odd orders.
SpectralField derivative(const SpectralField& F, int axis, int order = 1);
RealField spectral_derivative(const RealField& f, int axis, int order = 1);

/// Sum of second derivatives over the listed axes.
RealField laplacian(const RealField& f);
/// d2^2 + d3^2 in 3D, d2^2 in 2D.
RealField transverse_laplacian(const RealField& f);

/// (d1 f, sqrt(eps) d2 f) in 2D, full gradient in 3D.
std::vector<RealField> weighted_gradient(const RealField& f, const ScalingParams& p);
/// d1^2 f + eps d2^2 f in 2D, Laplacian in 3D.
RealField weighted_laplacian(const RealField& f, const ScalingParams& p);
/// Weighted divergence sum_j wbar_j d_j v_j.
RealField weighted_divergence(const std::vector<RealField>& v, const ScalingParams& p);

// ---- x1 antiderivative and the zero-x1-mean constraint -------------------

/// L2 norm (continuum scaling) of the k1 = 0 hyperplane.
double x1_mean_content(const SpectralField& F);
/// Zero the k1 = 0 hyperplane; optionally keep the global mean mode.
void project_zero_x1_mean(SpectralField& F, bool keep_global_mean = false);
RealField project_zero_x1_mean(const RealField& f, bool keep_global_mean = false);

/// Spectral division by i k1. Throws ConstraintError if the k1 = 0 content
/// exceeds 1e-10 * ||f||_L2. The result has zero x1-mean on every line.
RealField antiderivative_x1(const RealField& f);
SpectralField antiderivative_x1(const SpectralField& F, double ztol_abs);
/// Division by i k1 with the k1 = 0 modes silently dropped.
SpectralField inverse_dx1_unchecked(const SpectralField& F);

// ---- dealiasing and filters ---------------------------------------------

/// Zero every mode with |signed index| > dim/3 on any axis.
SpectralField dealias(SpectralField F);
RealField dealias(const RealField& f);
/// Pointwise product, truncated to the 2/3 band.
RealField dealiased_product(const RealField& a, const RealField& b);

/// Largest coefficient magnitude in the upper half of the retained band,
/// relative to the largest non-mean coefficient. 0 for a constant field.
double spectral_tail_ratio(const SpectralField& F);

/// Largest |f| on the x_a = 0 faces relative to max|f|. Logs a warning
/// above `tol`. Returns the ratio.
double check_boundary_decay(const RealField& f, std::string_view name, double tol = 1e-8);

// ---- norms ---------------------------------------------------------------

/// (sum_k (1+|k|^2)^s |f_k|^2 * volume)^(1/2), continuum wavenumbers.
double sobolev_norm(const SpectralField& F, int s);
double sobolev_norm(const RealField& f, int s);

enum class NormRole { Density, Velocity, Potential };
/// Throws ConfigError for an unknown name.
NormRole parse_norm_role(std::string_view name);

/// sqrt(||f||^2_{H^s} + eps ||grad_bar f||^2_{H^s} + eps^2 ||lap_bar f||^2_{H^s}),
/// with the trailing terms dropped according to the role.
double triple_norm(const RealField& f, NormRole role, const ScalingParams& p, int s);
double triple_norm(const SpectralField& F, NormRole role, const ScalingParams& p, int s);

}  // namespace disperlim::spectral
