#pragma once
// Real-to-complex transforms backed by FFTW. Plans are cached per shape and
// executed through the new-array interface, so concurrent calls are safe.

#include "disperlim/spectral/field.hpp"

namespace disperlim::spectral {

/// Forward transform; coefficients divided by N so mode 0 is the mean.
/// Throws NumericalError on non-finite input.
SpectralField forward_transform(const RealField& f);
/// Inverse of forward_transform.
RealField inverse_transform(const SpectralField& F);

}  // namespace disperlim::spectral
