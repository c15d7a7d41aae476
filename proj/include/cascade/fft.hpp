#pragma once

#include "cascade/field.hpp"

namespace cascade {

// Forward transform, normalized so that F(0) = mean(f).
// Throws std::domain_error on non-finite input samples.
SpectralScalar fft_forward(const ScalarField& f);

// Inverse of fft_forward; round-trip is exact to machine precision.
ScalarField fft_inverse(const SpectralScalar& F);

}  // namespace cascade
