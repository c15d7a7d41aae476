#pragma once

#include "cascade/field.hpp"

namespace cascade {

// All derivatives are spectral (multiplication by ik); the Nyquist mode
// k = n/2 is zeroed in every odd-derivative operator.
VectorField gradient(const ScalarField& f);
VectorField perp_gradient(const ScalarField& f);  // (d/dy, -d/dx) f
ScalarField divergence(const VectorField& v);
ScalarField laplacian(const ScalarField& f);
ScalarField curl2d(const VectorField& v);  // dv_y/dx - dv_x/dy

// u = K * omega on the torus: u_hat(k) = i (k2, -k1) omega_hat(k) / |k|^2,
// u_hat(0) = 0. The k = 0 mode of omega is projected out; the removed mean
// is reported through removed_mean when non-null.
VectorField biot_savart(const ScalarField& omega, double* removed_mean = nullptr);

// Discrete (sum |f|^p dx^2)^{1/p}; p may be infinity. Throws for p < 1.
double lp_norm(const ScalarField& f, double p);
double lp_norm(const VectorField& v, double p);  // pointwise magnitude

double mean(const ScalarField& f);

// 2/3-rule truncation: zero all modes with |k_i| > n/3 (per axis).
void dealias_spectrum(SpectralScalar& F);
ScalarField dealias(const ScalarField& f);

// Pointwise product followed by 2/3-rule truncation.
ScalarField dealiased_product(const ScalarField& f, const ScalarField& g);

// Shift f by ell (not necessarily a lattice vector): multiply by e^{ik.ell}.
ScalarField spectral_shift(const ScalarField& f, double ell_x, double ell_y);

}  // namespace cascade
