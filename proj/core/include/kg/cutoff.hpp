#pragma once

namespace kg {

// Smooth step built from the exp(-1/x) mollifier bridge:
// step(x) = 0 for x <= 0, 1 for x >= 1, strictly increasing in between.
double smooth_step(double x);
double smooth_step_d1(double x);
double smooth_step_d2(double x);

// Radial cutoff profile: chi(r) = 1 for r <= 1, 0 for r >= 2, smooth bridge
// in between. All dyadic localizations and the low-low bilinear symbol are
// built from this one profile.
double cutoff_chi(double r);
double cutoff_chi_d1(double r);
double cutoff_chi_d2(double r);

// Scaled cutoff chi_k(rho) = chi(2^{-k} rho) and the dyadic annulus profile
// phi_k = chi_k - chi_{k-1}, supported on [2^{k-1}, 2^{k+1}].
double cutoff_chi_k(double k, double rho);
double lp_phi_k(double k, double rho);

// Antiderivative Xi(x) = \int_0^x chi(s)^2 ds, needed by the Morawetz weight
// phi(r) = \int_0^r chi_R^2. Exact for x <= 1 and x >= 2, tabulated spline on
// the bridge.
double cutoff_chi_sq_integral(double x);

}  // namespace kg
