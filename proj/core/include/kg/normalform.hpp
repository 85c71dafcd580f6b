#pragma once

#include <functional>
#include <vector>

#include "kg/field.hpp"
#include "kg/trajectory.hpp"

namespace kg {

// Frequency-analysis parameters: beta is the dyadic separation scale of the
// low-low region; kappa/epsilon/delta are the small exponents entering the
// S / Z / S-tilde norm specs. They are reported with every run, never claimed
// canonical.
struct AnalysisParams {
  double beta = 6.0;
  double kappa = 0.005;
  double epsilon = 0.05;
  double delta = 0.05;

  std::vector<std::string> validate() const;  // soft warnings
};

enum class RegionTag { HH, HL, LH, LL };

// All dyadic regions containing the shell pair (j, k).
std::vector<RegionTag> region_of(int j, int k, const AnalysisParams& params);
const char* region_name(RegionTag t);

// Signs (iota1, iota2) selecting one of the four quadratic interactions.
struct ModulationSpec {
  int iota1 = +1;
  int iota2 = +1;
};

// Phi_{i1,i2}(xi, eta) = -<xi> + i1 <xi - eta> + i2 <eta>, with |xi - eta|
// from the law of cosines.
double modulation_phi(double xi_abs, double eta_abs, double cosang, const ModulationSpec& spec);
double modulation_phi_from_lengths(double xi_abs, double xi_minus_eta_abs, double eta_abs,
                                   const ModulationSpec& spec);

// Low-low Coifman-Meyer symbol m_LL(|xi-eta|, |eta|) = chi_{-beta+10} x chi_{-beta+10}.
double m_ll(double xi_minus_eta_abs, double eta_abs, const AnalysisParams& params);

struct BilinearOptions {
  int angle_nodes = 64;
  int threads = 1;
};

// symbol(|xi - eta|, |eta|, |xi|) -> complex multiplier value.
using BilinearSymbol = std::function<Complex(double, double, double)>;

// Radial Coifman-Meyer application: inverse transform of
//   (2 pi)^{-d/2} \int symbol m-free fhat(xi - eta) ghat(eta) deta,
// the normalization chosen so that symbol == 1 reproduces the pointwise
// product f g. The eta integral runs over the frequency nodes with a
// Gauss-Legendre rule in the angle.
RadialField bilinear_apply(const BilinearSymbol& symbol, const RadialField& f,
                           const RadialField& g, const BilinearOptions& opts = {});

// Normal form Omega_{i1,i2}(f, g): bilinear with symbol m_LL / (i Phi).
RadialField omega(const RadialField& f, const RadialField& g, const ModulationSpec& spec,
                  const AnalysisParams& params, const BilinearOptions& opts = {});

// (i/4) <D>^{-1} sum_{i1,i2} Omega_{i1,i2}(U^{i1}, U^{i2}); the correction
// that turns U into the normal-form variable.
RadialField normal_form_correction(const RadialField& u_complex, const AnalysisParams& params,
                                   const BilinearOptions& opts = {});

struct ResonanceSplit {
  RadialField ll;    // (fg)_LL = P_{<=-beta+10} f * P_{<=-beta+10} g
  RadialField rest;  // f g - (fg)_LL, the HH + HL + LH resonance part
};

ResonanceSplit resonance_split(const RadialField& f, const RadialField& g,
                               const AnalysisParams& params);

// H^1 residual series of the normal-form-reduced integral equation evaluated
// on a trajectory of the first-order model (forcing <D>^{-1} U^2, or free).
// Duhamel integrals use composite Simpson on the stored samples, so the
// residual self-converges at the integrator's order under dt refinement.
std::vector<double> normal_form_residual(const Trajectory& traj, const AnalysisParams& params,
                                         const BilinearOptions& opts = {});

}  // namespace kg
