#include "kg/cutoff.hpp"

#include <array>
#include <cmath>

namespace kg {
namespace {

constexpr double kEdge = 1e-12;

double bump(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

}  // namespace

double smooth_step(double x) {
  if (x <= kEdge) return 0.0;
  if (x >= 1.0 - kEdge) return 1.0;
  const double g = bump(x);
  const double h = bump(1.0 - x);
  return g / (g + h);
}

double smooth_step_d1(double x) {
  if (x <= kEdge || x >= 1.0 - kEdge) return 0.0;
  const double g = bump(x);
  const double h = bump(1.0 - x);
  const double p = 1.0 / (x * x) + 1.0 / ((1.0 - x) * (1.0 - x));
  const double s = g + h;
  return g * h * p / (s * s);
}

double smooth_step_d2(double x) {
  if (x <= kEdge || x >= 1.0 - kEdge) return 0.0;
  const double g = bump(x);
  const double h = bump(1.0 - x);
  const double x2 = x * x, y = 1.0 - x, y2 = y * y;
  const double p = 1.0 / x2 + 1.0 / y2;
  const double dp = -2.0 / (x2 * x) + 2.0 / (y2 * y);
  const double s = g + h;
  const double d1 = g * h * p / (s * s);
  // logarithmic derivative of s'(x) = g h p / (g+h)^2
  const double dlog = 1.0 / x2 - 1.0 / y2 + dp / p - 2.0 * (g / x2 - h / y2) / s;
  return d1 * dlog;
}

double cutoff_chi(double r) {
  if (r <= 1.0) return 1.0;
  if (r >= 2.0) return 0.0;
  return smooth_step(2.0 - r);
}

double cutoff_chi_d1(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  return -smooth_step_d1(2.0 - r);
}

double cutoff_chi_d2(double r) {
  if (r <= 1.0 || r >= 2.0) return 0.0;
  return smooth_step_d2(2.0 - r);
}

double cutoff_chi_k(double k, double rho) { return cutoff_chi(rho * std::exp2(-k)); }

double lp_phi_k(double k, double rho) { return cutoff_chi_k(k, rho) - cutoff_chi_k(k - 1.0, rho); }

double cutoff_chi_sq_integral(double x) {
  if (x <= 0.0) return 0.0;
  if (x <= 1.0) return x;
  // Dense Simpson table of \int_1^x chi^2 over the bridge, built once.
  constexpr int kTable = 2048;  // panels on [1,2]
  static const std::array<double, kTable + 1> table = [] {
    std::array<double, kTable + 1> t{};
    const double h = 1.0 / kTable;
    t[0] = 0.0;
    for (int i = 1; i <= kTable; ++i) {
      const double a = 1.0 + (i - 1) * h;
      const double b = 1.0 + i * h;
      const double fa = cutoff_chi(a) * cutoff_chi(a);
      const double fm = cutoff_chi(0.5 * (a + b)) * cutoff_chi(0.5 * (a + b));
      const double fb = cutoff_chi(b) * cutoff_chi(b);
      t[i] = t[i - 1] + (h / 6.0) * (fa + 4.0 * fm + fb);
    }
    return t;
  }();
  if (x >= 2.0) return 1.0 + table[kTable];
  const double s = (x - 1.0) * kTable;
  const int i = std::min(static_cast<int>(s), kTable - 1);
  const double frac = s - i;
  // blend with the local Simpson increment for smoothness
  const double a = 1.0 + i * (1.0 / kTable);
  const double b = a + frac * (1.0 / kTable);
  const double h = b - a;
  const double fa = cutoff_chi(a) * cutoff_chi(a);
  const double fm = cutoff_chi(0.5 * (a + b)) * cutoff_chi(0.5 * (a + b));
  const double fb = cutoff_chi(b) * cutoff_chi(b);
  return 1.0 + table[i] + (h / 6.0) * (fa + 4.0 * fm + fb);
}

}  // namespace kg
