#include <doctest.h>

#include <cmath>

#include "kg/functionals.hpp"
#include "kg/spectral.hpp"

using namespace kg;
namespace {
struct Fixture {
  GridPtr g = make_grid(4, 40.0, 384);
  GroundState q = solve_ground_state(g, 1);
  RadialField zero = RadialField::zero(g);
  Nonlinearity nl = Nonlinearity::quadratic();
};
Fixture& fx() {
  static Fixture f;
  return f;
}
}  // namespace

TEST_CASE("nonlinearity scalar maps") {
  const Nonlinearity q = Nonlinearity::quadratic();
  CHECK(q.f(2.0) == 4.0);
  CHECK(q.F(3.0) == doctest::Approx(9.0));
  CHECK(q.G(2.0) == doctest::Approx(2.0 * 4.0 - 2.0 * 8.0 / 3.0));

  // power type: G(u) = p u^{p+2} / (p+2)
  for (int p : {1, 2, 3}) {
    const Nonlinearity pw = Nonlinearity::power(p);
    for (double u : {0.3, 1.1, 2.0}) {
      CHECK(pw.G(u) == doctest::Approx(p * std::pow(u, p + 2) / (p + 2)).epsilon(1e-12));
    }
  }

  // phi4: f = -3w^2 - w^3, F and G from the definitions
  const Nonlinearity p4 = Nonlinearity::phi4();
  const double w = 0.7;
  CHECK(p4.f(w) == doctest::Approx(-3 * w * w - w * w * w));
  CHECK(p4.F(w) == doctest::Approx(-w * w * w - 0.25 * w * w * w * w));
  CHECK(p4.G(w) == doctest::Approx(w * p4.f(w) - 2 * p4.F(w)));

  CHECK_THROWS_AS(Nonlinearity::power(0), ParameterError);
}

TEST_CASE("energy examples") {
  auto& f = fx();
  CHECK(energy(f.zero, f.zero, f.nl) == 0.0);
  // (Q, 0) in d=4: E = massSq / 2
  CHECK(std::abs(energy(f.q.profile, f.zero, f.nl) - 0.5 * f.q.mass_sq) / (0.5 * f.q.mass_sq) <
        1e-4);
  // (lambda Q, 0): E = massSq (3 lambda^2 / 2 - lambda^3)
  for (double lam : {0.5, 0.8, 1.3}) {
    const double e = energy(lam * f.q.profile, f.zero, f.nl);
    const double want = f.q.mass_sq * (1.5 * lam * lam - lam * lam * lam);
    CHECK(std::abs(e - want) / std::abs(want) < 1e-4);
  }
}

TEST_CASE("d=4 quadratic: E = K/2 + mass/2 + ut/2 exactly") {
  auto& f = fx();
  const RadialField u0 = 0.7 * f.q.profile;
  const RadialField u1 =
      RadialField::from_real(f.g, [](double r) { return 0.2 * std::exp(-r * r); });
  const double e = energy(u0, u1, f.nl);
  const double m = l2_norm(u0), ut = l2_norm(u1);
  const double rhs = 0.5 * virial_K(u0) + 0.5 * m * m + 0.5 * ut * ut;
  CHECK(std::abs(e - rhs) / std::abs(e) < 1e-10);
}

TEST_CASE("stationary energy examples") {
  auto& f = fx();
  CHECK(stationary_energy_J(f.zero, f.nl) == 0.0);
  const double j = stationary_energy_J(f.q.profile, f.nl);
  const double e = energy(f.q.profile, f.zero, f.nl);
  CHECK(std::abs(j - e) / std::abs(e) < 1e-6);
  CHECK(std::abs(j - 0.5 * f.q.mass_sq) / (0.5 * f.q.mass_sq) < 1e-4);
}

TEST_CASE("sign functional K_{1,0}") {
  auto& f = fx();
  const VariationalParams p10{1.0, 0.0};
  const double h1q = f.q.grad_sq + f.q.mass_sq;
  // K_{1,0}(Q) = 0 relative to ||Q||_{H^1}^2
  CHECK(std::abs(sign_functional_K(f.q.profile, p10, f.nl)) / h1q < 1e-4);
  // small lambda: quadratic part dominates, positive
  CHECK(sign_functional_K(0.05 * f.q.profile, p10, f.nl) > 0.0);
  // K(lambda Q) = lambda^2 (1 - lambda) ||Q||_{H^1}^2
  for (double lam : {0.5, 2.0}) {
    const double k = sign_functional_K(lam * f.q.profile, p10, f.nl);
    const double want = lam * lam * (1.0 - lam) * h1q;
    CHECK(std::abs(k - want) / std::abs(want) < 1e-4);
  }
  CHECK(sign_functional_K(2.0 * f.q.profile, p10, f.nl) < 0.0);
}

TEST_CASE("K_{1,0} is the scaling derivative of J, by central differences") {
  auto& f = fx();
  const RadialField phi =
      RadialField::from_real(f.g, [](double r) { return 1.3 * std::exp(-0.3 * r * r); });
  const double h = 1e-5;
  const double jp = stationary_energy_J(std::exp(h) * phi, f.nl);
  const double jm = stationary_energy_J(std::exp(-h) * phi, f.nl);
  const double fd = (jp - jm) / (2.0 * h);
  const double k = sign_functional_K(phi, VariationalParams{1.0, 0.0}, f.nl);
  CHECK(std::abs(fd - k) / std::abs(k) < 1e-6);
}

TEST_CASE("virial functional") {
  auto& f = fx();
  CHECK(virial_K(f.zero) == 0.0);
  // K(Q) = 0 at the GN extremal (relative to grad^2)
  CHECK(std::abs(virial_K(f.q.profile)) / f.q.grad_sq < 1e-4);
  // K(lambda Q) = 2 lambda^2 (1 - lambda) massSq
  const double k = virial_K(0.5 * f.q.profile);
  const double want = 2.0 * 0.25 * 0.5 * f.q.mass_sq;
  CHECK(k > 0.0);
  CHECK(std::abs(k - want) / want < 1e-4);
  auto g3 = make_grid(3, 30.0, 64);
  CHECK_THROWS_AS(virial_K(RadialField::zero(g3)), ParameterError);
}

TEST_CASE("classifier examples") {
  auto& f = fx();
  const Verdict plus = classify(0.8 * f.q.profile, f.zero, f.q);
  CHECK(plus.region == Region::KPlus);
  CHECK(plus.k_virial > 0.0);
  const Verdict minus = classify(1.2 * f.q.profile, f.zero, f.q);
  CHECK(minus.region == Region::KMinus);
  const Verdict thresh = classify(1.0 * f.q.profile, f.zero, f.q);
  CHECK(thresh.region == Region::Indeterminate);
  CHECK(thresh.boundary_flag);
}

TEST_CASE("classifier over the lambda family: dichotomy and sign agreement") {
  auto& f = fx();
  for (double lam : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
    const Verdict v = classify(lam * f.q.profile, f.zero, f.q);
    CHECK(v.region == Region::KPlus);
    CHECK(v.k_virial > 0.0);  // K(u0) > 0 in every KPlus verdict
  }
  for (double lam : {1.01, 1.2, 1.5, 2.0}) {
    const Verdict v = classify(lam * f.q.profile, f.zero, f.q);
    CHECK(v.region == Region::KMinus);
  }
}

TEST_CASE("classifier rejects wrong dimensions") {
  auto& f = fx();
  auto g3 = make_grid(3, 30.0, 64);
  CHECK_THROWS_AS(classify(RadialField::zero(g3), RadialField::zero(g3), f.q), ParameterError);
}
