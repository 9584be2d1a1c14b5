#include <cmath>
#include <complex>
#include <limits>

#include "doctest.h"
#include "hardy/cp.hpp"
#include "hardy/rng.hpp"

using namespace hardy;

namespace {

using ld = long double;
using lcx = std::complex<long double>;

// Independent extended-precision evaluation of each side of the algebraic
// decomposition; kept free of the double-precision implementation path.
ld cp_ld(lcx xi, lcx eta, ld p) {
  const lcx d = xi - eta;
  const ld ad = std::abs(d);
  ld cross = 0.0L;
  if (ad != 0.0L)
    cross = p * powl(ad, p - 2.0L) *
            (d.real() * eta.real() + d.imag() * eta.imag());
  return powl(std::abs(xi), p) - powl(ad, p) - cross;
}

struct IdentitySides {
  ld lhs, rhs, scale;
};

IdentitySides identity_sides_ld(lcx a, ld t, ld p) {
  const ld omt = powl(1.0L - t, p - 1.0L);
  const ld lhs = powl(std::abs(a - t), p) - omt * (powl(std::abs(a), p) - t);
  const ld term1 = cp_ld(a - t, t * (a - 1.0L), p);
  const ld term2 = t * omt * cp_ld(lcx{1.0L}, 1.0L - a, p);
  const ld scale = powl(std::abs(a - t), p) +
                   std::abs(omt) * (powl(std::abs(a), p) + std::abs(t)) +
                   std::abs(term1) + std::abs(term2);
  return {lhs, term1 + term2, scale};
}

}  // namespace

TEST_CASE("cp_value: definition collapses and pinned values") {
  // eta = 0 collapses the definition for any p
  CHECK(cp_value(cx{3.0, -2.0}, cx{}, Exponent{2.5}) == doctest::Approx(0.0));
  CHECK(cp_value(cx{-1.0, 0.5}, cx{}, Exponent{1.2}) == doctest::Approx(0.0));

  // p = 2 reduces to |eta|^2
  CHECK(cp_value(cx{5.0, 0.0}, cx{3.0, 4.0}, Exponent{2.0}) ==
        doctest::Approx(25.0).epsilon(1e-14));

  // direct arithmetic: 8 - 1 - 3*1*1 = 4
  CHECK(cp_value(cx{2.0, 0.0}, cx{1.0, 0.0}, Exponent{3.0}) ==
        doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("cp_value: xi = eta is the continuous extension for p < 2") {
  const cx z{0.3, -1.7};
  CHECK(cp_value(z, z, Exponent{1.5}) ==
        doctest::Approx(std::pow(std::abs(z), 1.5)).epsilon(1e-13));
}

TEST_CASE("cp_value: non-finite inputs rejected") {
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(cp_value(cx{inf, 0.0}, cx{1.0, 0.0}, Exponent{2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(cp_value(cx{1.0, 0.0}, cx{0.0, nan}, Exponent{2.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(Exponent{1.0}, std::domain_error);
  CHECK_THROWS_AS(Exponent{nan}, std::domain_error);
}

TEST_CASE("cp_value: non-negativity over random inputs") {
  SplitMix64 rng(0xC0FFEE01ULL);
  int violations = 0;
  for (int k = 0; k < 100'000; ++k) {
    const cx xi{4.0 * rng.normal(), 4.0 * rng.normal()};
    const cx eta{4.0 * rng.normal(), 4.0 * rng.normal()};
    const Exponent p{1.1 + 4.9 * rng.uniform()};
    if (!(cp_value(xi, eta, p) >= 0.0)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("cp_value: homogeneity of degree p") {
  SplitMix64 rng(0xC0FFEE02ULL);
  int violations = 0;
  for (int k = 0; k < 20'000; ++k) {
    const cx xi{rng.normal(), rng.normal()};
    const cx eta{rng.normal(), rng.normal()};
    const Exponent p{1.1 + 4.9 * rng.uniform()};
    double lambda = 3.0 * rng.normal();
    if (lambda == 0.0) lambda = 0.5;
    const double lp = std::pow(std::abs(lambda), p.value());
    const double lhs = cp_value(lambda * xi, lambda * eta, p);
    const double rhs = lp * cp_value(xi, eta, p);
    if (std::abs(lhs - rhs) > 1e-10 * rhs + 1e-12 * lp) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("cp_lower_objective: even in t, exactly") {
  SplitMix64 rng(0xC0FFEE03ULL);
  const Exponent p{3.0};
  for (int k = 0; k < 1'000; ++k) {
    const double s = 10.0 * rng.normal();
    const double t = 10.0 * rng.normal();
    if (s == 0.0 && t == 0.0) continue;
    CHECK(cp_lower_objective(s, t, p) == cp_lower_objective(s, -t, p));
  }
}

TEST_CASE("cp_lower_constant: c1(2) = 1 and range (0, 1]") {
  const auto est2 = cp_lower_constant(Exponent{2.0}, 1e-8);
  CHECK(est2.value == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(est2.upper - est2.lower <= 1e-8 * (1 + 1e-12));
  CHECK(est2.lower <= est2.value);
  CHECK(est2.value <= est2.upper);

  for (double pv : {2.0, 2.5, 3.0, 4.0}) {
    const auto est = cp_lower_constant(Exponent{pv}, 1e-6);
    CHECK(est.value > 0.0);
    CHECK(est.value <= 1.0);
  }
}

TEST_CASE("cp_lower_constant: dense polar-grid oracle at p = 3") {
  const Exponent p{3.0};
  // Exhaustive oracle: 2000 x 2000 polar grid over radius (0, 100],
  // angle [0, pi], followed by a shrinking 3x3 refinement.
  double best = 1.0, bs = 0.0, bt = 0.0;
  const int nr = 2000, na = 2000;
  for (int i = 1; i <= nr; ++i) {
    const double r = 100.0 * i / nr;
    for (int j = 0; j < na; ++j) {
      const double th = M_PI * j / (na - 1);
      const double s = r * std::cos(th), t = r * std::sin(th);
      const double v = cp_lower_objective(s, t, p);
      if (v < best) { best = v; bs = s; bt = t; }
    }
  }
  double h = 0.1;
  while (h > 1e-12) {
    bool moved = false;
    for (int di = -1; di <= 1; ++di)
      for (int dj = -1; dj <= 1; ++dj) {
        if (di == 0 && dj == 0) continue;
        const double s = bs + h * di, t = bt + h * dj;
        if (s == 0.0 && t == 0.0) continue;
        const double v = cp_lower_objective(s, std::abs(t), p);
        if (v < best) { best = v; bs = s; bt = t; moved = true; }
      }
    if (!moved) h *= 0.5;
  }

  const auto est = cp_lower_constant(p, 1e-6);
  CHECK(std::abs(est.value - best) <= 1e-5);
}

TEST_CASE("cp_lower_constant: lower bound property") {
  SplitMix64 rng(0xC0FFEE04ULL);
  for (double pv : {2.0, 2.5, 3.0, 4.0}) {
    const Exponent p{pv};
    const double c1 = cp_lower_constant(p, 1e-7).lower;
    int violations = 0;
    for (int k = 0; k < 100'000; ++k) {
      const cx xi{3.0 * rng.normal(), 3.0 * rng.normal()};
      const cx eta{3.0 * rng.normal(), 3.0 * rng.normal()};
      const double floor = c1 * std::pow(std::abs(eta), pv);
      if (cp_value(xi, eta, p) < floor - 1e-12 * std::max(1.0, floor))
        ++violations;
    }
    CHECK(violations == 0);
  }
}

TEST_CASE("cp_lower_constant: domain and budget errors") {
  CHECK_THROWS_AS(cp_lower_constant(Exponent{1.5}, 1e-6), std::domain_error);
  CHECK_THROWS_AS(cp_lower_constant(Exponent{3.0}, 0.0), std::domain_error);
  try {
    cp_lower_constant(Exponent{3.0}, 1e-6, 50);
    FAIL("expected budget_error");
  } catch (const budget_error& e) {
    CHECK(e.best().evaluations >= 50);
    CHECK(e.best().value > 0.0);
  }
}

TEST_CASE("algebraic identity: endpoint and pinned examples") {
  SplitMix64 rng(0xC0FFEE05ULL);
  for (int k = 0; k < 100; ++k) {
    const cx a{2.0 * rng.normal(), 2.0 * rng.normal()};
    const Exponent p{1.1 + 4.0 * rng.uniform()};
    CHECK(std::abs(algebraic_identity_residual(a, 0.0, p)) <= 1e-12);
    CHECK(std::abs(algebraic_identity_residual(a, 1.0, p)) <=
          1e-12 * (1.0 + std::pow(std::abs(a - 1.0), p.value())));
  }
  CHECK(std::abs(algebraic_identity_residual(cx{0.3, 0.7}, 0.4,
                                             Exponent{2.5})) < 1e-12);
}

TEST_CASE("algebraic identity: residual and extended-precision oracle") {
  SplitMix64 rng(0xC0FFEE06ULL);
  int violations = 0;
  for (int k = 0; k < 10'000; ++k) {
    const cx a{3.0 * rng.normal(), 3.0 * rng.normal()};
    const double t = rng.uniform();
    const Exponent p{1.1 + 4.9 * rng.uniform()};

    const auto sides = identity_sides_ld(lcx{a.real(), a.imag()}, t, p.value());
    // the identity itself, evaluated independently
    if (std::abs(sides.lhs - sides.rhs) >
        1e-15L * std::max<long double>(1.0L, sides.scale))
      ++violations;
    // the double-precision residual honours its contract
    const double res = algebraic_identity_residual(a, t, p);
    if (std::abs(res) >
        1e-10 * std::max(1.0, static_cast<double>(sides.scale)))
      ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("algebraic identity: t outside [0,1] only at p = 2") {
  CHECK_THROWS_AS(algebraic_identity_residual(cx{1.0, 0.0}, 1.5, Exponent{3.0}),
                  std::domain_error);
  CHECK_THROWS_AS(algebraic_identity_residual(cx{1.0, 0.0}, -0.2, Exponent{2.5}),
                  std::domain_error);
  // p = 2: valid for all real t
  SplitMix64 rng(0xC0FFEE07ULL);
  int violations = 0;
  for (int k = 0; k < 5'000; ++k) {
    const cx a{3.0 * rng.normal(), 3.0 * rng.normal()};
    const double t = -5.0 + 10.0 * rng.uniform();
    const double res = algebraic_identity_residual(a, t, Exponent{2.0});
    const double scale =
        std::norm(a - t) + std::abs(1.0 - t) * (std::norm(a) + std::abs(t));
    if (std::abs(res) > 1e-12 * std::max(1.0, scale)) ++violations;
  }
  CHECK(violations == 0);
}

TEST_CASE("simplified p = 2 identity") {
  SUBCASE("a = 1 for any t") {
    for (double t : {-3.0, -0.5, 0.0, 0.7, 4.2})
      CHECK(simplified_p2_residual(cx{1.0, 0.0}, t) == doctest::Approx(0.0));
  }
  SUBCASE("pinned examples") {
    CHECK(std::abs(simplified_p2_residual(cx{2.0, 1.0}, 3.0)) <= 1e-13 * 30.0);
    CHECK(simplified_p2_residual(cx{0.0, 0.0}, 0.0) == 0.0);
  }
  SUBCASE("random t in [-5, 5]") {
    SplitMix64 rng(0xC0FFEE08ULL);
    int violations = 0;
    for (int k = 0; k < 10'000; ++k) {
      const cx a{3.0 * rng.normal(), 3.0 * rng.normal()};
      const double t = -5.0 + 10.0 * rng.uniform();
      const double scale =
          std::norm(a - t) + std::abs(1.0 - t) * (std::norm(a) + std::abs(t)) +
          std::abs(t) * std::norm(a - 1.0);
      if (std::abs(simplified_p2_residual(a, t)) >
          1e-10 * std::max(1.0, scale))
        ++violations;
    }
    CHECK(violations == 0);
  }
}
