#include "doctest.h"

#include <cmath>
#include <random>

#include "qmeix/charfun.hpp"
#include "qmeix/meixner.hpp"

using namespace qmeix;
using namespace qmeix::meix;

namespace {

// adaptive Simpson, test-side quadrature oracle; the panel split keeps the
// top-level samples from straddling all the mass
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          int depth = 0) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double left = (m - a) / 6.0 * (fa + 4.0 * f(lm) + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * f(rm) + fb);
  if (depth > 24 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return integrate_adaptive(f, a, m, 0.5 * tol, depth + 1) +
         integrate_adaptive(f, m, b, 0.5 * tol, depth + 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  const int panels = 32;
  double sum = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double pa = a + (b - a) * k / panels;
    const double pb = a + (b - a) * (k + 1) / panels;
    sum += integrate_adaptive(f, pa, pb, tol / panels);
  }
  return sum;
}

}  // namespace

TEST_SUITE("meixner") {

TEST_CASE("constructor domain checks") {
  CHECK_THROWS_AS(MeixnerV(0.0, 0.5, 0.25, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MeixnerV(1.0, 3.2, 0.25, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(MeixnerV(1.0, 0.5, -0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GammaDist(-1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(GammaDist(0.5, 0.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(NegBinomial(0.5, 1.2, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(NegBinomial(0.0, 0.5, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(TwoAtom(1.0, 0.6, -1.0, 0.6), std::invalid_argument);
  CHECK_NOTHROW(TwoAtom(1.0, 0.5, -1.0, 0.5));
  CHECK_NOTHROW(GammaDist(0.5, -1.0, 0.0));  // reflected gamma is allowed
}

TEST_CASE("classify_bose pinned examples") {
  auto nb = classify_bose(0.6, 1.0);
  CHECK(nb.label == ClassLabel::NegativeBinomial);
  const auto& n = std::get<NegBinomial>(nb.dist);
  CHECK(n.r == 0.5);
  CHECK(n.p == doctest::Approx(8.0 / 9.0).epsilon(1e-14));
  CHECK(n.mu == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(n.d == doctest::Approx(-1.6).epsilon(1e-14));
  CHECK(nb.omega == Complex(0.8, 0.0));
  CHECK(nb.det_h == doctest::Approx(-0.64));

  auto ga = classify_bose(1.0, 1.0);
  CHECK(ga.label == ClassLabel::Gamma);
  const auto& g = std::get<GammaDist>(ga.dist);
  CHECK(g.a == 0.5);
  CHECK(g.theta == 1.0);
  CHECK(g.mu == 0.5);

  auto mv = classify_bose(1.0, 0.6);
  CHECK(mv.label == ClassLabel::MeixnerV);
  const auto& m = std::get<MeixnerV>(mv.dist);
  CHECK(m.a == doctest::Approx(1.6).epsilon(1e-14));
  CHECK(m.delta == 0.25);
  CHECK(m.mu == doctest::Approx(-0.3).epsilon(1e-14));
  // b solves cos(b/2) = |omega|/alpha, sin(b/2) = beta/alpha
  CHECK(m.b == doctest::Approx(2.0 * std::atan2(0.6, 0.8)).epsilon(1e-14));
  CHECK(std::cos(0.5 * m.b) == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(mv.omega == Complex(0.0, -0.8));
}

TEST_CASE("classification trichotomy depends only on sign(det h)") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> ua(0.0, 2.0), ub(-2.0, 2.0);
  for (int k = 0; k < 300; ++k) {
    const double a = ua(rng), b = ub(rng);
    if (a * a + b * b == 0.0) continue;
    auto res = classify_bose(a, b);
    const double det = a * a - b * b;
    if (det > 0.0) CHECK(res.label == ClassLabel::MeixnerV);
    else if (det == 0.0) CHECK(res.label == ClassLabel::Gamma);
    else CHECK(res.label == ClassLabel::NegativeBinomial);
  }
  CHECK_THROWS_AS(classify_bose(0.0, 0.0), std::invalid_argument);
}

TEST_CASE("dist_cf of every classified bose law equals the vacuum cf") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> u(0.1, 2.0), frac(-0.9, 0.9);
  for (int k = 0; k < 60; ++k) {
    double alpha, beta;
    switch (k % 3) {
      case 0: alpha = u(rng); beta = alpha * frac(rng); break;           // det > 0
      case 1: beta = (k % 2 ? 1.0 : -1.0) * u(rng); alpha = std::abs(beta); break;  // det = 0
      default: beta = (k % 2 ? 1.0 : -1.0) * u(rng); alpha = std::abs(beta) * std::abs(frac(rng)); break;
    }
    if (alpha * alpha + beta * beta == 0.0) continue;
    auto res = classify_bose(alpha, beta);
    for (double t = 0.0; t <= 5.0; t += 0.1)
      CHECK(std::abs(dist_cf(res.dist, t) - cf::bose_cf(alpha, beta, t)) <= 1e-10);
  }
}

TEST_CASE("classify_fermi pinned examples and metadata") {
  auto res = classify_fermi(3.0, 4.0);
  CHECK(res.label == ClassLabel::Bernoulli);
  const auto& two = std::get<TwoAtom>(res.dist);
  CHECK(two.x1 == doctest::Approx(8.0).epsilon(1e-14));
  CHECK(two.p1 == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(two.x2 == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(two.p2 == doctest::Approx(0.8).epsilon(1e-14));

  auto sym = classify_fermi(0.0, 1.0);
  const auto& s = std::get<TwoAtom>(sym.dist);
  CHECK(s.x1 == 1.0);
  CHECK(s.p1 == 0.5);
  CHECK(s.x2 == -1.0);

  CHECK(classify_fermi(1.0, 0.0).label == ClassLabel::Dirac);
  CHECK(std::get<DiracDelta>(classify_fermi(1.0, 0.0).dist).x0 == 0.0);
  CHECK(classify_fermi(0.0, 0.0).label == ClassLabel::Dirac);

  // the definition and the limit readings are both surfaced
  auto conflicted = classify_fermi(1.0, 1.0);
  bool has_def = false, has_lim = false;
  for (const auto& [k, v] : conflicted.metadata) {
    if (k == "fermionic_class_by_definition") { has_def = true; CHECK(v == "2nd (alpha == beta)"); }
    if (k == "fermionic_class_by_limit") { has_lim = true; CHECK(v == "1st (omega > 0)"); }
  }
  CHECK(has_def);
  CHECK(has_lim);
}

TEST_CASE("fermi cf equals the two-atom cf") {
  auto res = classify_fermi(3.0, 4.0);
  for (double t = -3.0; t <= 3.0; t += 0.05)
    CHECK(std::abs(dist_cf(res.dist, t) - cf::fermi_cf(3.0, 4.0, t)) <= 1e-12);
}

TEST_CASE("dist_cf basics") {
  CHECK(dist_cf(DistributionSpec(DiracDelta(2.0)), 0.0) == Complex(1.0));
  CHECK(std::abs(dist_cf(DistributionSpec(GammaDist(0.5, 1.0, 0.5)), 0.0) - Complex(1.0)) == 0.0);
  // symmetric MeixnerV: real and even
  MeixnerV m(1.3, 0.0, 0.4, 0.0);
  for (double t : {0.3, 1.1, 2.0}) {
    const Complex f = dist_cf(DistributionSpec(m), t);
    CHECK(std::abs(f.imag()) <= 1e-15);
    CHECK(std::abs(f - dist_cf(DistributionSpec(m), -t)) <= 1e-15);
    CHECK(f.real() == doctest::Approx(std::pow(1.0 / std::cosh(0.5 * 1.3 * t), 0.8)).epsilon(1e-12));
  }
}

TEST_CASE("meixner cf is invariant under b -> b +- 2 pi") {
  // raw formula, bypassing the domain check on b
  auto raw_cf = [](double a, double b, double delta, double mu, double t) {
    return std::pow(std::cos(0.5 * b) / std::cosh(Complex(a * t, -b) * 0.5), 2.0 * delta) *
           std::exp(kI * mu * t);
  };
  for (double t : {0.2, 1.0, 4.3}) {
    const Complex f0 = raw_cf(1.6, 1.287, 0.25, -0.3, t);
    CHECK(std::abs(raw_cf(1.6, 1.287 - 2.0 * kPi, 0.25, -0.3, t) - f0) <= 1e-12);
    CHECK(std::abs(raw_cf(1.6, 1.287 + 2.0 * kPi, 0.25, -0.3, t) - f0) <= 1e-12);
  }
  CHECK(canonical_b(1.287 + 2.0 * kPi) == doctest::Approx(1.287).epsilon(1e-12));
  CHECK(canonical_b(-7.0) == doctest::Approx(-7.0 + 2.0 * kPi).epsilon(1e-12));
}

TEST_CASE("densities: pinned gamma value and support handling") {
  GammaDist g(0.5, 1.0, 0.0);
  CHECK(density(DistributionSpec(g), 1.0) ==
        doctest::Approx(std::exp(-1.0) / std::sqrt(kPi)).epsilon(1e-12));
  CHECK(density(DistributionSpec(g), -0.5) == 0.0);
  // shifted: support starts at -mu
  GammaDist gs(0.5, 1.0, 0.5);
  CHECK(density(DistributionSpec(gs), -0.6) == 0.0);
  CHECK(density(DistributionSpec(gs), 0.5) ==
        doctest::Approx(density(DistributionSpec(g), 1.0)).epsilon(1e-12));
  // reflected
  GammaDist gr(0.5, -1.0, 0.0);
  CHECK(density(DistributionSpec(gr), -1.0) ==
        doctest::Approx(density(DistributionSpec(g), 1.0)).epsilon(1e-12));
  CHECK(density(DistributionSpec(gr), 0.5) == 0.0);
  CHECK_THROWS_AS(density(DistributionSpec(DiracDelta(0.0)), 0.0), std::invalid_argument);
}

TEST_CASE("densities integrate to one") {
  const DistributionSpec mv = classify_bose(1.0, 0.6).dist;
  auto f = [&](double x) { return density(mv, x); };
  CHECK(integrate(f, -40.0, 40.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));

  // gamma with the x^{-1/2} endpoint: substitute x = u^2 to remove it;
  // the u = 0 limit of 2 u p(u^2 - 1/2) is 2/sqrt(pi)
  const DistributionSpec ga = classify_bose(1.0, 1.0).dist;
  auto fsub = [&](double u) {
    return u == 0.0 ? 2.0 / std::sqrt(kPi) : 2.0 * u * density(ga, u * u - 0.5);
  };
  CHECK(integrate(fsub, 0.0, 8.0, 1e-9) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("meixner density matches its cf through the symmetric special case") {
  // b = 0, delta = 1/4: density is even, cf real; compare a few numerically
  // integrated cf values against dist_cf
  MeixnerV m(2.0, 0.0, 0.25, 0.0);
  const DistributionSpec spec(m);
  for (double t : {0.0, 0.7, 1.9}) {
    auto integrand = [&](double x) { return density(spec, x) * std::cos(t * x); };
    const double val = integrate(integrand, -60.0, 60.0, 1e-9);
    CHECK(val == doctest::Approx(dist_cf(spec, t).real()).epsilon(1e-7));
  }
}

TEST_CASE("atoms: negative binomial weights and locations") {
  auto res = classify_bose(0.6, 1.0);
  auto list = atoms(res.dist);
  REQUIRE(list.size() >= 5);
  CHECK(list[0].first == doctest::Approx(-0.1).epsilon(1e-12));   // -mu
  CHECK(list[0].second == doctest::Approx(std::sqrt(8.0 / 9.0)).epsilon(1e-12));  // p^{1/2}
  CHECK(list[1].first == doctest::Approx(1.5).epsilon(1e-12));    // -mu - d
  double total = 0.0;
  for (auto& [x, w] : list) total += w;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("atom weights sum to one even for slowly decaying tails") {
  NegBinomial nb(0.5, 0.05, 0.0, 1.0);  // 1 - p = 0.95
  auto list = atoms(nb, 1e-12);
  double total = 0.0;
  for (auto& [x, w] : list) total += w;
  CHECK(std::abs(total - 1.0) <= 1e-10);
  CHECK_THROWS_AS(atoms(DistributionSpec(GammaDist(0.5, 1.0, 0.0))), std::invalid_argument);
}

TEST_CASE("moments: pinned values") {
  auto fermi = classify_fermi(3.0, 4.0);
  auto m = moments(fermi.dist, 2);
  CHECK(m[0] == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(m[1] == doctest::Approx(16.0).epsilon(1e-12));

  GammaDist g(0.5, 1.3, 0.65);  // beta = 1.3 vacuum gamma
  auto mg = moments(DistributionSpec(g), 2);
  CHECK(std::abs(mg[0]) <= 1e-12);
  CHECK(mg[1] == doctest::Approx(1.3 * 1.3 / 2.0).epsilon(1e-12));

  auto nb = classify_bose(0.6, 1.0);
  auto mn = moments(nb.dist, 2);
  CHECK(std::abs(mn[0]) <= 1e-12);
  CHECK(mn[1] - mn[0] * mn[0] == doctest::Approx(0.18).epsilon(1e-10));

  CHECK_THROWS_AS(moments(nb.dist, 5), std::invalid_argument);
}

TEST_CASE("meixner moments by finite differences match the closed forms") {
  MeixnerV m(1.6, 1.1, 0.7, 0.4);
  auto mom = moments(DistributionSpec(m), 4);
  const double mean = m.mu + m.a * m.delta * std::tan(0.5 * m.b);
  const double c = std::cos(0.5 * m.b);
  const double var = m.a * m.a * m.delta / (2.0 * c * c);
  CHECK(mom[0] == doctest::Approx(mean).epsilon(1e-8));
  CHECK(mom[1] - mom[0] * mom[0] == doctest::Approx(var).epsilon(1e-6));
  // third/fourth raw moments: compare against direct density integration
  const DistributionSpec spec(m);
  auto m3 = integrate([&](double x) { return density(spec, x) * x * x * x; }, -80.0, 80.0, 1e-10);
  CHECK(mom[2] == doctest::Approx(m3).epsilon(1e-4));
}

TEST_CASE("hamiltonian_from_meixner round trip on (a, b)") {
  for (double a : {0.5, 1.6, 3.0}) {
    for (double b : {-2.5, -1.287, -0.3, 0.0, 0.9, 2.9}) {
      auto rec = hamiltonian_from_meixner(a, b, 0.25, 0.0);
      CHECK(rec.alpha > 0.0);
      auto back = classify_bose(rec.alpha, rec.beta);
      REQUIRE(back.label == ClassLabel::MeixnerV);
      const auto& m = std::get<MeixnerV>(back.dist);
      CHECK(m.a == doctest::Approx(a).epsilon(1e-10));
      CHECK(m.b == doctest::Approx(b).epsilon(1e-10));
    }
  }
  // pinned: b = pi/2, a = 2 -> alpha = sqrt(2), beta = 1
  auto rec = hamiltonian_from_meixner(2.0, 0.5 * kPi, 0.25, 0.0);
  CHECK(rec.alpha == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  CHECK(rec.beta == doctest::Approx(1.0).epsilon(1e-12));
  // b = 0: beta = 0, alpha = a/2
  auto rec0 = hamiltonian_from_meixner(3.0, 0.0, 0.25, 0.0);
  CHECK(rec0.beta == 0.0);
  CHECK(rec0.alpha == doctest::Approx(1.5));
}

TEST_CASE("meixner recipe rebuilds the target cf from the vacuum cf") {
  const double a = 1.6, b = 0.9, delta = 0.7, mu = 0.3;
  auto rec = hamiltonian_from_meixner(a, b, delta, mu);
  CfFunction vacuum = [&](double t) { return cf::bose_cf(rec.alpha, rec.beta, t); };
  auto rebuilt = apply_recipe(vacuum, rec.recipe);
  const DistributionSpec target(MeixnerV(a, b, delta, mu));
  for (double t = -3.0; t <= 3.0; t += 0.11)
    CHECK(std::abs(rebuilt(t) - dist_cf(target, t)) <= 1e-10);
}

TEST_CASE("hamiltonian_from_negbin round trip on p") {
  for (double p : {0.05, 0.3, 0.5, 8.0 / 9.0, 0.99}) {
    auto rec = hamiltonian_from_negbin(p, 0.5, 0.0, -1.0);
    auto back = classify_bose(rec.alpha, rec.beta);
    REQUIRE(back.label == ClassLabel::NegativeBinomial);
    CHECK(std::get<NegBinomial>(back.dist).p == doctest::Approx(p).epsilon(1e-12));
  }
  // pinned: p = 8/9 -> omega = 0.8, alpha = 0.6
  auto rec = hamiltonian_from_negbin(8.0 / 9.0, 0.5, 0.1, -1.6);
  CHECK(rec.alpha == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rec.beta == 1.0);
  // p -> 1 pushes alpha -> 0
  CHECK(hamiltonian_from_negbin(0.999999, 0.5, 0.0, 1.0).alpha < 2e-3);
  CHECK_THROWS_AS(hamiltonian_from_negbin(1.2, 0.5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("negbin recipe rebuilds the target cf, non-integer power and d > 0") {
  for (auto [p, r, mu, d] : {std::tuple{0.35, 0.75, 0.2, -0.7}, {0.6, 2.0, -0.4, 0.9}}) {
    auto rec = hamiltonian_from_negbin(p, r, mu, d);
    CfFunction vacuum = [&](double t) { return cf::bose_cf(rec.alpha, rec.beta, t); };
    auto rebuilt = apply_recipe(vacuum, rec.recipe);
    const DistributionSpec target(NegBinomial(r, p, mu, d));
    for (double t = -2.0; t <= 2.0; t += 0.13)
      CHECK(std::abs(rebuilt(t) - dist_cf(target, t)) <= 1e-9);
  }
}

TEST_CASE("simple transformations") {
  CfFunction cosine = [](double t) { return Complex(std::cos(t), 0.0); };
  auto ident = simple_transform(cosine, 0.0, 1.0, 1.0);
  CHECK(std::abs(ident(0.8) - Complex(std::cos(0.8))) <= 1e-15);

  auto shifted = simple_transform(cosine, 1.5, 1.0, 1.0);
  for (double t : {0.2, 1.0})
    CHECK(std::abs(shifted(t) / cosine(t) - std::exp(kI * 1.5 * t)) <= 1e-14);

  // independent copying q = 2 of the symmetric two-atom law: cos^2 t
  auto doubled = simple_transform(cosine, 0.0, 2.0, 1.0);
  for (double t : {0.3, 2.0, 4.0})
    CHECK(std::abs(doubled(t) - Complex(std::cos(t) * std::cos(t))) <= 1e-14);

  // non-integer power: (1-it)^{-1} to the 0.5 equals (1-it)^{-0.5}
  CfFunction gamma1 = [](double t) { return Complex(1.0) / Complex(1.0, -t); };
  auto half = simple_transform(gamma1, 0.0, 0.5, 1.0);
  const DistributionSpec ghalf(GammaDist(0.5, 1.0, 0.0));
  for (double t : {-4.0, 0.6, 1.7, 8.0})
    CHECK(std::abs(half(t) - dist_cf(ghalf, t)) <= 1e-12);

  // time rescaling
  auto scaled = simple_transform(gamma1, 0.0, 1.0, -2.0);
  CHECK(std::abs(scaled(1.0) - gamma1(-2.0)) <= 1e-15);

  CHECK_THROWS_AS(simple_transform(cosine, 0.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(simple_transform(cosine, 0.0, 1.0, 0.0), std::invalid_argument);
}

}  // TEST_SUITE
