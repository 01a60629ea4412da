#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "fluct/errors.hpp"
#include "fluct/filter.hpp"
#include "fluct/fourier_grid.hpp"
#include "fluct/hilbert.hpp"
#include "fluct/levy.hpp"
#include "fluct/spitzer.hpp"
#include "support.hpp"

using namespace fluct;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<cplx> random_values(std::size_t n, unsigned seed, bool real_only) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto& x : v) x = real_only ? cplx{u(rng), 0.0} : cplx{u(rng), u(rng)};
  return v;
}

template <class F>
Spectrum sample_xi(const FourierGrid& g, F f) {
  std::vector<cplx> v(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) v[k] = f(g.xi(k));
  return Spectrum(g, std::move(v));
}

template <class F>
std::vector<cplx> sample_x(const FourierGrid& g, F f) {
  std::vector<cplx> v(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) v[j] = f(g.x(j));
  return v;
}

// (1/pi) PV int f(eta) / (xi - eta) d eta, folded onto (0, inf).
double pv_hilbert(double (*f)(double), double xi) {
  return fluct::testing::integrate(
             [&](double t) { return cplx{(f(xi - t) - f(xi + t)) / t, 0.0}; }, 0.0, 12.0)
             .real() /
         kPi;
}

double gauss(double x) { return std::exp(-x * x); }

}  // namespace

TEST_CASE("grid arithmetic") {
  const auto g = make_grid(8, 4.0);
  CHECK(g.dx() == 1.0);
  CHECK(g.dxi() == doctest::Approx(kPi / 4).epsilon(1e-15));
  CHECK(g.x(0) == -4.0);
  CHECK(g.xi(4) == 0.0);

  const auto big = make_grid(std::size_t{1} << 17, 8.0);
  CHECK(big.dx() == std::ldexp(1.0, -13));
  CHECK(big.dxi() == doctest::Approx(2 * kPi / (big.size() * big.dx())).epsilon(1e-15));
  CHECK(big.dx() * big.dxi() * big.size() == doctest::Approx(2 * kPi).epsilon(1e-15));

  CHECK_THROWS_AS(make_grid(12, 1.0), InvalidParameter);
  CHECK_THROWS_AS(make_grid(4, 1.0), InvalidParameter);
  CHECK_THROWS_AS(make_grid(16, 0.0), InvalidParameter);
  CHECK(g.nearest_x_index(0.4) == 4);
  CHECK(g.nearest_x_index(-100.0) == 0);
}

TEST_CASE("spectrum invariants") {
  const auto g = make_grid(16, 2.0);
  CHECK_THROWS_AS(Spectrum(g, std::vector<cplx>(15)), InvalidParameter);
  std::vector<cplx> bad(16);
  bad[3] = cplx{NAN, 0.0};
  CHECK_THROWS_AS(Spectrum(g, bad), InvalidParameter);
}

TEST_CASE("dft and idft") {
  SUBCASE("round trip of a random real vector") {
    for (std::size_t m : {8u, 64u, 1024u}) {
      const auto g = make_grid(m, 3.0);
      const auto v = random_values(m, 7 + m, true);
      const auto back = idft(dft(g, v));
      for (std::size_t j = 0; j < m; ++j) CHECK(std::abs(back[j] - v[j]) < 1e-13);
    }
  }
  SUBCASE("delta at the origin has a flat spectrum") {
    const auto g = make_grid(256, 5.0);
    std::vector<cplx> d(g.size());
    d[g.size() / 2] = 1.0 / g.dx();
    const auto s = dft(g, d);
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(s[k] - 1.0) < 1e-13);
  }
  SUBCASE("gaussian pair") {
    const auto g = make_grid(1024, 8.0);
    const auto s = dft(g, sample_x(g, [](double x) { return cplx{std::exp(-0.5 * x * x), 0.0}; }));
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double xi = g.xi(k);
      CHECK(std::abs(s[k] - std::sqrt(2 * kPi) * std::exp(-0.5 * xi * xi)) < 1e-10);
    }
  }
  SUBCASE("linearity") {
    const auto g = make_grid(512, 4.0);
    const auto f = random_values(512, 1, false);
    const auto h = random_values(512, 2, false);
    const cplx a{0.3, -1.2}, b{2.0, 0.5};
    std::vector<cplx> mix(512);
    for (std::size_t j = 0; j < 512; ++j) mix[j] = a * f[j] + b * h[j];
    const auto sf = dft(g, f), sh = dft(g, h), sm = dft(g, mix);
    for (std::size_t k = 0; k < 512; ++k) CHECK(std::abs(sm[k] - (a * sf[k] + b * sh[k])) < 1e-13);
  }
  SUBCASE("length mismatch") {
    const auto g = make_grid(16, 1.0);
    CHECK_THROWS_AS(dft(g, std::vector<cplx>(8)), InvalidParameter);
  }
}

TEST_CASE("sinc hilbert transform") {
  SUBCASE("zero in, zero out") {
    const auto g = make_grid(64, 2.0);
    const auto h = sinc_hilbert(Spectrum(g));
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(h[k] == cplx{0.0, 0.0});
  }
  SUBCASE("lorentzian pair away from the edges") {
    // The pair lives in x-space as pi exp(-|x|); on the periodic grid the
    // aliasing error is of order exp(-x_max), so x_max = 16 is needed for 1e-6.
    const auto g = make_grid(std::size_t{1} << 12, 16.0);
    const auto h = sinc_hilbert(sample_xi(g, [](double xi) { return cplx{1.0 / (1.0 + xi * xi), 0.0}; }));
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double xi = g.xi(k);
      if (std::abs(xi) > 0.25 * g.xi_max()) continue;
      CHECK(std::abs(h[k] - xi / (1.0 + xi * xi)) < 1e-6);
    }
    // PV quadrature at a few nodes as a second oracle.
    for (double target : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
      const std::size_t k = static_cast<std::size_t>(std::lround(target / g.dxi() + 0.5 * g.size()));
      const double pv = fluct::testing::integrate(
                            [&](double t) {
                              const double x = g.xi(k);
                              return cplx{(1.0 / (1.0 + (x - t) * (x - t)) - 1.0 / (1.0 + (x + t) * (x + t))) / t, 0.0};
                            },
                            0.0, 1e4)
                            .real() /
                        kPi;
      CHECK(std::abs(h[k].real() - pv) < 1e-6);
    }
  }
  SUBCASE("at x_max = 8 the lorentzian error sits at the aliasing level") {
    const auto g = make_grid(std::size_t{1} << 12, 8.0);
    const auto h = sinc_hilbert(sample_xi(g, [](double xi) { return cplx{1.0 / (1.0 + xi * xi), 0.0}; }));
    double err = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
      const double xi = g.xi(k);
      if (std::abs(xi) < 0.25 * g.xi_max()) err = std::max(err, std::abs(h[k] - xi / (1.0 + xi * xi)));
    }
    CHECK(err < 2.0 * std::exp(-8.0));
    CHECK(err > 0.5 * std::exp(-8.0) / 2.0);
  }
  SUBCASE("gaussian against principal-value quadrature") {
    for (double xm : {8.0, 16.0}) {
      const auto g = make_grid(std::size_t{1} << 12, xm);
      const auto h = sinc_hilbert(sample_xi(g, [](double xi) { return cplx{gauss(xi), 0.0}; }));
      for (double target : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        const std::size_t k = static_cast<std::size_t>(std::lround(target / g.dxi() + 0.5 * g.size()));
        CHECK(std::abs(h[k] - pv_hilbert(gauss, g.xi(k))) < 5e-8);
      }
    }
  }
  SUBCASE("anti-involution for a smooth decaying function with decaying transform") {
    // H[f] of a function with non-zero mean decays like 1/xi and the second
    // pass then carries an O(1/xi_max) truncation error; an odd f avoids that.
    const auto g = make_grid(std::size_t{1} << 12, 16.0);
    const auto f = sample_xi(g, [](double xi) { return cplx{xi * std::exp(-0.25 * xi * xi), 0.0}; });
    const auto hh = sinc_hilbert(sinc_hilbert(f));
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (std::abs(g.xi(k)) < 0.25 * g.xi_max()) CHECK(std::abs(hh[k] + f[k]) < 1e-4);
    }
  }
  SUBCASE("span form may alias") {
    const auto g = make_grid(128, 4.0);
    auto v = random_values(128, 3, false);
    const auto expected = sinc_hilbert(Spectrum(g, v));
    sinc_hilbert(v, v);
    for (std::size_t k = 0; k < 128; ++k) CHECK(std::abs(v[k] - expected[k]) < 1e-15);
  }
}

TEST_CASE("plemelj decomposition") {
  SUBCASE("additivity for random spectra and barriers") {
    const auto g = make_grid(1024, 6.0);
    const Spectrum f(g, random_values(1024, 11, false));
    for (double b : {-5.9, -1.3, 0.0, 0.7, 5.0}) {
      const auto p = plemelj_decompose(f, b, Side::plus);
      const auto m = plemelj_decompose(f, b, Side::minus);
      for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(p[k] + m[k] - f[k]) < 1e-13);
    }
  }
  SUBCASE("zero barrier has unit phases") {
    const auto g = make_grid(64, 2.0);
    const BarrierShift shift(g, 0.0);
    for (auto ph : shift.phase()) CHECK(ph == cplx{1.0, 0.0});
    const Spectrum f(g, random_values(64, 5, false));
    const auto h = sinc_hilbert(f);
    const auto p = plemelj_decompose(f, 0.0, Side::plus);
    for (std::size_t k = 0; k < 64; ++k) {
      CHECK(std::abs(p[k] - 0.5 * (f[k] + cplx{0.0, 1.0} * h[k])) < 1e-15);
    }
  }
  SUBCASE("one-sided exponential with a jump") {
    // The jump at x = 0 makes the spectrum decay like 1/xi, so the truncated
    // sum leaves an O(1/xi_max) error which quarters when M grows fourfold.
    double previous = 0.0;
    for (std::size_t m : {std::size_t{1} << 12, std::size_t{1} << 14}) {
      const auto g = make_grid(m, 8.0);
      const auto f = dft(g, sample_x(g, [](double x) { return cplx{x > 0 ? std::exp(-x) : (x == 0 ? 0.5 : 0.0), 0.0}; }));
      const auto p = plemelj_decompose(f, 0.0, Side::plus);
      const auto n = plemelj_decompose(f, 0.0, Side::minus);
      double err = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(g.xi(k)) < 0.25 * g.xi_max()) err = std::max({err, std::abs(p[k] - f[k]), std::abs(n[k])});
      }
      CHECK(err < 1.0 / g.xi_max());
      if (previous > 0.0) CHECK(err < 0.3 * previous);
      previous = err;
    }
  }
  SUBCASE("continuous one-sided function and shifted barrier") {
    const auto g = make_grid(std::size_t{1} << 12, 16.0);
    for (double b : {0.0, 1.0, -2.5}) {
      const auto f = dft(g, sample_x(g, [b](double x) {
                           const double y = x - b;
                           return cplx{y > 0 ? y * y * std::exp(-3.0 * y) : 0.0, 0.0};
                         }));
      const auto p = plemelj_decompose(f, b, Side::plus);
      const auto n = plemelj_decompose(f, b, Side::minus);
      const auto pp = plemelj_decompose(p, b, Side::plus);
      // The second derivative jumps at b, so the transform decays like
      // xi^-3 and the truncated sum is accurate to O(xi_max^-2) away from
      // the ends of the frequency grid.
      const double tol = 1.0 / (g.xi_max() * g.xi_max());
      for (std::size_t k = 0; k < g.size(); ++k) {
        if (std::abs(g.xi(k)) > 0.5 * g.xi_max()) continue;
        CHECK(std::abs(p[k] - f[k]) < tol);
        CHECK(std::abs(n[k]) < tol);
        CHECK(std::abs(pp[k] - p[k]) < tol);
      }
    }
  }
  SUBCASE("barrier outside the grid") {
    const auto g = make_grid(64, 2.0);
    CHECK_THROWS_AS(BarrierShift(g, 2.5), DomainError);
    CHECK_THROWS_AS(plemelj_decompose(Spectrum(g), -3.0, Side::plus), DomainError);
  }
}

TEST_CASE("wiener-hopf factorisation") {
  SUBCASE("constant symbol splits into factors of equal modulus") {
    const auto g = make_grid(256, 4.0);
    const auto f = wh_factorise(sample_xi(g, [](double) { return cplx{4.0, 0.0}; }));
    // The truncated Hilbert sum of a constant is not zero, so only the
    // moduli and the product are exact.
    for (std::size_t k = 0; k < g.size(); ++k) {
      CHECK(std::abs(f.plus[k]) == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(std::abs(f.minus[k]) == doctest::Approx(2.0).epsilon(1e-14));
      CHECK(std::abs(f.plus[k] * f.minus[k] - 4.0) < 1e-13);
    }
  }
  SUBCASE("product reconstruction for nig at the first abscissa") {
    const auto g = make_grid(std::size_t{1} << 12, 16.0);
    const auto model = fluct::testing::nig_model();
    for (double damping : {0.0, -1.5}) {
      const auto sym = build_symbol_continuous(model, damping, g, cplx{11.5, 0.0});
      const auto f = wh_factorise(sym);
      for (std::size_t k = 0; k < g.size(); ++k) {
        CHECK(std::abs(f.plus[k] * f.minus[k] / sym[k] - 1.0) < 1e-10);
      }
    }
  }
  SUBCASE("gaussian factor against the quadratic-root factor") {
    // Phi = (sigma^2 / 2)(xi - r_up)(xi - r_down); the + factor is analytic
    // and zero-free above the real line, so it is proportional to xi - r_down.
    // The truncated Hilbert sum adds a phase roughly linear in xi whose slope
    // shrinks like log(xi_max) / xi_max; check that it does shrink.
    const LevyModel model(NormalParams{0.1}, fluct::testing::kMarket);
    const double s2 = 0.01;
    const cplx s{11.5, 3 * kPi};
    double previous = 0.0;
    for (std::size_t m : {std::size_t{1} << 10, std::size_t{1} << 12, std::size_t{1} << 14}) {
      const auto g = make_grid(m, 16.0);
      const auto f = wh_factorise(build_symbol_continuous(model, 0.0, g, s));
      const cplx b{0.0, -model.drift()};
      const cplx d = std::sqrt(b * b - 2.0 * s2 * s);
      const cplx r1 = (-b + d) / s2, r2 = (-b - d) / s2;
      const cplx r_down = r1.imag() < 0 ? r1 : r2;
      const cplx ref = f.plus[m / 2] / (0.0 - r_down);
      double dev = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (std::abs(g.xi(k)) <= 10.0) dev = std::max(dev, std::abs(f.plus[k] / (g.xi(k) - r_down) / ref - 1.0));
      }
      if (previous > 0.0) CHECK(dev < 0.4 * previous);
      previous = dev;
    }
    CHECK(previous < 0.05);
  }
  SUBCASE("non-positive real part is rejected") {
    const auto g = make_grid(64, 2.0);
    CHECK_THROWS_AS(wh_factorise(sample_xi(g, [](double xi) { return cplx{xi, 1.0}; })), FactorisationError);
  }
}

TEST_CASE("exponential filter") {
  FilterSpec spec;
  CHECK(exp_filter_value(0.0, spec) == 1.0);
  CHECK(exp_filter_value(0.5, FilterSpec{2, 1.0}) == doctest::Approx(std::exp(-0.25)).epsilon(1e-15));
  CHECK(exp_filter_value(1.0, spec) == doctest::Approx(1e-16).epsilon(1e-12));
  CHECK(exp_filter_value(1.0, spec) <= 1.0 * std::numeric_limits<double>::epsilon());
  CHECK(spec.reaches_machine_precision());
  CHECK_FALSE(FilterSpec{12, 20.0}.reaches_machine_precision());
  CHECK_THROWS_AS((FilterSpec{3, 1.0}.validate()), InvalidParameter);
  CHECK_THROWS_AS((FilterSpec{4, -1.0}.validate()), InvalidParameter);

  const auto g = make_grid(512, 4.0);
  const auto w = exp_filter(g, spec);
  CHECK(w[g.size() / 2] == 1.0);
  CHECK(w[0] <= 1e-15);
  for (std::size_t k = g.size() / 2; k + 1 < g.size(); ++k) CHECK(w[k + 1] <= w[k]);
  for (std::size_t k = 1; k <= g.size() / 2; ++k) CHECK(w[k - 1] <= w[k]);
}
