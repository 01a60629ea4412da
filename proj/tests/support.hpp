#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fluct/levy.hpp"
#include "fluct/pricing.hpp"

namespace fluct::testing {

inline const MarketParams kMarket{0.05, 0.02};

inline LevyModel nig_model() { return LevyModel(NigParams{15.0, -5.0, 0.5}, kMarket); }
inline LevyModel kou_model() { return LevyModel(KouParams{0.1, 3.0, 0.3, 40.0, 12.0}, kMarket); }
// Skew sign chosen so that the reference VG prices are reproduced; the
// exponent itself is the textbook one.
inline LevyModel vg_model() {
  return LevyModel(VgParams{-1.0 / 9.0, 1.0 / (3.0 * std::sqrt(3.0)), 0.25}, kMarket);
}

inline OptionContract down_and_out_call() {
  OptionContract c;
  c.spot = 1.0;
  c.strike = 1.1;
  c.lower = 0.8;
  c.maturity = 1.0;
  c.type = OptionType::call;
  c.damping = -1.5;
  return c;
}

inline OptionContract double_knock_out_call() {
  OptionContract c = down_and_out_call();
  c.lower = 0.6;
  c.upper = 1.4;
  c.damping = 0.0;
  return c;
}

// Adaptive Gauss-Kronrod on [a, b] of a complex-valued integrand.
inline std::complex<double> integrate(const std::function<std::complex<double>(double)>& f,
                                      double a, double b) {
  using boost::math::quadrature::gauss_kronrod;
  const double re = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x).real(); }, a, b, 15, 1e-14);
  const double im = gauss_kronrod<double, 61>::integrate(
      [&](double x) { return f(x).imag(); }, a, b, 15, 1e-14);
  return {re, im};
}

inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

}  // namespace fluct::testing
