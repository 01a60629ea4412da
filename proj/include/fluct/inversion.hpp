#pragma once

#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace fluct {

using cplx = std::complex<double>;

/// Controls of the Fourier-series (trapezoidal) Laplace inversion accelerated
/// by Euler summation. A ~ gamma log 10 targets an accuracy of 10^-gamma.
struct EulerParams {
  double A = 23.0;
  int n = 100;  // first partial sum entering the Euler average
  int m = 61;   // width of the binomial average

  void validate() const;
};

/// Bromwich abscissas s_k = (A + 2 k pi i) / (2 t), k = 0 .. n + m.
struct AbscissaSet {
  double t = 0.0;
  std::vector<cplx> nodes;
};

AbscissaSet laplace_abscissas(double t, const EulerParams& params);

/// Binomial weights C(m, i) / 2^m, i = 0 .. m, computed by a running product.
std::vector<double> euler_binomial_weights(int m);

/// Inverts F at time t from its values on laplace_abscissas(t, params):
/// forms the alternating partial sums b_k and returns their binomially
/// weighted average over k = n .. n + m. Only Re F enters, so F must be the
/// transform of a real function.
double inverse_laplace(std::span<const cplx> values, double t, const EulerParams& params);

double inverse_laplace(const std::function<cplx(cplx)>& transform, double t,
                       const EulerParams& params);

/// Per-abscissa weights w_k such that inverse_laplace(values) equals
/// sum_k w_k Re values[k]. Also valid for complex-valued time functions when
/// Re F(s_k) is replaced by (F(s_k) + F(conj s_k)) / 2.
std::vector<double> euler_weights(double t, const EulerParams& params);

/// Controls for the trapezoidal z-inversion on the circle |q| = rho.
struct ZControls {
  double gamma = 8.0;       // target accuracy 10^-gamma, rho = 10^(-gamma / (2N))
  int quadrature_size = 0;  // J; 0 selects max(2N, 64)
};

struct ZContour {
  int index = 0;  // N, the coefficient to recover
  double rho = 0.0;
  int size = 0;  // J, even
  /// q_j = rho exp(2 pi i j / J) for j = 0 .. J/2 (the upper half suffices for
  /// series with real coefficients).
  std::vector<cplx> nodes;
};

ZContour z_contour(int index, const ZControls& controls);

/// Coefficient a_N of F(q) = sum a_n q^n by the J-point trapezoidal rule on
/// |q| = rho; the real part is returned.
double inverse_z(const std::function<cplx(cplx)>& transform, int index, double rho, int size);

/// Same, from values at contour.nodes, assuming real coefficients so that
/// F(conj q) = conj F(q).
double inverse_z(std::span<const cplx> half_values, const ZContour& contour);

}  // namespace fluct
