#include "fluct/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fluct/errors.hpp"

namespace fluct {

namespace {

// exp(2 pi i p / J) with p reduced mod J first so the phase stays exact.
cplx unit_root(long long p, int size) {
  const long long r = p % size;
  return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / size);
}

}  // namespace

void EulerParams::validate() const {
  if (!(A > 0.0) || !std::isfinite(A)) throw InvalidParameter("euler: A must be positive");
  if (n < 1) throw InvalidParameter("euler: n must be at least 1");
  if (m < 1) throw InvalidParameter("euler: m must be at least 1");
}

AbscissaSet laplace_abscissas(double t, const EulerParams& params) {
  params.validate();
  if (!(t > 0.0) || !std::isfinite(t)) throw DomainError("laplace_abscissas: t must be positive");
  AbscissaSet set;
  set.t = t;
  const int count = params.n + params.m + 1;
  set.nodes.reserve(static_cast<std::size_t>(count));
  const double re = params.A / (2.0 * t);
  for (int k = 0; k < count; ++k) {
    set.nodes.emplace_back(re, std::numbers::pi * k / t);
  }
  return set;
}

std::vector<double> euler_binomial_weights(int m) {
  std::vector<double> w(static_cast<std::size_t>(m) + 1);
  w[0] = std::ldexp(1.0, -m);
  for (int i = 0; i < m; ++i) {
    w[static_cast<std::size_t>(i) + 1] = w[static_cast<std::size_t>(i)] * (m - i) / (i + 1.0);
  }
  return w;
}

double inverse_laplace(std::span<const cplx> values, double t, const EulerParams& params) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("inverse_laplace: t must be positive");
  const std::size_t count = static_cast<std::size_t>(params.n + params.m + 1);
  if (values.size() != count) {
    throw InvalidParameter("inverse_laplace: expected " + std::to_string(count) + " values, got " +
                           std::to_string(values.size()));
  }
  const double scale = std::exp(0.5 * params.A) / t;

  // Alternating partial sums b_k; only b_n .. b_{n+m} are kept.
  std::vector<double> partial(static_cast<std::size_t>(params.m) + 1);
  double running = 0.5 * scale * values[0].real();
  for (std::size_t k = 1; k < count; ++k) {
    const double term = scale * values[k].real();
    running += (k % 2 == 0) ? term : -term;
    if (k >= static_cast<std::size_t>(params.n)) partial[k - static_cast<std::size_t>(params.n)] = running;
  }

  const auto binom = euler_binomial_weights(params.m);
  double result = 0.0;
  for (std::size_t i = 0; i < binom.size(); ++i) result += binom[i] * partial[i];
  if (!std::isfinite(result)) throw InversionError("inverse_laplace: non-finite result");
  return result;
}

double inverse_laplace(const std::function<cplx(cplx)>& transform, double t,
                       const EulerParams& params) {
  const auto abscissas = laplace_abscissas(t, params);
  std::vector<cplx> values(abscissas.nodes.size());
  std::transform(abscissas.nodes.begin(), abscissas.nodes.end(), values.begin(), transform);
  return inverse_laplace(values, t, params);
}

std::vector<double> euler_weights(double t, const EulerParams& params) {
  params.validate();
  if (!(t > 0.0)) throw DomainError("euler_weights: t must be positive");
  const std::size_t n = static_cast<std::size_t>(params.n);
  const std::size_t count = n + static_cast<std::size_t>(params.m) + 1;
  const auto binom = euler_binomial_weights(params.m);

  // Term k enters every partial sum b_{n+i} with n + i >= k.
  std::vector<double> tail(binom.size());
  double acc = 0.0;
  for (std::size_t i = binom.size(); i-- > 0;) {
    acc += binom[i];
    tail[i] = acc;
  }

  const double scale = std::exp(0.5 * params.A) / t;
  std::vector<double> w(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double coverage = k <= n ? 1.0 : tail[k - n];
    const double sign = (k % 2 == 0) ? 1.0 : -1.0;
    w[k] = (k == 0 ? 0.5 : 1.0) * sign * scale * coverage;
  }
  return w;
}

ZContour z_contour(int index, const ZControls& controls) {
  if (index < 0) throw DomainError("z_contour: coefficient index must be non-negative");
  if (!(controls.gamma > 0.0)) throw InvalidParameter("z_contour: gamma must be positive");
  ZContour c;
  c.index = index;
  c.rho = std::pow(10.0, -controls.gamma / (2.0 * std::max(index, 1)));
  c.size = controls.quadrature_size > 0 ? controls.quadrature_size : std::max(2 * index, 64);
  if (c.size % 2 != 0 || c.size < 2 * index) {
    throw InvalidParameter("z_contour: quadrature size must be even and at least 2N");
  }
  c.nodes.reserve(static_cast<std::size_t>(c.size / 2 + 1));
  for (int j = 0; j <= c.size / 2; ++j) {
    c.nodes.push_back(std::polar(c.rho, 2.0 * std::numbers::pi * j / c.size));
  }
  return c;
}

double inverse_z(const std::function<cplx(cplx)>& transform, int index, double rho, int size) {
  if (index < 0) throw DomainError("inverse_z: coefficient index must be non-negative");
  if (!(rho > 0.0)) throw DomainError("inverse_z: radius must be positive");
  if (size < 2 * index || size < 2) throw InvalidParameter("inverse_z: need J >= 2N");
  cplx sum{0.0, 0.0};
  for (int j = 0; j < size; ++j) {
    const double angle = 2.0 * std::numbers::pi * j / size;
    sum += transform(std::polar(rho, angle)) * std::conj(unit_root(j * static_cast<long long>(index), size));
  }
  const double result = sum.real() / (size * std::pow(rho, index));
  if (!std::isfinite(result)) throw InversionError("inverse_z: non-finite result");
  return result;
}

double inverse_z(std::span<const cplx> half_values, const ZContour& contour) {
  const std::size_t half = static_cast<std::size_t>(contour.size / 2);
  if (half_values.size() != half + 1) {
    throw InvalidParameter("inverse_z: expected J/2 + 1 values on the contour");
  }
  double sum = half_values[0].real();
  sum += ((contour.index % 2 == 0) ? 1.0 : -1.0) * half_values[half].real();
  for (std::size_t j = 1; j < half; ++j) {
    const cplx phase = unit_root(static_cast<long long>(j) * contour.index, contour.size);
    sum += 2.0 * (half_values[j] * std::conj(phase)).real();
  }
  const double result = sum / (contour.size * std::pow(contour.rho, contour.index));
  if (!std::isfinite(result)) throw InversionError("inverse_z: non-finite result");
  return result;
}

}  // namespace fluct
