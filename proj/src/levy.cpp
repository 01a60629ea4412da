#include "fluct/levy.hpp"

#include <cmath>
#include <string>

#include "fluct/errors.hpp"

namespace fluct {

namespace {

constexpr cplx kI{0.0, 1.0};

bool finite_all(std::initializer_list<double> xs) {
  for (double x : xs) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

void validate(const NormalParams& p) {
  if (!finite_all({p.sigma}) || p.sigma <= 0.0) {
    throw InvalidParameter("normal: sigma must be positive");
  }
}

void validate(const KouParams& p) {
  if (!finite_all({p.sigma, p.lambda, p.p, p.eta1, p.eta2})) {
    throw InvalidParameter("kou: parameters must be finite");
  }
  if (p.sigma < 0.0) throw InvalidParameter("kou: sigma must be non-negative");
  if (p.lambda < 0.0) throw InvalidParameter("kou: lambda must be non-negative");
  if (p.p < 0.0 || p.p > 1.0) throw InvalidParameter("kou: p must lie in [0, 1]");
  // eta1 <= 1 makes E[exp(X)] infinite, so no risk-neutral drift exists.
  if (p.eta1 <= 1.0) throw InvalidParameter("kou: eta1 must exceed 1");
  if (p.eta2 <= 0.0) throw InvalidParameter("kou: eta2 must be positive");
}

void validate(const MertonParams& p) {
  if (!finite_all({p.sigma, p.lambda, p.alpha_j, p.delta_j})) {
    throw InvalidParameter("merton: parameters must be finite");
  }
  if (p.sigma < 0.0) throw InvalidParameter("merton: sigma must be non-negative");
  if (p.lambda < 0.0) throw InvalidParameter("merton: lambda must be non-negative");
  if (p.delta_j < 0.0) throw InvalidParameter("merton: delta_j must be non-negative");
}

void validate(const NigParams& p) {
  if (!finite_all({p.alpha, p.beta, p.delta})) {
    throw InvalidParameter("nig: parameters must be finite");
  }
  if (p.alpha <= 0.0) throw InvalidParameter("nig: alpha must be positive");
  if (std::abs(p.beta) >= p.alpha) throw InvalidParameter("nig: |beta| must be below alpha");
  if (p.delta <= 0.0) throw InvalidParameter("nig: delta must be positive");
  if (std::abs(p.beta + 1.0) >= p.alpha) {
    throw InvalidParameter("nig: |beta + 1| must be below alpha for E[exp(X)] to exist");
  }
}

void validate(const VgParams& p) {
  if (!finite_all({p.theta, p.sigma, p.nu})) {
    throw InvalidParameter("vg: parameters must be finite");
  }
  if (p.sigma <= 0.0) throw InvalidParameter("vg: sigma must be positive");
  if (p.nu <= 0.0) throw InvalidParameter("vg: nu must be positive");
  if (1.0 - p.theta * p.nu - 0.5 * p.nu * p.sigma * p.sigma <= 0.0) {
    throw InvalidParameter("vg: 1 - theta*nu - nu*sigma^2/2 must be positive");
  }
}

// Pure-jump/diffusion part of psi with the linear drift term removed.
cplx jump_part(const NormalParams& p, cplx xi) {
  return -0.5 * p.sigma * p.sigma * xi * xi;
}

cplx jump_part(const KouParams& p, cplx xi) {
  const cplx up = p.p * p.eta1 / (p.eta1 - kI * xi);
  const cplx down = (1.0 - p.p) * p.eta2 / (p.eta2 + kI * xi);
  return -0.5 * p.sigma * p.sigma * xi * xi + p.lambda * (up + down - 1.0);
}

cplx jump_part(const MertonParams& p, cplx xi) {
  const cplx jump = std::exp(kI * p.alpha_j * xi - 0.5 * p.delta_j * p.delta_j * xi * xi);
  return -0.5 * p.sigma * p.sigma * xi * xi + p.lambda * (jump - 1.0);
}

cplx jump_part(const NigParams& p, cplx xi) {
  const cplx b = p.beta + kI * xi;
  return p.delta * (std::sqrt(p.alpha * p.alpha - p.beta * p.beta) -
                    std::sqrt(p.alpha * p.alpha - b * b));
}

cplx jump_part(const VgParams& p, cplx xi) {
  const cplx arg = 1.0 - kI * xi * p.theta * p.nu + 0.5 * p.nu * p.sigma * p.sigma * xi * xi;
  return -std::log(arg) / p.nu;
}

bool strip_ok(const NormalParams&, cplx) { return true; }
bool strip_ok(const MertonParams&, cplx) { return true; }

bool strip_ok(const KouParams& p, cplx xi) {
  const double y = xi.imag();
  return y > -p.eta1 && y < p.eta2;
}

bool strip_ok(const NigParams& p, cplx xi) {
  return std::abs(xi.imag() - p.beta) < p.alpha;
}

bool strip_ok(const VgParams& p, cplx xi) {
  // The real part of the log argument is smallest on the imaginary axis.
  const double y = xi.imag();
  return 1.0 + p.theta * p.nu * y - 0.5 * p.nu * p.sigma * p.sigma * y * y > 0.0;
}

}  // namespace

double risk_neutral_drift(const ProcessParams& params, const MarketParams& market) {
  if (!std::isfinite(market.rate) || !std::isfinite(market.dividend)) {
    throw InvalidParameter("market: r and q must be finite");
  }
  return std::visit(
      [&](const auto& p) {
        validate(p);
        // psi(-i) = mu + jump_part(-i) must equal r - q; jump_part(-i) is real.
        return market.rate - market.dividend - jump_part(p, cplx{0.0, -1.0}).real();
      },
      params);
}

LevyModel::LevyModel(ProcessParams params, MarketParams market)
    : params_(std::move(params)), market_(market), drift_(risk_neutral_drift(params_, market_)) {}

std::string_view LevyModel::name() const noexcept {
  static constexpr std::string_view names[] = {"normal", "kou", "merton", "nig", "vg"};
  return names[params_.index()];
}

bool LevyModel::in_strip(cplx xi) const noexcept {
  return std::visit([&](const auto& p) { return strip_ok(p, xi); }, params_);
}

cplx LevyModel::exponent_unchecked(cplx xi) const noexcept {
  return kI * drift_ * xi + std::visit([&](const auto& p) { return jump_part(p, xi); }, params_);
}

cplx LevyModel::char_exponent(cplx xi) const {
  if (!in_strip(xi)) {
    throw DomainError(std::string(name()) + ": Im xi = " + std::to_string(xi.imag()) +
                      " lies outside the analyticity strip");
  }
  return exponent_unchecked(xi);
}

cplx LevyModel::char_function(cplx xi, double t) const {
  if (!(t >= 0.0)) throw DomainError("char_function: t must be non-negative");
  return std::exp(char_exponent(xi) * t);
}

cplx char_exponent(const LevyModel& model, cplx xi) { return model.char_exponent(xi); }

cplx char_function(const LevyModel& model, cplx xi, double t) {
  return model.char_function(xi, t);
}

}  // namespace fluct
