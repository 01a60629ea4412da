#pragma once

#include <complex>
#include <string_view>
#include <variant>

namespace fluct {

using cplx = std::complex<double>;

struct MarketParams {
  double rate = 0.0;      // r, continuously compounded, per year
  double dividend = 0.0;  // q, continuous dividend yield, per year
};

struct NormalParams {
  double sigma = 0.0;
};

// Kou double-exponential jumps: up-jumps with probability p and decay eta1,
// down-jumps with decay eta2.
struct KouParams {
  double sigma = 0.0;
  double lambda = 0.0;
  double p = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
};

// Merton log-normal jumps with mean alpha_j and standard deviation delta_j.
struct MertonParams {
  double sigma = 0.0;
  double lambda = 0.0;
  double alpha_j = 0.0;
  double delta_j = 0.0;
};

struct NigParams {
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;
};

struct VgParams {
  double theta = 0.0;
  double sigma = 0.0;
  double nu = 0.0;
};

using ProcessParams =
    std::variant<NormalParams, KouParams, MertonParams, NigParams, VgParams>;

/// Drift mu that makes exp(X_t) grow at r - q, i.e. psi(-i) = r - q.
/// Throws InvalidParameter when the parameters violate their invariants or
/// the exponential moment of order one does not exist.
double risk_neutral_drift(const ProcessParams& params, const MarketParams& market);

/// An exponential Levy process under the risk-neutral measure.
///
/// The drift is derived from the market on construction and cannot be set by
/// the caller. Instances are immutable and safe to share across threads.
class LevyModel {
 public:
  LevyModel(ProcessParams params, MarketParams market);

  const ProcessParams& params() const noexcept { return params_; }
  const MarketParams& market() const noexcept { return market_; }
  double drift() const noexcept { return drift_; }
  std::string_view name() const noexcept;

  /// True when xi lies inside the open strip on which psi is analytic.
  bool in_strip(cplx xi) const noexcept;

  /// psi(xi). Throws DomainError outside the analyticity strip.
  cplx char_exponent(cplx xi) const;

  /// exp(psi(xi) t) for t >= 0.
  cplx char_function(cplx xi, double t) const;

 private:
  cplx exponent_unchecked(cplx xi) const noexcept;

  ProcessParams params_;
  MarketParams market_;
  double drift_;
};

cplx char_exponent(const LevyModel& model, cplx xi);
cplx char_function(const LevyModel& model, cplx xi, double t);

}  // namespace fluct
