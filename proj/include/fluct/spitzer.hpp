#pragma once

#include <span>
#include <vector>

#include "fluct/filter.hpp"
#include "fluct/fourier_grid.hpp"
#include "fluct/hilbert.hpp"
#include "fluct/levy.hpp"

namespace fluct {

/// Samples of s - psi(xi + i damping) on the grid (continuous monitoring).
/// Requires Re s > 0; throws DomainError otherwise or on a strip violation.
Spectrum build_symbol_continuous(const LevyModel& model, double damping, const FourierGrid& grid,
                                 cplx s);

/// Samples of 1 - q Psi(xi + i damping, dt) on the grid (monitoring every dt).
/// Requires |q| < 1 and dt > 0.
Spectrum build_symbol_discrete(const LevyModel& model, double damping, const FourierGrid& grid,
                               cplx q, double dt);

/// A symbol together with its Wiener-Hopf factors, tagged by the Laplace
/// abscissa s or z-node q it was built for.
struct FactorisedSymbol {
  cplx node;
  Spectrum symbol;
  Spectrum plus;
  Spectrum minus;
};

FactorisedSymbol factorise_symbol(Spectrum symbol, cplx node);

struct FixedPointControls {
  double tolerance = 1e-12;  // max-norm change of successive iterates
  int max_iterations = 5;

  void validate() const;
};

/// Transform-domain law of the process constrained by the barrier(s), at one
/// node s (or q).
struct SpitzerOutput {
  cplx node;
  Spectrum transform;
  int iterations = 0;
  bool converged = true;
  /// Max-norm change between successive iterates (double barrier only).
  std::vector<double> residuals;
};

/// Down-and-out identity: P = filter / Phi_-, transform = P_{l+} / Phi_+.
SpitzerOutput single_barrier_identity(const FactorisedSymbol& fs, const BarrierShift& lower,
                                      std::span<const double> filter);
SpitzerOutput single_barrier_identity(const FactorisedSymbol& fs, double lower,
                                      const FilterSpec& filter);

/// Two-barrier exit identity solved by the fixed-point iteration
///
///   J_{l-} <- [filter (1 - Phi_+ J_{u+}) / Phi_-]_{l-}
///   J_{u+} <- [filter (1 - Phi_- J_{l-}) / Phi_+]_{u+}
///   transform = filter (1 - Phi_- J_{l-} - Phi_+ J_{u+}) / Phi
///
/// starting from J = 0. Stops when the transform changes by less than the
/// tolerance or after max_iterations sweeps; hitting the cap is reported in
/// `converged`, not thrown.
SpitzerOutput double_barrier_identity(const FactorisedSymbol& fs, const BarrierShift& lower,
                                      const BarrierShift& upper, std::span<const double> filter,
                                      const FixedPointControls& controls);
SpitzerOutput double_barrier_identity(const FactorisedSymbol& fs, double lower, double upper,
                                      const FilterSpec& filter,
                                      const FixedPointControls& controls);

}  // namespace fluct
