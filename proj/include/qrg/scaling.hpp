#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "qrg/dynamics.hpp"
#include "qrg/rg_flow.hpp"

namespace qrg {

/// Exchange scale used when evaluating step-n dynamics.
///
/// bare_j keeps the exchange at the bare J, so peak times are measured in the
/// natural time unit of the effective model; only g flows. flowed_j inserts
/// the renormalized J_n, giving the peak time of exp(-i H_n t) in absolute
/// units. The scaling exponents below (theta = 1, g_m -> 1 like 1/N) are a
/// property of the bare_j pipeline; with flowed_j the extra factor
/// J_n ~ N^(-1/2) changes the divergence to N^(3/2) and pushes g_m above 1.
enum class ExchangeScale { bare_j, flowed_j };

/// k-th concurrence maximum of the step-n effective model.
struct PeakRecord {
    int n = 0;
    std::uint64_t N = 2;
    double g = 0.0;      // bare field
    int k = 1;
    double t_max = 0.0;
    double c_max = 0.0;
};

/// t_max = (2k-1) pi / (2 J_scale sqrt(1+4 g_n^2)), c_max from the envelope.
PeakRecord t_max_analytic(const Coupling& bare, int n, int k,
                          ExchangeScale scale = ExchangeScale::bare_j);

/// Locates the k-th local maximum of a sampled concurrence series in time
/// order and refines it with a parabola through the three bracketing samples.
/// Throws InvalidInput("insufficient peaks") if the series holds fewer than k.
PeakRecord t_max_numeric(const ConcurrenceSeries& series, int k);

enum class DerivMethod { exact, finite_difference };

/// d t_max^k / d(bare g). The exact method differentiates t_max_analytic via
/// flow_derivatives; finite_difference uses a central difference with
/// relative step 1e-6 and exists as a cross-check.
double dtmax_dg(double bare_g, int n, int k, DerivMethod method,
                double bare_J = 1.0, ExchangeScale scale = ExchangeScale::bare_j);

/// dT/dg sampled on a uniform g-grid at fixed (n, k).
struct DerivativeCurve {
    int n = 0;
    std::uint64_t N = 2;
    int k = 1;
    double bare_J = 1.0;
    ExchangeScale scale = ExchangeScale::bare_j;
    std::vector<double> g;
    std::vector<double> dT_dg;
};

DerivativeCurve derivative_curve(double bare_J, double g_lo, double g_hi, int points,
                                 int n, int k,
                                 DerivMethod method = DerivMethod::exact,
                                 ExchangeScale scale = ExchangeScale::bare_j);

struct Minimum {
    double g_m = 0.0;
    double value = 0.0;
};

/// Coarse argmin over the curve's grid refined by golden-section search on
/// the exact-method derivative until the bracket is narrower than 1e-8.
/// A minimum on the grid boundary raises InvalidInput("... widen range").
Minimum find_minimum(const DerivativeCurve& curve);

/// Golden-section minimizer on [a, b]; f must be unimodal there.
double golden_section_min(const std::function<double(double)>& f, double a, double b,
                          double tol = 1e-8);

/// Least-squares power-law fit in log-log space.
struct ScalingFit {
    double exponent = 0.0;
    double prefactor = 0.0;
    double residual = 0.0;  // RMS deviation in log-log space
    std::vector<std::pair<double, double>> sample;
};

/// Fit of ln|dT/dg at g_m| against ln N; the slope estimates theta = 1/nu.
/// Needs >= 3 samples with strictly increasing N and positive values.
ScalingFit fit_theta(const std::vector<std::pair<double, double>>& samples);

/// Fit of ln(1 - g_m) against ln N; expected slope -1/theta. Rejects g_m >= 1.
ScalingFit fit_gm_drift(const std::vector<std::pair<double, double>>& samples);

/// One transformed point of the finite-size collapse: x = N (g - g_m),
/// y = (dT/dg|_{g_m} - dT/dg) normalized by |dT/dg|_{g_m}|. The dip depth
/// grows like N, so the raw difference cannot collapse across sizes; dividing
/// by the per-curve minimum makes y a pure scaling shape in (-1, 0].
struct CollapsePoint {
    double x = 0.0;
    double y = 0.0;
    std::uint64_t N = 2;
};

struct CollapseCurve {
    std::uint64_t N = 2;
    std::vector<CollapsePoint> points;
};

struct CollapseResult {
    std::vector<CollapseCurve> curves;
    /// sup over the overlapping x-range of |y_a - y_b| for the two largest
    /// sizes, interpolated onto a common grid, divided by the y-range of the
    /// larger curve there.
    double metric = 0.0;
};

CollapseResult collapse(const std::vector<DerivativeCurve>& curves,
                        const std::vector<Minimum>& minima);

} // namespace qrg
