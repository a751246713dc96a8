#pragma once

#include <cstdint>
#include <vector>

#include "qrg/errors.hpp"

namespace qrg {

/// Exchange energy J and dimensionless transverse field g of the chain
/// (or of the effective two-site model after some number of RG steps).
struct Coupling {
    double J = 1.0;
    double g = 0.0;
};

/// Throws InvalidInput unless J > 0, g >= 0 and both are finite.
void validate(const Coupling& c);

/// Ratio J'/J of one decimation step, closed form 1/sqrt(1+g^2).
double j_ratio(double g);

/// Same ratio in the form 2q/(1+q^2) with q = g + sqrt(g^2+1).
/// Algebraically identical to j_ratio; kept as an independent expression.
double j_ratio_q_form(double g);

/// One RG decimation step: (J, g) -> (J/sqrt(1+g^2), g^2).
Coupling renormalize_step(const Coupling& c);

/// Couplings along the RG flow, steps[n] for n = 0..n_max, steps[0] == bare.
struct RgTrajectory {
    Coupling bare;
    std::vector<Coupling> steps;
};

/// Iterates renormalize_step n_max times. Throws FlowOverflow as soon as a
/// step leaves the representable range (g > 1 squares its way to infinity).
RgTrajectory flow(const Coupling& bare, int n_max);

/// Chain length represented by the two-site model after n steps: N = 2^(n+1).
std::uint64_t effective_size(int n);

/// Derivatives of the step-n couplings with respect to the bare field.
struct FlowDerivatives {
    double dJn_dg = 0.0;
    double dgn_dg = 1.0;
};

/// Exact chain-rule derivatives accumulated along the flow:
///   dg_{m+1}/dg = 2 g_m dg_m/dg            (so dg_n/dg = 2^n g^(2^n - 1))
///   dJ_{m+1}/dg = dJ_m/dg (1+g_m^2)^(-1/2) - J_m g_m (1+g_m^2)^(-3/2) dg_m/dg
/// Same overflow behaviour as flow().
FlowDerivatives flow_derivatives(const Coupling& bare, int n);

} // namespace qrg
