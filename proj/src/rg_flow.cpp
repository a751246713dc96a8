#include "qrg/rg_flow.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace qrg {

void validate(const Coupling& c) {
    if (!std::isfinite(c.J) || !std::isfinite(c.g))
        throw InvalidInput("coupling: J and g must be finite");
    if (!(c.J > 0.0))
        throw InvalidInput("coupling: J must be positive, got " + std::to_string(c.J));
    if (c.g < 0.0)
        throw InvalidInput("coupling: g must be non-negative, got " + std::to_string(c.g));
}

double j_ratio(double g) {
    return 1.0 / std::sqrt(1.0 + g * g);
}

double j_ratio_q_form(double g) {
    const double q = g + std::sqrt(g * g + 1.0);
    return 2.0 * q / (1.0 + q * q);
}

Coupling renormalize_step(const Coupling& c) {
    validate(c);
    return {c.J * j_ratio(c.g), c.g * c.g};
}

namespace {

void check_flow_step(const Coupling& next, int step, double bare_g) {
    if (!std::isfinite(next.g) || !std::isfinite(next.J) || next.J <= 0.0)
        throw FlowOverflow("flow: couplings left the representable range at step " +
                           std::to_string(step) + " (bare g = " + std::to_string(bare_g) +
                           "); reduce the step count or the field");
}

} // namespace

RgTrajectory flow(const Coupling& bare, int n_max) {
    validate(bare);
    if (n_max < 0)
        throw InvalidInput("flow: n_max must be >= 0");
    RgTrajectory traj;
    traj.bare = bare;
    traj.steps.reserve(static_cast<std::size_t>(n_max) + 1);
    traj.steps.push_back(bare);
    for (int n = 0; n < n_max; ++n) {
        Coupling next{traj.steps.back().J * j_ratio(traj.steps.back().g),
                      traj.steps.back().g * traj.steps.back().g};
        check_flow_step(next, n + 1, bare.g);
        traj.steps.push_back(next);
    }
    return traj;
}

std::uint64_t effective_size(int n) {
    if (n < 0)
        throw InvalidInput("effective_size: n must be >= 0");
    if (n >= 63)
        throw InvalidInput("effective_size: 2^(n+1) exceeds 64-bit range for n = " +
                           std::to_string(n));
    return std::uint64_t{1} << (n + 1);
}

FlowDerivatives flow_derivatives(const Coupling& bare, int n) {
    validate(bare);
    if (n < 0)
        throw InvalidInput("flow_derivatives: n must be >= 0");
    double J = bare.J;
    double g = bare.g;
    double dJ = 0.0;
    double dg = 1.0;
    for (int m = 0; m < n; ++m) {
        const double s = std::sqrt(1.0 + g * g);
        const double dJ_next = dJ / s - J * g / (s * s * s) * dg;
        const double dg_next = 2.0 * g * dg;
        J /= s;
        g *= g;
        check_flow_step({J, g}, m + 1, bare.g);
        dJ = dJ_next;
        dg = dg_next;
        if (!std::isfinite(dg) || !std::isfinite(dJ))
            throw FlowOverflow("flow_derivatives: derivative overflow at step " +
                               std::to_string(m + 1));
    }
    return {dJ, dg};
}

} // namespace qrg
