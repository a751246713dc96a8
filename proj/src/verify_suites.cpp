#include "qrg/verify_suites.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "qrg/block_rg.hpp"
#include "qrg/dynamics.hpp"

namespace qrg {

namespace {

constexpr double kPropagatorGrid[] = {0.0, 0.25, 0.5, 0.9, 1.0, 1.5, 3.0};
constexpr int kTimesPerPeriod = 50;

SuiteResult make_result(std::string name, double residual, double tol) {
    return {std::move(name), residual, tol, residual < tol};
}

} // namespace

std::vector<SuiteResult> run_verification(
    int grid_points, const std::function<Coupling(const Coupling&)>& rg_closed_form) {
    if (grid_points < 2)
        throw InvalidInput("run_verification: grid_points must be >= 2");
    const auto closed = rg_closed_form
                            ? rg_closed_form
                            : [](const Coupling& c) { return renormalize_step(c); };

    std::vector<SuiteResult> results;

    // 1. RG recursion vs explicit projection
    double rg_dev = 0.0;
    for (int i = 0; i < grid_points; ++i) {
        const double g = 0.1 + (5.0 - 0.1) * i / (grid_points - 1);
        const Coupling projected = effective_couplings({1.0, g});
        const Coupling reference = closed({1.0, g});
        rg_dev = std::max({rg_dev, std::abs(projected.J - reference.J),
                           std::abs(projected.g - reference.g)});
    }
    results.push_back(make_result("rg projection vs closed form", rg_dev, 1e-10));

    // 2. propagator equivalence and unitarity
    double prop_dev = 0.0;
    double unit_dev = 0.0;
    double conc_dev = 0.0;
    const DensityMatrix rho0 = initial_state();
    for (const double g : kPropagatorGrid) {
        const Coupling c{1.0, g};
        const double t_period = period(c);
        for (int i = 0; i < kTimesPerPeriod; ++i) {
            const double t = t_period * i / (kTimesPerPeriod - 1);
            const Propagator ua = propagator_analytic(c, t);
            const Propagator us = propagator_spectral(c, t);
            prop_dev = std::max(prop_dev, (ua.matrix - us.matrix).cwiseAbs().maxCoeff());
            unit_dev = std::max(
                {unit_dev,
                 (ua.matrix * ua.matrix.adjoint() - Mat4c::Identity()).norm(),
                 (us.matrix * us.matrix.adjoint() - Mat4c::Identity()).norm()});
            const double pipeline = concurrence_wootters(evolve(rho0, ua));
            conc_dev = std::max(conc_dev,
                                std::abs(pipeline - concurrence_closed_form(c, t)));
        }
    }
    results.push_back(make_result("propagator analytic vs spectral", prop_dev, 1e-10));
    results.push_back(make_result("propagator unitarity", unit_dev, 1e-12));
    results.push_back(make_result("concurrence closed form vs pipeline", conc_dev, 1e-9));

    // 3. randomized two-site end-to-end residual (fixed seed, deterministic)
    std::mt19937 rng(20240811u);
    std::uniform_real_distribution<double> g_draw(0.0, 3.0);
    std::uniform_real_distribution<double> t_draw(0.0, 10.0);
    double two_site_dev = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double g = g_draw(rng);
        const double t = t_draw(rng);
        two_site_dev = std::max(two_site_dev, exact_two_site_check({1.0, g}, t));
    }
    results.push_back(make_result("two-site spectral pipeline", two_site_dev, 1e-9));

    return results;
}

bool all_passed(const std::vector<SuiteResult>& results) {
    return std::all_of(results.begin(), results.end(),
                       [](const SuiteResult& r) { return r.pass; });
}

} // namespace qrg
