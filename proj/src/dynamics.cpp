#include "qrg/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

namespace qrg {

using std::numbers::pi;
using namespace std::complex_literals;

TwoSiteHamiltonian build_hamiltonian(const Coupling& c) {
    validate(c);
    Mat4 h;
    h << 2.0 * c.g, 0, 0, 1,
         0, 0, 1, 0,
         0, 1, 0, 0,
         1, 0, 0, -2.0 * c.g;
    return {-c.J * h, c};
}

Propagator propagator_analytic(const Coupling& c, double t) {
    validate(c);
    const double root = std::sqrt(1.0 + 4.0 * c.g * c.g);
    const double w = c.J * root;
    Mat4c u = Mat4c::Zero();
    u(0, 0) = std::cos(w * t) + 1i * (2.0 * c.g / root) * std::sin(w * t);
    u(0, 3) = u(3, 0) = 1i * std::sin(w * t) / root;
    u(1, 1) = u(2, 2) = std::cos(c.J * t);
    u(1, 2) = u(2, 1) = 1i * std::sin(c.J * t);
    u(3, 3) = std::conj(u(0, 0));
    return {u, t, c};
}

Propagator propagator_spectral(const Coupling& c, double t) {
    const TwoSiteHamiltonian h = build_hamiltonian(c);
    Eigen::SelfAdjointEigenSolver<Mat4> es(h.matrix);
    Eigen::Vector4cd phases;
    for (int i = 0; i < 4; ++i)
        phases(i) = std::exp(-1i * es.eigenvalues()(i) * t);
    const Mat4c v = es.eigenvectors().cast<std::complex<double>>();
    return {v * phases.asDiagonal() * v.adjoint(), t, c};
}

void validate(const DensityMatrix& rho) {
    const Mat4c& m = rho.matrix;
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
        throw NumericFailure("density matrix: not Hermitian within 1e-12");
    if (std::abs(m.trace() - 1.0) > 1e-12)
        throw NumericFailure("density matrix: trace deviates from 1 beyond 1e-12");
    Eigen::SelfAdjointEigenSolver<Mat4c> es(m, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10)
        throw NumericFailure("density matrix: negative eigenvalue beyond -1e-10");
}

DensityMatrix initial_state() {
    Mat4 m;
    m << 1, 0, 0, 1,
         0, 1, 1, 0,
         0, 1, 1, 0,
         1, 0, 0, 1;
    return {0.25 * m.cast<std::complex<double>>()};
}

DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& u) {
    validate(rho0);
    return {u.matrix * rho0.matrix * u.matrix.adjoint()};
}

namespace {

const Mat4 kSpinFlip = [] {
    // sigma_y (x) sigma_y, real in the z-basis
    Mat4 s;
    s <<  0, 0, 0, -1,
          0, 0, 1,  0,
          0, 1, 0,  0,
         -1, 0, 0,  0;
    return s;
}();

} // namespace

double concurrence_wootters(const DensityMatrix& rho) {
    validate(rho);
    const Mat4c rho_tilde = kSpinFlip * rho.matrix.conjugate() * kSpinFlip;
    Eigen::ComplexEigenSolver<Mat4c> es(rho.matrix * rho_tilde, false);

    double nu[4];
    double nu_max = 0.0;
    for (int i = 0; i < 4; ++i) {
        const std::complex<double> ev = es.eigenvalues()(i);
        if (std::abs(ev.imag()) > 1e-10)
            throw NumericFailure("concurrence: eigenvalue of rho*rho_tilde has imaginary part " +
                                 std::to_string(ev.imag()));
        if (ev.real() < -1e-10)
            throw NumericFailure("concurrence: eigenvalue of rho*rho_tilde below -1e-10: " +
                                 std::to_string(ev.real()));
        nu[i] = std::max(ev.real(), 0.0);
        nu_max = std::max(nu_max, nu[i]);
    }
    // The square root amplifies O(eps) solver noise on an exactly-zero
    // eigenvalue into O(1e-8); values at roundoff scale count as zero.
    double lam[4];
    for (int i = 0; i < 4; ++i)
        lam[i] = nu[i] < 1e-13 * nu_max ? 0.0 : std::sqrt(nu[i]);
    std::sort(lam, lam + 4, std::greater<>{});
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double concurrence_closed_form(const Coupling& c, double t) {
    validate(c);
    const double amp = 4.0 * c.g / (1.0 + 4.0 * c.g * c.g);
    const double s = std::sin(std::sqrt(1.0 + 4.0 * c.g * c.g) * c.J * t);
    const double s2 = s * s;
    const double inner = std::max(0.0, 1.0 - amp * amp * s2 * s2);
    return 0.5 * (1.0 - std::sqrt(inner));
}

double concurrence_envelope(double g) {
    // 1 - amp^2 == ((1-4g^2)/(1+4g^2))^2 exactly, so no cancellation here
    const double d = 1.0 + 4.0 * g * g;
    return 0.5 * (1.0 - std::abs(1.0 - 4.0 * g * g) / d);
}

double period(const Coupling& c) {
    validate(c);
    return 2.0 * pi / (c.J * std::sqrt(1.0 + 4.0 * c.g * c.g));
}

ConcurrenceSeries concurrence_series(const Coupling& c, double t_end, int points,
                                     int rg_step) {
    validate(c);
    if (points < 2)
        throw InvalidInput("concurrence_series: points must be >= 2");
    if (!(t_end > 0.0))
        throw InvalidInput("concurrence_series: t_end must be positive");
    const double t_period = period(c);
    const double spacing = t_end / (points - 1);
    if (spacing > t_period / kMinPointsPerPeriod)
        throw InvalidInput("concurrence_series: grid under-resolved; need at least " +
                           std::to_string(static_cast<long>(
                               std::ceil(kMinPointsPerPeriod * t_end / t_period)) + 1) +
                           " points for t_end = " + std::to_string(t_end));
    ConcurrenceSeries series;
    series.coupling = c;
    series.rg_step = rg_step;
    series.times.resize(points);
    series.values.resize(points);
    for (int i = 0; i < points; ++i) {
        series.times[i] = spacing * i;
        series.values[i] = concurrence_closed_form(c, series.times[i]);
    }
    return series;
}

} // namespace qrg
