#pragma once

#include <Eigen/Dense>
#include <vector>

#include "qrg/rg_flow.hpp"

namespace qrg {

using Mat4 = Eigen::Matrix4d;
using Mat4c = Eigen::Matrix4cd;

// Basis order throughout: |uu>, |ud>, |du>, |dd> (z-basis).

/// Two-site Hamiltonian  H = -J [[2g,0,0,1],[0,0,1,0],[0,1,0,0],[1,0,0,-2g]].
struct TwoSiteHamiltonian {
    Mat4 matrix;
    Coupling coupling;
};

TwoSiteHamiltonian build_hamiltonian(const Coupling& c);

/// Time-evolution operator U(t) = exp(-i H t).
struct Propagator {
    Mat4c matrix;
    double time = 0.0;
    Coupling coupling;
};

/// Closed-form propagator. With w = J sqrt(1+4g^2):
///   U11 = cos(wt) + i (2g/sqrt(1+4g^2)) sin(wt),  U44 = conj(U11),
///   U14 = U41 = i sin(wt)/sqrt(1+4g^2),
///   U22 = U33 = cos(Jt),  U23 = U32 = i sin(Jt),  all other entries zero.
Propagator propagator_analytic(const Coupling& c, double t);

/// Independent route: U = V exp(-i diag(E) t) V^T from the exact
/// eigendecomposition of the real symmetric Hamiltonian.
Propagator propagator_spectral(const Coupling& c, double t);

struct DensityMatrix {
    Mat4c matrix;
};

/// Throws NumericFailure unless Hermitian (1e-12), unit trace (1e-12),
/// eigenvalues >= -1e-10.
void validate(const DensityMatrix& rho);

/// Equal mixture of the two fully x-polarized product states:
/// rho(0) = 1/4 [[1,0,0,1],[0,1,1,0],[0,1,1,0],[1,0,0,1]].
DensityMatrix initial_state();

/// rho(t) = U rho U^dag.
DensityMatrix evolve(const DensityMatrix& rho0, const Propagator& u);

/// Wootters concurrence of an arbitrary two-qubit state, in [0,1].
/// Eigenvalues nu_i of rho*rho_tilde with rho_tilde = (sy(x)sy) conj(rho) (sy(x)sy);
/// C = max{0, l1-l2-l3-l4} with l_i = sqrt(nu_i) sorted descending.
double concurrence_wootters(const DensityMatrix& rho);

/// Closed form C(t) = 1/2 [1 - sqrt(1 - (4g/(1+4g^2))^2 sin^4(sqrt(1+4g^2) J t))].
double concurrence_closed_form(const Coupling& c, double t);

/// max_t C(t) = 1/2 [1 - |1-4g^2|/(1+4g^2)]; equals 4g^2/(1+4g^2) for g <= 1/2
/// and 1/(1+4g^2) above. Peaks at g = 1/2 with value 1/2.
double concurrence_envelope(double g);

/// Oscillation period T = 2 pi / (J sqrt(1+4g^2)).
double period(const Coupling& c);

struct ConcurrenceSeries {
    std::vector<double> times;
    std::vector<double> values;
    Coupling coupling;
    int rg_step = 0;
};

/// Closed-form concurrence on a uniform grid over [0, t_end]. The grid must
/// resolve at least kMinPointsPerPeriod samples per period or the call is
/// rejected with InvalidInput. rg_step is carried as a label only.
ConcurrenceSeries concurrence_series(const Coupling& c, double t_end, int points,
                                     int rg_step = 0);

inline constexpr double kMinPointsPerPeriod = 200.0;

} // namespace qrg
