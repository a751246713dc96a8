#include "qrg/block_rg.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <string>

#include "qrg/dynamics.hpp"

namespace qrg {

namespace {

using Eigen::Matrix2d;
using Eigen::MatrixXd;
using Mat2c = Eigen::Matrix2cd;
using MatXc = Eigen::MatrixXcd;

const Matrix2d kSx = (Matrix2d() << 0, 1, 1, 0).finished();
const Matrix2d kSz = (Matrix2d() << 1, 0, 0, -1).finished();
const Matrix2d kI2 = Matrix2d::Identity();

MatrixXd kron(const MatrixXd& a, const MatrixXd& b) {
    MatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

MatXc kron_c(const MatXc& a, const MatXc& b) {
    MatXc out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

// Pauli sigma^a on site `site` of a chain of `sites` spins.
MatrixXd site_operator(const Matrix2d& op, int site, int sites) {
    MatrixXd out = MatrixXd::Identity(1, 1);
    for (int s = 0; s < sites; ++s)
        out = kron(out, s == site ? op : kI2);
    return out;
}

void fix_sign(Eigen::Vector4d& v) {
    Eigen::Index largest = 0;
    v.cwiseAbs().maxCoeff(&largest);
    if (v(largest) < 0.0)
        v = -v;
}

} // namespace

Eigen::Matrix4d block_hamiltonian(const Coupling& c) {
    validate(c);
    return -c.J * (kron(kSx, kSx) + c.g * kron(kSz, kI2));
}

Eigen::Matrix<double, 4, 2> canonical_ground_pair(const Eigen::Matrix<double, 4, 2>& basis) {
    const Eigen::Vector4d parity(1.0, -1.0, -1.0, 1.0);  // sz (x) sz diagonal
    const Matrix2d overlap = basis.transpose() * parity.asDiagonal() * basis;
    Eigen::SelfAdjointEigenSolver<Matrix2d> es(overlap);
    if (std::abs(es.eigenvalues()(0) + 1.0) > 1e-8 || std::abs(es.eigenvalues()(1) - 1.0) > 1e-8)
        throw NumericFailure("canonical_ground_pair: span does not hold one state per parity "
                             "sector; not a valid kept doublet");
    Eigen::Vector4d odd = basis * es.eigenvectors().col(0);
    Eigen::Vector4d even = basis * es.eigenvectors().col(1);
    fix_sign(even);
    fix_sign(odd);
    Eigen::Matrix<double, 4, 2> pair;
    pair.col(0) = even;  // |psi0> -> renormalized up
    pair.col(1) = odd;   // |psi1> -> renormalized down
    return pair;
}

BlockSolution solve_block(const Coupling& c) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(block_hamiltonian(c));
    const auto pair = canonical_ground_pair(es.eigenvectors().leftCols<2>());
    BlockSolution sol;
    sol.ground_state = pair.col(0);
    sol.first_excited = pair.col(1);
    sol.e0 = es.eigenvalues()(0);
    sol.e1 = es.eigenvalues()(1);
    sol.coupling = c;
    return sol;
}

ProjectionResult project_block_pair(const Coupling& c) {
    const BlockSolution block = solve_block(c);
    Eigen::Matrix<double, 4, 2> t;
    t.col(0) = block.ground_state;
    t.col(1) = block.first_excited;

    // Two blocks, four sites, open segment: both block Hamiltonians plus the
    // inter-block bond x2 x3 and the site-2 field of each block (sites 1, 3).
    const Eigen::Matrix4d hb = block_hamiltonian(c);
    MatrixXd h4 = kron(hb, MatrixXd::Identity(4, 4)) + kron(MatrixXd::Identity(4, 4), hb);
    h4 += -c.J * (site_operator(kSx, 1, 4) * site_operator(kSx, 2, 4));
    h4 += -c.J * c.g * (site_operator(kSz, 1, 4) + site_operator(kSz, 3, 4));

    const MatrixXd projector = kron(t, t);  // 16 x 4
    const MatrixXd h_eff = projector.transpose() * h4 * projector;

    // Pauli decomposition c_ab = tr[(sigma_a (x) sigma_b) H_eff] / 4
    const Mat2c sy = (Mat2c() << 0.0, std::complex<double>(0, -1),
                      std::complex<double>(0, 1), 0.0).finished();
    const std::array<Mat2c, 4> paulis = {kI2.cast<std::complex<double>>(),
                                         kSx.cast<std::complex<double>>(), sy,
                                         kSz.cast<std::complex<double>>()};
    std::complex<double> coef[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            coef[a][b] = (kron_c(paulis[a], paulis[b]) *
                          h_eff.cast<std::complex<double>>()).trace() / 4.0;

    const double scale = std::max(1.0, h_eff.cwiseAbs().maxCoeff());
    double off_pattern = 0.0;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            const bool allowed = (a == 0 && b == 0) || (a == 1 && b == 1) ||
                                 (a == 3 && b == 0) || (a == 0 && b == 3);
            if (!allowed)
                off_pattern = std::max(off_pattern, std::abs(coef[a][b]));
        }
    ProjectionResult result;
    result.off_pattern_residual = off_pattern;
    result.field_asymmetry = std::abs(coef[3][0] - coef[0][3]);
    if (off_pattern > 1e-10 * scale || result.field_asymmetry > 1e-10 * scale)
        throw NumericFailure("project_block_pair: projected Hamiltonian is not of the "
                             "transverse-field Ising form (residual " +
                             std::to_string(off_pattern) + ")");

    const double j_eff = -coef[1][1].real();
    if (!(j_eff > 0.0))
        throw NumericFailure("project_block_pair: extracted exchange is not positive");
    const double g_eff = -0.5 * (coef[3][0] + coef[0][3]).real() / j_eff;
    result.renormalized = {j_eff, g_eff};
    return result;
}

Coupling effective_couplings(const Coupling& c) {
    return project_block_pair(c).renormalized;
}

double exact_two_site_check(const Coupling& c, double t) {
    const DensityMatrix rho_t = evolve(initial_state(), propagator_spectral(c, t));
    return std::abs(concurrence_wootters(rho_t) - concurrence_closed_form(c, t));
}

} // namespace qrg
