#pragma once

#include <Eigen/Dense>

#include "qrg/rg_flow.hpp"

namespace qrg {

/// Exact eigensystem of one two-site block h^B = -J (sx sx + g sz_1).
/// The field acts on site 1 only; site 2's field lives in the inter-block part.
struct BlockSolution {
    Eigen::Vector4d ground_state;   // psi0, mapped to the renormalized |up>
    Eigen::Vector4d first_excited;  // psi1, mapped to the renormalized |down>
    double e0 = 0.0;
    double e1 = 0.0;
    Coupling coupling;
};

/// Block Hamiltonian as a 4x4 matrix in the z-basis.
Eigen::Matrix4d block_hamiltonian(const Coupling& c);

/// Diagonalizes the block exactly and returns the two lowest states in the
/// canonical gauge (see canonical_ground_pair). The ground doublet of this
/// block is degenerate for every g, so the gauge fix is load-bearing.
BlockSolution solve_block(const Coupling& c);

/// Canonical basis of the two-dimensional lowest subspace: the block
/// Hamiltonian commutes with the parity sz(x)sz, and the kept doublet holds
/// one state of each parity. Recombines an arbitrary orthonormal basis of
/// that span into (even, odd) parity eigenstates and fixes each sign so the
/// largest-magnitude component is positive. Any input basis of the same span
/// yields the same pair.
Eigen::Matrix<double, 4, 2> canonical_ground_pair(const Eigen::Matrix<double, 4, 2>& basis);

/// Result of projecting the two-block (four-site) chain onto the kept states.
struct ProjectionResult {
    Coupling renormalized;
    double off_pattern_residual = 0.0;  // largest Pauli coefficient outside {II, xx, zI, Iz}
    double field_asymmetry = 0.0;       // |c_zI - c_Iz|
};

/// Builds the four-site Hamiltonian H^B + H^BB, projects it with P0 (x) P0,
/// and pattern-matches the result onto -J'(sx sx + g'(sz_1 + sz_2)) + const.
/// Throws NumericFailure if the projected operator is not of that form.
ProjectionResult project_block_pair(const Coupling& c);

/// The renormalized coupling extracted by explicit projection. Must agree
/// with renormalize_step to 1e-10 in both components.
Coupling effective_couplings(const Coupling& c);

/// End-to-end N=2 consistency: evolves rho(0) with the spectral propagator
/// and returns |concurrence_wootters - concurrence_closed_form| at (c, t).
double exact_two_site_check(const Coupling& c, double t);

} // namespace qrg
