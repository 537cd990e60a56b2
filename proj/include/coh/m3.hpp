#pragma once

#include "coh/linalg.hpp"

#include <vector>

namespace coh {

/// N-qubit state with maximally mixed marginals,
/// rho = 2^-N (I^(x)N + sum_i c_i sigma_i^(x)N).
struct M3Triple {
    double c1 = 0.0;
    double c2 = 0.0;
    double c3 = 0.0;
    int n_qubits = 2;
};

/// PSD validity. For even N this evaluates the closed-form spectrum; for odd
/// N the constructed matrix is checked numerically.
bool m3_is_valid(const M3Triple& c, double tol = 1e-12);

DensityMatrix m3_state(const M3Triple& c);

/// Incoherent member of the family: 2^-N (I^(x)N + s sigma_3^(x)N).
DensityMatrix m3_incoherent(double s, int n_qubits);

/// Correlation triple c_i = Tr[rho sigma_i^(x)N].
M3Triple extract_triple(const DensityMatrix& rho);

struct M3Eigensystem {
    RVec values;                // per column of vectors
    Mat vectors;                // |beta_x^+->, columns
    std::vector<int> parity;    // parity p of each column under sigma_3^(x)N
};

/// Closed-form spectrum lambda_p^+- with eigenvectors (|x> +- |~x>)/sqrt(2).
/// Even N only.
M3Eigensystem m3_eigensystem(const M3Triple& c);

/// Closed-form evolution under N local k-flip channels:
/// c_k fixed, the other two components scaled by (1-q)^N.
M3Triple evolve_triple(const M3Triple& c, int flip_axis, double q);

/// Triple (c1, (-1)^(N/2) c1 c3, c3) satisfying the even-N freezing condition.
M3Triple freezing_triple(double c1, double c3, int n_qubits);

/// |c2 - (-1)^(N/2) c1 c3| <= tol.
bool is_frozen_family(const M3Triple& c, double tol = 1e-9);

/// Largest q with |c3|(1-q)^N >= |c1| under bit flip evolution.
double threshold_q_star(const M3Triple& c);

/// Two-qubit standard form: local Bloch components plus diagonal correlation
/// tensor, rho = (I + sum x_j sigma_j(x)I + sum y_j I(x)sigma_j
///                  + sum T_jj sigma_j(x)sigma_j) / 4.
struct StandardFormState {
    double x1 = 0, x2 = 0, x3 = 0;
    double y1 = 0, y2 = 0, y3 = 0;
    double T11 = 0, T22 = 0, T33 = 0;
};

DensityMatrix standard_form_state(const StandardFormState& p);

/// l1-norm freezing set under local bit flips: x2 = y2 = 0 and |T22| <= |T11|.
bool l1_freezing_predicate(const StandardFormState& p, double tol = 1e-9);

/// PPT verdict; necessary and sufficient for separability of two qubits.
bool is_ppt_separable(const DensityMatrix& rho);

}  // namespace coh
