#include "coh/m3.hpp"

#include <cmath>
#include <stdexcept>

namespace coh {

namespace {

int half_sign(int n_qubits) { return (n_qubits / 2) % 2 == 0 ? 1 : -1; }

Mat m3_matrix(const M3Triple& c) {
    const int dim = 1 << c.n_qubits;
    Mat m = Mat::Identity(dim, dim);
    m += c.c1 * tensor_power(pauli(1), c.n_qubits);
    m += c.c2 * tensor_power(pauli(2), c.n_qubits);
    m += c.c3 * tensor_power(pauli(3), c.n_qubits);
    return m / static_cast<double>(dim);
}

double closed_form_eigenvalue(const M3Triple& c, int sign, int p) {
    const int ps = p == 0 ? 1 : -1;
    return (1.0 + sign * c.c1 + sign * half_sign(c.n_qubits) * ps * c.c2 +
            ps * c.c3) /
           static_cast<double>(1 << c.n_qubits);
}

}  // namespace

bool m3_is_valid(const M3Triple& c, double tol) {
    if (c.n_qubits < 1 || c.n_qubits > 6) return false;
    if (std::abs(c.c1) > 1.0 + tol || std::abs(c.c2) > 1.0 + tol ||
        std::abs(c.c3) > 1.0 + tol)
        return false;
    if (c.n_qubits % 2 == 0) {
        for (int sign : {+1, -1})
            for (int p : {0, 1})
                if (closed_form_eigenvalue(c, sign, p) < -tol) return false;
        return true;
    }
    // Odd N: the closed-form spectrum does not apply; check numerically.
    Eigen::SelfAdjointEigenSolver<Mat> solver(m3_matrix(c), Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -std::max(tol, 1e-12);
}

DensityMatrix m3_state(const M3Triple& c) {
    if (!m3_is_valid(c, kPsdTol))
        throw std::invalid_argument("m3_state: triple is not a valid state");
    return DensityMatrix(m3_matrix(c));
}

DensityMatrix m3_incoherent(double s, int n_qubits) {
    return m3_state({0.0, 0.0, s, n_qubits});
}

M3Triple extract_triple(const DensityMatrix& rho) {
    const int n = rho.n_qubits();
    M3Triple c;
    c.n_qubits = n;
    c.c1 = (rho.mat() * tensor_power(pauli(1), n)).trace().real();
    c.c2 = (rho.mat() * tensor_power(pauli(2), n)).trace().real();
    c.c3 = (rho.mat() * tensor_power(pauli(3), n)).trace().real();
    return c;
}

M3Eigensystem m3_eigensystem(const M3Triple& c) {
    if (c.n_qubits % 2 != 0)
        throw std::invalid_argument("m3_eigensystem: N must be even");
    const int dim = 1 << c.n_qubits;
    M3Eigensystem out;
    out.values.resize(dim);
    out.vectors.resize(dim, dim);
    out.parity.resize(dim);
    int col = 0;
    for (int x = 0; x < dim / 2; ++x) {
        const int p = parity_z(x);
        for (int sign : {+1, -1}) {
            out.values(col) = closed_form_eigenvalue(c, sign, p);
            out.vectors.col(col) = beta_vector(c.n_qubits, x, sign);
            out.parity[col] = p;
            ++col;
        }
    }
    return out;
}

M3Triple evolve_triple(const M3Triple& c, int flip_axis, double q) {
    if (flip_axis < 1 || flip_axis > 3)
        throw std::invalid_argument("evolve_triple: flip axis must be in 1..3");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument("evolve_triple: q must lie in [0,1]");
    const double shrink = std::pow(1.0 - q, c.n_qubits);
    M3Triple out = c;
    if (flip_axis != 1) out.c1 *= shrink;
    if (flip_axis != 2) out.c2 *= shrink;
    if (flip_axis != 3) out.c3 *= shrink;
    return out;
}

M3Triple freezing_triple(double c1, double c3, int n_qubits) {
    if (n_qubits % 2 != 0)
        throw std::invalid_argument("freezing_triple: N must be even");
    M3Triple c{c1, half_sign(n_qubits) * c1 * c3, c3, n_qubits};
    if (!m3_is_valid(c, kPsdTol))
        throw std::invalid_argument("freezing_triple: triple is not a valid state");
    return c;
}

bool is_frozen_family(const M3Triple& c, double tol) {
    if (c.n_qubits % 2 != 0) return false;
    return std::abs(c.c2 - half_sign(c.n_qubits) * c.c1 * c.c3) <= tol;
}

double threshold_q_star(const M3Triple& c) {
    const double a1 = std::abs(c.c1), a3 = std::abs(c.c3);
    if (a1 == 0.0) return 1.0;
    if (a3 < a1) return 0.0;
    return 1.0 - std::pow(a1 / a3, 1.0 / c.n_qubits);
}

DensityMatrix standard_form_state(const StandardFormState& p) {
    const Mat id = pauli(0);
    Mat m = tensor(id, id);
    const double x[3] = {p.x1, p.x2, p.x3};
    const double y[3] = {p.y1, p.y2, p.y3};
    const double T[3] = {p.T11, p.T22, p.T33};
    for (int j = 0; j < 3; ++j) {
        m += x[j] * tensor(pauli(j + 1), id);
        m += y[j] * tensor(id, pauli(j + 1));
        m += T[j] * tensor(pauli(j + 1), pauli(j + 1));
    }
    return DensityMatrix(m / 4.0);
}

bool l1_freezing_predicate(const StandardFormState& p, double tol) {
    return std::abs(p.x2) <= tol && std::abs(p.y2) <= tol &&
           std::abs(p.T22) <= std::abs(p.T11) + tol;
}

bool is_ppt_separable(const DensityMatrix& rho) {
    if (rho.dim() != 4)
        throw std::invalid_argument("is_ppt_separable: expected two qubits");
    Eigen::SelfAdjointEigenSolver<Mat> solver(partial_transpose_second(rho.mat()),
                                              Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff() >= -1e-10;
}

}  // namespace coh
