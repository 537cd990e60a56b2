#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace coh {

using cplx = std::complex<double>;
using Mat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;

// Validation tolerances for state carriers.
constexpr double kHermTol = 1e-12;
constexpr double kTraceTol = 1e-12;
constexpr double kPsdTol = 1e-10;

/// Pauli matrix sigma_j, with sigma_0 the 2x2 identity.
Mat pauli(int index);

/// Kronecker product, block convention (a(x)b)[i*db+k, j*db+l] = a(i,j)*b(k,l).
/// Product dimension must not exceed 64.
Mat tensor(const Mat& a, const Mat& b);

/// n-fold Kronecker power of a.
Mat tensor_power(const Mat& a, int n);

struct EigResult {
    RVec values;   // ascending
    Mat vectors;   // orthonormal columns, same order
};

/// Eigendecomposition of a Hermitian matrix (checked to 1e-10).
EigResult eig_hermitian(const Mat& m);

/// Hermitian, unit-trace, PSD matrix of dimension 2^N, N <= 6.
/// Invariants are checked at construction; violations throw.
class DensityMatrix {
public:
    explicit DensityMatrix(Mat m);
    const Mat& mat() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    int n_qubits() const;

private:
    Mat m_;
};

struct BlochVector {
    double n1 = 0.0;
    double n2 = 0.0;
    double n3 = 0.0;
    double norm() const;
};

/// rho = (I + sum_j n_j sigma_j) / 2. Requires |n| <= 1.
DensityMatrix bloch_to_density(const BlochVector& n);
BlochVector density_to_bloch(const DensityMatrix& rho);

/// Von Neumann entropy in bits. Eigenvalues below 1e-14 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

/// (1/2) Tr |rho - tau|.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& tau);

/// S(rho||tau) in bits. Returns +infinity when supp(rho) is not contained
/// in supp(tau); the sentinel is an ordinary value, never thrown.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& tau);

/// sqrt(2 - 2 sqrt(F)) with F the Uhlmann fidelity.
double bures_distance(const DensityMatrix& rho, const DensityMatrix& tau);

/// Principal square root of a PSD Hermitian matrix; eigenvalues in
/// [-1e-10, 0) are clamped to zero.
Mat matrix_sqrt_psd(const Mat& h);

/// Trace out the qubits listed in `traced` (qubit 0 = leftmost tensor factor).
Mat partial_trace(const Mat& m, int n_qubits, const std::vector<int>& traced);

/// Partial transpose over the second qubit of a two-qubit matrix.
Mat partial_transpose_second(const Mat& m);

/// |beta_x^+-> = (|x> +- |~x>)/sqrt(2), ~x the bitwise complement on N bits.
/// Requires x < ~x (leading bit of x is 0). sign is +1 or -1.
CVec beta_vector(int n_qubits, int x, int sign);

/// Parity of basis label x under sigma_3^(x)N: popcount(x) mod 2.
int parity_z(int x);

}  // namespace coh
