#include "coh/linalg.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace coh {

namespace {

bool is_power_of_two(int x) { return x > 0 && (x & (x - 1)) == 0; }

double herm_defect(const Mat& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

}  // namespace

Mat pauli(int index) {
    Mat m(2, 2);
    switch (index) {
        case 0:
            m << 1, 0, 0, 1;
            break;
        case 1:
            m << 0, 1, 1, 0;
            break;
        case 2:
            m << 0, cplx(0, -1), cplx(0, 1), 0;
            break;
        case 3:
            m << 1, 0, 0, -1;
            break;
        default:
            throw std::invalid_argument("pauli: index must be in 0..3");
    }
    return m;
}

Mat tensor(const Mat& a, const Mat& b) {
    const auto ra = a.rows(), ca = a.cols(), rb = b.rows(), cb = b.cols();
    if (ra * rb > 64 || ca * cb > 64)
        throw std::invalid_argument("tensor: product dimension exceeds 64");
    Mat out(ra * rb, ca * cb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ca; ++j)
            out.block(i * rb, j * cb, rb, cb) = a(i, j) * b;
    return out;
}

Mat tensor_power(const Mat& a, int n) {
    if (n < 1) throw std::invalid_argument("tensor_power: n must be >= 1");
    Mat out = a;
    for (int i = 1; i < n; ++i) out = tensor(out, a);
    return out;
}

EigResult eig_hermitian(const Mat& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("eig_hermitian: matrix not square");
    if (herm_defect(m) > 1e-10)
        throw std::invalid_argument("eig_hermitian: matrix not Hermitian");
    Eigen::SelfAdjointEigenSolver<Mat> solver((m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eig_hermitian: solver failed");
    return {solver.eigenvalues(), solver.eigenvectors()};
}

DensityMatrix::DensityMatrix(Mat m) : m_(std::move(m)) {
    const int d = static_cast<int>(m_.rows());
    if (m_.cols() != d || !is_power_of_two(d) || d < 2 || d > 64)
        throw std::invalid_argument("DensityMatrix: dimension must be 2^N, N <= 6");
    if (herm_defect(m_) > kHermTol)
        throw std::invalid_argument("DensityMatrix: not Hermitian");
    if (std::abs(m_.trace().real() - 1.0) > kTraceTol ||
        std::abs(m_.trace().imag()) > kTraceTol)
        throw std::invalid_argument("DensityMatrix: trace is not 1");
    Eigen::SelfAdjointEigenSolver<Mat> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -kPsdTol)
        throw std::invalid_argument("DensityMatrix: not positive semidefinite");
}

int DensityMatrix::n_qubits() const {
    int n = 0;
    for (int d = dim(); d > 1; d >>= 1) ++n;
    return n;
}

double BlochVector::norm() const {
    return std::sqrt(n1 * n1 + n2 * n2 + n3 * n3);
}

DensityMatrix bloch_to_density(const BlochVector& n) {
    if (n.norm() * n.norm() > 1.0 + 1e-12)
        throw std::invalid_argument("bloch_to_density: Bloch norm exceeds 1");
    Mat m = 0.5 * (pauli(0) + n.n1 * pauli(1) + n.n2 * pauli(2) + n.n3 * pauli(3));
    return DensityMatrix(m);
}

BlochVector density_to_bloch(const DensityMatrix& rho) {
    if (rho.dim() != 2)
        throw std::invalid_argument("density_to_bloch: expected a single qubit");
    BlochVector n;
    n.n1 = (rho.mat() * pauli(1)).trace().real();
    n.n2 = (rho.mat() * pauli(2)).trace().real();
    n.n3 = (rho.mat() * pauli(3)).trace().real();
    return n;
}

double von_neumann_entropy(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Mat> solver(rho.mat(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (double lam : solver.eigenvalues()) {
        if (lam > 1e-14) s -= lam * std::log2(lam);
    }
    return s;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& tau) {
    if (rho.dim() != tau.dim())
        throw std::invalid_argument("trace_distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> solver(rho.mat() - tau.mat(),
                                              Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& tau) {
    if (rho.dim() != tau.dim())
        throw std::invalid_argument("relative_entropy: dimension mismatch");
    const EigResult et = eig_hermitian(tau.mat());
    double cross = 0.0;  // Tr rho log2 tau
    for (int i = 0; i < rho.dim(); ++i) {
        const CVec v = et.vectors.col(i);
        const double overlap = (v.adjoint() * rho.mat() * v)(0, 0).real();
        const double m = et.values(i);
        if (m > 1e-14) {
            cross += overlap * std::log2(m);
        } else if (overlap > 1e-12) {
            return std::numeric_limits<double>::infinity();  // support violation
        }
    }
    const double val = -von_neumann_entropy(rho) - cross;
    return val < 0.0 ? 0.0 : val;
}

Mat matrix_sqrt_psd(const Mat& h) {
    const EigResult e = eig_hermitian(h);
    RVec roots(e.values.size());
    for (Eigen::Index i = 0; i < e.values.size(); ++i) {
        double lam = e.values(i);
        if (lam < 0.0) {
            if (lam < -kPsdTol)
                throw std::invalid_argument("matrix_sqrt_psd: matrix not PSD");
            lam = 0.0;
        }
        roots(i) = std::sqrt(lam);
    }
    return e.vectors * roots.asDiagonal() * e.vectors.adjoint();
}

double bures_distance(const DensityMatrix& rho, const DensityMatrix& tau) {
    if (rho.dim() != tau.dim())
        throw std::invalid_argument("bures_distance: dimension mismatch");
    const Mat root = matrix_sqrt_psd(rho.mat());
    const Mat inner = root * tau.mat() * root;
    const EigResult e = eig_hermitian((inner + inner.adjoint()) / 2.0);
    double tr = 0.0;
    for (double lam : e.values)
        if (lam > 0.0) tr += std::sqrt(lam);
    const double fidelity = tr * tr;
    const double sq = 2.0 - 2.0 * std::sqrt(std::min(fidelity, 1.0));
    return std::sqrt(sq > 0.0 ? sq : 0.0);
}

Mat partial_trace(const Mat& m, int n_qubits, const std::vector<int>& traced) {
    const int dim = 1 << n_qubits;
    if (m.rows() != dim || m.cols() != dim)
        throw std::invalid_argument("partial_trace: dimension mismatch");
    int traced_mask = 0;
    for (int q : traced) {
        if (q < 0 || q >= n_qubits)
            throw std::invalid_argument("partial_trace: qubit index out of range");
        traced_mask |= 1 << (n_qubits - 1 - q);
    }
    const int keep_mask = (dim - 1) & ~traced_mask;
    // Enumerate kept-index values by compressing bits of keep_mask.
    std::vector<int> keep_values;
    for (int i = 0; i < dim; ++i)
        if ((i & ~keep_mask) == 0) keep_values.push_back(i);
    std::vector<int> traced_values;
    for (int i = 0; i < dim; ++i)
        if ((i & ~traced_mask) == 0) traced_values.push_back(i);

    const int out_dim = static_cast<int>(keep_values.size());
    Mat out = Mat::Zero(out_dim, out_dim);
    for (int a = 0; a < out_dim; ++a)
        for (int b = 0; b < out_dim; ++b)
            for (int t : traced_values)
                out(a, b) += m(keep_values[a] | t, keep_values[b] | t);
    return out;
}

Mat partial_transpose_second(const Mat& m) {
    if (m.rows() != 4 || m.cols() != 4)
        throw std::invalid_argument("partial_transpose_second: expected dim 4");
    Mat out(4, 4);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            for (int c = 0; c < 2; ++c)
                for (int d = 0; d < 2; ++d)
                    out(2 * a + d, 2 * c + b) = m(2 * a + b, 2 * c + d);
    return out;
}

CVec beta_vector(int n_qubits, int x, int sign) {
    const int dim = 1 << n_qubits;
    const int flipped = ~x & (dim - 1);
    if (x < 0 || x >= dim || x >= flipped)
        throw std::invalid_argument("beta_vector: label must satisfy x < ~x");
    if (sign != 1 && sign != -1)
        throw std::invalid_argument("beta_vector: sign must be +-1");
    CVec v = CVec::Zero(dim);
    const double inv = 1.0 / std::sqrt(2.0);
    v(x) = inv;
    v(flipped) = sign * inv;
    return v;
}

int parity_z(int x) {
    int p = 0;
    for (; x; x >>= 1) p ^= x & 1;
    return p;
}

}  // namespace coh
