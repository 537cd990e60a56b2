#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coh/linalg.hpp"
#include "coh/m3.hpp"
#include "coh/random.hpp"

#include <cmath>
#include <random>

using namespace coh;

namespace {

Mat ket_proj(int dim, int i) {
    Mat m = Mat::Zero(dim, dim);
    m(i, i) = 1.0;
    return m;
}

DensityMatrix plus_state() {
    Mat m(2, 2);
    m << 0.5, 0.5, 0.5, 0.5;
    return DensityMatrix(m);
}

Mat random_hermitian(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> g;
    Mat a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = cplx(g(rng), g(rng));
    return Mat(0.5 * (a + a.adjoint()));
}

}  // namespace

TEST_CASE("pauli matrices") {
    CHECK(pauli(0).isApprox(Mat::Identity(2, 2)));
    CHECK(pauli(1)(0, 1) == cplx(1, 0));
    CHECK(pauli(1)(1, 0) == cplx(1, 0));
    CHECK(pauli(2)(0, 1) == cplx(0, -1));
    CHECK(pauli(2)(1, 0) == cplx(0, 1));
    CHECK(pauli(3)(0, 0) == cplx(1, 0));
    CHECK(pauli(3)(1, 1) == cplx(-1, 0));
    for (int k = 0; k < 4; ++k)
        CHECK((pauli(k) * pauli(k)).isApprox(Mat::Identity(2, 2)));
    CHECK_THROWS_AS(pauli(4), std::invalid_argument);
    CHECK_THROWS_AS(pauli(-1), std::invalid_argument);
}

TEST_CASE("tensor products") {
    CHECK(tensor(pauli(0), pauli(0)).isApprox(Mat::Identity(4, 4)));

    const Mat zz = tensor(pauli(3), pauli(3));
    CHECK(zz(0, 0) == cplx(1, 0));
    CHECK(zz(1, 1) == cplx(-1, 0));
    CHECK(zz(2, 2) == cplx(-1, 0));
    CHECK(zz(3, 3) == cplx(1, 0));
    CHECK(zz.cwiseAbs().sum() == doctest::Approx(4.0));

    const Mat xx = tensor(pauli(1), pauli(1));
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(xx(i, j) == (i + j == 3 ? cplx(1, 0) : cplx(0, 0)));

    // Block convention: (a(x)b)[i*db+k, j*db+l] = a(i,j) b(k,l).
    const Mat zx = tensor(pauli(3), pauli(1));
    CHECK(zx(0, 1) == cplx(1, 0));
    CHECK(zx(2, 3) == cplx(-1, 0));

    CHECK_THROWS(tensor_power(pauli(0), 7));  // 128 > 64
    CHECK(tensor_power(pauli(1), 3).isApprox(
        tensor(pauli(1), tensor(pauli(1), pauli(1)))));
}

TEST_CASE("hermitian eigendecomposition basics") {
    Mat d = Mat::Zero(2, 2);
    d(0, 0) = 0.8;
    d(1, 1) = 0.2;
    const EigResult r = eig_hermitian(d);
    CHECK(r.values(0) == doctest::Approx(0.2));
    CHECK(r.values(1) == doctest::Approx(0.8));

    const EigResult x = eig_hermitian(pauli(1));
    CHECK(x.values(0) == doctest::Approx(-1.0));
    CHECK(x.values(1) == doctest::Approx(1.0));

    Mat nh(2, 2);
    nh << 0.0, 1.0, 0.0, 0.0;
    CHECK_THROWS(eig_hermitian(nh));
}

TEST_CASE("eigendecomposition matches the closed-form Bell-diagonal spectrum") {
    const double c1 = 0.5, c2 = -0.1, c3 = 0.2;
    const DensityMatrix rho = m3_state({c1, c2, c3, 2});
    const EigResult r = eig_hermitian(rho.mat());
    std::vector<double> expect = {
        0.25 * (1 + c1 - c2 + c3), 0.25 * (1 - c1 + c2 + c3),
        0.25 * (1 + c1 + c2 - c3), 0.25 * (1 - c1 - c2 - c3)};
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 4; ++i)
        CHECK(r.values(i) == doctest::Approx(expect[i]).epsilon(1e-10));
}

TEST_CASE("eigendecomposition reconstruction and orthonormality") {
    std::mt19937_64 rng(11);
    for (int dim : {2, 4, 8, 16}) {
        for (int trial = 0; trial < 500; ++trial) {
            const Mat m = random_hermitian(rng, dim);
            const EigResult r = eig_hermitian(m);
            for (int i = 1; i < dim; ++i) CHECK(r.values(i) >= r.values(i - 1));
            const Mat recon =
                r.vectors * r.values.asDiagonal() * r.vectors.adjoint();
            CHECK((m - recon).cwiseAbs().maxCoeff() <= 1e-9);
            CHECK((r.vectors.adjoint() * r.vectors - Mat::Identity(dim, dim))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-9);
        }
    }
}

TEST_CASE("density matrix invariants are enforced") {
    CHECK_NOTHROW(DensityMatrix(Mat::Identity(4, 4) / 4.0));
    CHECK_THROWS(DensityMatrix(Mat::Identity(3, 3) / 3.0));  // not 2^N
    CHECK_THROWS(DensityMatrix(Mat::Identity(2, 2)));        // trace 2
    Mat nh(2, 2);
    nh << 0.5, 0.5, -0.5, 0.5;  // anti-Hermitian off-diagonal
    CHECK_THROWS(DensityMatrix(nh));
    Mat neg = Mat::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS(DensityMatrix(neg));
    CHECK(DensityMatrix(Mat::Identity(8, 8) / 8.0).n_qubits() == 3);
}

TEST_CASE("von Neumann entropy in bits") {
    CHECK(von_neumann_entropy(DensityMatrix(ket_proj(2, 0))) ==
          doctest::Approx(0.0));
    CHECK(von_neumann_entropy(DensityMatrix(Mat::Identity(2, 2) / 2.0)) ==
          doctest::Approx(1.0));
    CHECK(von_neumann_entropy(DensityMatrix(Mat::Identity(4, 4) / 4.0)) ==
          doctest::Approx(2.0));
}

TEST_CASE("trace distance") {
    const DensityMatrix zero(ket_proj(2, 0)), one(ket_proj(2, 1));
    CHECK(trace_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(trace_distance(zero, one) == doctest::Approx(1.0));
    CHECK(trace_distance(one, zero) == doctest::Approx(1.0));

    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix a = random_density(rng, 4);
        const DensityMatrix b = random_density(rng, 4);
        const DensityMatrix c = random_density(rng, 4);
        const double ab = trace_distance(a, b);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        CHECK(ab == doctest::Approx(trace_distance(b, a)).epsilon(1e-12));
        CHECK(ab <= trace_distance(a, c) + trace_distance(c, b) + 1e-10);
    }
}

TEST_CASE("relative entropy") {
    const DensityMatrix plus = plus_state();
    const DensityMatrix mixed(Mat::Identity(2, 2) / 2.0);
    CHECK(relative_entropy(mixed, mixed) == doctest::Approx(0.0));
    CHECK(relative_entropy(plus, mixed) == doctest::Approx(1.0));
    CHECK(std::isinf(relative_entropy(DensityMatrix(ket_proj(2, 0)),
                                      DensityMatrix(ket_proj(2, 1)))));

    // Pinsker in bits: S(rho||tau) >= 2 D_tr^2 / ln 2.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 200; ++trial) {
        const DensityMatrix a = random_density(rng, 4);
        const DensityMatrix b = random_density(rng, 4);
        const double s = relative_entropy(a, b);
        const double t = trace_distance(a, b);
        CHECK(s >= 2.0 * t * t / std::log(2.0) - 1e-10);
        CHECK(s >= -1e-12);
    }
}

TEST_CASE("Bures distance") {
    const DensityMatrix zero(ket_proj(2, 0)), one(ket_proj(2, 1));
    const DensityMatrix mixed(Mat::Identity(2, 2) / 2.0);
    CHECK(bures_distance(zero, zero) == doctest::Approx(0.0));
    CHECK(bures_distance(zero, one) == doctest::Approx(std::sqrt(2.0)));
    // F(I/2, |0><0|) = <0|I/2|0> = 1/2, so the distance is sqrt(2 - sqrt(2)).
    CHECK(bures_distance(mixed, zero) ==
          doctest::Approx(std::sqrt(2.0 - std::sqrt(2.0))));
}

TEST_CASE("Bloch round trip") {
    CHECK(bloch_to_density({0, 0, 0}).mat().isApprox(Mat::Identity(2, 2) / 2.0));
    CHECK(bloch_to_density({1, 0, 0}).mat().isApprox(plus_state().mat()));
    CHECK(bloch_to_density({0, 0, -1}).mat().isApprox(ket_proj(2, 1)));
    CHECK_THROWS(bloch_to_density({1.0, 0.5, 0.0}));

    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 1000; ++trial) {
        const BlochVector n = random_bloch(rng);
        const BlochVector back = density_to_bloch(bloch_to_density(n));
        CHECK(std::abs(back.n1 - n.n1) <= 1e-12);
        CHECK(std::abs(back.n2 - n.n2) <= 1e-12);
        CHECK(std::abs(back.n3 - n.n3) <= 1e-12);
    }
}

TEST_CASE("partial trace") {
    const DensityMatrix plus = plus_state();
    const Mat prod = tensor(plus.mat(), ket_proj(2, 1));
    CHECK(partial_trace(prod, 2, {1}).isApprox(plus.mat(), 1e-12));
    CHECK(partial_trace(prod, 2, {0}).isApprox(ket_proj(2, 1), 1e-12));
    CHECK(std::abs(partial_trace(prod, 2, {0, 1})(0, 0) - cplx(1, 0)) <= 1e-12);

    std::mt19937_64 rng(51);
    const DensityMatrix r8 = random_density(rng, 8);
    const Mat r01 = partial_trace(r8.mat(), 3, {2});
    CHECK(std::abs(r01.trace() - cplx(1, 0)) <= 1e-12);
    CHECK(partial_trace(r01, 2, {1})
              .isApprox(partial_trace(r8.mat(), 3, {1, 2}), 1e-12));
}

TEST_CASE("partial transpose and beta basis") {
    const Mat bell = 0.5 * (Mat(4, 4) << 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1,
                            0, 0, 1)
                               .finished();
    const EigResult r = eig_hermitian(partial_transpose_second(bell));
    CHECK(r.values(0) == doctest::Approx(-0.5));

    const CVec bp = beta_vector(2, 0, +1);
    CHECK(std::abs(bp(0) - cplx(1 / std::sqrt(2.0), 0)) <= 1e-12);
    CHECK(std::abs(bp(3) - cplx(1 / std::sqrt(2.0), 0)) <= 1e-12);
    const CVec bm = beta_vector(2, 1, -1);
    CHECK(std::abs(bm(1) - cplx(1 / std::sqrt(2.0), 0)) <= 1e-12);
    CHECK(std::abs(bm(2) + cplx(1 / std::sqrt(2.0), 0)) <= 1e-12);
    CHECK_THROWS(beta_vector(2, 3, +1));  // leading bit set

    CHECK(parity_z(0) == 0);
    CHECK(parity_z(1) == 1);
    CHECK(parity_z(3) == 0);
    CHECK(parity_z(7) == 1);
}
