#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "coh/channels.hpp"
#include "coh/m3.hpp"
#include "coh/random.hpp"

#include <cmath>
#include <random>

using namespace coh;

TEST_CASE("m3_state construction") {
    CHECK(m3_state({0, 0, 0, 2}).mat().isApprox(Mat::Identity(4, 4) / 4.0));

    // (1,-1,1) is the Bell state (|00>+|11>)/sqrt(2).
    const Mat bell = m3_state({1, -1, 1, 2}).mat();
    CHECK(bell(0, 0).real() == doctest::Approx(0.5));
    CHECK(bell(0, 3).real() == doctest::Approx(0.5));
    CHECK(bell(3, 3).real() == doctest::Approx(0.5));
    CHECK(bell(1, 1).real() == doctest::Approx(0.0));

    const Mat rho = m3_state({0.25, -0.0625, 0.25, 2}).mat();
    CHECK(rho(0, 0).real() == doctest::Approx((1 + 0.25) / 4.0));
    CHECK(rho(1, 1).real() == doctest::Approx((1 - 0.25) / 4.0));

    CHECK_FALSE(m3_is_valid({1, 1, 1, 2}));
    CHECK_THROWS(m3_state({1, 1, 1, 2}));
    CHECK(m3_is_valid({0.9, 0.2, 0.3, 3}));     // odd N, numeric check
    CHECK_FALSE(m3_is_valid({1, 1, 1, 3}));
}

TEST_CASE("maximally mixed marginals") {
    std::mt19937_64 rng(5);
    for (int n : {2, 4}) {
        for (int trial = 0; trial < 20; ++trial) {
            const M3Triple c = random_valid_triple(rng, n);
            const Mat rho = m3_state(c).mat();
            const Mat single =
                partial_trace(rho, n, [&] {
                    std::vector<int> keep_last;
                    for (int i = 0; i < n - 1; ++i) keep_last.push_back(i);
                    return keep_last;
                }());
            CHECK(single.isApprox(Mat::Identity(2, 2) / 2.0, 1e-12));
            if (n == 4) {
                const Mat pair = partial_trace(rho, 4, {1, 3});
                CHECK(pair.isApprox(Mat::Identity(4, 4) / 4.0, 1e-12));
            }
        }
    }
}

TEST_CASE("extract_triple inverts m3_state") {
    std::mt19937_64 rng(15);
    for (int n : {2, 3, 4}) {
        for (int trial = 0; trial < 20; ++trial) {
            const M3Triple c = random_valid_triple(rng, n);
            const M3Triple back = extract_triple(m3_state(c));
            CHECK(back.c1 == doctest::Approx(c.c1).epsilon(1e-12));
            CHECK(back.c2 == doctest::Approx(c.c2).epsilon(1e-12));
            CHECK(back.c3 == doctest::Approx(c.c3).epsilon(1e-12));
        }
    }
}

TEST_CASE("closed-form eigensystem") {
    CHECK_THROWS(m3_eigensystem({0.1, 0.1, 0.1, 3}));

    const M3Eigensystem flat = m3_eigensystem({0, 0, 0, 2});
    for (int i = 0; i < 4; ++i)
        CHECK(flat.values(i) == doctest::Approx(0.25));

    // N=2 closed form: {(1 +- c1 -+ c2 + c3)/4, (1 +- c1 +- c2 - c3)/4}.
    const double c1 = 0.4, c2 = -0.12, c3 = 0.3;
    const M3Eigensystem es = m3_eigensystem({c1, c2, c3, 2});
    std::vector<double> got(es.values.data(), es.values.data() + 4);
    std::vector<double> expect = {
        0.25 * (1 + c1 - c2 + c3), 0.25 * (1 - c1 + c2 + c3),
        0.25 * (1 + c1 + c2 - c3), 0.25 * (1 - c1 - c2 - c3)};
    std::sort(got.begin(), got.end());
    std::sort(expect.begin(), expect.end());
    for (int i = 0; i < 4; ++i)
        CHECK(got[i] == doctest::Approx(expect[i]).epsilon(1e-12));
}

TEST_CASE("eigensystem matches the numeric solver with correct parity") {
    std::mt19937_64 rng(25);
    for (int n : {2, 4}) {
        const Mat parity_op = tensor_power(pauli(3), n);
        for (int trial = 0; trial < 100; ++trial) {
            const M3Triple c = random_valid_triple(rng, n);
            const Mat rho = m3_state(c).mat();
            const M3Eigensystem es = m3_eigensystem(c);
            const int dim = 1 << n;
            for (int i = 0; i < dim; ++i) {
                const CVec v = es.vectors.col(i);
                // Eigen-pair check.
                CHECK((rho * v - es.values(i) * v).cwiseAbs().maxCoeff() <=
                      1e-10);
                // Parity of the eigenvector under sigma_3^(x)N.
                const double sign = es.parity[i] == 0 ? 1.0 : -1.0;
                CHECK((parity_op * v - sign * v).cwiseAbs().maxCoeff() <=
                      1e-12);
            }
            // Orthonormality and spectral agreement.
            CHECK((es.vectors.adjoint() * es.vectors -
                   Mat::Identity(dim, dim))
                      .cwiseAbs()
                      .maxCoeff() <= 1e-12);
            RVec sorted = es.values;
            std::sort(sorted.data(), sorted.data() + dim);
            const EigResult num = eig_hermitian(rho);
            CHECK((sorted - num.values).cwiseAbs().maxCoeff() <= 1e-10);
        }
    }
}

TEST_CASE("closed-form evolution") {
    const M3Triple c{0.3, -0.06, 0.2, 2};
    const M3Triple same = evolve_triple(c, 1, 0.0);
    CHECK(same.c1 == c.c1);
    CHECK(same.c2 == c.c2);
    CHECK(same.c3 == c.c3);

    const double q = 0.4;
    const M3Triple e = evolve_triple(c, 1, q);
    CHECK(e.c1 == doctest::Approx(c.c1));
    CHECK(e.c2 == doctest::Approx((1 - q) * (1 - q) * c.c2));
    CHECK(e.c3 == doctest::Approx((1 - q) * (1 - q) * c.c3));

    const M3Triple c4{0.3, 0.06, 0.2, 4};
    const M3Triple e4 = evolve_triple(c4, 1, 0.5);
    CHECK(e4.c2 == doctest::Approx(c4.c2 / 16.0));
    CHECK(e4.c3 == doctest::Approx(c4.c3 / 16.0));
}

TEST_CASE("closed-form evolution agrees with full Kraus evolution") {
    std::mt19937_64 rng(35);
    for (int n : {2, 3, 4}) {
        for (int k : {1, 2, 3}) {
            const M3Triple c = random_valid_triple(rng, n);
            for (int i = 0; i <= 10; ++i) {
                const double q = i / 10.0;
                const M3Triple closed = evolve_triple(c, k, q);
                const M3Triple full = extract_triple(
                    apply(lift_local(flip_channel(k, q), n), m3_state(c)));
                CHECK(std::abs(closed.c1 - full.c1) <= 1e-10);
                CHECK(std::abs(closed.c2 - full.c2) <= 1e-10);
                CHECK(std::abs(closed.c3 - full.c3) <= 1e-10);
            }
        }
    }
}

TEST_CASE("freezing family") {
    const M3Triple f2 = freezing_triple(0.25, 0.25, 2);
    CHECK(f2.c2 == doctest::Approx(-0.0625));
    const M3Triple f4 = freezing_triple(0.25, 0.25, 4);
    CHECK(f4.c2 == doctest::Approx(+0.0625));
    const M3Triple f0 = freezing_triple(0.0, 0.7, 2);
    CHECK(f0.c2 == doctest::Approx(0.0));
    CHECK_THROWS(freezing_triple(0.3, 0.3, 3));
    // For |c1|,|c3| <= 1 the spectrum factors as (1 +- c1)(1 +- c3)/4, so
    // every in-range freezing triple is PSD; out-of-range inputs are not.
    CHECK_THROWS(freezing_triple(1.5, 0.5, 2));

    CHECK(is_frozen_family({0.25, -0.0625, 0.25, 2}));
    CHECK_FALSE(is_frozen_family({0.5, 0.5, 0.5, 2}));

    // Closure of the freezing condition along bit-flip evolution.
    for (double q : {0.1, 0.5, 0.9}) {
        const M3Triple e = evolve_triple({0.25, -0.0625, 0.25, 2}, 1, q);
        CHECK(is_frozen_family(e));
    }
}

TEST_CASE("threshold q*") {
    const double expected = 1.0 - std::sqrt(1.0 / 3.0);
    CHECK(threshold_q_star({0.3, -0.27, 0.9, 2}) ==
          doctest::Approx(expected).epsilon(1e-12));
    CHECK(threshold_q_star({0.5, -0.25, 0.5, 2}) == doctest::Approx(0.0));
    CHECK(threshold_q_star({0.0, 0.0, 0.5, 2}) == doctest::Approx(1.0));
    CHECK(threshold_q_star({0.5, 0.0, 0.0, 2}) == doctest::Approx(0.0));
    CHECK(threshold_q_star({0.6, 0.0, 0.3, 2}) == doctest::Approx(0.0));

    // Grid-scan oracle: largest grid q with |c3|(1-q)^N >= |c1|.
    const M3Triple c{0.3, -0.27, 0.9, 2};
    double oracle = 0.0;
    for (int i = 0; i <= 1000000; ++i) {
        const double q = i * 1e-6;
        if (std::abs(c.c3) * std::pow(1 - q, c.n_qubits) >= std::abs(c.c1))
            oracle = q;
    }
    CHECK(std::abs(threshold_q_star(c) - oracle) <= 1e-6);
}

TEST_CASE("two-qubit standard form") {
    CHECK(standard_form_state({}).mat().isApprox(Mat::Identity(4, 4) / 4.0));

    StandardFormState t;
    t.T11 = 0.3;
    t.T22 = -0.06;
    t.T33 = 0.2;
    CHECK(standard_form_state(t).mat().isApprox(
        m3_state({0.3, -0.06, 0.2, 2}).mat(), 1e-12));

    StandardFormState gen;
    gen.x3 = 0.2;
    gen.T11 = 0.3;
    gen.T22 = 0.15;
    CHECK_NOTHROW(standard_form_state(gen));

    StandardFormState bad;
    bad.T11 = 1.0;
    bad.T22 = 1.0;
    bad.T33 = 1.0;
    CHECK_THROWS(standard_form_state(bad));
}

TEST_CASE("l1 freezing predicate") {
    StandardFormState m3f;
    m3f.T11 = 0.25;
    m3f.T22 = -0.0625;
    m3f.T33 = 0.25;
    CHECK(l1_freezing_predicate(m3f));

    StandardFormState x2;
    x2.x2 = 0.1;
    x2.T11 = 0.3;
    CHECK_FALSE(l1_freezing_predicate(x2));

    StandardFormState big;
    big.T11 = 0.2;
    big.T22 = 0.3;  // |T22| > |T11|
    CHECK_FALSE(l1_freezing_predicate(big));
}

TEST_CASE("PPT separability") {
    CHECK(is_ppt_separable(DensityMatrix(Mat::Identity(4, 4) / 4.0)));
    CHECK_FALSE(is_ppt_separable(m3_state({1, -1, 1, 2})));

    // The freezing fixture stays separable along the whole bit-flip evolution.
    const M3Triple fx{0.25, -0.0625, 0.25, 2};
    for (int i = 0; i <= 100; ++i)
        CHECK(is_ppt_separable(m3_state(evolve_triple(fx, 1, i / 100.0))));

    CHECK_THROWS(is_ppt_separable(DensityMatrix(Mat::Identity(2, 2) / 2.0)));
}

TEST_CASE("V^(x)N conjugation swaps c1 and c3") {
    const Mat v = (Mat::Identity(2, 2) + cplx(0, 1) * pauli(2)) / std::sqrt(2.0);
    std::mt19937_64 rng(45);
    for (int n : {2, 4}) {
        const Mat vn = tensor_power(v, n);
        for (int trial = 0; trial < 20; ++trial) {
            const M3Triple c = random_valid_triple(rng, n);
            const Mat rotated = vn * m3_state(c).mat() * vn.adjoint();
            const M3Triple out = extract_triple(DensityMatrix(rotated));
            CHECK(std::abs(out.c1 - c.c3) <= 1e-12);
            CHECK(std::abs(out.c2 - c.c2) <= 1e-12);
            CHECK(std::abs(out.c3 - c.c1) <= 1e-12);
        }
    }
}

TEST_CASE("incoherent family member") {
    const Mat d = m3_incoherent(0.6, 2).mat();
    CHECK(d(0, 0).real() == doctest::Approx(0.4));
    CHECK(d(1, 1).real() == doctest::Approx(0.1));
    CHECK(d(2, 2).real() == doctest::Approx(0.1));
    CHECK(d(3, 3).real() == doctest::Approx(0.4));
    CHECK(d.cwiseAbs().sum() == doctest::Approx(1.0));
}
