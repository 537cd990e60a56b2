#include "coh/verify.hpp"

#include "coh/channels.hpp"
#include "coh/random.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace coh::verify {

namespace {

double m3_distance(DistanceKind d, const M3Triple& a, const M3Triple& b) {
    return distance(d, m3_state(a), m3_state(b));
}

std::string fmt_pair(double c1, double c3) {
    char buf[96];
    std::snprintf(buf, sizeof(buf), "c1=%.12g c3=%.12g", c1, c3);
    return buf;
}

void record(LemmaReport& report, double violation, const std::string& input) {
    report.max_violation = std::max(report.max_violation, violation);
    if (violation > report.tolerance && report.counterexamples.size() < 5)
        report.counterexamples.push_back(input + " violation=" +
                                         std::to_string(violation));
}

void finalize(LemmaReport& report) {
    report.pass = report.max_violation <= report.tolerance;
}

int half_sign(int n_qubits) { return (n_qubits / 2) % 2 == 0 ? 1 : -1; }

// delta(s) probability vector for the incoherent M3 family.
RVec family_probs(double s, int n_qubits) {
    const int dim = 1 << n_qubits;
    RVec p(dim);
    for (int x = 0; x < dim; ++x)
        p(x) = (1.0 + (parity_z(x) == 0 ? s : -s)) / dim;
    return p;
}

}  // namespace

LemmaReport translational_invariance(DistanceKind d, int samples, int n_qubits,
                                     std::uint64_t seed) {
    LemmaReport report;
    report.id = "A1/" + distance_name(d) + "/N=" + std::to_string(n_qubits);
    report.tolerance = d == DistanceKind::bures ? 1e-8 : 1e-9;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const M3Triple c = random_freezing_triple(rng, n_qubits);
        const M3Triple axis1{c.c1, 0.0, 0.0, n_qubits};
        const M3Triple axis3{0.0, 0.0, c.c3, n_qubits};
        const M3Triple origin{0.0, 0.0, 0.0, n_qubits};
        ++report.instances;

        const double lhs1 = m3_distance(d, c, axis1);
        const double rhs1 = m3_distance(d, axis3, origin);
        const double lhs2 = m3_distance(d, c, axis3);
        const double rhs2 = m3_distance(d, axis1, origin);

        // Proof-side one-sided inequalities before the equalities: the
        // dephasing direction always, the rephasing direction when c1 >= 0
        // (the rephasing strength is r = c1).
        double violation = std::max(rhs1 - lhs1, 0.0);
        if (c.c1 >= 0.0) violation = std::max(violation, lhs1 - rhs1);
        violation = std::max(violation, std::abs(lhs1 - rhs1));
        violation = std::max(violation, std::abs(lhs2 - rhs2));
        record(report, violation, fmt_pair(c.c1, c.c3));
    }
    finalize(report);
    return report;
}

double simplex_oracle(const DensityMatrix& rho, DistanceKind d,
                      std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const int dim = rho.dim();
    const int n_seeds = 10000;
    std::vector<std::pair<double, RVec>> best;
    for (int i = 0; i < n_seeds; ++i) {
        RVec p = random_simplex(rng, dim);
        const double v = diag_distance(d, rho, p);
        best.emplace_back(v, std::move(p));
        std::push_heap(best.begin(), best.end(),
                       [](const auto& a, const auto& b) { return a.first < b.first; });
        if (best.size() > 5) {
            std::pop_heap(best.begin(), best.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
            best.pop_back();
        }
    }
    MinimizeOptions opts;
    opts.seed = mix_seed(seed, 1);
    double minimum = c_d(rho, d, opts).value;
    for (const auto& [v, p] : best)
        minimum = std::min(minimum, minimize_diag_distance(rho, d, p, opts));
    return minimum;
}

LemmaReport closest_incoherent_structure(DistanceKind d, int samples,
                                         std::uint64_t seed) {
    LemmaReport report;
    report.id = "A2/" + distance_name(d) + "/N=2";
    report.tolerance = 1e-6;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    for (int i = 0; i < samples; ++i) {
        const M3Triple c = random_valid_triple(rng, 2);
        const DensityMatrix rho = m3_state(c);
        ++report.instances;
        const double full = simplex_oracle(rho, d, mix_seed(seed, i));
        const double restricted = c_d_m3_restricted(c, d).value;
        record(report, std::abs(full - restricted),
               fmt_pair(c.c1, c.c3) + " c2=" + std::to_string(c.c2));
    }
    finalize(report);
    return report;
}

LemmaReport optimal_s(DistanceKind d, int samples, int n_qubits,
                      std::uint64_t seed) {
    LemmaReport report;
    report.id = "A3/" + distance_name(d) + "/N=" + std::to_string(n_qubits);
    report.tolerance = 1e-4;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    const int scan_points = 2001;
    for (int i = 0; i < samples; ++i) {
        const M3Triple c = random_freezing_triple(rng, n_qubits);
        const DensityMatrix rho = m3_state(c);
        ++report.instances;

        auto g = [&](double s) {
            return diag_distance(d, rho, family_probs(s, n_qubits));
        };
        std::vector<double> vals(scan_points);
        double minval = g(-1.0);
        for (int j = 0; j < scan_points; ++j) {
            const double s = -1.0 + 2.0 * j / (scan_points - 1);
            vals[j] = g(s);
            minval = std::min(minval, vals[j]);
        }
        // The minimizing set can be a flat interval (trace distance); locate
        // its endpoints by bisection and take the midpoint.
        const double thr = minval + 1e-10;
        int j_lo = 0, j_hi = scan_points - 1;
        while (vals[j_lo] > thr) ++j_lo;
        while (vals[j_hi] > thr) --j_hi;
        auto at = [&](int j) { return -1.0 + 2.0 * j / (scan_points - 1); };
        double s_lo = at(j_lo);
        if (j_lo > 0) {
            double a = at(j_lo - 1), b = s_lo;
            for (int it = 0; it < 40; ++it) {
                const double m = (a + b) / 2.0;
                (g(m) <= thr ? b : a) = m;
            }
            s_lo = b;
        }
        double s_hi = at(j_hi);
        if (j_hi < scan_points - 1) {
            double a = s_hi, b = at(j_hi + 1);
            for (int it = 0; it < 40; ++it) {
                const double m = (a + b) / 2.0;
                (g(m) <= thr ? a : b) = m;
            }
            s_hi = a;
        }
        const double argmin_mid = (s_lo + s_hi) / 2.0;

        double violation = std::abs(argmin_mid - c.c3);
        // The value at s=c3 must also match the scanned minimum.
        if (g(c.c3) > minval + 1e-10) violation = std::max(violation, 1.0);
        record(report, violation, fmt_pair(c.c1, c.c3));
    }
    finalize(report);
    return report;
}

LemmaReport symmetrization_chain(DistanceKind d, int samples, int n_qubits,
                                 std::uint64_t seed) {
    LemmaReport report;
    report.id = "sym/" + distance_name(d) + "/N=" + std::to_string(n_qubits);
    report.tolerance = 1e-10;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    const int dim = 1 << n_qubits;

    std::vector<Mat> unitaries;
    for (int j = 0; j < n_qubits - 1; ++j) {
        Mat u = j == 0 ? pauli(1) : pauli(0);
        for (int k = 1; k < n_qubits; ++k)
            u = tensor(u, (k == j || k == j + 1) ? pauli(1) : pauli(0));
        unitaries.push_back(std::move(u));
    }

    for (int i = 0; i < samples; ++i) {
        const M3Triple c = random_valid_triple(rng, n_qubits);
        const DensityMatrix rho = m3_state(c);
        ++report.instances;
        double violation = 0.0;

        for (const Mat& u : unitaries) {
            const double inv =
                (u * rho.mat() * u.adjoint() - rho.mat()).cwiseAbs().maxCoeff();
            if (inv > 1e-12) violation = std::max(violation, inv);
        }

        Mat delta = Mat::Zero(dim, dim);
        delta.diagonal() = random_simplex(rng, dim).cast<cplx>();
        double prev = distance(d, rho, DensityMatrix(delta));
        for (const Mat& u : unitaries) {
            delta = 0.5 * (delta + u * delta * u.adjoint());
            const double cur = distance(d, rho, DensityMatrix(delta));
            violation = std::max(violation, cur - prev);
            prev = cur;
        }

        // Final iterate must be an incoherent M3 state: all correlation
        // tensor components over {0,3}^N vanish except all-0 and all-3.
        for (int mask = 1; mask < (1 << n_qubits) - 1; ++mask) {
            Mat op = pauli((mask >> (n_qubits - 1)) & 1 ? 3 : 0);
            for (int k = 1; k < n_qubits; ++k)
                op = tensor(op, pauli((mask >> (n_qubits - 1 - k)) & 1 ? 3 : 0));
            const double comp = std::abs((delta * op).trace());
            if (comp > 1e-12) violation = std::max(violation, comp);
        }
        record(report, violation, fmt_pair(c.c1, c.c3));
    }
    finalize(report);
    return report;
}

LemmaReport rephasing(int samples, int n_qubits, std::uint64_t seed) {
    LemmaReport report;
    report.id = "rephasing/N=" + std::to_string(n_qubits);
    report.tolerance = 1e-10;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> u11(-1.0, 1.0);
    const int dim = 1 << n_qubits;

    for (int i = 0; i < samples; ++i) {
        const double r = u01(rng);
        const double c3 = u11(rng);
        ++report.instances;
        const KrausChannel ch = rephasing_channel(r, n_qubits);
        double violation = completeness_defect(ch);

        const DensityMatrix out = apply(ch, m3_incoherent(c3, n_qubits));
        const M3Triple expected{r, half_sign(n_qubits) * r * c3, c3, n_qubits};
        violation = std::max(
            violation,
            (out.mat() - m3_state(expected).mat()).cwiseAbs().maxCoeff());

        for (int x = 0; x < dim / 2; ++x) {
            const CVec plus = beta_vector(n_qubits, x, +1);
            const CVec minus = beta_vector(n_qubits, x, -1);
            const Mat target = (1.0 + r) / 2.0 * (plus * plus.adjoint()) +
                               (1.0 - r) / 2.0 * (minus * minus.adjoint());
            for (int sign : {+1, -1}) {
                const CVec b = beta_vector(n_qubits, x, sign);
                const DensityMatrix proj(Mat(b * b.adjoint()));
                const DensityMatrix mapped = apply(ch, proj);
                violation = std::max(
                    violation, (mapped.mat() - target).cwiseAbs().maxCoeff());
            }
        }
        char buf[64];
        std::snprintf(buf, sizeof(buf), "r=%.12g c3=%.12g", r, c3);
        record(report, violation, buf);
    }
    finalize(report);
    return report;
}

LemmaReport eigensystem(int samples, int n_qubits, std::uint64_t seed) {
    LemmaReport report;
    report.id = "eigensystem/N=" + std::to_string(n_qubits);
    report.tolerance = 1e-10;
    report.seed = seed;
    std::mt19937_64 rng(seed);
    const Mat parity_op = tensor_power(pauli(3), n_qubits);

    for (int i = 0; i < samples; ++i) {
        const M3Triple c = random_valid_triple(rng, n_qubits);
        const DensityMatrix rho = m3_state(c);
        const M3Eigensystem sys = m3_eigensystem(c);
        ++report.instances;
        double violation = 0.0;

        for (int j = 0; j < rho.dim(); ++j) {
            const CVec v = sys.vectors.col(j);
            violation = std::max(
                violation,
                (rho.mat() * v - sys.values(j) * v).cwiseAbs().maxCoeff());
            const double psign = sys.parity[j] == 0 ? 1.0 : -1.0;
            violation = std::max(
                violation, (parity_op * v - psign * v).cwiseAbs().maxCoeff());
        }
        violation = std::max(
            violation, (sys.vectors.adjoint() * sys.vectors -
                        Mat::Identity(rho.dim(), rho.dim()))
                           .cwiseAbs()
                           .maxCoeff());

        RVec sorted = sys.values;
        std::sort(sorted.data(), sorted.data() + sorted.size());
        const EigResult numeric = eig_hermitian(rho.mat());
        violation = std::max(violation,
                             (sorted - numeric.values).cwiseAbs().maxCoeff());
        record(report, violation, fmt_pair(c.c1, c.c3));
    }
    finalize(report);
    return report;
}

LemmaReport frozen_identity(DistanceKind d, int samples, int n_qubits,
                            std::uint64_t seed) {
    LemmaReport report;
    report.id = "frozen/" + distance_name(d) + "/N=" + std::to_string(n_qubits);
    report.tolerance = 1e-8;
    report.seed = seed;
    std::mt19937_64 rng(seed);

    for (int i = 0; i < samples; ++i) {
        const M3Triple c = random_freezing_triple(rng, n_qubits);
        ++report.instances;
        const double expected = m3_distance(
            d, {c.c1, 0.0, 0.0, n_qubits}, {0.0, 0.0, 0.0, n_qubits});
        double violation = 0.0;
        for (int j = 0; j <= 20; ++j) {
            const double q = j / 20.0;
            const M3Triple evolved = evolve_triple(c, 1, q);
            const double value = c_d_m3_restricted(evolved, d).value;
            violation = std::max(violation, std::abs(value - expected));
        }
        record(report, violation, fmt_pair(c.c1, c.c3));
    }
    finalize(report);
    return report;
}

std::vector<LemmaReport> run_suite(const std::string& selector,
                                   std::uint64_t seed, int samples) {
    const std::vector<DistanceKind> distances = {
        DistanceKind::trace, DistanceKind::bures, DistanceKind::relative_entropy};
    const std::vector<int> sizes = {2, 4};

    std::vector<LemmaReport> reports;
    const bool all = selector == "all";
    bool known = all;

    if (all || selector == "A1") {
        known = true;
        for (DistanceKind d : distances)
            for (int n : sizes)
                reports.push_back(translational_invariance(d, samples, n, seed));
    }
    if (all || selector == "A2") {
        known = true;
        for (DistanceKind d : distances)
            reports.push_back(closest_incoherent_structure(d, samples, seed));
    }
    if (all || selector == "A3") {
        known = true;
        for (DistanceKind d : distances)
            for (int n : sizes)
                reports.push_back(optimal_s(d, samples, n, seed));
    }
    if (all || selector == "rephasing") {
        known = true;
        for (int n : sizes) reports.push_back(rephasing(samples, n, seed));
    }
    if (all || selector == "symmetrization") {
        known = true;
        for (DistanceKind d : distances)
            for (int n : sizes)
                reports.push_back(symmetrization_chain(d, samples, n, seed));
    }
    if (all || selector == "frozen-identity") {
        known = true;
        for (DistanceKind d : distances)
            for (int n : sizes)
                reports.push_back(frozen_identity(d, samples, n, seed));
    }
    if (all || selector == "eigensystem") {
        known = true;
        for (int n : sizes) reports.push_back(eigensystem(samples, n, seed));
    }
    if (!known)
        throw std::invalid_argument("run_suite: unknown selector '" + selector +
                                    "'");
    return reports;
}

}  // namespace coh::verify
