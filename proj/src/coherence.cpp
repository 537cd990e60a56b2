#include "coh/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace coh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Distance from rho to the diagonal state with probability vector p.
// Caches the pieces that do not depend on p.
struct DiagObjective {
    DistanceKind d;
    Mat rho;
    Mat sqrt_rho;        // bures only
    double neg_entropy;  // -S(rho), relative entropy only

    DiagObjective(DistanceKind kind, const DensityMatrix& state)
        : d(kind), rho(state.mat()) {
        if (d == DistanceKind::bures) sqrt_rho = matrix_sqrt_psd(rho);
        if (d == DistanceKind::relative_entropy)
            neg_entropy = -von_neumann_entropy(state);
    }

    double operator()(const RVec& p) const {
        const int dim = static_cast<int>(rho.rows());
        switch (d) {
            case DistanceKind::trace: {
                Mat diff = rho;
                diff.diagonal() -= p.cast<cplx>();
                Eigen::SelfAdjointEigenSolver<Mat> solver(diff,
                                                          Eigen::EigenvaluesOnly);
                return 0.5 * solver.eigenvalues().cwiseAbs().sum();
            }
            case DistanceKind::bures: {
                const Mat inner =
                    sqrt_rho * p.asDiagonal().toDenseMatrix().cast<cplx>() *
                    sqrt_rho;
                Eigen::SelfAdjointEigenSolver<Mat> solver(inner,
                                                          Eigen::EigenvaluesOnly);
                double tr = 0.0;
                for (double lam : solver.eigenvalues())
                    if (lam > 0.0) tr += std::sqrt(lam);
                const double f = std::min(tr * tr, 1.0);
                const double sq = 2.0 - 2.0 * std::sqrt(f);
                return std::sqrt(sq > 0.0 ? sq : 0.0);
            }
            case DistanceKind::relative_entropy: {
                double cross = 0.0;
                for (int i = 0; i < dim; ++i) {
                    const double w = rho(i, i).real();
                    if (p(i) > 1e-14)
                        cross += w * std::log2(p(i));
                    else if (w > 1e-12)
                        return kInf;
                }
                const double val = neg_entropy - cross;
                return val < 0.0 ? 0.0 : val;
            }
        }
        return 0.0;
    }
};

RVec softmax_from_anchor(const RVec& x) {
    // p = softmax([0, x]); the pinned first coordinate removes the shift
    // degeneracy of the parameterization.
    const int d = static_cast<int>(x.size()) + 1;
    RVec z(d);
    z(0) = 0.0;
    z.tail(d - 1) = x;
    const double zmax = z.maxCoeff();
    RVec p = (z.array() - zmax).exp();
    return p / p.sum();
}

RVec anchor_from_probs(const RVec& p) {
    const int d = static_cast<int>(p.size());
    RVec x(d - 1);
    const double base = std::log(std::max(p(0), 1e-12));
    for (int i = 1; i < d; ++i) x(i - 1) = std::log(std::max(p(i), 1e-12)) - base;
    return x;
}

struct NmResult {
    RVec x;
    double value = kInf;
    double final_step = 0.0;
    bool converged = false;
};

// Nelder-Mead over R^n with standard coefficients.
template <typename F>
NmResult nelder_mead(F&& f, const RVec& x0, const MinimizeOptions& opts) {
    const int n = static_cast<int>(x0.size());
    std::vector<RVec> xs(n + 1, x0);
    std::vector<double> fs(n + 1);
    for (int i = 0; i < n; ++i) xs[i + 1](i) += 0.5;
    for (int i = 0; i <= n; ++i) fs[i] = f(xs[i]);
    int evals = n + 1;

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(),
                  [&](int a, int b) { return fs[a] < fs[b]; });
        std::vector<RVec> nxs(n + 1);
        std::vector<double> nfs(n + 1);
        for (int i = 0; i <= n; ++i) {
            nxs[i] = xs[idx[i]];
            nfs[i] = fs[idx[i]];
        }
        xs = std::move(nxs);
        fs = std::move(nfs);
    };

    NmResult res;
    while (true) {
        order();
        double diam = 0.0;
        for (int i = 1; i <= n; ++i)
            diam = std::max(diam, (xs[i] - xs[0]).norm());
        res.final_step = diam;
        const double spread = fs[n] - fs[0];
        if (diam < opts.step_tol || spread < opts.value_tol) {
            res.converged = true;
            break;
        }
        if (evals >= opts.max_evals) break;

        RVec centroid = RVec::Zero(n);
        for (int i = 0; i < n; ++i) centroid += xs[i];
        centroid /= n;

        const RVec xr = centroid + (centroid - xs[n]);
        const double fr = f(xr);
        ++evals;
        if (fr < fs[0]) {
            const RVec xe = centroid + 2.0 * (centroid - xs[n]);
            const double fe = f(xe);
            ++evals;
            if (fe < fr) {
                xs[n] = xe;
                fs[n] = fe;
            } else {
                xs[n] = xr;
                fs[n] = fr;
            }
        } else if (fr < fs[n - 1]) {
            xs[n] = xr;
            fs[n] = fr;
        } else {
            const RVec xc = centroid + 0.5 * (xs[n] - centroid);
            const double fc = f(xc);
            ++evals;
            if (fc < fs[n]) {
                xs[n] = xc;
                fs[n] = fc;
            } else {
                for (int i = 1; i <= n; ++i) {
                    xs[i] = xs[0] + 0.5 * (xs[i] - xs[0]);
                    fs[i] = f(xs[i]);
                }
                evals += n;
            }
        }
    }
    res.x = xs[0];
    res.value = fs[0];
    return res;
}

}  // namespace

DistanceKind parse_distance(std::string_view name) {
    if (name == "trace" || name == "tr") return DistanceKind::trace;
    if (name == "bures") return DistanceKind::bures;
    if (name == "re" || name == "relative_entropy")
        return DistanceKind::relative_entropy;
    throw std::invalid_argument("parse_distance: unknown distance '" +
                                std::string(name) + "'");
}

std::string distance_name(DistanceKind d) {
    switch (d) {
        case DistanceKind::trace: return "trace";
        case DistanceKind::bures: return "bures";
        case DistanceKind::relative_entropy: return "re";
    }
    return "?";
}

double distance(DistanceKind d, const DensityMatrix& rho,
                const DensityMatrix& tau) {
    switch (d) {
        case DistanceKind::trace: return trace_distance(rho, tau);
        case DistanceKind::bures: return bures_distance(rho, tau);
        case DistanceKind::relative_entropy: return relative_entropy(rho, tau);
    }
    return 0.0;
}

DensityMatrix IncoherentState::to_density() const {
    Mat m = Mat::Zero(diag.size(), diag.size());
    m.diagonal() = diag.cast<cplx>();
    return DensityMatrix(m);
}

double c_l1(const DensityMatrix& rho) {
    double sum = 0.0;
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            if (i != j) sum += std::abs(rho.mat()(i, j));
    return sum;
}

IncoherentState diagonal_part(const DensityMatrix& rho) {
    RVec p = rho.mat().diagonal().real();
    p = p.cwiseMax(0.0);
    return {p / p.sum()};
}

double c_re(const DensityMatrix& rho) {
    const double val =
        von_neumann_entropy(diagonal_part(rho).to_density()) -
        von_neumann_entropy(rho);
    return val < 0.0 ? 0.0 : val;
}

double c_tr_m3(const M3Triple& c) {
    if (c.n_qubits % 2 != 0)
        throw std::invalid_argument("c_tr_m3: N must be even");
    if (!m3_is_valid(c, kPsdTol))
        throw std::invalid_argument("c_tr_m3: triple is not a valid state");
    return (std::abs(c.c1 - c.c2) + std::abs(c.c1 + c.c2)) / 4.0;
}

bool is_incoherent(const DensityMatrix& rho, double tol) {
    for (int i = 0; i < rho.dim(); ++i)
        for (int j = 0; j < rho.dim(); ++j)
            if (i != j && std::abs(rho.mat()(i, j)) > tol) return false;
    return true;
}

double diag_distance(DistanceKind d, const DensityMatrix& rho, const RVec& p) {
    return DiagObjective(d, rho)(p);
}

double minimize_diag_distance(const DensityMatrix& rho, DistanceKind d,
                              const RVec& start, const MinimizeOptions& opts) {
    const DiagObjective objective(d, rho);
    auto f = [&](const RVec& x) { return objective(softmax_from_anchor(x)); };
    return nelder_mead(f, anchor_from_probs(start), opts).value;
}

CoherenceResult c_d(const DensityMatrix& rho, DistanceKind d,
                    const MinimizeOptions& opts) {
    CoherenceResult res;
    if (d == DistanceKind::relative_entropy) {
        res.value = c_re(rho);
        res.minimizer = diagonal_part(rho);
        res.method = CoherenceResult::Method::closed_form;
        return res;
    }
    if (rho.dim() > 16)
        throw std::invalid_argument("c_d: general optimizer limited to dim <= 16");

    const DiagObjective objective(d, rho);
    const int n = rho.dim() - 1;
    auto f = [&](const RVec& x) { return objective(softmax_from_anchor(x)); };

    std::mt19937_64 rng(opts.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    res.method = CoherenceResult::Method::optimizer;
    res.value = kInf;
    res.converged = false;
    for (int r = 0; r < opts.restarts; ++r) {
        RVec x0;
        if (r == 0) {
            x0 = anchor_from_probs(diagonal_part(rho).diag);
        } else if (r == 1) {
            x0 = RVec::Zero(n);
        } else {
            x0.resize(n);
            for (int i = 0; i < n; ++i) x0(i) = gauss(rng);
        }
        const NmResult nm = nelder_mead(f, x0, opts);
        ++res.restarts_used;
        if (nm.value < res.value) {
            res.value = nm.value;
            res.minimizer = IncoherentState{softmax_from_anchor(nm.x)};
            res.final_step = nm.final_step;
        }
        res.converged = res.converged || nm.converged;
    }
    return res;
}

RestrictedResult c_d_m3_restricted(const M3Triple& c, DistanceKind d) {
    if (c.n_qubits % 2 != 0)
        throw std::invalid_argument("c_d_m3_restricted: N must be even");
    const DensityMatrix rho = m3_state(c);
    const DiagObjective objective(d, rho);
    const int dim = rho.dim();

    // delta(s) is diagonal with entries (1 + s (-1)^parity(x)) / dim.
    auto probs = [&](double s) {
        RVec p(dim);
        for (int x = 0; x < dim; ++x)
            p(x) = (1.0 + (parity_z(x) == 0 ? s : -s)) / dim;
        return p;
    };
    auto g = [&](double s) { return objective(probs(s)); };

    const int scan_points = 201;
    double best_s = 0.0, best_val = kInf;
    for (int i = 0; i < scan_points; ++i) {
        const double s = -1.0 + 2.0 * i / (scan_points - 1);
        const double v = g(s);
        if (v < best_val) {
            best_val = v;
            best_s = s;
        }
    }
    // Golden-section refinement around the scan minimum.
    const double h = 2.0 / (scan_points - 1);
    double lo = std::max(-1.0, best_s - h), hi = std::min(1.0, best_s + h);
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
    double fa = g(a), fb = g(b);
    while (hi - lo > 1e-12) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = g(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = g(b);
        }
    }
    const double s_ref = (lo + hi) / 2.0;
    const double v_ref = g(s_ref);
    RestrictedResult out;
    if (v_ref <= best_val) {
        out.value = v_ref;
        out.s = s_ref;
    } else {
        out.value = best_val;
        out.s = best_s;
    }
    return out;
}

bool is_measure_selector(std::string_view name) {
    return name == "l1" || name == "re" || name == "tr" || name == "d:trace" ||
           name == "d:bures" || name == "d:re";
}

}  // namespace coh
