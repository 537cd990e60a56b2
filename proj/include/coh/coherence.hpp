#pragma once

#include "coh/linalg.hpp"
#include "coh/m3.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace coh {

/// Contractive, jointly convex distances that induce coherence measures.
enum class DistanceKind { trace, bures, relative_entropy };

DistanceKind parse_distance(std::string_view name);
std::string distance_name(DistanceKind d);

double distance(DistanceKind d, const DensityMatrix& rho,
                const DensityMatrix& tau);

/// Diagonal state over the computational basis: a probability vector.
struct IncoherentState {
    RVec diag;
    DensityMatrix to_density() const;
};

struct MinimizeOptions {
    int restarts = 8;            // rho_diag start, uniform start, rest random
    std::uint64_t seed = 0;
    int max_evals = 20000;       // per restart
    double step_tol = 1e-9;
    double value_tol = 1e-10;
};

struct CoherenceResult {
    double value = 0.0;
    std::optional<IncoherentState> minimizer;
    enum class Method { closed_form, optimizer } method = Method::closed_form;
    int restarts_used = 0;
    double final_step = 0.0;
    bool converged = true;
};

/// Sum of moduli of the off-diagonal entries.
double c_l1(const DensityMatrix& rho);

/// S(rho_diag) - S(rho), in bits.
double c_re(const DensityMatrix& rho);

/// Trace distance of coherence of an even-N M3 state, via the closed form
/// (|c1-c2| + |c1+c2|)/4 = c_l1/2.
double c_tr_m3(const M3Triple& c);

/// min over incoherent delta of D(rho, delta). Relative entropy short-circuits
/// to the closed form with minimizer rho_diag; trace and Bures run a
/// derivative-free simplex search (softmax parameterization, multi-start).
/// General optimizer requires dim <= 16.
CoherenceResult c_d(const DensityMatrix& rho, DistanceKind d,
                    const MinimizeOptions& opts = {});

/// 1-D minimization over the incoherent M3 family delta(s); even N.
/// Returns the value and the optimal s (as minimizer diag).
struct RestrictedResult {
    double value = 0.0;
    double s = 0.0;
};
RestrictedResult c_d_m3_restricted(const M3Triple& c, DistanceKind d);

bool is_incoherent(const DensityMatrix& rho, double tol = 1e-12);

/// D(rho, diag(p)) for a probability vector p; shared by the optimizer and
/// the brute-force oracles.
double diag_distance(DistanceKind d, const DensityMatrix& rho, const RVec& p);

/// Local search over the simplex from a given start; used by the brute-force
/// oracles to polish seeded candidates.
double minimize_diag_distance(const DensityMatrix& rho, DistanceKind d,
                              const RVec& start, const MinimizeOptions& opts);

IncoherentState diagonal_part(const DensityMatrix& rho);

/// Measure selector strings: "l1", "re", "tr", "d:trace", "d:bures", "d:re".
bool is_measure_selector(std::string_view name);

}  // namespace coh
