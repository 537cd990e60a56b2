#pragma once

#include "coh/coherence.hpp"
#include "coh/m3.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace coh::verify {

constexpr std::uint64_t kDefaultSeed = 0xF0C05;
constexpr int kDefaultSamples = 50;

struct LemmaReport {
    std::string id;
    int instances = 0;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::uint64_t seed = 0;
    std::vector<std::string> counterexamples;  // at most a handful
};

/// Translational invariance within the M3 family (both equalities, with the
/// dephasing/rephasing one-sided inequalities checked first).
LemmaReport translational_invariance(DistanceKind d, int samples, int n_qubits,
                                     std::uint64_t seed);

/// Full-simplex brute-force minimum vs the one-parameter M3 family; N=2.
LemmaReport closest_incoherent_structure(DistanceKind d, int samples,
                                         std::uint64_t seed);

/// Optimal family parameter is s = c3 for freezing triples; the oracle
/// reports the midpoint of the scanned minimizing set (the trace distance
/// minimum is attained on a flat interval centered there).
LemmaReport optimal_s(DistanceKind d, int samples, int n_qubits,
                      std::uint64_t seed);

/// Pairwise sigma1 (x) sigma1 symmetrization: invariance of M3 states,
/// monotone distance chain, and M3 form of the final iterate.
LemmaReport symmetrization_chain(DistanceKind d, int samples, int n_qubits,
                                 std::uint64_t seed);

/// Rephasing channel: completeness, closed-form action on (0,0,c3), and the
/// spectral identities on the paired-basis projectors.
LemmaReport rephasing(int samples, int n_qubits, std::uint64_t seed);

/// Closed-form M3 spectrum against the numeric eigensolver, including the
/// parity of each eigenvector.
LemmaReport eigensystem(int samples, int n_qubits, std::uint64_t seed);

/// Restricted-minimizer C_D constant along bit flip evolution and equal to
/// D({c1,0,0},{0,0,0}).
LemmaReport frozen_identity(DistanceKind d, int samples, int n_qubits,
                            std::uint64_t seed);

/// Brute-force simplex oracle used by closest_incoherent_structure.
double simplex_oracle(const DensityMatrix& rho, DistanceKind d,
                      std::uint64_t seed);

/// Selector in {all, A1, A2, A3, rephasing, symmetrization, frozen-identity,
/// eigensystem}. Throws on unknown selectors.
std::vector<LemmaReport> run_suite(const std::string& selector,
                                   std::uint64_t seed = kDefaultSeed,
                                   int samples = kDefaultSamples);

}  // namespace coh::verify
