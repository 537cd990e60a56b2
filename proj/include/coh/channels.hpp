#pragma once

#include "coh/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace coh {

/// CPTP map in operator-sum form. Factories guarantee completeness
/// sum_j K_j^dag K_j = I within 1e-10.
struct KrausChannel {
    int dim = 2;
    std::vector<Mat> ops;
    std::string label;
};

/// Noise strength from a decoherence rate and elapsed time, q = 1 - exp(-gamma t).
double noise_from_rate(double gamma, double t);

KrausChannel identity_channel(int dim);

/// Bit flip (k=1), bit-phase flip (k=2), phase flip (k=3):
/// Kraus set {sqrt(1-q/2) I, sqrt(q/2) sigma_k}, with zero operators omitted.
KrausChannel flip_channel(int k, double q);

KrausChannel depolarizing_channel(double q);
KrausChannel amplitude_damping_channel(double q);
KrausChannel phase_damping_channel(double q);

/// All N-fold tensor products of the single-qubit Kraus operators.
KrausChannel lift_local(const KrausChannel& single, int n_qubits);

/// Global rephasing channel on even N qubits: 2^(N+1) operators
/// sqrt((1+-r)/2) |beta_i^+-><computational|.
KrausChannel rephasing_channel(double r, int n_qubits);

/// rho -> sum_j K_j rho K_j^dag.
DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho);

double completeness_defect(const KrausChannel& channel);

/// True iff each Kraus operator maps every computational-basis projector to
/// a diagonal matrix within tol (incoherent states are the convex hull of
/// these projectors, and K delta K^dag is linear in delta).
bool is_incoherent_channel(const KrausChannel& channel, double tol = 1e-10);

/// Channel descriptor as it appears in run configs and CLI flags.
struct ChannelSpec {
    std::string kind;          // bit_flip, bit_phase_flip, phase_flip,
                               // depolarizing, amplitude_damping,
                               // phase_damping, rephasing, identity
    double strength = 0.0;     // q, or r for rephasing
    std::optional<double> gamma;
    std::optional<double> t;
    double effective_strength() const;
    bool is_flip() const;
    int flip_axis() const;     // 1..3, only when is_flip()
};

/// Build the N-qubit channel: local kinds are lifted, rephasing is global.
KrausChannel make_channel(const ChannelSpec& spec, int n_qubits,
                          double strength);

}  // namespace coh
