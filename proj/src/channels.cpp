#include "coh/channels.hpp"

#include <cmath>
#include <stdexcept>

namespace coh {

namespace {

void check_q(double q, const char* who) {
    if (!(q >= 0.0 && q <= 1.0))
        throw std::invalid_argument(std::string(who) + ": q must lie in [0,1]");
}

}  // namespace

double noise_from_rate(double gamma, double t) {
    if (gamma < 0.0 || t < 0.0)
        throw std::invalid_argument("noise_from_rate: gamma and t must be >= 0");
    return 1.0 - std::exp(-gamma * t);
}

KrausChannel identity_channel(int dim) {
    return {dim, {Mat::Identity(dim, dim)}, "identity"};
}

KrausChannel flip_channel(int k, double q) {
    if (k < 1 || k > 3)
        throw std::invalid_argument("flip_channel: k must be in 1..3");
    check_q(q, "flip_channel");
    KrausChannel ch;
    ch.dim = 2;
    ch.label = k == 1 ? "bit_flip" : (k == 2 ? "bit_phase_flip" : "phase_flip");
    ch.ops.push_back(std::sqrt(1.0 - q / 2.0) * pauli(0));
    if (q > 0.0) ch.ops.push_back(std::sqrt(q / 2.0) * pauli(k));
    return ch;
}

KrausChannel depolarizing_channel(double q) {
    check_q(q, "depolarizing_channel");
    KrausChannel ch;
    ch.dim = 2;
    ch.label = "depolarizing";
    ch.ops.push_back(std::sqrt(1.0 - 3.0 * q / 4.0) * pauli(0));
    if (q > 0.0)
        for (int j = 1; j <= 3; ++j)
            ch.ops.push_back(std::sqrt(q / 4.0) * pauli(j));
    return ch;
}

KrausChannel amplitude_damping_channel(double q) {
    check_q(q, "amplitude_damping_channel");
    Mat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - q);
    k1 << 0, std::sqrt(q), 0, 0;
    KrausChannel ch{2, {k0}, "amplitude_damping"};
    if (q > 0.0) ch.ops.push_back(k1);
    return ch;
}

KrausChannel phase_damping_channel(double q) {
    check_q(q, "phase_damping_channel");
    Mat k0(2, 2), k1(2, 2);
    k0 << 1, 0, 0, std::sqrt(1.0 - q);
    k1 << 0, 0, 0, std::sqrt(q);
    KrausChannel ch{2, {k0}, "phase_damping"};
    if (q > 0.0) ch.ops.push_back(k1);
    return ch;
}

KrausChannel lift_local(const KrausChannel& single, int n_qubits) {
    if (single.dim != 2)
        throw std::invalid_argument("lift_local: expected a single-qubit channel");
    if (n_qubits < 1 || n_qubits > 6)
        throw std::invalid_argument("lift_local: need 1 <= N <= 6");
    KrausChannel out;
    out.dim = 1 << n_qubits;
    out.label = single.label;
    const size_t m = single.ops.size();
    std::vector<size_t> idx(n_qubits, 0);
    while (true) {
        Mat op = single.ops[idx[0]];
        for (int j = 1; j < n_qubits; ++j) op = tensor(op, single.ops[idx[j]]);
        out.ops.push_back(std::move(op));
        int j = n_qubits - 1;
        while (j >= 0 && ++idx[j] == m) idx[j--] = 0;
        if (j < 0) break;
    }
    return out;
}

KrausChannel rephasing_channel(double r, int n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0)
        throw std::invalid_argument("rephasing_channel: N must be even");
    if (!(r >= 0.0 && r <= 1.0))
        throw std::invalid_argument("rephasing_channel: r must lie in [0,1]");
    const int dim = 1 << n_qubits;
    KrausChannel ch;
    ch.dim = dim;
    ch.label = "rephasing";
    for (int y = 0; y < dim; ++y) {
        const int x = std::min(y, ~y & (dim - 1));
        for (int sign : {+1, -1}) {
            const CVec beta = beta_vector(n_qubits, x, sign);
            Mat op = Mat::Zero(dim, dim);
            op.col(y) = std::sqrt((1.0 + sign * r) / 2.0) * beta;
            ch.ops.push_back(std::move(op));
        }
    }
    return ch;
}

DensityMatrix apply(const KrausChannel& channel, const DensityMatrix& rho) {
    if (channel.dim != rho.dim())
        throw std::invalid_argument("apply: dimension mismatch");
    Mat out = Mat::Zero(channel.dim, channel.dim);
    for (const Mat& k : channel.ops) out += k * rho.mat() * k.adjoint();
    out = (out + out.adjoint()) / 2.0;
    return DensityMatrix(out);
}

double completeness_defect(const KrausChannel& channel) {
    Mat sum = Mat::Zero(channel.dim, channel.dim);
    for (const Mat& k : channel.ops) sum += k.adjoint() * k;
    return (sum - Mat::Identity(channel.dim, channel.dim)).cwiseAbs().maxCoeff();
}

bool is_incoherent_channel(const KrausChannel& channel, double tol) {
    for (const Mat& k : channel.ops) {
        for (int j = 0; j < channel.dim; ++j) {
            const CVec col = k.col(j);
            const Mat outer = col * col.adjoint();
            for (int a = 0; a < channel.dim; ++a)
                for (int b = 0; b < channel.dim; ++b)
                    if (a != b && std::abs(outer(a, b)) > tol) return false;
        }
    }
    return true;
}

double ChannelSpec::effective_strength() const {
    if (gamma && t) return noise_from_rate(*gamma, *t);
    return strength;
}

bool ChannelSpec::is_flip() const {
    return kind == "bit_flip" || kind == "bit_phase_flip" || kind == "phase_flip";
}

int ChannelSpec::flip_axis() const {
    if (kind == "bit_flip") return 1;
    if (kind == "bit_phase_flip") return 2;
    if (kind == "phase_flip") return 3;
    throw std::logic_error("flip_axis: not a flip channel");
}

KrausChannel make_channel(const ChannelSpec& spec, int n_qubits, double strength) {
    if (spec.kind == "identity") return identity_channel(1 << n_qubits);
    if (spec.kind == "rephasing") return rephasing_channel(strength, n_qubits);
    KrausChannel local;
    if (spec.is_flip())
        local = flip_channel(spec.flip_axis(), strength);
    else if (spec.kind == "depolarizing")
        local = depolarizing_channel(strength);
    else if (spec.kind == "amplitude_damping")
        local = amplitude_damping_channel(strength);
    else if (spec.kind == "phase_damping")
        local = phase_damping_channel(strength);
    else
        throw std::invalid_argument("make_channel: unknown kind '" + spec.kind + "'");
    return n_qubits == 1 ? local : lift_local(local, n_qubits);
}

}  // namespace coh
