#include "coh/random.hpp"

#include <cmath>

namespace coh {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t z = seed ^ (index + 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

M3Triple random_valid_triple(std::mt19937_64& rng, int n_qubits) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        M3Triple c{u(rng), u(rng), u(rng), n_qubits};
        if (m3_is_valid(c)) return c;
    }
}

M3Triple random_freezing_triple(std::mt19937_64& rng, int n_qubits) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        const double c1 = u(rng), c3 = u(rng);
        M3Triple c{c1, ((n_qubits / 2) % 2 == 0 ? 1.0 : -1.0) * c1 * c3, c3,
                   n_qubits};
        if (m3_is_valid(c)) return c;
    }
}

DensityMatrix random_density(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Mat g(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g(i, j) = cplx(gauss(rng), gauss(rng));
    Mat m = g * g.adjoint();
    m /= m.trace().real();
    m = (m + m.adjoint()) / 2.0;
    return DensityMatrix(m);
}

BlochVector random_bloch(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    while (true) {
        BlochVector n{u(rng), u(rng), u(rng)};
        if (n.norm() <= 1.0) return n;
    }
}

RVec random_simplex(std::mt19937_64& rng, int dim) {
    std::exponential_distribution<double> e(1.0);
    RVec p(dim);
    for (int i = 0; i < dim; ++i) p(i) = e(rng);
    return p / p.sum();
}

}  // namespace coh
