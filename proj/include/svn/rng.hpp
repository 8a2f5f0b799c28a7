#pragma once

#include <Eigen/Core>
#include <cstdint>

namespace svn {

// splitmix64 finalizer; also used to derive stream keys.
inline std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Counter-based stream derivation: the value of a stream depends only on the
// ids fed in, never on call order or thread scheduling.
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t id) {
    return mix64(seed ^ mix64(id));
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
    return derive_stream(derive_stream(seed, a), b);
}

inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                                   std::uint64_t c) {
    return derive_stream(derive_stream(seed, a, b), c);
}

// Small deterministic generator (splitmix64 walk) for one derived stream.
class RngStream {
public:
    explicit RngStream(std::uint64_t key) : state_(key) {}
    RngStream(std::uint64_t seed, std::uint64_t id) : state_(derive_stream(seed, id)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform on the open interval (0, 1).
    double next_uniform() { return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53; }

    // Standard normal via Box-Muller; consumes exactly two uniforms.
    double next_gaussian() {
        const double u1 = next_uniform();
        const double u2 = next_uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    // +1 or -1 with equal probability.
    int next_sign() { return (next_u64() >> 63) ? 1 : -1; }

    Eigen::VectorXd gaussian_vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v[i] = next_gaussian();
        return v;
    }

    Eigen::MatrixXd gaussian_matrix(Eigen::Index rows, Eigen::Index cols) {
        Eigen::MatrixXd m(rows, cols);
        for (Eigen::Index j = 0; j < cols; ++j)
            for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = next_gaussian();
        return m;
    }

private:
    std::uint64_t state_;
};

}  // namespace svn
