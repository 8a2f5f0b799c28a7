#include "svn/datagen.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <numeric>

#include "svn/rng.hpp"

namespace svn {

namespace {

// Stream-id tags keeping the truth and sample draws on disjoint substreams.
constexpr std::uint64_t kTruthTag = 0x74727574ULL;    // "trut"
constexpr std::uint64_t kSampleTag = 0x73616d70ULL;   // "samp"

Mat random_orthonormal(RngStream& rng, Eigen::Index dim, Eigen::Index r) {
    const Mat g = rng.gaussian_matrix(dim, r);
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ() * Mat::Identity(dim, r);
    return q;
}

}  // namespace

void validate(const ScenarioSpec& spec) {
    if (spec.d_x < 1 || spec.d_y < 1) throw InvalidInputError("scenario: dims must be >= 1");
    if (!(spec.decay >= 0.0)) throw InvalidInputError("scenario: decay must be >= 0");
    if (!(spec.scale > 0.0)) throw InvalidInputError("scenario: scale must be > 0");
    if (!(spec.c_x > 0.0) || !(spec.c_y > 0.0))
        throw InvalidInputError("scenario: norm bounds must be > 0");
    if (!(spec.noise_sigma >= 0.0))
        throw InvalidInputError("scenario: noise_sigma must be >= 0");
}

LinearOperator make_ground_truth(const ScenarioSpec& spec) {
    validate(spec);
    const Eigen::Index r = std::min(spec.d_x, spec.d_y);
    RngStream rng(derive_stream(spec.seed, kTruthTag));
    const Mat u = random_orthonormal(rng, spec.d_y, r);
    const Mat v = random_orthonormal(rng, spec.d_x, r);
    Vec s(r);
    for (Eigen::Index k = 0; k < r; ++k)
        s[k] = spec.scale * std::pow(static_cast<double>(k + 1), -spec.decay);
    return LinearOperator(u, s, v);
}

std::pair<HilbertVector, HilbertVector> sample_pair(const LinearOperator& truth,
                                                    const ScenarioSpec& spec,
                                                    std::uint64_t index) {
    RngStream rng(derive_stream(spec.seed, kSampleTag, index));
    Vec x;
    switch (spec.dist) {
        case SampleDist::kUnitSphere: {
            x = rng.gaussian_vector(spec.d_x);
            const double norm = x.norm();
            // A zero Gaussian vector has probability zero; guard regardless.
            x = (norm > 0.0) ? Vec(x * (spec.c_x / norm)) : Vec(Vec::Unit(spec.d_x, 0) * spec.c_x);
            break;
        }
        case SampleDist::kScaledCube: {
            x.resize(spec.d_x);
            for (int i = 0; i < spec.d_x; ++i) x[i] = 2.0 * rng.next_uniform() - 1.0;
            x *= spec.c_x / std::sqrt(static_cast<double>(spec.d_x));
            break;
        }
    }

    Vec y = truth.apply(x);
    if (spec.noise_sigma > 0.0)
        y += spec.noise_sigma * rng.gaussian_vector(spec.d_y);
    const double y_norm = y.norm();
    if (y_norm > spec.c_y) y *= spec.c_y / y_norm;

    if (!(x.norm() <= spec.c_x * (1.0 + 1e-12)) || !(y.norm() <= spec.c_y * (1.0 + 1e-12)))
        throw InvalidInputError("sample_pair: bound violated");
    return {std::move(x), std::move(y)};
}

TrainingSet make_training_set(const LinearOperator& truth, const ScenarioSpec& spec,
                              Eigen::Index n, std::uint64_t index_offset) {
    Mat x(spec.d_x, n), y(spec.d_y, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto [xi, yi] = sample_pair(truth, spec, index_offset + static_cast<std::uint64_t>(i));
        x.col(i) = xi;
        y.col(i) = yi;
    }
    return TrainingSet(std::move(x), std::move(y), spec.c_x, spec.c_y);
}

LinearOperator tikhonov_truth(const LinearOperator& a, double lambda) {
    if (!(lambda > 0.0)) throw InvalidInputError("tikhonov_truth: lambda must be > 0");
    const SvdFactors f = a.factors();
    const Eigen::Index r = f.s.size();
    Vec filtered(r);
    for (Eigen::Index k = 0; k < r; ++k)
        filtered[k] = f.s[k] / (f.s[k] * f.s[k] + lambda);
    // The filter s -> s/(s^2 + lambda) is not monotone; re-sort.
    std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](Eigen::Index i, Eigen::Index j) { return filtered[i] > filtered[j]; });
    Mat u(a.cols(), r), v(a.rows(), r);
    Vec s(r);
    for (Eigen::Index k = 0; k < r; ++k) {
        s[k] = filtered[order[k]];
        u.col(k) = f.v.col(order[k]);
        v.col(k) = f.u.col(order[k]);
    }
    return LinearOperator(std::move(u), std::move(s), std::move(v));
}

}  // namespace svn
