#pragma once

#include <cstdint>

#include "svn/erm.hpp"
#include "svn/operator.hpp"

namespace svn {

enum class SampleDist { kUnitSphere, kScaledCube };

// A synthetic data scenario: ground-truth operator with power-law spectrum
// s_k = scale * k^(-decay), bounded inputs, isotropic Gaussian output noise
// clipped radially to ||y|| <= c_y.
struct ScenarioSpec {
    int d_x = 8;
    int d_y = 8;
    double decay = 2.0;          // alpha
    double scale = 1.0;          // c
    SampleDist dist = SampleDist::kUnitSphere;
    double c_x = 1.0;
    double noise_sigma = 0.0;
    double c_y = 1.0;
    std::uint64_t seed = 0;
};

void validate(const ScenarioSpec& spec);

// Seeded ground-truth operator: random orthonormal factors, spectrum
// s_k = scale * k^(-decay). Deterministic in spec.seed.
LinearOperator make_ground_truth(const ScenarioSpec& spec);

// One sample pair. Depends only on (spec.seed, index); draw order and
// thread scheduling are immaterial.
std::pair<HilbertVector, HilbertVector> sample_pair(const LinearOperator& truth,
                                                    const ScenarioSpec& spec,
                                                    std::uint64_t index);

// n consecutive pairs starting at index_offset, packed into a TrainingSet.
TrainingSet make_training_set(const LinearOperator& truth, const ScenarioSpec& spec,
                              Eigen::Index n, std::uint64_t index_offset = 0);

// Tikhonov regularized inverse of a: singular values s / (s^2 + lambda) on
// the singular subspaces of a's adjoint. Computed spectrally.
LinearOperator tikhonov_truth(const LinearOperator& a, double lambda);

}  // namespace svn
