// Copyright 2026 The entlab developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ENTLAB_FORRELATION_HPP
#define ENTLAB_FORRELATION_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "entlab/qcore.hpp"

namespace entlab {

// Vectors are +-1 valued throughout; labels use -1 / +1 with 0 for the
// unpromised gap region.

struct ForrInstance {
    int n = 0;
    std::vector<int> x, y;
    int label = 0;
};

/// k instances over a common n, evaluated as the product of copy labels.
struct ForrXorInstance {
    int k = 0;
    double epsilon = 0.0;
    std::vector<ForrInstance> copies;

    ForrXorInstance() = default;
    ForrXorInstance(double epsilon, std::vector<ForrInstance> copies);

    /// Product of copy labels, or 0 when any copy is unlabelled.
    int xor_label() const;
};

bool is_power_of_two(uint64_t v);

/// Correlation (1/n) <z2, H z1> between the second half of z and the
/// half-size orthonormal Hadamard transform of the first half. Always in
/// [-1/2, 1/2].
double forr_value(const std::vector<int>& z);

/// Pointwise product x.y fed to forr_value: >= eps/4 labels -1, absolute
/// value <= eps/8 labels +1 (the test statistic ignores sign), otherwise 0.
int classify(const std::vector<int>& x, const std::vector<int>& y, double epsilon);

/// Nominal hardness parameter 1/(60 k^2 ln n).
double canonical_epsilon(int k, int n);

/// Planting is attempted only when epsilon >= 8 * kPlantingConstant / sqrt(n);
/// below that scale the +1 promise band is narrower than the sampling noise.
inline constexpr double kPlantingConstant = 0.5;
inline constexpr long kPlantRejectionCap = 1000000;

struct PlantResult {
    ForrInstance inst;
    long attempts = 0;  // total draws including the successful one
};

/// Builds a promise instance for the requested label. Label -1 mixes the
/// second half of the product vector toward the Hadamard image of the first
/// half until the threshold is met; label +1 rejection-samples independent
/// pairs until the absolute value falls inside the band.
PlantResult plant_with_stats(int n, double epsilon, int target_label, uint64_t seed);
ForrInstance plant_instance(int n, double epsilon, int target_label, uint64_t seed);

/// ceil(48 / eps^4) * ceil(log2(6k)) tests per copy.
long default_reps(double epsilon, int k);

/// Normalized encoding (1/sqrt(n)) sum_j v_j |j>.
StateVector encode_vector(const std::vector<int>& v);

/// Full-size orthonormal Hadamard applied to the encoding of v.
StateVector hadamard_encode(const std::vector<int>& v);

/// <x|H_n|y> for the unit encodings, i.e. (1/n) x^T H_n y.
double swap_bias(const std::vector<int>& x, const std::vector<int>& y);

/// 1/2 + swap_bias^2 / 2.
double swap_accept_probability(const std::vector<int>& x, const std::vector<int>& y);

/// Acceptance-frequency cutoff 1/2 + (eps/4)^2 * 9/128.
double decision_threshold(double epsilon);

/// reps sampled swap tests against the cutoff; -1 when the acceptance
/// frequency reaches the threshold.
int swap_test_copy(const ForrInstance& copy, double epsilon, long reps, std::mt19937_64& rng);

/// Per-copy decisions (seeded independently from `seed`) multiplied together.
int swap_test_protocol(const ForrXorInstance& inst, long reps, uint64_t seed);

}  // namespace entlab

#endif
