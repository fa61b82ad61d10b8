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

#ifndef ENTLAB_RANDOM_HPP
#define ENTLAB_RANDOM_HPP

#include <random>

#include "entlab/qcore.hpp"

namespace entlab {

StateVector random_state_vector(int qubits, std::mt19937_64& rng);

/// Full-rank mixed state G G^dag / Tr with complex Gaussian G.
DensityMatrix random_density(int qubits, std::mt19937_64& rng);

/// Same construction over real Gaussians; the result has a real matrix.
DensityMatrix random_real_density(int qubits, std::mt19937_64& rng);

/// Haar-distributed via QR of a complex Gaussian with phase-fixed diagonal.
UnitaryOp random_unitary(int qubits, std::mt19937_64& rng);

/// Haar-distributed real orthogonal matrix.
UnitaryOp random_orthogonal(int qubits, std::mt19937_64& rng);

/// `outcomes` Kraus blocks cut from a Haar random isometry, so completeness
/// holds exactly up to rounding. Labels are 0..outcomes-1 unless given.
MeasurementFamily random_measurement(int qubits, int outcomes, std::mt19937_64& rng,
                                     std::vector<int> labels = {});

/// Hermitian with spectrum in [-1, 1], built as M+^dag M+ - M-^dag M- from a
/// random two-outcome family.
CMatrix random_hermitian_contraction(int qubits, std::mt19937_64& rng);

/// Real symmetric with spectrum in [-1, 1].
CMatrix random_real_symmetric_contraction(int qubits, std::mt19937_64& rng);

}  // namespace entlab

#endif
