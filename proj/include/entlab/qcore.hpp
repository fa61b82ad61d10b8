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

#ifndef ENTLAB_QCORE_HPP
#define ENTLAB_QCORE_HPP

#include <Eigen/Dense>
#include <complex>
#include <optional>
#include <vector>

namespace entlab {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Numeric tolerance for state/operator validity checks.
inline constexpr double kStateTol = 1e-10;

/// Pure state on `qubits` qubits. Qubit 0 is the leftmost tensor factor and
/// the most significant bit of the amplitude index, so tensor_product(a, b)
/// concatenates index bits of `a` above those of `b`.
struct StateVector {
    int qubits = 0;
    CVector amps;

    StateVector() = default;
    StateVector(int qubits, CVector amps);

    Eigen::Index dim() const { return amps.size(); }

    static StateVector basis(int qubits, uint64_t index);
    /// (|0...0> + |1...1>)/sqrt(2) interpreted as d pairs: index (i, i) over
    /// side dimension 2^d, i.e. the canonical rank-2^d maximally entangled state.
    static StateVector max_entangled(int d);
};

/// Mixed state: Hermitian, positive semidefinite, unit trace (all within kStateTol).
struct DensityMatrix {
    int qubits = 0;
    CMatrix mat;

    DensityMatrix() = default;
    DensityMatrix(int qubits, CMatrix mat);

    Eigen::Index dim() const { return mat.rows(); }

    static DensityMatrix pure(const StateVector& psi);
};

/// Unitary on `qubits` qubits (U U^dag = I within kStateTol).
struct UnitaryOp {
    int qubits = 0;
    CMatrix mat;

    UnitaryOp() = default;
    UnitaryOp(int qubits, CMatrix mat);

    Eigen::Index dim() const { return mat.rows(); }
};

/// Labelled operators {M_o} with sum_o M_o^dag M_o = I within kStateTol.
struct MeasurementFamily {
    int qubits = 0;
    std::vector<int> labels;
    std::vector<CMatrix> ops;

    MeasurementFamily() = default;
    MeasurementFamily(int qubits, std::vector<int> labels, std::vector<CMatrix> ops);
};

struct MeasureOutcome {
    int label = 0;
    double prob = 0.0;
    /// Absent when prob is numerically zero (< 1e-12).
    std::optional<DensityMatrix> post;
};

StateVector tensor_product(const StateVector& a, const StateVector& b);
DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b);
UnitaryOp tensor_product(const UnitaryOp& a, const UnitaryOp& b);

StateVector apply(const UnitaryOp& u, const StateVector& psi);
DensityMatrix apply(const UnitaryOp& u, const DensityMatrix& rho);

/// Applies `u` to the listed qubit positions (u's qubit k acts on targets[k]),
/// leaving the rest untouched.
StateVector apply(const UnitaryOp& u, const StateVector& psi, const std::vector<int>& targets);

/// Traces out every qubit not listed in `keep` (positions counted from the
/// leftmost factor). Keeping nothing yields the scalar trace as a 1x1 matrix.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep);

/// Orthonormal Hadamard transform on all `qubits` qubits, entries +-2^{-qubits/2}.
UnitaryOp hadamard_all(int qubits);

/// Outcome probabilities Tr(M rho M^dag) and normalized post-states.
std::vector<MeasureOutcome> measure(const DensityMatrix& rho, const MeasurementFamily& fam);

/// Pure-state branch of `measure`: probabilities |M psi|^2 with collapsed states.
struct PureOutcome {
    int label = 0;
    double prob = 0.0;
    std::optional<StateVector> post;
};
std::vector<PureOutcome> measure(const StateVector& psi, const MeasurementFamily& fam);

/// Measures only the listed qubit positions with a family acting on them.
std::vector<PureOutcome> measure(const StateVector& psi, const MeasurementFamily& fam,
                                 const std::vector<int>& targets);

/// Sum of singular values.
double trace_norm(const CMatrix& m);
/// Largest singular value.
double operator_norm(const CMatrix& m);
/// (1/2) || rho - sigma ||_1.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

/// Acceptance probability 1/2 + |<phi|psi>|^2 / 2 of the standard swap test.
double swap_test_prob(const StateVector& phi, const StateVector& psi);

}  // namespace entlab

#endif
