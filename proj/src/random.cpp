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

#include "entlab/random.hpp"

#include <Eigen/QR>

namespace entlab {

namespace {

CMatrix complex_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cdouble(g(rng), g(rng));
    return m;
}

CMatrix real_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = g(rng);
    return m;
}

// QR with the R diagonal rotated onto the positive real axis gives Haar measure.
CMatrix haar_from_gaussian(CMatrix g) {
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ() * CMatrix::Identity(g.rows(), g.cols());
    CMatrix r = qr.matrixQR().topRows(g.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < g.cols(); ++j) {
        cdouble d = r(j, j);
        cdouble phase = std::abs(d) > 0 ? d / std::abs(d) : cdouble(1.0);
        q.col(j) *= std::conj(phase);
    }
    return q;
}

}  // namespace

StateVector random_state_vector(int qubits, std::mt19937_64& rng) {
    CVector v = complex_gaussian(Eigen::Index(1) << qubits, 1, rng).col(0);
    return StateVector(qubits, v / v.norm());
}

DensityMatrix random_density(int qubits, std::mt19937_64& rng) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    CMatrix g = complex_gaussian(dim, dim, rng);
    CMatrix w = g * g.adjoint();
    return DensityMatrix(qubits, w / w.trace().real());
}

DensityMatrix random_real_density(int qubits, std::mt19937_64& rng) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    CMatrix g = real_gaussian(dim, dim, rng);
    CMatrix w = g * g.adjoint();
    return DensityMatrix(qubits, w / w.trace().real());
}

UnitaryOp random_unitary(int qubits, std::mt19937_64& rng) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    return UnitaryOp(qubits, haar_from_gaussian(complex_gaussian(dim, dim, rng)));
}

UnitaryOp random_orthogonal(int qubits, std::mt19937_64& rng) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    return UnitaryOp(qubits, haar_from_gaussian(real_gaussian(dim, dim, rng)));
}

MeasurementFamily random_measurement(int qubits, int outcomes, std::mt19937_64& rng,
                                     std::vector<int> labels) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    CMatrix isometry = haar_from_gaussian(complex_gaussian(dim * outcomes, dim, rng));
    std::vector<CMatrix> ops;
    ops.reserve(outcomes);
    for (int k = 0; k < outcomes; ++k) ops.push_back(isometry.middleRows(k * dim, dim));
    if (labels.empty())
        for (int k = 0; k < outcomes; ++k) labels.push_back(k);
    return MeasurementFamily(qubits, std::move(labels), std::move(ops));
}

CMatrix random_hermitian_contraction(int qubits, std::mt19937_64& rng) {
    MeasurementFamily fam = random_measurement(qubits, 2, rng, {+1, -1});
    return fam.ops[0].adjoint() * fam.ops[0] - fam.ops[1].adjoint() * fam.ops[1];
}

CMatrix random_real_symmetric_contraction(int qubits, std::mt19937_64& rng) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    CMatrix isometry = haar_from_gaussian(real_gaussian(dim * 2, dim, rng));
    CMatrix a = isometry.topRows(dim), b = isometry.bottomRows(dim);
    return a.adjoint() * a - b.adjoint() * b;
}

}  // namespace entlab
