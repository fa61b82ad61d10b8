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

#include "entlab/qcore.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace entlab {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Eigen::Index check_dim(int qubits, Eigen::Index actual, const char* what) {
    require(qubits >= 0 && qubits <= 30, std::string(what) + ": qubit count out of range");
    Eigen::Index want = Eigen::Index(1) << qubits;
    require(actual == want, std::string(what) + ": dimension " + std::to_string(actual) +
                                " does not match 2^" + std::to_string(qubits));
    return want;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

}  // namespace

StateVector::StateVector(int q, CVector a) : qubits(q), amps(std::move(a)) {
    check_dim(q, amps.size(), "StateVector");
    require(std::abs(amps.norm() - 1.0) <= kStateTol, "StateVector: norm must be 1");
}

StateVector StateVector::basis(int qubits, uint64_t index) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    require(index < uint64_t(dim), "StateVector::basis: index out of range");
    CVector v = CVector::Zero(dim);
    v(Eigen::Index(index)) = 1.0;
    return StateVector(qubits, std::move(v));
}

StateVector StateVector::max_entangled(int d) {
    require(d >= 1, "max_entangled: need d >= 1");
    Eigen::Index side = Eigen::Index(1) << d;
    CVector v = CVector::Zero(side * side);
    double amp = 1.0 / std::sqrt(double(side));
    for (Eigen::Index i = 0; i < side; ++i) v(i * side + i) = amp;
    return StateVector(2 * d, std::move(v));
}

DensityMatrix::DensityMatrix(int q, CMatrix m) : qubits(q), mat(std::move(m)) {
    Eigen::Index dim = check_dim(q, mat.rows(), "DensityMatrix");
    require(mat.cols() == dim, "DensityMatrix: must be square");
    require((mat - mat.adjoint()).cwiseAbs().maxCoeff() <= kStateTol,
            "DensityMatrix: must be Hermitian");
    require(std::abs(mat.trace().real() - 1.0) <= kStateTol &&
                std::abs(mat.trace().imag()) <= kStateTol,
            "DensityMatrix: trace must be 1");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mat, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -kStateTol,
            "DensityMatrix: must be positive semidefinite");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    return DensityMatrix(psi.qubits, psi.amps * psi.amps.adjoint());
}

UnitaryOp::UnitaryOp(int q, CMatrix m) : qubits(q), mat(std::move(m)) {
    Eigen::Index dim = check_dim(q, mat.rows(), "UnitaryOp");
    require(mat.cols() == dim, "UnitaryOp: must be square");
    CMatrix gram = mat * mat.adjoint();
    require((gram - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= kStateTol,
            "UnitaryOp: must be unitary");
}

MeasurementFamily::MeasurementFamily(int q, std::vector<int> l, std::vector<CMatrix> o)
    : qubits(q), labels(std::move(l)), ops(std::move(o)) {
    Eigen::Index dim = check_dim(q, ops.empty() ? 0 : ops[0].rows(), "MeasurementFamily");
    require(!ops.empty() && labels.size() == ops.size(),
            "MeasurementFamily: labels and operators must pair up");
    CMatrix total = CMatrix::Zero(dim, dim);
    for (const CMatrix& m : ops) {
        require(m.rows() == dim && m.cols() == dim, "MeasurementFamily: operator shape mismatch");
        total += m.adjoint() * m;
    }
    require((total - CMatrix::Identity(dim, dim)).cwiseAbs().maxCoeff() <= kStateTol,
            "MeasurementFamily: operators must satisfy completeness");
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    CVector v(a.dim() * b.dim());
    for (Eigen::Index i = 0; i < a.dim(); ++i)
        v.segment(i * b.dim(), b.dim()) = a.amps(i) * b.amps;
    return StateVector(a.qubits + b.qubits, std::move(v));
}

DensityMatrix tensor_product(const DensityMatrix& a, const DensityMatrix& b) {
    return DensityMatrix(a.qubits + b.qubits, kron(a.mat, b.mat));
}

UnitaryOp tensor_product(const UnitaryOp& a, const UnitaryOp& b) {
    return UnitaryOp(a.qubits + b.qubits, kron(a.mat, b.mat));
}

StateVector apply(const UnitaryOp& u, const StateVector& psi) {
    require(u.qubits == psi.qubits, "apply: qubit count mismatch");
    return StateVector(psi.qubits, u.mat * psi.amps);
}

namespace {

// Applies an operator on a qubit subset by gathering each strided sub-vector,
// multiplying, and scattering back. Targets give the operator's qubit order.
CVector apply_on_targets(const CMatrix& op, const CVector& amps, int qubits,
                         const std::vector<int>& targets) {
    int t = int(targets.size());
    require(op.rows() == Eigen::Index(1) << t && op.cols() == op.rows(),
            "target operator dimension mismatch");
    uint64_t target_mask = 0;
    std::vector<int> shift(t);
    for (int k = 0; k < t; ++k) {
        require(targets[k] >= 0 && targets[k] < qubits, "target position out of range");
        shift[k] = qubits - 1 - targets[k];
        require(!(target_mask >> shift[k] & 1), "duplicate target position");
        target_mask |= uint64_t(1) << shift[k];
    }
    auto sub_to_full = [&](Eigen::Index s) {
        uint64_t bits = 0;
        for (int k = 0; k < t; ++k)
            if (s >> (t - 1 - k) & 1) bits |= uint64_t(1) << shift[k];
        return bits;
    };
    std::vector<uint64_t> offsets(size_t(1) << t);
    for (Eigen::Index s = 0; s < Eigen::Index(1) << t; ++s) offsets[s] = sub_to_full(s);

    CVector out(amps.size());
    CVector sub(Eigen::Index(1) << t);
    for (uint64_t base = 0; base < uint64_t(amps.size()); ++base) {
        if (base & target_mask) continue;
        for (size_t s = 0; s < offsets.size(); ++s) sub(Eigen::Index(s)) = amps(base | offsets[s]);
        CVector res = op * sub;
        for (size_t s = 0; s < offsets.size(); ++s) out(base | offsets[s]) = res(Eigen::Index(s));
    }
    return out;
}

}  // namespace

StateVector apply(const UnitaryOp& u, const StateVector& psi, const std::vector<int>& targets) {
    return StateVector(psi.qubits, apply_on_targets(u.mat, psi.amps, psi.qubits, targets));
}

DensityMatrix apply(const UnitaryOp& u, const DensityMatrix& rho) {
    require(u.qubits == rho.qubits, "apply: qubit count mismatch");
    return DensityMatrix(rho.qubits, u.mat * rho.mat * u.mat.adjoint());
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<int>& keep) {
    int q = rho.qubits;
    std::vector<bool> kept(q, false);
    for (int pos : keep) {
        require(pos >= 0 && pos < q, "partial_trace: keep position out of range");
        require(!kept[pos], "partial_trace: duplicate keep position");
        kept[pos] = true;
    }
    int qk = int(keep.size());
    Eigen::Index dk = Eigen::Index(1) << qk;
    Eigen::Index dt = Eigen::Index(1) << (q - qk);

    // Qubit 0 is the most significant index bit; build bit scatter tables that
    // map (kept index, traced index) back to a full index.
    std::vector<int> keep_shift, trace_shift;
    for (int pos = 0; pos < q; ++pos)
        (kept[pos] ? keep_shift : trace_shift).push_back(q - 1 - pos);
    auto scatter = [](const std::vector<int>& shifts, Eigen::Index idx) {
        uint64_t full = 0;
        for (size_t b = 0; b < shifts.size(); ++b)
            if (idx >> (shifts.size() - 1 - b) & 1) full |= uint64_t(1) << shifts[b];
        return Eigen::Index(full);
    };

    CMatrix out = CMatrix::Zero(dk, dk);
    for (Eigen::Index r = 0; r < dk; ++r)
        for (Eigen::Index c = 0; c < dk; ++c) {
            cdouble sum = 0.0;
            for (Eigen::Index t = 0; t < dt; ++t) {
                Eigen::Index full_t = scatter(trace_shift, t);
                sum += rho.mat(scatter(keep_shift, r) | full_t, scatter(keep_shift, c) | full_t);
            }
            out(r, c) = sum;
        }
    return DensityMatrix(qk, std::move(out));
}

UnitaryOp hadamard_all(int qubits) {
    require(qubits >= 1, "hadamard_all: need at least one qubit");
    Eigen::Index dim = Eigen::Index(1) << qubits;
    double scale = 1.0 / std::sqrt(double(dim));
    CMatrix h(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            h(i, j) = (std::popcount(uint64_t(i) & uint64_t(j)) & 1) ? -scale : scale;
    return UnitaryOp(qubits, std::move(h));
}

std::vector<MeasureOutcome> measure(const DensityMatrix& rho, const MeasurementFamily& fam) {
    require(rho.qubits == fam.qubits, "measure: qubit count mismatch");
    std::vector<MeasureOutcome> out;
    out.reserve(fam.ops.size());
    for (size_t i = 0; i < fam.ops.size(); ++i) {
        CMatrix branch = fam.ops[i] * rho.mat * fam.ops[i].adjoint();
        double p = branch.trace().real();
        MeasureOutcome o;
        o.label = fam.labels[i];
        o.prob = p;
        if (p >= 1e-12) o.post = DensityMatrix(rho.qubits, branch / p);
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<PureOutcome> measure(const StateVector& psi, const MeasurementFamily& fam) {
    require(psi.qubits == fam.qubits, "measure: qubit count mismatch");
    std::vector<PureOutcome> out;
    out.reserve(fam.ops.size());
    for (size_t i = 0; i < fam.ops.size(); ++i) {
        CVector branch = fam.ops[i] * psi.amps;
        double p = branch.squaredNorm();
        PureOutcome o;
        o.label = fam.labels[i];
        o.prob = p;
        if (p >= 1e-12) o.post = StateVector(psi.qubits, branch / std::sqrt(p));
        out.push_back(std::move(o));
    }
    return out;
}

std::vector<PureOutcome> measure(const StateVector& psi, const MeasurementFamily& fam,
                                 const std::vector<int>& targets) {
    require(int(targets.size()) == fam.qubits, "measure: target count mismatch");
    std::vector<PureOutcome> out;
    out.reserve(fam.ops.size());
    for (size_t i = 0; i < fam.ops.size(); ++i) {
        CVector branch = apply_on_targets(fam.ops[i], psi.amps, psi.qubits, targets);
        double p = branch.squaredNorm();
        PureOutcome o;
        o.label = fam.labels[i];
        o.prob = p;
        if (p >= 1e-12) o.post = StateVector(psi.qubits, branch / std::sqrt(p));
        out.push_back(std::move(o));
    }
    return out;
}

double trace_norm(const CMatrix& m) {
    return Eigen::JacobiSVD<CMatrix>(m).singularValues().sum();
}

double operator_norm(const CMatrix& m) {
    Eigen::Index n = std::min(m.rows(), m.cols());
    if (n == 0) return 0.0;
    return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    require(rho.qubits == sigma.qubits, "trace_distance: qubit count mismatch");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(rho.mat - sigma.mat, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

double swap_test_prob(const StateVector& phi, const StateVector& psi) {
    require(phi.qubits == psi.qubits, "swap_test_prob: qubit count mismatch");
    return 0.5 + 0.5 * std::norm(phi.amps.dot(psi.amps));
}

}  // namespace entlab
