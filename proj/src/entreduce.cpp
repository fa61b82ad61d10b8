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

#include "entlab/entreduce.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace entlab {

namespace {

constexpr double kDropTol = 1e-14;

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

cdouble pair_phase(bool phase) { return phase ? cdouble(0.0, 1.0) : cdouble(1.0, 0.0); }

CVector basis_vec(Eigen::Index dim, Eigen::Index index) {
    CVector v = CVector::Zero(dim);
    v(index) = 1.0;
    return v;
}

int half_dim(int d) { return 1 << d; }

}  // namespace

DensityMatrix canonical_state(ComponentKind kind, int d) {
    require(d >= 1, "canonical_state: d must be positive");
    Eigen::Index side = Eigen::Index(1) << d;
    Eigen::Index dim = side * side;
    if (kind == ComponentKind::Zero) {
        CMatrix m = CMatrix::Zero(dim, dim);
        m(0, 0) = 1.0;
        return DensityMatrix(2 * d, std::move(m));
    }
    CVector v = CVector::Zero(dim);
    v(0) = 1.0 / std::sqrt(2.0);          // |0>_A |0>_B
    v(side + 1) = 1.0 / std::sqrt(2.0);   // |1>_A |1>_B
    return DensityMatrix(2 * d, v * v.adjoint());
}

DensityMatrix pair_state(int d, int i, int j, bool phase) {
    require(d >= 1, "pair_state: d must be positive");
    Eigen::Index dim = Eigen::Index(1) << (2 * d);
    require(i >= 0 && j >= 0 && i < dim && j < dim, "pair_state: index out of range");
    if (i == j) {
        CMatrix m = CMatrix::Zero(dim, dim);
        m(i, i) = 1.0;
        return DensityMatrix(2 * d, std::move(m));
    }
    CVector v = CVector::Zero(dim);
    v(i) = 1.0 / std::sqrt(2.0);
    v(j) = pair_phase(phase) / std::sqrt(2.0);
    return DensityMatrix(2 * d, v * v.adjoint());
}

UnitaryOp complete_unitary(int qubits, const std::vector<CVector>& assigned_columns) {
    Eigen::Index dim = Eigen::Index(1) << qubits;
    require(!assigned_columns.empty() && Eigen::Index(assigned_columns.size()) <= dim,
            "complete_unitary: column count out of range");
    CMatrix u(dim, dim);
    Eigen::Index filled = 0;
    for (const CVector& col : assigned_columns) {
        require(col.size() == dim, "complete_unitary: column dimension mismatch");
        u.col(filled++) = col;
    }
    for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
        CVector v = basis_vec(dim, e);
        for (Eigen::Index c = 0; c < filled; ++c) v -= u.col(c).dot(v) * u.col(c);
        double norm = v.norm();
        if (norm > 1e-8) u.col(filled++) = v / norm;
    }
    require(filled == dim, "complete_unitary: could not complete the basis");
    return UnitaryOp(qubits, std::move(u));
}

PairClass classify_pair(int i, int j, int d, bool phase) {
    require(d >= 1, "classify_pair: d must be positive");
    int side = half_dim(d);
    int dim = side * side;
    require(i >= 0 && j >= 0 && i < dim && j < dim, "classify_pair: index out of range");
    int a = i >> d, b = i & (side - 1);
    int p = j >> d, q = j & (side - 1);
    cdouble phi = pair_phase(phase);
    double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    PairClass out;
    if (i == j) {
        out.kind = ComponentKind::Zero;
        out.witness_a = complete_unitary(d, {basis_vec(side, a)});
        out.witness_b = complete_unitary(d, {basis_vec(side, b)});
    } else if (a == p) {
        out.kind = ComponentKind::Zero;
        out.witness_a = complete_unitary(d, {basis_vec(side, a)});
        out.witness_b = complete_unitary(
            d, {inv_sqrt2 * (basis_vec(side, b) + phi * basis_vec(side, q))});
    } else if (b == q) {
        out.kind = ComponentKind::Zero;
        out.witness_a = complete_unitary(
            d, {inv_sqrt2 * (basis_vec(side, a) + phi * basis_vec(side, p))});
        out.witness_b = complete_unitary(d, {basis_vec(side, b)});
    } else {
        out.kind = ComponentKind::Epr;
        out.witness_a = complete_unitary(d, {basis_vec(side, a), basis_vec(side, p)});
        out.witness_b =
            complete_unitary(d, {basis_vec(side, b), phi * CVector(basis_vec(side, q))});
    }
    return out;
}

Decomposition decompose(const DensityMatrix& rho) {
    require(rho.qubits % 2 == 0, "decompose: state must sit on 2d qubits");
    int d = rho.qubits / 2;
    require(d == 1 || d == 2, "decompose: d must be 1 or 2");
    Eigen::Index dim = rho.dim();

    Decomposition dec;
    dec.d = d;
    dec.complex_extension = rho.mat.imag().cwiseAbs().maxCoeff() > kStateTol;

    Eigen::MatrixXd re = rho.mat.real();
    Eigen::MatrixXd im = rho.mat.imag();
    std::vector<double> diag_spill(size_t(dim), 0.0);

    auto push = [&](double coeff, int i, int j, bool phase) {
        if (std::abs(coeff) <= kDropTol) return;
        PairClass cls = classify_pair(i, j, d, phase);
        SimpleComponent comp;
        comp.coefficient = coeff;
        comp.kind = cls.kind;
        comp.witness_a = std::move(cls.witness_a);
        comp.witness_b = std::move(cls.witness_b);
        comp.i = i;
        comp.j = j;
        comp.phase = phase;
        dec.components.push_back(std::move(comp));
    };

    for (Eigen::Index u = 0; u < dim; ++u)
        for (Eigen::Index v = 0; v < dim; ++v)
            if (u != v) push(re(u, v), int(u), int(v), false);

    if (dec.complex_extension) {
        // One phase component per unordered pair carries the antisymmetric
        // imaginary part; its diagonal leakage is repaid below.
        for (Eigen::Index u = 0; u < dim; ++u)
            for (Eigen::Index v = u + 1; v < dim; ++v) {
                double gamma = -2.0 * im(u, v);
                if (std::abs(gamma) <= kDropTol) continue;
                push(gamma, int(u), int(v), true);
                diag_spill[size_t(u)] += gamma / 2.0;
                diag_spill[size_t(v)] += gamma / 2.0;
            }
    }

    for (Eigen::Index u = 0; u < dim; ++u) {
        double alpha = re(u, u) - diag_spill[size_t(u)];
        for (Eigen::Index v = 0; v < dim; ++v)
            if (v != u) alpha -= re(u, v);
        push(alpha, int(u), int(u), false);
    }
    return dec;
}

double coefficient_of(const Decomposition& dec, int i, int j, bool phase) {
    for (const auto& c : dec.components)
        if (c.i == i && c.j == j && c.phase == phase) return c.coefficient;
    return 0.0;
}

DecompositionReport verify_decomposition(const DensityMatrix& rho, const Decomposition& dec) {
    Eigen::Index dim = rho.dim();
    DecompositionReport report;
    report.complex_extension = dec.complex_extension;
    report.coefficient_bound = std::pow(2.0, dec.complex_extension ? dec.d + 1 : dec.d);

    CMatrix sum = CMatrix::Zero(dim, dim);
    for (const auto& c : dec.components) {
        DensityMatrix state = pair_state(dec.d, c.i, c.j, c.phase);
        sum += c.coefficient * state.mat;
        report.max_coefficient = std::max(report.max_coefficient, std::abs(c.coefficient));
        CMatrix joint = kron(c.witness_a.mat, c.witness_b.mat);
        CMatrix rebuilt = joint * canonical_state(c.kind, dec.d).mat * joint.adjoint();
        report.max_witness_residual = std::max(report.max_witness_residual,
                                               (rebuilt - state.mat).cwiseAbs().maxCoeff());
    }
    report.reconstruction_residual = (sum - rho.mat).cwiseAbs().maxCoeff();
    report.valid = report.reconstruction_residual <= 1e-10 &&
                   report.max_witness_residual <= 1e-10 &&
                   report.max_coefficient <= report.coefficient_bound + 1e-10;
    return report;
}

double decomposition_linearity_residual(const TwoWayEntangledProtocol& p,
                                        const Decomposition& dec, uint32_t x, uint32_t y) {
    require(p.d == dec.d, "linearity: dimension mismatch");
    CompiledTwoWay comp = compile_two_way(p, x, y);
    double base = eval_compiled(comp, p.shared.mat);
    double total = 0.0;
    for (const auto& c : dec.components)
        total += c.coefficient * eval_compiled(comp, pair_state(dec.d, c.i, c.j, c.phase).mat);
    return std::abs(base - total);
}

EntangledSmpProtocol::EntangledSmpProtocol(int n_, int d_, DensityMatrix shared_,
                                           std::vector<UnitaryOp> alice_,
                                           std::vector<UnitaryOp> bob_, CMatrix effect)
    : n(n_), d(d_), shared(std::move(shared_)), alice(std::move(alice_)), bob(std::move(bob_)),
      referee_effect(std::move(effect)) {
    require(n >= 1 && n <= 8, "EntangledSmpProtocol: n out of range");
    require(d == 1 || d == 2, "EntangledSmpProtocol: d must be 1 or 2");
    require(shared.qubits == 2 * d, "EntangledSmpProtocol: shared state must have 2d qubits");
    size_t inputs = size_t(1) << n;
    require(alice.size() == inputs && bob.size() == inputs,
            "EntangledSmpProtocol: need one channel per input");
    for (const auto& u : alice) require(u.qubits == d, "EntangledSmpProtocol: channel size");
    for (const auto& u : bob) require(u.qubits == d, "EntangledSmpProtocol: channel size");
    Eigen::Index dim = Eigen::Index(1) << (2 * d);
    require(referee_effect.rows() == dim && referee_effect.cols() == dim,
            "EntangledSmpProtocol: effect dimension mismatch");
    require((referee_effect - referee_effect.adjoint()).cwiseAbs().maxCoeff() <= kStateTol,
            "EntangledSmpProtocol: effect must be Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(referee_effect, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1.0 - kStateTol &&
                es.eigenvalues().maxCoeff() <= 1.0 + kStateTol,
            "EntangledSmpProtocol: effect spectrum must lie in [-1, 1]");
}

namespace {

DensityMatrix conjugated_shared(const EntangledSmpProtocol& p, uint32_t x, uint32_t y) {
    CMatrix joint = kron(p.alice[x].mat, p.bob[y].mat);
    return DensityMatrix(2 * p.d, joint * p.shared.mat * joint.adjoint());
}

}  // namespace

double eval_entangled_smp(const EntangledSmpProtocol& p, uint32_t x, uint32_t y) {
    require(x < (1u << p.n) && y < (1u << p.n), "eval_entangled_smp: input out of range");
    return (p.referee_effect * conjugated_shared(p, x, y).mat).trace().real();
}

StrippedSmpAnalysis strip_qsmp_analyze(const EntangledSmpProtocol& p, uint32_t x, uint32_t y) {
    require(x < (1u << p.n) && y < (1u << p.n), "strip_qsmp_analyze: input out of range");
    int d = p.d;
    Eigen::Index side = Eigen::Index(1) << d;
    Eigen::Index pair_dim = side * side;

    // Alice's message: her channel on the first half of the full shared state.
    CMatrix ua = kron(p.alice[x].mat, CMatrix::Identity(side, side));
    CMatrix alice_msg = ua * p.shared.mat * ua.adjoint();

    // Bob's committed branch: maximally entangled pair, channel on the second
    // register. The 2^{-d} preparation coin multiplies in at the end.
    StateVector phi = StateVector::max_entangled(d);
    CMatrix vb = kron(CMatrix::Identity(side, side), p.bob[y].mat);
    CMatrix bob_msg = vb * (phi.amps * phi.amps.adjoint()) * vb.adjoint();

    CMatrix big = kron(alice_msg, bob_msg);  // registers (A1, A2, B1, B2)

    // Referee success path on the middle registers: equal-pair projection,
    // Hadamard, then the all-zeros check; combined Kraus 2^{-d/2} <Phi|.
    double amp = std::pow(2.0, -double(d));  // 2^{-d/2} * 2^{-d/2} per matched term
    CMatrix kraus = CMatrix::Zero(pair_dim, pair_dim * pair_dim);
    for (Eigen::Index a1 = 0; a1 < side; ++a1)
        for (Eigen::Index b2 = 0; b2 < side; ++b2)
            for (Eigen::Index t = 0; t < side; ++t) {
                Eigen::Index row = a1 * side + b2;
                Eigen::Index col = ((a1 * side + t) * side + t) * side + b2;
                kraus(row, col) = amp;
            }

    CMatrix unnorm = kraus * big * kraus.adjoint();
    double sub_prob = unnorm.trace().real();

    StrippedSmpAnalysis out;
    out.flag_prob = std::pow(2.0, -double(d)) * sub_prob;
    out.conditional_state = DensityMatrix(2 * d, unnorm / sub_prob);
    out.conditional_value = (p.referee_effect * out.conditional_state.mat).trace().real();
    out.overall_value = out.flag_prob * out.conditional_value;
    return out;
}

StrippedSmpShots strip_qsmp_simulate(const EntangledSmpProtocol& p, uint32_t x, uint32_t y,
                                     long shots, std::mt19937_64& rng) {
    require(shots >= 1, "strip_qsmp_simulate: need at least one shot");
    StrippedSmpAnalysis an = strip_qsmp_analyze(p, x, y);
    double coin_prob = std::pow(2.0, -double(p.d));
    double sub_prob = an.flag_prob / coin_prob;
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    StrippedSmpShots out;
    out.shots = shots;
    double total = 0.0;
    for (long s = 0; s < shots; ++s) {
        bool flag = unif(rng) < coin_prob && unif(rng) < sub_prob;
        int value;
        if (flag) {
            ++out.flags;
            value = unif(rng) < (1.0 + an.conditional_value) / 2.0 ? +1 : -1;
        } else {
            value = unif(rng) < 0.5 ? +1 : -1;
        }
        total += value;
    }
    out.mean_output = total / double(shots);
    return out;
}

double quantize_entry(double v, int bits) {
    double scale = std::ldexp(1.0, bits);
    double t = v * scale;
    double f = std::floor(t);
    double frac = t - f;
    double r;
    if (frac > 0.5)
        r = f + 1.0;
    else if (frac < 0.5)
        r = f;
    else
        r = t >= 0.0 ? f : f + 1.0;  // tie toward zero
    return std::clamp(r / scale, -1.0, 1.0);
}

namespace {

void check_real_oneway(const OneWayEntangledProtocol& p) {
    auto is_real = [](const CMatrix& m) { return m.imag().cwiseAbs().maxCoeff() <= 1e-9; };
    require(is_real(p.shared.mat), "strip_oneway: shared state must be real");
    for (const auto& fam : p.alice)
        for (const auto& op : fam.ops) require(is_real(op), "strip_oneway: measurements must be real");
    for (const auto& row : p.bob)
        for (const auto& f : row) require(is_real(f), "strip_oneway: effects must be real");
}

}  // namespace

StrippedOneWayAnalysis strip_oneway_analyze(const OneWayEntangledProtocol& p, uint32_t x,
                                            uint32_t y) {
    check_real_oneway(p);
    require(x < (1u << p.n) && y < (1u << p.n), "strip_oneway_analyze: input out of range");
    int d = p.d;
    Eigen::Index side = Eigen::Index(1) << d;
    Eigen::Index dim = side * side;
    double inv = std::pow(2.0, -4.0 * double(d));

    StrippedOneWayAnalysis out;
    out.original_value = eval_one_way(p, x, y);
    out.identity_value = inv * out.original_value;
    out.extra_bits = 9 * d + 1;

    auto branches = one_way_branches(p, x);
    double total = 0.0;
    for (size_t z = 0; z < branches.size(); ++z) {
        double pz = branches[z].prob;
        if (pz <= 1e-12) continue;
        Eigen::MatrixXd sigma = (branches[z].state / pz).real();
        Eigen::MatrixXd f_eff =
            kron(CMatrix::Identity(side, side), p.bob[y][z]).real();
        double entry_sum = 0.0;
        for (Eigen::Index i = 0; i < dim; ++i)
            for (Eigen::Index j = 0; j < dim; ++j)
                entry_sum += f_eff(i, j) * quantize_entry(sigma(i, j), 5 * d);
        total += pz * entry_sum * inv;  // uniform (i, j) average is sum / 2^{4d}
    }
    out.stripped_value = total;
    return out;
}

StrippedOneWayShots strip_oneway_simulate(const OneWayEntangledProtocol& p, uint32_t x,
                                          uint32_t y, long shots, std::mt19937_64& rng) {
    check_real_oneway(p);
    require(shots >= 1, "strip_oneway_simulate: need at least one shot");
    int d = p.d;
    Eigen::Index side = Eigen::Index(1) << d;
    Eigen::Index dim = side * side;

    auto branches = one_way_branches(p, x);
    std::vector<double> probs;
    std::vector<Eigen::MatrixXd> sigmas(branches.size()), effects(branches.size());
    for (size_t z = 0; z < branches.size(); ++z) {
        probs.push_back(std::max(branches[z].prob, 0.0));
        if (branches[z].prob > 1e-12)
            sigmas[z] = (branches[z].state / branches[z].prob).real();
        effects[z] = kron(CMatrix::Identity(side, side), p.bob[y][z]).real();
    }
    std::discrete_distribution<size_t> pick_z(probs.begin(), probs.end());
    std::uniform_int_distribution<Eigen::Index> pick_index(0, dim - 1);
    std::uniform_real_distribution<double> unif(0.0, 1.0);

    double total = 0.0;
    for (long s = 0; s < shots; ++s) {
        size_t z = pick_z(rng);
        Eigen::Index i = pick_index(rng), j = pick_index(rng);
        double e = std::clamp(effects[z](i, j) * quantize_entry(sigmas[z](i, j), 5 * d),
                              -1.0, 1.0);
        total += unif(rng) < (1.0 + e) / 2.0 ? 1.0 : -1.0;
    }
    StrippedOneWayShots out;
    out.shots = shots;
    out.mean_output = total / double(shots);
    return out;
}

double expectation_identity_residual(const CMatrix& f_eff, const CMatrix& sigma, int d) {
    Eigen::Index dim = Eigen::Index(1) << (2 * d);
    require(f_eff.rows() == dim && sigma.rows() == dim, "identity: dimension mismatch");
    double mean = 0.0;
    for (Eigen::Index i = 0; i < dim; ++i)
        for (Eigen::Index j = 0; j < dim; ++j)
            mean += (f_eff(i, j) * sigma(i, j)).real();
    mean /= double(dim) * double(dim);
    double reference = std::pow(2.0, -4.0 * double(d)) * (f_eff * sigma).trace().real();
    return std::abs(mean - reference);
}

}  // namespace entlab
