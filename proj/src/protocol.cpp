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

#include "entlab/protocol.hpp"

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace entlab {

namespace {

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

void check_contraction(const CMatrix& e, Eigen::Index dim, const char* what) {
    require(e.rows() == dim && e.cols() == dim, "effect dimension mismatch");
    require((e - e.adjoint()).cwiseAbs().maxCoeff() <= kStateTol, "effect must be Hermitian");
    Eigen::SelfAdjointEigenSolver<CMatrix> es(e, Eigen::EigenvaluesOnly);
    require(es.eigenvalues().minCoeff() >= -1.0 - kStateTol &&
                es.eigenvalues().maxCoeff() <= 1.0 + kStateTol,
            what);
}

// Restriction of a (d+m)-qubit operator to the zeroed-workspace block, i.e.
// entries [(a, 0), (p, 0)] as a 2^d-sided matrix.
CMatrix workspace_zero_block(const CMatrix& op, int d, int m) {
    Eigen::Index side = Eigen::Index(1) << d;
    Eigen::Index mem = Eigen::Index(1) << m;
    CMatrix out(side, side);
    for (Eigen::Index a = 0; a < side; ++a)
        for (Eigen::Index p = 0; p < side; ++p) out(a, p) = op(a * mem, p * mem);
    return out;
}

uint32_t prefix_bits(uint32_t z, int count) { return z & ((1u << count) - 1); }

}  // namespace

SmpQuantumProtocol::SmpQuantumProtocol(int n_, int c_, std::vector<DensityMatrix> pa,
                                       std::vector<DensityMatrix> pb, CMatrix effect)
    : n(n_), c(c_), prep_a(std::move(pa)), prep_b(std::move(pb)),
      referee_effect(std::move(effect)) {
    require(n >= 1 && n <= 12, "SmpQuantumProtocol: n out of range");
    require(c >= 1 && c <= 6, "SmpQuantumProtocol: c out of range");
    size_t inputs = size_t(1) << n;
    require(prep_a.size() == inputs && prep_b.size() == inputs,
            "SmpQuantumProtocol: need one prepared state per input");
    Eigen::Index side = Eigen::Index(1) << c;
    for (const auto& r : prep_a) require(r.dim() == side, "SmpQuantumProtocol: message size");
    for (const auto& r : prep_b) require(r.dim() == side, "SmpQuantumProtocol: message size");
    check_contraction(referee_effect, side * side,
                      "SmpQuantumProtocol: effect spectrum must lie in [-1, 1]");
}

double eval_smp(const SmpQuantumProtocol& p, uint32_t x, uint32_t y) {
    require(x < (1u << p.n) && y < (1u << p.n), "eval_smp: input out of range");
    CMatrix joint = kron(p.prep_a[x].mat, p.prep_b[y].mat);
    return (p.referee_effect * joint).trace().real();
}

OneWayEntangledProtocol::OneWayEntangledProtocol(int n_, int c_, int d_, DensityMatrix shared_,
                                                 std::vector<MeasurementFamily> alice_,
                                                 std::vector<std::vector<CMatrix>> bob_)
    : n(n_), c(c_), d(d_), shared(std::move(shared_)), alice(std::move(alice_)),
      bob(std::move(bob_)) {
    require(n >= 1 && n <= 12, "OneWayEntangledProtocol: n out of range");
    require(c >= 1 && c <= 6, "OneWayEntangledProtocol: c out of range");
    require(d >= 1 && d <= 3, "OneWayEntangledProtocol: d out of range");
    require(shared.qubits == 2 * d, "OneWayEntangledProtocol: shared state must have 2d qubits");
    size_t inputs = size_t(1) << n;
    size_t messages = size_t(1) << c;
    require(alice.size() == inputs && bob.size() == inputs,
            "OneWayEntangledProtocol: need per-input tables");
    for (const auto& fam : alice) {
        require(fam.qubits == d && fam.ops.size() == messages,
                "OneWayEntangledProtocol: alice family shape");
        for (size_t z = 0; z < messages; ++z)
            require(fam.labels[z] == int(z), "OneWayEntangledProtocol: labels must be 0..2^c-1");
    }
    Eigen::Index side = Eigen::Index(1) << d;
    for (const auto& row : bob) {
        require(row.size() == messages, "OneWayEntangledProtocol: bob table shape");
        for (const auto& f : row)
            check_contraction(f, side, "OneWayEntangledProtocol: effect spectrum in [-1, 1]");
    }
}

std::vector<OneWayBranch> one_way_branches(const OneWayEntangledProtocol& p, uint32_t x) {
    require(x < (1u << p.n), "one_way_branches: input out of range");
    Eigen::Index side = Eigen::Index(1) << p.d;
    CMatrix eye = CMatrix::Identity(side, side);
    std::vector<OneWayBranch> out;
    out.reserve(p.alice[x].ops.size());
    for (const CMatrix& mz : p.alice[x].ops) {
        CMatrix lifted = kron(mz, eye);
        OneWayBranch b;
        b.state = lifted * p.shared.mat * lifted.adjoint();
        b.prob = b.state.trace().real();
        out.push_back(std::move(b));
    }
    return out;
}

double eval_one_way(const OneWayEntangledProtocol& p, uint32_t x, uint32_t y) {
    require(y < (1u << p.n), "eval_one_way: input out of range");
    Eigen::Index side = Eigen::Index(1) << p.d;
    CMatrix eye = CMatrix::Identity(side, side);
    auto branches = one_way_branches(p, x);
    double total = 0.0;
    for (size_t z = 0; z < branches.size(); ++z)
        total += (kron(eye, p.bob[y][z]) * branches[z].state).trace().real();
    return total;
}

TwoOutcomeFamily::TwoOutcomeFamily(CMatrix a, CMatrix b) : op0(std::move(a)), op1(std::move(b)) {
    require(op0.rows() == op0.cols() && op1.rows() == op0.rows() && op1.cols() == op0.rows(),
            "TwoOutcomeFamily: operators must be square and equal-sized");
    CMatrix total = op0.adjoint() * op0 + op1.adjoint() * op1;
    require((total - CMatrix::Identity(total.rows(), total.cols())).cwiseAbs().maxCoeff() <=
                kStateTol,
            "TwoOutcomeFamily: completeness violated");
}

TwoWayEntangledProtocol::TwoWayEntangledProtocol(
    int n_, int d_, int m_, int rounds_, DensityMatrix shared_,
    std::vector<std::vector<std::vector<TwoOutcomeFamily>>> alice_,
    std::vector<std::vector<std::vector<TwoOutcomeFamily>>> bob_, std::vector<uint32_t> accept_)
    : n(n_), d(d_), m(m_), rounds(rounds_), shared(std::move(shared_)), alice(std::move(alice_)),
      bob(std::move(bob_)), accept(std::move(accept_)) {
    require(n >= 1 && n <= 8, "TwoWayEntangledProtocol: n out of range");
    require(d >= 1 && d <= 2 && m >= 0 && m <= 2, "TwoWayEntangledProtocol: d or m out of range");
    require(rounds >= 1 && rounds <= 4, "TwoWayEntangledProtocol: round count out of range");
    require(shared.qubits == 2 * d, "TwoWayEntangledProtocol: shared state must have 2d qubits");
    size_t inputs = size_t(1) << n;
    Eigen::Index side = Eigen::Index(1) << (d + m);
    require(alice.size() == size_t(rounds) && bob.size() == size_t(rounds),
            "TwoWayEntangledProtocol: per-round tables");
    for (int r = 0; r < rounds; ++r) {
        require(alice[r].size() == size_t(1) << (2 * r),
                "TwoWayEntangledProtocol: alice prefix table shape");
        require(bob[r].size() == size_t(1) << (2 * r + 1),
                "TwoWayEntangledProtocol: bob prefix table shape");
        for (const auto& per_input : alice[r]) {
            require(per_input.size() == inputs, "TwoWayEntangledProtocol: alice input axis");
            for (const auto& fam : per_input)
                require(fam.op0.rows() == side, "TwoWayEntangledProtocol: alice operator side");
        }
        for (const auto& per_input : bob[r]) {
            require(per_input.size() == inputs, "TwoWayEntangledProtocol: bob input axis");
            for (const auto& fam : per_input)
                require(fam.op0.rows() == side, "TwoWayEntangledProtocol: bob operator side");
        }
    }
    for (uint32_t z : accept)
        require(z < (1u << c()), "TwoWayEntangledProtocol: accept transcript out of range");
}

CompiledTwoWay compile_two_way(const TwoWayEntangledProtocol& p, uint32_t x, uint32_t y) {
    require(x < (1u << p.n) && y < (1u << p.n), "compile_two_way: input out of range");
    Eigen::Index side = Eigen::Index(1) << p.side_qubits();
    CompiledTwoWay out;
    out.d = p.d;
    out.m = p.m;
    out.c = p.c();
    out.transcripts.reserve(size_t(1) << p.c());
    std::vector<bool> accept_flag(size_t(1) << p.c(), false);
    for (uint32_t z : p.accept) accept_flag[z] = true;
    for (uint32_t z = 0; z < (1u << p.c()); ++z) {
        CMatrix mz = CMatrix::Identity(side, side);
        CMatrix nz = CMatrix::Identity(side, side);
        for (int r = 0; r < p.rounds; ++r) {
            int a_bit = z >> (2 * r) & 1;
            int b_bit = z >> (2 * r + 1) & 1;
            mz = p.alice[r][prefix_bits(z, 2 * r)][x].op(a_bit) * mz;
            nz = p.bob[r][prefix_bits(z, 2 * r + 1)][y].op(b_bit) * nz;
        }
        CompiledTranscript t;
        t.z = z;
        t.e_op = mz.adjoint() * mz;
        t.f_op = nz.adjoint() * nz;
        t.sign = accept_flag[z] ? -1 : +1;
        out.transcripts.push_back(std::move(t));
    }
    return out;
}

double completeness_residual(const CompiledTwoWay& c) {
    Eigen::Index side = c.transcripts[0].e_op.rows();
    CMatrix total = CMatrix::Zero(side * side, side * side);
    for (const auto& t : c.transcripts) total += kron(t.e_op, t.f_op);
    return (total - CMatrix::Identity(side * side, side * side)).cwiseAbs().maxCoeff();
}

std::vector<double> transcript_distribution(const TwoWayEntangledProtocol& p, uint32_t x,
                                            uint32_t y) {
    CompiledTwoWay comp = compile_two_way(p, x, y);
    // Workspace registers start in |0>, so only the zero block of each product
    // operator meets the shared state.
    std::vector<double> probs;
    probs.reserve(comp.transcripts.size());
    for (const auto& t : comp.transcripts) {
        CMatrix e0 = workspace_zero_block(t.e_op, p.d, p.m);
        CMatrix f0 = workspace_zero_block(t.f_op, p.d, p.m);
        probs.push_back((kron(e0, f0) * p.shared.mat).trace().real());
    }
    return probs;
}

double eval_compiled(const CompiledTwoWay& c, const CMatrix& shared) {
    double total = 0.0;
    for (const auto& t : c.transcripts) {
        CMatrix e0 = workspace_zero_block(t.e_op, c.d, c.m);
        CMatrix f0 = workspace_zero_block(t.f_op, c.d, c.m);
        total += double(t.sign) * (kron(e0, f0) * shared).trace().real();
    }
    return total;
}

double eval_two_way(const TwoWayEntangledProtocol& p, uint32_t x, uint32_t y) {
    std::vector<double> probs = transcript_distribution(p, x, y);
    std::vector<bool> accept_flag(probs.size(), false);
    for (uint32_t z : p.accept) accept_flag[z] = true;
    double total = 0.0;
    for (size_t z = 0; z < probs.size(); ++z) total += accept_flag[z] ? -probs[z] : probs[z];
    return total;
}

std::vector<long> monte_carlo_transcript(const TwoWayEntangledProtocol& p, uint32_t x, uint32_t y,
                                         long shots, std::mt19937_64& rng) {
    require(x < (1u << p.n) && y < (1u << p.n), "monte_carlo_transcript: input out of range");
    require(shots >= 1, "monte_carlo_transcript: need at least one shot");

    // Pure shared states take the state-vector path; mixed states evolve the
    // full density matrix.
    Eigen::SelfAdjointEigenSolver<CMatrix> es(p.shared.mat);
    bool pure = es.eigenvalues().maxCoeff() >= 1.0 - 1e-9;

    int q = 2 * p.side_qubits();
    int d = p.d, m = p.m;
    Eigen::Index dim = Eigen::Index(1) << q;
    Eigen::Index shared_side = Eigen::Index(1) << d;
    Eigen::Index mem = Eigen::Index(1) << m;
    auto embed_index = [&](Eigen::Index a, Eigen::Index b) {
        return (a * mem) * (shared_side * mem) + b * mem;
    };

    std::vector<int> alice_targets, bob_targets;
    for (int t = 0; t < d + m; ++t) {
        alice_targets.push_back(t);
        bob_targets.push_back(d + m + t);
    }

    CVector psi0;
    CMatrix rho0;
    if (pure) {
        CVector base = es.eigenvectors().col(es.eigenvalues().size() - 1);
        psi0 = CVector::Zero(dim);
        for (Eigen::Index a = 0; a < shared_side; ++a)
            for (Eigen::Index b = 0; b < shared_side; ++b)
                psi0(embed_index(a, b)) = base(a * shared_side + b);
    } else {
        rho0 = CMatrix::Zero(dim, dim);
        for (Eigen::Index a = 0; a < shared_side; ++a)
            for (Eigen::Index b = 0; b < shared_side; ++b)
                for (Eigen::Index c2 = 0; c2 < shared_side; ++c2)
                    for (Eigen::Index e = 0; e < shared_side; ++e)
                        rho0(embed_index(a, b), embed_index(c2, e)) =
                            p.shared.mat(a * shared_side + b, c2 * shared_side + e);
    }

    Eigen::Index side = Eigen::Index(1) << (d + m);
    CMatrix eye = CMatrix::Identity(side, side);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<long> counts(size_t(1) << p.c(), 0);

    for (long shot = 0; shot < shots; ++shot) {
        uint32_t z = 0;
        if (pure) {
            CVector psi = psi0;
            for (int r = 0; r < p.rounds; ++r) {
                for (int player = 0; player < 2; ++player) {
                    int pos = 2 * r + player;
                    const TwoOutcomeFamily& fam =
                        player == 0 ? p.alice[r][prefix_bits(z, pos)][x]
                                    : p.bob[r][prefix_bits(z, pos)][y];
                    const std::vector<int>& targets = player == 0 ? alice_targets : bob_targets;
                    MeasurementFamily mf(d + m, {0, 1}, {fam.op0, fam.op1});
                    auto outcomes = measure(StateVector(q, psi / psi.norm()), mf, targets);
                    int bit = unif(rng) < outcomes[0].prob / (outcomes[0].prob + outcomes[1].prob)
                                  ? 0
                                  : 1;
                    z |= uint32_t(bit) << pos;
                    psi = outcomes[bit].post->amps;
                }
            }
        } else {
            CMatrix rho = rho0;
            for (int r = 0; r < p.rounds; ++r) {
                for (int player = 0; player < 2; ++player) {
                    int pos = 2 * r + player;
                    const TwoOutcomeFamily& fam =
                        player == 0 ? p.alice[r][prefix_bits(z, pos)][x]
                                    : p.bob[r][prefix_bits(z, pos)][y];
                    auto lift = [&](const CMatrix& op) {
                        return player == 0 ? kron(op, eye) : kron(eye, op);
                    };
                    CMatrix b0 = lift(fam.op0) * rho * lift(fam.op0).adjoint();
                    CMatrix b1 = lift(fam.op1) * rho * lift(fam.op1).adjoint();
                    double p0 = b0.trace().real(), p1 = b1.trace().real();
                    int bit = unif(rng) < p0 / (p0 + p1) ? 0 : 1;
                    z |= uint32_t(bit) << pos;
                    rho = (bit ? b1 : b0) / (bit ? p1 : p0);
                }
            }
        }
        ++counts[z];
    }
    return counts;
}

TwoWayEntangledProtocol local_equivalent(const TwoWayEntangledProtocol& p, const UnitaryOp& u,
                                         const UnitaryOp& v) {
    require(u.qubits == p.d && v.qubits == p.d, "local_equivalent: unitary size mismatch");
    CMatrix joint = kron(u.mat, v.mat);
    DensityMatrix shared(p.shared.qubits, joint * p.shared.mat * joint.adjoint());
    Eigen::Index mem = Eigen::Index(1) << p.m;
    CMatrix eye_mem = CMatrix::Identity(mem, mem);
    auto compensate = [&](const TwoOutcomeFamily& fam, const CMatrix& w) {
        CMatrix lifted = kron(w.adjoint(), eye_mem);
        return TwoOutcomeFamily(fam.op0 * lifted, fam.op1 * lifted);
    };
    auto alice = p.alice;
    auto bob = p.bob;
    for (auto& per_input : alice[0])
        for (auto& fam : per_input) fam = compensate(fam, u.mat);
    for (auto& per_input : bob[0])
        for (auto& fam : per_input) fam = compensate(fam, v.mat);
    return TwoWayEntangledProtocol(p.n, p.d, p.m, p.rounds, std::move(shared), std::move(alice),
                                   std::move(bob), p.accept);
}

BooleanFunctionTable xor_fiber(int n, const std::function<double(uint32_t, uint32_t)>& eval) {
    require(n >= 1 && n <= 12, "xor_fiber: n out of range");
    size_t inputs = size_t(1) << n;
    std::vector<double> h(inputs, 0.0);
    for (size_t z = 0; z < inputs; ++z) {
        double sum = 0.0;
        for (size_t x = 0; x < inputs; ++x) sum += eval(uint32_t(x), uint32_t(x) ^ uint32_t(z));
        h[z] = sum / double(inputs);
    }
    return BooleanFunctionTable(n, std::move(h), true);
}

BooleanFunctionTable xor_fiber(const SmpQuantumProtocol& p) {
    return xor_fiber(p.n, [&](uint32_t x, uint32_t y) { return eval_smp(p, x, y); });
}

BooleanFunctionTable xor_fiber(const OneWayEntangledProtocol& p) {
    return xor_fiber(p.n, [&](uint32_t x, uint32_t y) { return eval_one_way(p, x, y); });
}

BooleanFunctionTable xor_fiber(const TwoWayEntangledProtocol& p) {
    return xor_fiber(p.n, [&](uint32_t x, uint32_t y) { return eval_two_way(p, x, y); });
}

namespace {

// Per-level sums over the matrix spectrum of a prepared-state table.
struct LevelNorms {
    std::vector<double> linear;   // sum Tr|rho_S|
    std::vector<double> squared;  // sum Tr|rho_S|^2
};

LevelNorms level_norms(const MatrixValuedFunction& f, int ell_max) {
    MatrixSpectrum spec = matrix_fourier(f);
    LevelNorms out;
    out.linear.assign(ell_max + 1, 0.0);
    out.squared.assign(ell_max + 1, 0.0);
    for (size_t s = 0; s < spec.coef.size(); ++s) {
        int ell = std::popcount(s);
        if (ell > ell_max) continue;
        double t = trace_norm(spec.coef[s]);
        out.linear[ell] += t;
        out.squared[ell] += t * t;
    }
    return out;
}

}  // namespace

FourierGrowthReport fourier_growth_report(const SmpQuantumProtocol& p, int ell_max) {
    require(ell_max >= 0 && ell_max <= p.n, "fourier_growth_report: level out of range");
    FourierGrowthReport report;
    report.n = p.n;
    FourierSpectrum h = fourier(xor_fiber(p));
    LevelNorms a = level_norms(MatrixValuedFunction(p.n, p.c, p.prep_a), ell_max);
    LevelNorms b = level_norms(MatrixValuedFunction(p.n, p.c, p.prep_b), ell_max);
    for (int ell = 0; ell <= ell_max; ++ell) {
        GrowthRow row;
        row.ell = ell;
        row.mass = level_mass(h, ell);
        row.product_bound = 0.0;
        row.cs_bound = 2.0 * std::sqrt(a.squared[ell]) * std::sqrt(b.squared[ell]);
        row.asserted = true;
        report.rows.push_back(row);
    }
    // The product bound pairs one subset term from each table, so it cannot be
    // assembled from the per-level sums alone.
    MatrixSpectrum sa = matrix_fourier(MatrixValuedFunction(p.n, p.c, p.prep_a));
    MatrixSpectrum sb = matrix_fourier(MatrixValuedFunction(p.n, p.c, p.prep_b));
    for (size_t s = 0; s < sa.coef.size(); ++s) {
        int ell = std::popcount(s);
        if (ell > ell_max) continue;
        report.rows[ell].product_bound += 2.0 * trace_norm(sa.coef[s]) * trace_norm(sb.coef[s]);
    }
    for (auto& row : report.rows)
        row.holds = row.mass <= row.product_bound + 1e-9 &&
                    row.product_bound <= row.cs_bound + 1e-9;
    return report;
}

FourierGrowthReport fourier_growth_report(const TwoWayEntangledProtocol& p, int ell_max) {
    require(ell_max >= 0 && ell_max <= p.n, "fourier_growth_report: level out of range");
    FourierGrowthReport report;
    report.n = p.n;
    FourierSpectrum h = fourier(xor_fiber(p));
    for (int ell = 0; ell <= ell_max; ++ell) {
        GrowthRow row;
        row.ell = ell;
        row.mass = level_mass(h, ell);
        row.reference = std::pow(2.0, 5.0 * p.d) * std::pow(double(p.c()), ell);
        row.asserted = false;
        row.holds = true;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace entlab
