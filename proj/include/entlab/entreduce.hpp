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

#ifndef ENTLAB_ENTREDUCE_HPP
#define ENTLAB_ENTREDUCE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "entlab/protocol.hpp"
#include "entlab/qcore.hpp"

namespace entlab {

// Shared 2d-qubit states decompose into a signed combination of simple
// states, each locally equivalent to either a basis product state or a
// one-pair entangled state.

enum class ComponentKind { Zero, Epr };

/// Canonical representative per kind on 2d qubits: |0...0><0...0| or the
/// two-term pair (|0>_A|0>_B + |1>_A|1>_B)/sqrt2 with one index per side.
DensityMatrix canonical_state(ComponentKind kind, int d);

/// i == j gives |i><i|; otherwise (|i> + phi |j>)(<i| + conj(phi) <j|)/2 with
/// phi = i (the imaginary unit) when `phase` is set and 1 otherwise.
DensityMatrix pair_state(int d, int i, int j, bool phase = false);

struct SimpleComponent {
    double coefficient = 0.0;
    ComponentKind kind = ComponentKind::Zero;
    UnitaryOp witness_a, witness_b;  // map the canonical state onto the pair state
    int i = 0, j = 0;                // source basis indices in [0, 2^{2d})
    bool phase = false;              // member of the imaginary-part family
};

struct Decomposition {
    int d = 0;
    bool complex_extension = false;
    std::vector<SimpleComponent> components;
};

/// Fills unassigned columns of a unitary from the remaining basis vectors in
/// index order (orthogonalize, normalize, skip dependents).
UnitaryOp complete_unitary(int qubits, const std::vector<CVector>& assigned_columns);

struct PairClass {
    ComponentKind kind = ComponentKind::Zero;
    UnitaryOp witness_a, witness_b;
};

/// Decodes i = (a, b), j = (p, q) over the two d-qubit registers: any shared
/// register index makes the pair state a local product (Zero kind); two fresh
/// indices on both sides give the entangled kind.
PairClass classify_pair(int i, int j, int d, bool phase = false);

/// Entrywise expansion: off-diagonal entries become pair-state coefficients
/// directly, diagonals absorb the row sums; imaginary parts (if any) ride the
/// phase family and flag the decomposition as a complex extension.
Decomposition decompose(const DensityMatrix& rho);

/// Coefficient on source pair (i, j) in that family, 0 when absent.
double coefficient_of(const Decomposition& dec, int i, int j, bool phase = false);

struct DecompositionReport {
    double reconstruction_residual = 0.0;
    double max_coefficient = 0.0;
    double coefficient_bound = 0.0;  // 2^d, or 2^{d+1} for the complex extension
    double max_witness_residual = 0.0;
    bool complex_extension = false;
    bool valid = false;
};

DecompositionReport verify_decomposition(const DensityMatrix& rho, const Decomposition& dec);

/// |eval(p) - sum_i alpha_i eval(p with component i as shared state)| at (x, y).
double decomposition_linearity_residual(const TwoWayEntangledProtocol& p,
                                        const Decomposition& dec, uint32_t x, uint32_t y);

/// Simultaneous-message protocol where each player applies a local d-qubit
/// unitary to their half of a shared 2d-qubit state and forwards it; the
/// referee applies a two-outcome effect with spectrum in [-1, 1].
struct EntangledSmpProtocol {
    int n = 0;
    int d = 0;
    DensityMatrix shared;
    std::vector<UnitaryOp> alice, bob;  // per input, d qubits each
    CMatrix referee_effect;             // on 2d qubits

    EntangledSmpProtocol() = default;
    EntangledSmpProtocol(int n, int d, DensityMatrix shared, std::vector<UnitaryOp> alice,
                         std::vector<UnitaryOp> bob, CMatrix referee_effect);
};

double eval_entangled_smp(const EntangledSmpProtocol& p, uint32_t x, uint32_t y);

// Entanglement-free compilation of EntangledSmpProtocol: Alice sends the full
// conjugated state, Bob spends a 2^{-d} preparation coin on a maximally
// entangled pair (declared classically), and the referee post-selects the
// middle registers on the equal-pair subspace followed by a Hadamard |0...0>
// check. The flag fires with probability exactly 2^{-4d}; conditioned on it
// the referee holds the original protocol's state, otherwise a fair coin is
// output.

struct StrippedSmpAnalysis {
    double flag_prob = 0.0;          // exact, equals 2^{-4d}
    DensityMatrix conditional_state; // referee state given the flag
    double conditional_value = 0.0;  // original effect on the conditional state
    double overall_value = 0.0;      // flag_prob * conditional_value
};

StrippedSmpAnalysis strip_qsmp_analyze(const EntangledSmpProtocol& p, uint32_t x, uint32_t y);

struct StrippedSmpShots {
    long shots = 0;
    long flags = 0;
    double mean_output = 0.0;
};

StrippedSmpShots strip_qsmp_simulate(const EntangledSmpProtocol& p, uint32_t x, uint32_t y,
                                     long shots, std::mt19937_64& rng);

/// Round-to-nearest at `bits` fractional bits with ties toward zero, clamped
/// to [-1, 1].
double quantize_entry(double v, int bits);

// Entanglement-free compilation of OneWayEntangledProtocol (real-valued
// protocols): Alice appends a uniform entry address (i, j) and the
// post-measurement state entry quantized to 5d bits; Bob's +-1 coin has
// expectation F'[i,j] sigma~[i,j] with F' = I (x) F(y,z). Averaging the exact
// entries over (i, j) recovers 2^{-4d} Tr(F' sigma).

struct StrippedOneWayAnalysis {
    double original_value = 0.0;   // base protocol expectation
    double identity_value = 0.0;   // 2^{-4d} * original_value
    double stripped_value = 0.0;   // exact expectation with quantized entries
    int extra_bits = 0;            // 4d address + 5d magnitude + 1 sign
};

StrippedOneWayAnalysis strip_oneway_analyze(const OneWayEntangledProtocol& p, uint32_t x,
                                            uint32_t y);

struct StrippedOneWayShots {
    long shots = 0;
    double mean_output = 0.0;
};

StrippedOneWayShots strip_oneway_simulate(const OneWayEntangledProtocol& p, uint32_t x,
                                          uint32_t y, long shots, std::mt19937_64& rng);

/// |mean_{ij}(F[i,j] sigma[i,j]) - 2^{-4d} Tr(F sigma)| for real symmetric
/// operators on 2d qubits; zero up to rounding.
double expectation_identity_residual(const CMatrix& f_eff, const CMatrix& sigma, int d);

}  // namespace entlab

#endif
