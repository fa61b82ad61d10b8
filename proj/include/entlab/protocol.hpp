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

#ifndef ENTLAB_PROTOCOL_HPP
#define ENTLAB_PROTOCOL_HPP

#include <functional>
#include <random>
#include <vector>

#include "entlab/fourier.hpp"
#include "entlab/qcore.hpp"

namespace entlab {

// Player inputs are n-bit masks with the cube convention of fourier.hpp, and
// expected outputs live in [-1, 1] (-1 plays the "accept" role).

/// Simultaneous-message protocol: each player sends a c-qubit state prepared
/// from their input; the referee applies a two-outcome effect E = E+ - E- with
/// spectrum in [-1, 1] and outputs the expectation.
struct SmpQuantumProtocol {
    int n = 0;
    int c = 0;
    std::vector<DensityMatrix> prep_a, prep_b;
    CMatrix referee_effect;

    SmpQuantumProtocol() = default;
    SmpQuantumProtocol(int n, int c, std::vector<DensityMatrix> prep_a,
                       std::vector<DensityMatrix> prep_b, CMatrix referee_effect);
};

double eval_smp(const SmpQuantumProtocol& p, uint32_t x, uint32_t y);

/// One-way protocol with a 2d-qubit shared state: Alice measures her half
/// with a 2^c-outcome family chosen by x and sends the outcome z; Bob applies
/// a two-outcome effect F(y, z) with spectrum in [-1, 1] to his half.
struct OneWayEntangledProtocol {
    int n = 0;
    int c = 0;
    int d = 0;
    DensityMatrix shared;
    std::vector<MeasurementFamily> alice;   // [x], outcomes labelled 0..2^c-1
    std::vector<std::vector<CMatrix>> bob;  // [y][z]

    OneWayEntangledProtocol() = default;
    OneWayEntangledProtocol(int n, int c, int d, DensityMatrix shared,
                            std::vector<MeasurementFamily> alice,
                            std::vector<std::vector<CMatrix>> bob);
};

double eval_one_way(const OneWayEntangledProtocol& p, uint32_t x, uint32_t y);

/// Alice's measured post-state on the full 2d qubits for message z, with its
/// probability.
struct OneWayBranch {
    double prob = 0.0;
    CMatrix state;  // unnormalized: (M_z x I) rho (M_z x I)^dag
};
std::vector<OneWayBranch> one_way_branches(const OneWayEntangledProtocol& p, uint32_t x);

/// A two-outcome sub-measurement; outcome bit 0 carries op0, bit 1 carries
/// op1, and op0^dag op0 + op1^dag op1 = I is enforced at construction.
struct TwoOutcomeFamily {
    CMatrix op0, op1;

    TwoOutcomeFamily() = default;
    TwoOutcomeFamily(CMatrix op0, CMatrix op1);

    const CMatrix& op(int bit) const { return bit ? op1 : op0; }
};

/// Interactive protocol over `rounds` rounds; each round Alice measures
/// (d + m local qubits: her half of the shared state plus workspace), sends
/// one bit, then Bob does the same. Transcript bit 2r is Alice's round-r bit
/// and 2r+1 Bob's; prefixes index the earlier bits. Transcripts in `accept`
/// output -1, all others +1.
struct TwoWayEntangledProtocol {
    int n = 0;
    int d = 0;
    int m = 0;
    int rounds = 0;
    DensityMatrix shared;
    // alice[r][prefix][x] with prefix over bits [0, 2r);
    // bob[r][prefix][y] with prefix over bits [0, 2r+1).
    std::vector<std::vector<std::vector<TwoOutcomeFamily>>> alice, bob;
    std::vector<uint32_t> accept;

    TwoWayEntangledProtocol() = default;
    TwoWayEntangledProtocol(int n, int d, int m, int rounds, DensityMatrix shared,
                            std::vector<std::vector<std::vector<TwoOutcomeFamily>>> alice,
                            std::vector<std::vector<std::vector<TwoOutcomeFamily>>> bob,
                            std::vector<uint32_t> accept);

    int c() const { return 2 * rounds; }
    int side_qubits() const { return d + m; }
};

/// Per-transcript product operators E_z = M_z^dag M_z and F_z = N_z^dag N_z
/// on each player's d + m qubits, with the output sign of z.
struct CompiledTranscript {
    uint32_t z = 0;
    CMatrix e_op, f_op;
    int sign = +1;
};

struct CompiledTwoWay {
    int d = 0, m = 0, c = 0;
    std::vector<CompiledTranscript> transcripts;
};

CompiledTwoWay compile_two_way(const TwoWayEntangledProtocol& p, uint32_t x, uint32_t y);

/// max-abs deviation of sum_z E_z x F_z from the identity.
double completeness_residual(const CompiledTwoWay& c);

/// Evaluates compiled transcript operators against an arbitrary shared-state
/// matrix on 2d qubits (workspace registers zeroed): sum_z sign_z Tr((E x F) rho').
double eval_compiled(const CompiledTwoWay& c, const CMatrix& shared);

/// Exact transcript distribution Tr((E_z x F_z) rho') where rho' extends the
/// shared state with zeroed workspace registers.
std::vector<double> transcript_distribution(const TwoWayEntangledProtocol& p, uint32_t x,
                                            uint32_t y);

double eval_two_way(const TwoWayEntangledProtocol& p, uint32_t x, uint32_t y);

/// Sequential sampled rounds; returns transcript counts over 2^c cells.
std::vector<long> monte_carlo_transcript(const TwoWayEntangledProtocol& p, uint32_t x, uint32_t y,
                                         long shots, std::mt19937_64& rng);

/// Conjugates the shared state by U x V and compensates in the round-0
/// operators, leaving every transcript probability unchanged.
TwoWayEntangledProtocol local_equivalent(const TwoWayEntangledProtocol& p, const UnitaryOp& u,
                                         const UnitaryOp& v);

/// H(z) = E_x[C(x, x xor z)] for any evaluator with equal-length inputs.
BooleanFunctionTable xor_fiber(int n, const std::function<double(uint32_t, uint32_t)>& eval);
BooleanFunctionTable xor_fiber(const SmpQuantumProtocol& p);
BooleanFunctionTable xor_fiber(const OneWayEntangledProtocol& p);
BooleanFunctionTable xor_fiber(const TwoWayEntangledProtocol& p);

struct GrowthRow {
    int ell = 0;
    double mass = 0.0;            // sum_{|S|=ell} |H_hat(S)|
    double product_bound = 0.0;   // 2 sum_{|S|=ell} Tr|rho_S| Tr|sigma_S|
    double cs_bound = 0.0;        // 2 sqrt(sum Tr|rho_S|^2) sqrt(sum Tr|sigma_S|^2)
    double reference = 0.0;       // two-way only: 2^{5d} c^ell juxtaposition
    bool asserted = false;        // true when mass <= product_bound <= cs_bound is checked
    bool holds = false;
};

struct FourierGrowthReport {
    int n = 0;
    std::vector<GrowthRow> rows;
};

/// For simultaneous-message protocols the chained bound is asserted per level;
/// for two-way protocols the reference column is report-only.
FourierGrowthReport fourier_growth_report(const SmpQuantumProtocol& p, int ell_max);
FourierGrowthReport fourier_growth_report(const TwoWayEntangledProtocol& p, int ell_max);

}  // namespace entlab

#endif
