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

#ifndef ENTLAB_BHM_HPP
#define ENTLAB_BHM_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace entlab {

using Rational = boost::multiprecision::cpp_rational;

// Boolean vectors over {-1,1}^n are stored as bitmasks with bit v = vertex v,
// bit value 0 for +1 and 1 for -1, matching the cube convention in fourier.hpp.

/// m pairwise-disjoint edges (i, j) with i < j over vertices 0..n-1.
struct Matching {
    int n = 0;
    std::vector<std::pair<int, int>> edges;

    Matching() = default;
    Matching(int n, std::vector<std::pair<int, int>> edges);

    int m() const { return int(edges.size()); }
};

/// y_e = x_i * x_j for edge e = (i, j); as bitmasks, bit e = bit i xor bit j.
uint32_t apply_matching(const Matching& mt, uint32_t x);

/// One hidden-matching copy. label +1 means y = Mx, label -1 means y = -Mx.
struct BhmInstance {
    uint32_t x = 0;
    Matching matching;
    uint32_t y = 0;
    int label = 0;
};

/// +1 when y = Mx, -1 when y = -Mx, 0 otherwise (only possible when m = 0
/// cannot occur; mixed agreement yields 0).
int label_of(uint32_t x, const Matching& mt, uint32_t y);

enum class HardKind { N, Y, MuPlus, MuMinus };

/// k independent copies on n vertices with m-edge matchings. N draws y = Mx,
/// Y draws y = -Mx; MuPlus / MuMinus negate a uniformly random even / odd
/// subset of the k copies.
struct HardDistributionSpec {
    HardKind kind = HardKind::N;
    int n = 0;
    int m = 0;
    int k = 1;
};

std::vector<BhmInstance> sample(const HardDistributionSpec& spec, std::mt19937_64& rng);

/// All m-edge matchings on n vertices, lexicographic by sorted edge list.
std::vector<Matching> enumerate_matchings(int n, int m);

/// Uniform over enumerate_matchings(n, m) without materializing the list.
Matching sample_matching(int n, int m, std::mt19937_64& rng);

/// Exact joint moment E[prod_i chi_{sx[i]}(x^i) chi_{sy[i]}(y^i)] under the
/// hard distribution; sx masks range over vertices, sy masks over edges.
Rational moment(const HardDistributionSpec& spec, const std::vector<uint32_t>& sx,
                const std::vector<uint32_t>& sy);

struct MomentCounterexample {
    int total_size = 0;
    std::vector<uint32_t> sx, sy;
    Rational plus_value, minus_value;
};

struct MomentReport {
    bool agree = false;
    std::optional<MomentCounterexample> counterexample;
};

/// Compares every MuPlus / MuMinus moment with total size sum |sx[i]| + |sy[i]|
/// up to maxSize; reports the first mismatch if one exists.
MomentReport verify_moment_agreement(int n, int m, int k, int max_size);

/// First mismatching moment scanning total sizes upward from start_size.
std::optional<MomentCounterexample> find_moment_counterexample(int n, int m, int k,
                                                               int start_size);

/// Per-copy vertex masks S_i; when every S_i is exactly covered by edges of
/// M_i lying inside S_i, returns the per-copy edge masks, else nullopt.
std::optional<std::vector<uint32_t>> matches(const std::vector<Matching>& ms,
                                             const std::vector<uint32_t>& s);

struct CorrelationAudit {
    Rational lhs, rhs;
    bool matched = false;
    bool equal = false;
};

/// Single-copy identity E_x[ 1[Mx = w] chi_S(x) ] = 2^{-m} chi_{M(S)}(w) when
/// M matches S and 0 otherwise, both sides exact.
CorrelationAudit correlation_identity_audit(const Matching& mt, uint32_t s, uint32_t w);

/// Probability that independent uniform matchings cover fixed disjoint vertex
/// blocks of sizes 2*blocks[i]: prod_i C(m, l_i) / C(n, 2 l_i).
Rational match_probability(int n, int m, const std::vector<int>& blocks);

/// Enumeration frequency for the canonical block layout (first 2l vertices per
/// copy); equals match_probability exactly.
Rational match_frequency_enumerated(int n, int m, const std::vector<int>& blocks);

/// Monte-Carlo estimate of the same probability.
double match_frequency_sampled(int n, int m, const std::vector<int>& blocks, int samples,
                               std::mt19937_64& rng);

/// Deterministic completion to a perfect matching: repeatedly pair the two
/// lowest-index free vertices. Requires n even.
Matching greedy_complete(const Matching& mt);

struct QuantumRoundResult {
    bool edge_in_matching = false;
    int edge_index = -1;  // index into the original matching when hit
    int i = 0, j = 0;     // endpoints of the measured completion edge
    uint32_t a = 0, b = 0;
    uint32_t parity = 0;  // dot product (i xor j) . (a xor b) over GF(2)
};

/// One shared-state round: phase-encode x on the maximally entangled pair
/// state, measure the completion-edge projectors on one side, transform both
/// sides with the full Hadamard, and read out (a, b). The outputs always
/// satisfy (i xor j).(a xor b) = x_i xor x_j.
QuantumRoundResult quantum_round(uint32_t x, const Matching& mt, std::mt19937_64& rng);

int default_reps_per_copy(double alpha, int k);

/// Product of per-copy votes; each copy uses its first edge-hitting round and
/// falls back to a fair coin when no round hits.
int referee_decide(const std::vector<BhmInstance>& instances, int reps_per_copy,
                   std::mt19937_64& rng);

/// Average over matching tuples of || mu_plus - mu_minus ||_1 where the mixed
/// distributions condition x on the joint set A (masks over n*k bits).
Rational delta_az(int n, int m, int k, const std::vector<uint32_t>& a_set);

struct OneWayBruteForce {
    Rational advantage;
    std::vector<uint32_t> best_part;  // inputs assigned to message 1 (c = 1)
};

/// Exact optimal distinguishing advantage (expected-output difference over 2)
/// of c-bit one-way protocols at k = 1, by exhausting message partitions.
/// Supports n <= 4, c <= 1.
OneWayBruteForce brute_force_one_way(int n, int m, int c);

}  // namespace entlab

#endif
