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

#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include <bit>
#include <cmath>
#include <fstream>
#include <vector>

#include "entlab/harness.hpp"
#include "entlab/protocol.hpp"
#include "entlab/random.hpp"
#include "entlab/rng.hpp"
#include "entlab/serialize.hpp"

namespace {

using namespace entlab;

CMatrix kron2(const CMatrix& a, const CMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

// Independent oracle: evolve the full 2(d+m)-qubit density matrix branch by
// branch, applying each round's operator as an explicit Kronecker lift, and
// read transcript probabilities off the branch traces. Register layout is the
// documented one: [Alice shared d | Alice work m | Bob shared d | Bob work m],
// workspace initialized to |0...0>.
std::vector<double> sequential_distribution(const TwoWayEntangledProtocol& p, uint32_t x,
                                            uint32_t y) {
    const Eigen::Index mem = Eigen::Index(1) << p.m;
    const Eigen::Index shared_side = Eigen::Index(1) << p.d;
    const Eigen::Index side = shared_side * mem;
    const Eigen::Index dim = side * side;
    auto embed = [&](Eigen::Index a, Eigen::Index b) { return a * mem * side + b * mem; };

    CMatrix rho0 = CMatrix::Zero(dim, dim);
    for (Eigen::Index a = 0; a < shared_side; ++a)
        for (Eigen::Index b = 0; b < shared_side; ++b)
            for (Eigen::Index c = 0; c < shared_side; ++c)
                for (Eigen::Index e = 0; e < shared_side; ++e)
                    rho0(embed(a, b), embed(c, e)) =
                        p.shared.mat(a * shared_side + b, c * shared_side + e);

    CMatrix eye = CMatrix::Identity(side, side);
    std::vector<std::pair<uint32_t, CMatrix>> branches{{0u, rho0}};
    for (int r = 0; r < p.rounds; ++r) {
        for (int player = 0; player < 2; ++player) {
            int pos = 2 * r + player;
            std::vector<std::pair<uint32_t, CMatrix>> next;
            for (auto& [z, rho] : branches) {
                uint32_t prefix = z & ((1u << pos) - 1);
                const TwoOutcomeFamily& fam =
                    player == 0 ? p.alice[r][prefix][x] : p.bob[r][prefix][y];
                for (int bit = 0; bit < 2; ++bit) {
                    CMatrix lifted =
                        player == 0 ? kron2(fam.op(bit), eye) : kron2(eye, fam.op(bit));
                    next.emplace_back(z | (uint32_t(bit) << pos),
                                      (lifted * rho * lifted.adjoint()).eval());
                }
            }
            branches = std::move(next);
        }
    }
    std::vector<double> probs(size_t(1) << p.c(), 0.0);
    for (auto& [z, rho] : branches) probs[z] = rho.trace().real();
    return probs;
}

TEST_CASE("protocol: simultaneous-message equality referee by hand") {
    // Players forward their bit as a basis state; the referee scores +1 on
    // equal bits and -1 otherwise via a diagonal effect.
    std::vector<DensityMatrix> prep;
    prep.push_back(DensityMatrix::pure(StateVector::basis(1, 0)));
    prep.push_back(DensityMatrix::pure(StateVector::basis(1, 1)));
    CMatrix effect = CMatrix::Zero(4, 4);
    effect.diagonal() << 1.0, -1.0, -1.0, 1.0;
    SmpQuantumProtocol p(1, 1, prep, prep, effect);
    CHECK(eval_smp(p, 0, 0) == doctest::Approx(1.0));
    CHECK(eval_smp(p, 1, 1) == doctest::Approx(1.0));
    CHECK(eval_smp(p, 0, 1) == doctest::Approx(-1.0));
    CHECK(eval_smp(p, 1, 0) == doctest::Approx(-1.0));

    // Replacing Alice's 1-encoding with |+> splits the score evenly: the
    // effect sees half weight on each parity, so the expectation vanishes.
    auto plus = DensityMatrix::pure(apply(hadamard_all(1), StateVector::basis(1, 0)));
    SmpQuantumProtocol q(1, 1, {prep[0], plus}, prep, effect);
    CHECK(eval_smp(q, 1, 0) == doctest::Approx(0.0).scale(1.0));
    CHECK(eval_smp(q, 1, 1) == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("protocol: xor fiber of the equality referee") {
    std::vector<DensityMatrix> prep;
    prep.push_back(DensityMatrix::pure(StateVector::basis(1, 0)));
    prep.push_back(DensityMatrix::pure(StateVector::basis(1, 1)));
    CMatrix effect = CMatrix::Zero(4, 4);
    effect.diagonal() << 1.0, -1.0, -1.0, 1.0;
    SmpQuantumProtocol p(1, 1, prep, prep, effect);
    auto h = xor_fiber(p);
    REQUIRE(h.n == 1);
    CHECK(h.values[0] == doctest::Approx(1.0));
    CHECK(h.values[1] == doctest::Approx(-1.0));

    auto flat = xor_fiber(2, [](uint32_t, uint32_t) { return 1.0; });
    for (double v : flat.values) CHECK(v == doctest::Approx(1.0));

    // C(x, y) = parity of x & y makes the fiber average cancel except at the
    // all-ones shift, where popcount(x & (x ^ 3)) = 0 for every x... not so:
    // x & ~x = 0, so H(3) = 1 while H(1), H(2) average to zero.
    auto par = xor_fiber(2, [](uint32_t x, uint32_t y) {
        return std::popcount(x & y) % 2 == 0 ? 1.0 : -1.0;
    });
    CHECK(par.values[0] == doctest::Approx(0.0).scale(1.0));
    CHECK(par.values[3] == doctest::Approx(1.0));
}

TEST_CASE("protocol: transcript distribution matches sequential evolution") {
    auto rng = make_rng(21, "test.protocol.seq");
    for (int rep = 0; rep < 3; ++rep) {
        auto p = random_two_way_protocol(2, 1, 1, 2, rng);
        for (uint32_t x = 0; x < 4; ++x)
            for (uint32_t y = 0; y < 4; ++y) {
                auto got = transcript_distribution(p, x, y);
                auto want = sequential_distribution(p, x, y);
                REQUIRE(got.size() == want.size());
                double total = 0.0, signed_total = 0.0;
                auto compiled = compile_two_way(p, x, y);
                for (size_t z = 0; z < got.size(); ++z) {
                    CHECK(std::abs(got[z] - want[z]) < 1e-10);
                    total += got[z];
                    signed_total += compiled.transcripts[z].sign * got[z];
                }
                CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
                CHECK(eval_two_way(p, x, y) == doctest::Approx(signed_total).epsilon(1e-9));
            }
    }
    // No-workspace edge case.
    auto p0 = random_two_way_protocol(1, 1, 0, 1, rng);
    auto got = transcript_distribution(p0, 1, 0);
    auto want = sequential_distribution(p0, 1, 0);
    for (size_t z = 0; z < got.size(); ++z) CHECK(std::abs(got[z] - want[z]) < 1e-10);
}

TEST_CASE("protocol: compiled transcripts are complete and evaluate linearly") {
    auto rng = make_rng(22, "test.protocol.compiled");
    auto p = random_two_way_protocol(2, 1, 1, 2, rng);
    auto c = compile_two_way(p, 1, 2);
    CHECK(completeness_residual(c) < 1e-10);

    auto r1 = random_density(2, rng);
    auto r2 = random_density(2, rng);
    double a = 0.3, b = 0.7;
    CMatrix mix = a * r1.mat + b * r2.mat;
    double lhs = eval_compiled(c, mix);
    double rhs = a * eval_compiled(c, r1.mat) + b * eval_compiled(c, r2.mat);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
    CHECK(eval_compiled(c, p.shared.mat) == doctest::Approx(eval_two_way(p, 1, 2)).epsilon(1e-10));
}

TEST_CASE("protocol: sampled transcripts track the exact distribution") {
    auto rng = make_rng(23, "test.protocol.mc");
    const long shots = 20000;
    for (int rep = 0; rep < 2; ++rep) {
        auto base = random_two_way_protocol(2, 1, 1, 2, rng);
        // A pure shared state exercises the state-vector sampling path.
        TwoWayEntangledProtocol p(2, 1, 1, 2, DensityMatrix::pure(random_state_vector(2, rng)),
                                  base.alice, base.bob, base.accept);
        auto exact = transcript_distribution(p, rep, 3);
        auto counts = monte_carlo_transcript(p, rep, 3, shots, rng);
        for (size_t z = 0; z < exact.size(); ++z) {
            double freq = double(counts[z]) / double(shots);
            double sigma = std::sqrt(exact[z] * (1.0 - exact[z]) / double(shots));
            CHECK(std::abs(freq - exact[z]) <= 4.0 * sigma + 1e-3);
        }
    }
    // Mixed-state path on a smaller sample.
    auto p = random_two_way_protocol(1, 1, 1, 1, rng);
    auto exact = transcript_distribution(p, 0, 1);
    auto counts = monte_carlo_transcript(p, 0, 1, 4000, rng);
    for (size_t z = 0; z < exact.size(); ++z) {
        double freq = double(counts[z]) / 4000.0;
        double sigma = std::sqrt(exact[z] * (1.0 - exact[z]) / 4000.0);
        CHECK(std::abs(freq - exact[z]) <= 4.0 * sigma + 5e-3);
    }
}

TEST_CASE("protocol: local basis changes leave transcripts invariant") {
    auto rng = make_rng(24, "test.protocol.local");
    auto p = random_two_way_protocol(2, 1, 1, 2, rng);
    auto u = random_unitary(1, rng);
    auto v = random_unitary(1, rng);
    auto q = local_equivalent(p, u, v);
    CHECK((q.shared.mat - kron2(u.mat, v.mat) * p.shared.mat *
                              kron2(u.mat, v.mat).adjoint())
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    for (uint32_t x = 0; x < 4; ++x)
        for (uint32_t y = 0; y < 4; ++y) {
            auto a = transcript_distribution(p, x, y);
            auto b = transcript_distribution(q, x, y);
            for (size_t z = 0; z < a.size(); ++z) CHECK(std::abs(a[z] - b[z]) < 1e-10);
        }
}

TEST_CASE("protocol: growth report chains hold for simultaneous messages") {
    auto rng = make_rng(25, "test.protocol.growth");
    for (int rep = 0; rep < 5; ++rep) {
        auto p = random_smp_protocol(3, 1, rng);
        auto report = fourier_growth_report(p, 3);
        REQUIRE(report.rows.size() == 4);
        for (const auto& row : report.rows) {
            CHECK(row.asserted);
            CHECK(row.holds);
            CHECK(row.mass <= row.product_bound + 1e-9);
            CHECK(row.product_bound <= row.cs_bound + 1e-9);
        }
    }
}

TEST_CASE("protocol: growth report for interaction is report-only") {
    auto rng = make_rng(26, "test.protocol.growth2");
    auto p = random_two_way_protocol(2, 1, 1, 1, rng);
    auto report = fourier_growth_report(p, 2);
    REQUIRE(report.rows.size() == 3);
    for (const auto& row : report.rows) {
        CHECK_FALSE(row.asserted);
        // Interactive reference column: 2^{5d} c^ell with c transcript bits.
        double expect = std::pow(2.0, 5.0 * p.d) * std::pow(double(p.c()), double(row.ell));
        CHECK(row.reference == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("protocol: golden interactive protocol evaluates to frozen values") {
    std::ifstream in(std::string(ENTLAB_TEST_DATA_DIR) + "/two_way.json");
    REQUIRE(in.good());
    json j = json::parse(in);
    auto p = two_way_from_json(j);
    CHECK(p.n == 2);
    CHECK(p.rounds == 2);
    CHECK(eval_two_way(p, 0, 0) == doctest::Approx(-0.42161548911803959).epsilon(1e-12));
    CHECK(eval_two_way(p, 1, 2) == doctest::Approx(0.19809395371429470).epsilon(1e-12));
    CHECK(eval_two_way(p, 3, 1) == doctest::Approx(0.57386375165443360).epsilon(1e-12));
    CHECK(eval_two_way(p, 2, 3) == doctest::Approx(-0.41389583955698228).epsilon(1e-12));
    CHECK(to_json(p) == j);
}

TEST_CASE("protocol: construction rejects malformed tables") {
    auto rng = make_rng(27, "test.protocol.reject");
    auto p = random_two_way_protocol(1, 1, 0, 1, rng);
    auto bad_accept = p.accept;
    bad_accept.push_back(97);  // out of transcript range
    CHECK_THROWS_AS(TwoWayEntangledProtocol(p.n, p.d, p.m, p.rounds, p.shared, p.alice, p.bob,
                                            bad_accept),
                    std::invalid_argument);
    auto bad_bob = p.bob;
    bad_bob[0].pop_back();  // bob round prefixes must cover both alice bits
    CHECK_THROWS_AS(
        TwoWayEntangledProtocol(p.n, p.d, p.m, p.rounds, p.shared, p.alice, bad_bob, p.accept),
        std::invalid_argument);
}

}  // namespace
