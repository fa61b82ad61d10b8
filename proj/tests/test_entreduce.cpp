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

#include <cmath>
#include <complex>
#include <vector>

#include "entlab/entreduce.hpp"
#include "entlab/harness.hpp"
#include "entlab/random.hpp"
#include "entlab/rng.hpp"

namespace {

using namespace entlab;

CMatrix kron2(const CMatrix& a, const CMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

OneWayEntangledProtocol random_real_one_way(int n, int c, int d, std::mt19937_64& rng) {
    auto shared = random_real_density(2 * d, rng);
    std::vector<MeasurementFamily> alice;
    for (uint32_t x = 0; x < (1u << n); ++x) {
        auto o = random_orthogonal(d, rng);
        std::vector<CMatrix> ops;
        std::vector<int> labels;
        Eigen::Index side = Eigen::Index(1) << d;
        for (uint32_t z = 0; z < (1u << c); ++z) {
            CMatrix proj = CMatrix::Zero(side, side);
            for (Eigen::Index t = z; t < side; t += Eigen::Index(1) << c) proj(t, t) = 1.0;
            ops.push_back(proj * o.mat);
            labels.push_back(int(z));
        }
        alice.emplace_back(d, labels, ops);
    }
    std::vector<std::vector<CMatrix>> bob(size_t(1) << n);
    for (auto& row : bob)
        for (uint32_t z = 0; z < (1u << c); ++z)
            row.push_back(random_real_symmetric_contraction(d, rng));
    return OneWayEntangledProtocol(n, c, d, shared, alice, bob);
}

TEST_CASE("reduction: canonical and pair states") {
    auto zero = canonical_state(ComponentKind::Zero, 1);
    CHECK(std::abs(zero.mat(0, 0) - 1.0) < 1e-14);
    CHECK(zero.mat.cwiseAbs().sum() == doctest::Approx(1.0));

    auto epr = canonical_state(ComponentKind::Epr, 1);
    CHECK((epr.mat - DensityMatrix::pure(StateVector::max_entangled(1)).mat).cwiseAbs().maxCoeff() <
          1e-14);

    auto ps = pair_state(1, 0, 3);
    for (auto [r, c] : std::vector<std::pair<int, int>>{{0, 0}, {0, 3}, {3, 0}, {3, 3}})
        CHECK(std::abs(ps.mat(r, c) - 0.5) < 1e-14);

    auto pi = pair_state(1, 0, 3, true);
    CHECK(std::abs(pi.mat(0, 3) - std::complex<double>(0, -0.5)) < 1e-14);
    CHECK(std::abs(pi.mat(3, 0) - std::complex<double>(0, 0.5)) < 1e-14);

    CHECK(std::abs(pair_state(1, 2, 2).mat(2, 2) - 1.0) < 1e-14);
}

TEST_CASE("reduction: unitary completion from assigned columns") {
    CVector c0(2);
    c0 << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    auto u = complete_unitary(1, {c0});
    CHECK((u.mat.adjoint() * u.mat - CMatrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((u.mat.col(0) - c0).norm() < 1e-12);
    // The free column comes from orthogonalizing the first independent basis
    // vector, here e0.
    CHECK(std::abs(u.mat(0, 1) - 1.0 / std::sqrt(2.0)) < 1e-12);
    CHECK(std::abs(u.mat(1, 1) + 1.0 / std::sqrt(2.0)) < 1e-12);
}

TEST_CASE("reduction: pair classification with local witnesses") {
    // Fresh indices on both registers give the entangled kind; any shared
    // register index collapses to a product.
    CHECK(classify_pair(0, 3, 1).kind == ComponentKind::Epr);
    CHECK(classify_pair(1, 2, 1).kind == ComponentKind::Epr);
    CHECK(classify_pair(0, 1, 1).kind == ComponentKind::Zero);
    CHECK(classify_pair(0, 2, 1).kind == ComponentKind::Zero);
    CHECK(classify_pair(2, 2, 1).kind == ComponentKind::Zero);

    for (bool phase : {false, true}) {
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                if (phase && i == j) continue;
                auto pc = classify_pair(i, j, 1, phase);
                auto canon = canonical_state(pc.kind, 1);
                CMatrix w = kron2(pc.witness_a.mat, pc.witness_b.mat);
                CMatrix mapped = w * canon.mat * w.adjoint();
                CHECK((mapped - pair_state(1, i, j, phase).mat).cwiseAbs().maxCoeff() < 1e-12);
            }
        }
    }
}

TEST_CASE("reduction: the maximally entangled state splits into two pair terms") {
    auto epr = DensityMatrix::pure(StateVector::max_entangled(1));
    auto dec = decompose(epr);
    CHECK_FALSE(dec.complex_extension);
    REQUIRE(dec.components.size() == 2);
    CHECK(coefficient_of(dec, 0, 3) == doctest::Approx(0.5));
    CHECK(coefficient_of(dec, 3, 0) == doctest::Approx(0.5));
    CHECK(coefficient_of(dec, 0, 0) == doctest::Approx(0.0).scale(1.0));
    for (const auto& comp : dec.components) CHECK(comp.kind == ComponentKind::Epr);

    auto report = verify_decomposition(epr, dec);
    CHECK(report.valid);
    CHECK(report.reconstruction_residual < 1e-12);
    CHECK(report.max_witness_residual < 1e-12);
    CHECK(report.max_coefficient == doctest::Approx(0.5));
    CHECK(report.coefficient_bound == doctest::Approx(2.0));
}

TEST_CASE("reduction: random real states decompose within the weight budget") {
    auto rng = make_rng(62, "test.reduce.real");
    for (int d : {1, 2}) {
        int reps = d == 1 ? 20 : 5;
        for (int t = 0; t < reps; ++t) {
            auto rho = random_real_density(2 * d, rng);
            auto dec = decompose(rho);
            CHECK_FALSE(dec.complex_extension);
            auto report = verify_decomposition(rho, dec);
            CHECK(report.valid);
            CHECK(report.reconstruction_residual < 1e-10);
            CHECK(report.max_coefficient <= report.coefficient_bound + 1e-12);
            CHECK(report.coefficient_bound == doctest::Approx(std::pow(2.0, d)));
        }
    }
}

TEST_CASE("reduction: complex states ride the extended family") {
    auto rng = make_rng(63, "test.reduce.complex");
    for (int t = 0; t < 10; ++t) {
        auto rho = random_density(2, rng);
        auto dec = decompose(rho);
        CHECK(dec.complex_extension);
        auto report = verify_decomposition(rho, dec);
        CHECK(report.valid);
        CHECK(report.reconstruction_residual < 1e-10);
        CHECK(report.coefficient_bound == doctest::Approx(4.0));
    }
}

TEST_CASE("reduction: protocol output is linear over the decomposition") {
    auto rng = make_rng(64, "test.reduce.linear");
    for (int t = 0; t < 3; ++t) {
        auto base = random_two_way_protocol(2, 1, 1, 2, rng);
        auto rho = random_density(2, rng);
        TwoWayEntangledProtocol p(2, 1, 1, 2, rho, base.alice, base.bob, base.accept);
        auto dec = decompose(rho);
        for (uint32_t x = 0; x < 4; ++x)
            for (uint32_t y = 0; y < 4; ++y)
                CHECK(decomposition_linearity_residual(p, dec, x, y) < 1e-9);
    }
}

TEST_CASE("reduction: entry quantizer rounds, breaks ties toward zero, clamps") {
    CHECK(quantize_entry(0.3, 5) == doctest::Approx(0.3125).epsilon(1e-15));
    CHECK(quantize_entry(0.515625, 5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(quantize_entry(-0.515625, 5) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(quantize_entry(-0.49, 5) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(quantize_entry(1.2, 5) == 1.0);
    CHECK(quantize_entry(-3.0, 5) == -1.0);
    CHECK(quantize_entry(0.0, 5) == 0.0);
}

TEST_CASE("reduction: reference simultaneous protocol strips to the flagged rate") {
    auto ref = reference_entangled_smp();
    for (uint32_t x = 0; x < 2; ++x) {
        for (uint32_t y = 0; y < 2; ++y) {
            double sign = (x == y) ? 1.0 : -1.0;
            CHECK(eval_entangled_smp(ref, x, y) == doctest::Approx(sign / 3.0).epsilon(1e-12));
            auto a = strip_qsmp_analyze(ref, x, y);
            CHECK(a.flag_prob == doctest::Approx(1.0 / 16.0).epsilon(1e-12));
            CHECK(a.conditional_value == doctest::Approx(sign / 3.0).epsilon(1e-10));
            CHECK(a.overall_value == doctest::Approx(sign / 48.0).epsilon(1e-10));
        }
    }
    // With both unitaries trivial the flagged referee holds the shared state
    // itself.
    auto a00 = strip_qsmp_analyze(ref, 0, 0);
    CHECK(trace_distance(a00.conditional_state, ref.shared) < 1e-12);
}

TEST_CASE("reduction: stripped simultaneous protocol on random instances") {
    auto rng = make_rng(65, "test.reduce.qsmp");
    for (int t = 0; t < 4; ++t) {
        auto p = random_entangled_smp(2, 1, rng);
        uint32_t x = rng() & 3u, y = rng() & 3u;
        auto a = strip_qsmp_analyze(p, x, y);
        CHECK(a.flag_prob == doctest::Approx(std::pow(2.0, -4.0)).epsilon(1e-10));
        CHECK(a.conditional_value ==
              doctest::Approx(eval_entangled_smp(p, x, y)).epsilon(1e-9));
        CHECK(a.overall_value == doctest::Approx(a.flag_prob * a.conditional_value).epsilon(1e-12));
    }

    auto p = random_entangled_smp(1, 1, rng);
    auto a = strip_qsmp_analyze(p, 1, 0);
    auto shots = strip_qsmp_simulate(p, 1, 0, 40000, rng);
    double flag_freq = double(shots.flags) / double(shots.shots);
    CHECK(std::abs(flag_freq - a.flag_prob) <=
          4.0 * std::sqrt(a.flag_prob * (1 - a.flag_prob) / 40000.0));
    CHECK(std::abs(shots.mean_output - a.overall_value) <= 4.0 / std::sqrt(40000.0));
}

TEST_CASE("reduction: one-way compilation keeps the scaled expectation exactly") {
    auto ow = reference_one_way();
    for (uint32_t x = 0; x < 2; ++x) {
        for (uint32_t y = 0; y < 2; ++y) {
            double sign = (x == y) ? 1.0 : -1.0;
            auto a = strip_oneway_analyze(ow, x, y);
            CHECK(a.original_value == doctest::Approx(sign / 3.0).epsilon(1e-12));
            CHECK(a.identity_value == doctest::Approx(sign / 48.0).epsilon(1e-12));
            // Bell-state entries sit exactly on the 5-bit grid, so nothing is
            // lost to quantization here.
            CHECK(a.stripped_value == doctest::Approx(a.identity_value).epsilon(1e-12));
            CHECK(a.extra_bits == 10);
        }
    }
}

TEST_CASE("reduction: one-way compilation on random real protocols") {
    auto rng = make_rng(66, "test.reduce.oneway");
    for (int t = 0; t < 5; ++t) {
        auto p = random_real_one_way(1, 1, 1, rng);
        for (uint32_t x = 0; x < 2; ++x) {
            for (uint32_t y = 0; y < 2; ++y) {
                auto a = strip_oneway_analyze(p, x, y);
                CHECK(a.identity_value ==
                      doctest::Approx(a.original_value / 16.0).epsilon(1e-12));
                CHECK(std::abs(a.stripped_value - a.identity_value) <= 0.01);
            }
        }
    }
    auto p = random_real_one_way(1, 1, 1, rng);
    auto a = strip_oneway_analyze(p, 0, 1);
    auto shots = strip_oneway_simulate(p, 0, 1, 40000, rng);
    CHECK(std::abs(shots.mean_output - a.stripped_value) <= 4.0 / std::sqrt(40000.0));
}

TEST_CASE("reduction: complex inputs are rejected by the real compilation") {
    auto rng = make_rng(67, "test.reduce.reject");
    auto p = random_real_one_way(1, 1, 1, rng);
    OneWayEntangledProtocol bad_shared(p.n, p.c, p.d, random_density(2, rng), p.alice, p.bob);
    CHECK_THROWS_AS(strip_oneway_analyze(bad_shared, 0, 0), std::invalid_argument);

    auto bob = p.bob;
    bob[0][0] = random_hermitian_contraction(1, rng);
    OneWayEntangledProtocol bad_bob(p.n, p.c, p.d, p.shared, p.alice, bob);
    CHECK_THROWS_AS(strip_oneway_analyze(bad_bob, 0, 0), std::invalid_argument);
}

TEST_CASE("reduction: entrywise sampling identity for real operators") {
    auto rng = make_rng(68, "test.reduce.identity");
    for (int t = 0; t < 10; ++t) {
        CMatrix f = random_real_symmetric_contraction(2, rng);
        CMatrix sigma = random_real_density(2, rng).mat;
        CHECK(expectation_identity_residual(f, sigma, 1) < 1e-12);
    }
}

}  // namespace
