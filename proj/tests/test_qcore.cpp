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

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "entlab/qcore.hpp"
#include "entlab/random.hpp"
#include "entlab/rng.hpp"

using namespace entlab;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("basis states and tensor ordering put qubit 0 on the top bit") {
    StateVector b = StateVector::basis(2, 1);
    CHECK(b.qubits == 2);
    CHECK(b.amps(1) == std::complex<double>(1.0, 0.0));
    // |1> (x) |0| lands on index 10b = 2: the first factor owns the high bit.
    StateVector t = tensor_product(StateVector::basis(1, 1), StateVector::basis(1, 0));
    CHECK(std::abs(t.amps(2) - 1.0) < 1e-15);
    CHECK(std::abs(t.amps(1)) < 1e-15);
}

TEST_CASE("the shared pair state weights equal indices on both registers") {
    StateVector phi = StateVector::max_entangled(1);
    CHECK(phi.qubits == 2);
    CHECK(std::abs(phi.amps(0) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(phi.amps(3) - kInvSqrt2) < 1e-12);
    CHECK(std::abs(phi.amps(1)) < 1e-15);
    // d = 2: four qubits, amplitude 1/2 on (i, i) pairs over side 4.
    StateVector phi2 = StateVector::max_entangled(2);
    CHECK(phi2.qubits == 4);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(phi2.amps(i * 4 + i) - 0.5) < 1e-12);
}

TEST_CASE("density matrix construction rejects non-states") {
    CMatrix bad = CMatrix::Identity(2, 2);  // trace 2
    CHECK_THROWS_AS(DensityMatrix(1, bad), std::invalid_argument);
    CMatrix neg = CMatrix::Zero(2, 2);
    neg(0, 0) = 1.5;
    neg(1, 1) = -0.5;
    CHECK_THROWS_AS(DensityMatrix(1, neg), std::invalid_argument);
}

TEST_CASE("unitary construction rejects non-unitaries") {
    CMatrix m = CMatrix::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(UnitaryOp(1, m), std::invalid_argument);
}

TEST_CASE("hadamard_all is orthonormal and maps |0..0> to the uniform state") {
    UnitaryOp h = hadamard_all(3);
    StateVector u = apply(h, StateVector::basis(3, 0));
    for (int i = 0; i < 8; ++i) CHECK(std::abs(u.amps(i) - 1.0 / std::sqrt(8.0)) < 1e-12);
    CHECK((h.mat * h.mat.adjoint() - CMatrix::Identity(8, 8)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("targeted apply agrees with the full kronecker route") {
    auto rng = make_rng(11, "qcore.targeted");
    UnitaryOp u = random_unitary(1, rng);
    StateVector psi = random_state_vector(3, rng);
    StateVector a = apply(u, psi, {1});
    CMatrix full = Eigen::kroneckerProduct(
        CMatrix::Identity(2, 2),
        Eigen::kroneckerProduct(u.mat, CMatrix::Identity(2, 2)).eval());
    StateVector b = apply(UnitaryOp(3, full), psi);
    CHECK((a.amps - b.amps).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of the shared pair state is maximally mixed") {
    DensityMatrix rho = DensityMatrix::pure(StateVector::max_entangled(1));
    DensityMatrix left = partial_trace(rho, {0});
    CHECK(left.qubits == 1);
    CHECK(std::abs(left.mat(0, 0).real() - 0.5) < 1e-12);
    CHECK(std::abs(left.mat(1, 1).real() - 0.5) < 1e-12);
    CHECK(std::abs(left.mat(0, 1)) < 1e-12);
}

TEST_CASE("partial trace keeps marginals of product states") {
    auto rng = make_rng(12, "qcore.pt");
    DensityMatrix a = random_density(1, rng);
    DensityMatrix b = random_density(2, rng);
    DensityMatrix joint = tensor_product(a, b);
    DensityMatrix keep_a = partial_trace(joint, {0});
    DensityMatrix keep_b = partial_trace(joint, {1, 2});
    CHECK((keep_a.mat - a.mat).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((keep_b.mat - b.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("measurement outcomes are a probability distribution with valid posts") {
    auto rng = make_rng(13, "qcore.measure");
    DensityMatrix rho = random_density(2, rng);
    MeasurementFamily fam = random_measurement(2, 3, rng);
    auto outs = measure(rho, fam);
    double total = 0.0;
    for (const auto& o : outs) {
        total += o.prob;
        if (o.post) CHECK(std::abs(o.post->mat.trace().real() - 1.0) < 1e-9);
    }
    CHECK(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("pure measurement of a basis-distinguishing family collapses exactly") {
    CMatrix p0 = CMatrix::Zero(2, 2), p1 = CMatrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    p1(1, 1) = 1.0;
    MeasurementFamily fam(1, {0, 1}, {p0, p1});
    StateVector plus(1, [] {
        CVector v(2);
        v << kInvSqrt2, kInvSqrt2;
        return v;
    }());
    auto outs = measure(plus, fam);
    REQUIRE(outs.size() == 2);
    CHECK(std::abs(outs[0].prob - 0.5) < 1e-12);
    CHECK(std::abs(outs[1].prob - 0.5) < 1e-12);
    REQUIRE(outs[0].post.has_value());
    CHECK(std::abs(std::abs(outs[0].post->amps(0)) - 1.0) < 1e-12);
}

TEST_CASE("targeted pure measurement matches measuring the expanded family") {
    auto rng = make_rng(14, "qcore.targmeas");
    StateVector psi = random_state_vector(3, rng);
    MeasurementFamily fam = random_measurement(1, 2, rng);
    auto targeted = measure(psi, fam, {2});
    std::vector<CMatrix> big;
    for (const auto& op : fam.ops)
        big.push_back(Eigen::kroneckerProduct(CMatrix::Identity(4, 4), op).eval());
    auto full = measure(psi, MeasurementFamily(3, fam.labels, big));
    REQUIRE(targeted.size() == full.size());
    for (size_t i = 0; i < full.size(); ++i) {
        CHECK(std::abs(targeted[i].prob - full[i].prob) < 1e-12);
        if (targeted[i].post && full[i].post)
            CHECK((targeted[i].post->amps - full[i].post->amps).cwiseAbs().maxCoeff() < 1e-9);
    }
}

TEST_CASE("norms and distances on hand states") {
    DensityMatrix zero = DensityMatrix::pure(StateVector::basis(1, 0));
    DensityMatrix one = DensityMatrix::pure(StateVector::basis(1, 1));
    CHECK(std::abs(trace_distance(zero, one) - 1.0) < 1e-12);
    CHECK(std::abs(trace_distance(zero, zero)) < 1e-12);
    CMatrix z = CMatrix::Identity(2, 2);
    z(1, 1) = -1.0;
    CHECK(std::abs(trace_norm(z) - 2.0) < 1e-12);
    CHECK(std::abs(operator_norm(z) - 1.0) < 1e-12);
}

TEST_CASE("swap test acceptance interpolates overlap") {
    StateVector zero = StateVector::basis(1, 0);
    StateVector one = StateVector::basis(1, 1);
    CHECK(std::abs(swap_test_prob(zero, zero) - 1.0) < 1e-12);
    CHECK(std::abs(swap_test_prob(zero, one) - 0.5) < 1e-12);
    StateVector plus(1, [] {
        CVector v(2);
        v << kInvSqrt2, kInvSqrt2;
        return v;
    }());
    CHECK(std::abs(swap_test_prob(zero, plus) - 0.75) < 1e-12);
}

TEST_CASE("random generators emit valid objects") {
    auto rng = make_rng(15, "qcore.rand");
    for (int t = 0; t < 5; ++t) {
        DensityMatrix rho = random_density(2, rng);
        CHECK(std::abs(rho.mat.trace().real() - 1.0) < 1e-9);
        DensityMatrix rr = random_real_density(2, rng);
        CHECK(rr.mat.imag().cwiseAbs().maxCoeff() < 1e-12);
        UnitaryOp u = random_unitary(2, rng);
        CHECK((u.mat * u.mat.adjoint() - CMatrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-9);
        UnitaryOp o = random_orthogonal(2, rng);
        CHECK(o.mat.imag().cwiseAbs().maxCoeff() < 1e-12);
        CMatrix h = random_hermitian_contraction(2, rng);
        CHECK(operator_norm(h) <= 1.0 + 1e-9);
        CMatrix s = random_real_symmetric_contraction(2, rng);
        CHECK(s.imag().cwiseAbs().maxCoeff() < 1e-12);
        CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("seeded streams are reproducible and independent") {
    auto a1 = make_rng(7, "stream.a");
    auto a2 = make_rng(7, "stream.a");
    auto b = make_rng(7, "stream.b");
    CHECK(a1() == a2());
    auto c0 = make_rng(7, "stream.a", 0);
    auto c1 = make_rng(7, "stream.a", 1);
    CHECK(c0() != c1());
    (void)b;
}
