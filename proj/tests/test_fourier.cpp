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

#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "entlab/fourier.hpp"
#include "entlab/random.hpp"
#include "entlab/rng.hpp"

namespace {

using namespace entlab;

BooleanFunctionTable random_table(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> v(static_cast<size_t>(1) << n);
    for (auto& x : v) x = u(rng);
    return BooleanFunctionTable(n, v, true);
}

TEST_CASE("fourier: parity function has a single unit coefficient") {
    const int n = 3;
    const uint32_t s0 = 0b101;
    std::vector<double> v(8);
    for (uint32_t i = 0; i < 8; ++i)
        v[i] = (std::popcount(i & s0) % 2 == 0) ? 1.0 : -1.0;
    auto spec = fourier(BooleanFunctionTable(n, v, true));
    for (uint32_t s = 0; s < 8; ++s) {
        double want = (s == s0) ? 1.0 : 0.0;
        CHECK(std::abs(spec.coef[s] - want) < 1e-14);
    }
}

TEST_CASE("fourier: three-bit majority spectrum") {
    std::vector<double> v(8);
    for (uint32_t i = 0; i < 8; ++i)
        v[i] = (std::popcount(i) >= 2) ? -1.0 : 1.0;
    auto spec = fourier(BooleanFunctionTable(3, v, true));
    for (uint32_t s : {1u, 2u, 4u})
        CHECK(spec.coef[s] == doctest::Approx(0.5).scale(1e-13));
    CHECK(spec.coef[7] == doctest::Approx(-0.5).scale(1e-13));
    for (uint32_t s : {0u, 3u, 5u, 6u})
        CHECK(std::abs(spec.coef[s]) < 1e-14);
    CHECK(level_mass(spec, 1) == doctest::Approx(1.5));
    CHECK(level_mass(spec, 2) < 1e-13);
    CHECK(level_mass(spec, 3) == doctest::Approx(0.5));
}

TEST_CASE("fourier: transform round trip and Parseval") {
    auto rng = make_rng(11, "test.fourier.roundtrip");
    for (int rep = 0; rep < 20; ++rep) {
        auto f = random_table(5, rng);
        auto spec = fourier(f);
        auto back = inverse_fourier(spec);
        REQUIRE(back.values.size() == f.values.size());
        double mean_sq = 0.0, coef_sq = 0.0;
        for (size_t i = 0; i < f.values.size(); ++i) {
            CHECK(back.values[i] == doctest::Approx(f.values[i]).scale(1e-12));
            mean_sq += f.values[i] * f.values[i];
        }
        mean_sq /= static_cast<double>(f.values.size());
        for (double c : spec.coef) coef_sq += c * c;
        CHECK(coef_sq == doctest::Approx(mean_sq).scale(1e-12));
    }
}

TEST_CASE("fourier: level bound for a dictator at level one") {
    // f(x) = x_0 has alpha = 1, so the bound is 4 (2e ln e) = 8e.
    std::vector<double> v(8);
    for (uint32_t i = 0; i < 8; ++i) v[i] = (i & 1) ? -1.0 : 1.0;
    auto audit = level_k_audit(BooleanFunctionTable(3, v, true), 1);
    CHECK(audit.lhs == doctest::Approx(1.0));
    CHECK(audit.rhs == doctest::Approx(8.0 * std::numbers::e).epsilon(1e-12));
    CHECK(audit.holds);
}

TEST_CASE("fourier: level bound holds on random bounded tables") {
    auto rng = make_rng(12, "test.fourier.audit");
    for (int rep = 0; rep < 200; ++rep) {
        auto f = random_table(5, rng);
        for (int ell = 1; ell <= 3; ++ell) {
            auto audit = level_k_audit(f, ell);
            CHECK(audit.holds);
            CHECK(audit.lhs <= audit.rhs + 1e-12);
        }
    }
}

TEST_CASE("fourier: level bound degenerates cleanly for the zero function") {
    BooleanFunctionTable zero(3, std::vector<double>(8, 0.0), true);
    auto audit = level_k_audit(zero, 2);
    CHECK(audit.lhs == 0.0);
    CHECK(audit.holds);
}

TEST_CASE("fourier: table construction validates shape and range") {
    CHECK_THROWS_AS(BooleanFunctionTable(2, {1.0, 0.0, 0.0}, false), std::invalid_argument);
    CHECK_THROWS_AS(BooleanFunctionTable(2, {1.5, 0.0, 0.0, 0.0}, true), std::invalid_argument);
    CHECK_NOTHROW(BooleanFunctionTable(2, {1.5, 0.0, 0.0, 0.0}, false));
    CHECK_THROWS_AS(level_k_audit(BooleanFunctionTable(2, {0, 0, 0, 0}, true), 3),
                    std::invalid_argument);
}

TEST_CASE("fourier: matrix transform of a basis-state indicator") {
    // F(x) = |b><b| where b is the sign bit of x_0; the only nonzero
    // coefficients are I/2 at the empty set and Z/2 at {0}.
    std::vector<DensityMatrix> vals;
    for (uint32_t i = 0; i < 4; ++i)
        vals.push_back(DensityMatrix::pure(StateVector::basis(1, i & 1)));
    auto spec = matrix_fourier(MatrixValuedFunction(2, 1, vals));
    CHECK(std::abs(spec.coef[0](0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(spec.coef[0](1, 1) - 0.5) < 1e-14);
    CHECK(std::abs(spec.coef[1](0, 0) - 0.5) < 1e-14);
    CHECK(std::abs(spec.coef[1](1, 1) + 0.5) < 1e-14);
    CHECK(std::abs(spec.coef[1](0, 1)) < 1e-14);
    CHECK(spec.coef[2].norm() < 1e-14);
    CHECK(spec.coef[3].norm() < 1e-14);
    CHECK(trace_norm(spec.coef[1]) == doctest::Approx(1.0));
}

TEST_CASE("fourier: matrix transform round trip") {
    auto rng = make_rng(13, "test.fourier.matrix");
    std::vector<DensityMatrix> vals;
    for (int i = 0; i < 8; ++i) vals.push_back(random_density(2, rng));
    MatrixValuedFunction f(3, 2, vals);
    auto back = matrix_inverse_fourier(matrix_fourier(f));
    REQUIRE(back.values.size() == vals.size());
    for (size_t i = 0; i < vals.size(); ++i)
        CHECK((back.values[i].mat - vals[i].mat).norm() < 1e-12);
}

TEST_CASE("fourier: matrix level bound with cost padding") {
    std::vector<DensityMatrix> vals(8, DensityMatrix::pure(StateVector::basis(1, 0)));
    MatrixValuedFunction f(3, 1, vals);

    auto a1 = matrix_level_k_audit(f, 1);
    // 2 ln(2) c ~ 1.386 >= 1, so level one needs no padding.
    CHECK(a1.padded_cost == 1);
    CHECK(a1.lhs < 1e-13);
    CHECK(a1.holds);

    auto a3 = matrix_level_k_audit(f, 3);
    CHECK(a3.padded_cost == 4);
    double expect = std::pow(2.0 * std::numbers::e * std::numbers::ln2 * 4.0 / 3.0, 3.0);
    CHECK(a3.rhs == doctest::Approx(expect).epsilon(1e-12));
    CHECK(a3.rhs == doctest::Approx(126.84286).epsilon(1e-6));
    CHECK(a3.holds);
}

TEST_CASE("fourier: matrix level bound holds on random ensembles") {
    auto rng = make_rng(14, "test.fourier.matrix.audit");
    for (int rep = 0; rep < 10; ++rep) {
        std::vector<DensityMatrix> vals;
        for (int i = 0; i < 16; ++i) vals.push_back(random_density(1, rng));
        MatrixValuedFunction f(4, 1, vals);
        for (int ell = 1; ell <= 2; ++ell) {
            auto audit = matrix_level_k_audit(f, ell);
            CHECK(audit.holds);
        }
    }
}

}  // namespace
