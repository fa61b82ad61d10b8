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

#include "entlab/forrelation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "entlab/rng.hpp"

namespace entlab {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_vector(const std::vector<int>& v, const char* what) {
    require(v.size() >= 2 && is_power_of_two(v.size()), what);
    for (int e : v) require(e == 1 || e == -1, "entries must be +-1");
}

/// In-place orthonormal Walsh-Hadamard butterfly.
void fwht(std::vector<double>& v) {
    size_t n = v.size();
    for (size_t half = 1; half < n; half <<= 1)
        for (size_t block = 0; block < n; block += 2 * half)
            for (size_t i = block; i < block + half; ++i) {
                double a = v[i], b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
    double scale = 1.0 / std::sqrt(double(n));
    for (double& e : v) e *= scale;
}

std::vector<int> random_signs(size_t count, std::mt19937_64& rng) {
    std::vector<int> v(count);
    std::uniform_int_distribution<int> bit(0, 1);
    for (auto& e : v) e = bit(rng) ? -1 : 1;
    return v;
}

}  // namespace

ForrXorInstance::ForrXorInstance(double epsilon_, std::vector<ForrInstance> copies_)
    : k(int(copies_.size())), epsilon(epsilon_), copies(std::move(copies_)) {
    require(k >= 1, "ForrXorInstance: need at least one copy");
    require(epsilon > 0.0, "ForrXorInstance: epsilon must be positive");
    for (const auto& c : copies)
        require(c.n == copies[0].n, "ForrXorInstance: copies must share n");
}

int ForrXorInstance::xor_label() const {
    int prod = 1;
    for (const auto& c : copies) {
        if (c.label == 0) return 0;
        prod *= c.label;
    }
    return prod;
}

bool is_power_of_two(uint64_t v) { return v != 0 && (v & (v - 1)) == 0; }

double forr_value(const std::vector<int>& z) {
    check_vector(z, "forr_value: length must be a power of two, at least 2");
    size_t half = z.size() / 2;
    std::vector<double> z1(z.begin(), z.begin() + half);
    fwht(z1);
    double dot = 0.0;
    for (size_t j = 0; j < half; ++j) dot += double(z[half + j]) * z1[j];
    return dot / double(z.size());
}

int classify(const std::vector<int>& x, const std::vector<int>& y, double epsilon) {
    require(x.size() == y.size(), "classify: length mismatch");
    require(epsilon > 0.0, "classify: epsilon must be positive");
    std::vector<int> z(x.size());
    for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] * y[i];
    double f = forr_value(z);
    if (f >= epsilon / 4.0) return -1;
    if (std::abs(f) <= epsilon / 8.0) return +1;
    return 0;
}

double canonical_epsilon(int k, int n) {
    require(k >= 1 && n >= 2, "canonical_epsilon: need k >= 1, n >= 2");
    return 1.0 / (60.0 * double(k) * double(k) * std::log(double(n)));
}

PlantResult plant_with_stats(int n, double epsilon, int target_label, uint64_t seed) {
    require(n >= 2 && is_power_of_two(uint64_t(n)), "plant: n must be a power of two");
    require(target_label == 1 || target_label == -1, "plant: target label must be +-1");
    require(epsilon > 0.0, "plant: epsilon must be positive");
    require(epsilon >= 8.0 * kPlantingConstant / std::sqrt(double(n)),
            "plant: epsilon below the feasible planting scale");

    std::mt19937_64 rng = make_rng(seed, "forr.plant", uint64_t(target_label == -1 ? 0 : 1));
    size_t half = size_t(n) / 2;
    PlantResult out;

    if (target_label == -1) {
        for (long attempt = 1; attempt <= kPlantRejectionCap; ++attempt) {
            std::vector<int> s1 = random_signs(half, rng);
            std::vector<int> s2 = random_signs(half, rng);
            std::vector<double> v(s1.begin(), s1.end());
            fwht(v);
            double value = 0.0;
            for (size_t j = 0; j < half; ++j) value += double(s2[j]) * v[j];
            value /= double(n);
            // Flip s2 toward the sign pattern of v, largest magnitudes first;
            // each flip raises the correlation by 2|v_j| / n.
            std::vector<size_t> order(half);
            std::iota(order.begin(), order.end(), size_t(0));
            std::sort(order.begin(), order.end(),
                      [&](size_t a, size_t b) { return std::abs(v[a]) > std::abs(v[b]); });
            size_t next = 0;
            while (value < epsilon / 4.0 && next < half) {
                size_t j = order[next++];
                if (v[j] != 0.0 && double(s2[j]) * v[j] < 0.0) {
                    s2[j] = -s2[j];
                    value += 2.0 * std::abs(v[j]) / double(n);
                }
            }
            if (value >= epsilon / 4.0) {
                std::vector<int> s(s1);
                s.insert(s.end(), s2.begin(), s2.end());
                out.inst.n = n;
                out.inst.x = random_signs(size_t(n), rng);
                out.inst.y.resize(size_t(n));
                for (size_t i = 0; i < size_t(n); ++i) out.inst.y[i] = out.inst.x[i] * s[i];
                out.inst.label = -1;
                out.attempts = attempt;
                return out;
            }
        }
    } else {
        for (long attempt = 1; attempt <= kPlantRejectionCap; ++attempt) {
            std::vector<int> x = random_signs(size_t(n), rng);
            std::vector<int> y = random_signs(size_t(n), rng);
            std::vector<int> z(x.size());
            for (size_t i = 0; i < x.size(); ++i) z[i] = x[i] * y[i];
            if (std::abs(forr_value(z)) <= epsilon / 8.0) {
                out.inst = ForrInstance{n, std::move(x), std::move(y), +1};
                out.attempts = attempt;
                return out;
            }
        }
    }
    throw std::runtime_error("plant: rejection cap reached, planting infeasible");
}

ForrInstance plant_instance(int n, double epsilon, int target_label, uint64_t seed) {
    return plant_with_stats(n, epsilon, target_label, seed).inst;
}

long default_reps(double epsilon, int k) {
    require(epsilon > 0.0 && epsilon <= 1.0, "default_reps: epsilon must be in (0, 1]");
    require(k >= 1, "default_reps: k must be positive");
    double base = std::ceil(48.0 / std::pow(epsilon, 4.0));
    double mult = std::ceil(std::log2(6.0 * double(k)));
    return long(base) * long(mult);
}

StateVector encode_vector(const std::vector<int>& v) {
    check_vector(v, "encode_vector: length must be a power of two, at least 2");
    int q = std::countr_zero(v.size());
    CVector amps(Eigen::Index(v.size()));
    double scale = 1.0 / std::sqrt(double(v.size()));
    for (size_t j = 0; j < v.size(); ++j) amps(Eigen::Index(j)) = scale * double(v[j]);
    return StateVector(q, std::move(amps));
}

StateVector hadamard_encode(const std::vector<int>& v) {
    StateVector enc = encode_vector(v);
    return apply(hadamard_all(enc.qubits), enc);
}

double swap_bias(const std::vector<int>& x, const std::vector<int>& y) {
    require(x.size() == y.size(), "swap_bias: length mismatch");
    std::vector<double> v(y.begin(), y.end());
    fwht(v);
    double dot = 0.0;
    for (size_t j = 0; j < x.size(); ++j) dot += double(x[j]) * v[j];
    return dot / (std::sqrt(double(x.size())) * std::sqrt(double(x.size())));
}

double swap_accept_probability(const std::vector<int>& x, const std::vector<int>& y) {
    double b = swap_bias(x, y);
    return 0.5 + 0.5 * b * b;
}

double decision_threshold(double epsilon) {
    require(epsilon > 0.0, "decision_threshold: epsilon must be positive");
    double t = epsilon / 4.0;
    return 0.5 + t * t * 9.0 / 128.0;
}

int swap_test_copy(const ForrInstance& copy, double epsilon, long reps, std::mt19937_64& rng) {
    require(reps >= 1, "swap_test_copy: need at least one test");
    double p = swap_accept_probability(copy.x, copy.y);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    long accepts = 0;
    for (long t = 0; t < reps; ++t)
        if (unif(rng) < p) ++accepts;
    double frequency = double(accepts) / double(reps);
    return frequency >= decision_threshold(epsilon) ? -1 : +1;
}

int swap_test_protocol(const ForrXorInstance& inst, long reps, uint64_t seed) {
    require(inst.k >= 1, "swap_test_protocol: empty instance");
    int product = 1;
    for (int i = 0; i < inst.k; ++i) {
        std::mt19937_64 rng = make_rng(seed, "forr.copy", uint64_t(i));
        product *= swap_test_copy(inst.copies[size_t(i)], inst.epsilon, reps, rng);
    }
    return product;
}

}  // namespace entlab
