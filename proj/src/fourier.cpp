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

#include "entlab/fourier.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace entlab {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_n(int n) { require(n >= 0 && n <= 24, "variable count out of range"); }

// In-place Walsh-Hadamard butterflies over an arbitrary element type.
template <typename T>
void walsh_hadamard(std::vector<T>& v) {
    for (size_t half = 1; half < v.size(); half <<= 1)
        for (size_t block = 0; block < v.size(); block += 2 * half)
            for (size_t i = block; i < block + half; ++i) {
                T a = v[i];
                T b = v[i + half];
                v[i] = a + b;
                v[i + half] = a - b;
            }
}

}  // namespace

BooleanFunctionTable::BooleanFunctionTable(int n_, std::vector<double> values_, bool bounded_)
    : n(n_), values(std::move(values_)), bounded(bounded_) {
    check_n(n);
    require(values.size() == size_t(1) << n, "table length must be 2^n");
    if (bounded)
        for (double v : values) require(std::abs(v) <= 1.0 + 1e-12, "bounded table exceeds 1");
}

FourierSpectrum fourier(const BooleanFunctionTable& f) {
    std::vector<double> coef = f.values;
    walsh_hadamard(coef);
    double scale = 1.0 / double(size_t(1) << f.n);
    for (double& c : coef) c *= scale;
    return FourierSpectrum{f.n, std::move(coef)};
}

BooleanFunctionTable inverse_fourier(const FourierSpectrum& spec) {
    check_n(spec.n);
    require(spec.coef.size() == size_t(1) << spec.n, "coefficient length must be 2^n");
    std::vector<double> values = spec.coef;
    walsh_hadamard(values);
    return BooleanFunctionTable(spec.n, std::move(values));
}

double level_mass(const FourierSpectrum& spec, int ell) {
    require(ell >= 0 && ell <= spec.n, "level out of range");
    double sum = 0.0;
    for (size_t s = 0; s < spec.coef.size(); ++s)
        if (std::popcount(s) == ell) sum += std::abs(spec.coef[s]);
    return sum;
}

LevelAudit level_k_audit(const BooleanFunctionTable& f, int ell) {
    require(ell >= 0 && ell <= f.n, "level out of range");
    for (double v : f.values) require(std::abs(v) <= 1.0 + 1e-12, "audit needs |f| <= 1");

    FourierSpectrum spec = fourier(f);
    double lhs = 0.0;
    for (size_t s = 0; s < spec.coef.size(); ++s)
        if (std::popcount(s) == ell) lhs += spec.coef[s] * spec.coef[s];

    double alpha = 0.0;
    for (double v : f.values) alpha += std::abs(v);
    alpha /= double(f.values.size());

    double rhs;
    if (alpha == 0.0) {
        rhs = 0.0;
    } else if (ell == 0) {
        rhs = 4.0 * alpha * alpha;
    } else {
        double inner = 2.0 * std::numbers::e * (1.0 - std::log(alpha) / ell);
        rhs = 4.0 * alpha * alpha * std::pow(inner, ell);
    }
    return LevelAudit{ell, lhs, rhs, lhs <= rhs + 1e-9};
}

MatrixValuedFunction::MatrixValuedFunction(int n_, int c_, std::vector<DensityMatrix> values_)
    : n(n_), c(c_), values(std::move(values_)) {
    check_n(n);
    require(c >= 0 && c <= 12, "cost out of range");
    require(values.size() == size_t(1) << n, "table length must be 2^n");
    for (const DensityMatrix& v : values)
        require(v.dim() == Eigen::Index(1) << c, "matrix side must be 2^c");
}

MatrixSpectrum matrix_fourier(const MatrixValuedFunction& f) {
    std::vector<CMatrix> coef;
    coef.reserve(f.values.size());
    for (const DensityMatrix& v : f.values) coef.push_back(v.mat);
    walsh_hadamard(coef);
    double scale = 1.0 / double(size_t(1) << f.n);
    for (CMatrix& c : coef) c *= scale;
    return MatrixSpectrum{f.n, f.c, std::move(coef)};
}

MatrixValuedFunction matrix_inverse_fourier(const MatrixSpectrum& spec) {
    check_n(spec.n);
    require(spec.coef.size() == size_t(1) << spec.n, "coefficient length must be 2^n");
    std::vector<CMatrix> values = spec.coef;
    walsh_hadamard(values);
    std::vector<DensityMatrix> out;
    out.reserve(values.size());
    int qubits = spec.c;
    for (CMatrix& v : values) out.emplace_back(qubits, std::move(v));
    return MatrixValuedFunction(spec.n, spec.c, std::move(out));
}

MatrixLevelAudit matrix_level_k_audit(const MatrixValuedFunction& f, int ell) {
    require(ell >= 0 && ell <= f.n, "level out of range");
    MatrixSpectrum spec = matrix_fourier(f);
    double lhs = 0.0;
    for (size_t s = 0; s < spec.coef.size(); ++s)
        if (std::popcount(s) == ell) {
            double t = trace_norm(spec.coef[s]);
            lhs += t * t;
        }

    double two_ln2 = 2.0 * std::numbers::ln2;
    int cost = f.c;
    if (ell > two_ln2 * cost) cost = f.c + int(std::ceil(ell / two_ln2));

    double rhs = ell == 0
                     ? 1.0
                     : std::pow(std::numbers::e * two_ln2 * double(cost) / double(ell), ell);
    return MatrixLevelAudit{ell, lhs, rhs, cost, lhs <= rhs + 1e-9};
}

}  // namespace entlab
