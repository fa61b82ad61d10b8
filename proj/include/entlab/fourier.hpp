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

#ifndef ENTLAB_FOURIER_HPP
#define ENTLAB_FOURIER_HPP

#include <cstdint>
#include <vector>

#include "entlab/qcore.hpp"

namespace entlab {

// Boolean-cube conventions used everywhere: a point x in {-1,1}^n is stored at
// table index i where bit b of i (bit 0 = variable 0) is 0 for +1 and 1 for -1.
// A subset S of variables is the bitmask with the same bit meaning, and
// chi_S(x at index i) = (-1)^{popcount(i & S)}.

struct BooleanFunctionTable {
    int n = 0;
    std::vector<double> values;
    /// When set, construction checks |values| <= 1 pointwise.
    bool bounded = false;

    BooleanFunctionTable() = default;
    BooleanFunctionTable(int n, std::vector<double> values, bool bounded = false);
};

/// Coefficients f_hat(S) = E_x[f(x) chi_S(x)] indexed by subset mask.
struct FourierSpectrum {
    int n = 0;
    std::vector<double> coef;
};

FourierSpectrum fourier(const BooleanFunctionTable& f);
BooleanFunctionTable inverse_fourier(const FourierSpectrum& spec);

/// sum over |S| = ell of |f_hat(S)|.
double level_mass(const FourierSpectrum& spec, int ell);

struct LevelAudit {
    int ell = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// Checks sum_{|S|=ell} f_hat(S)^2 <= 4 alpha^2 (2e ln(e / alpha^{1/ell}))^ell
/// with alpha = E|f|, for |f| <= 1. alpha = 0 degenerates to lhs == 0.
LevelAudit level_k_audit(const BooleanFunctionTable& f, int ell);

/// Density-matrix-valued function on the cube; side dimension is 2^c.
struct MatrixValuedFunction {
    int n = 0;
    int c = 0;
    std::vector<DensityMatrix> values;

    MatrixValuedFunction() = default;
    MatrixValuedFunction(int n, int c, std::vector<DensityMatrix> values);
};

/// Entrywise transform: coef[S] = E_x[F(x) chi_S(x)].
struct MatrixSpectrum {
    int n = 0;
    int c = 0;
    std::vector<CMatrix> coef;
};

MatrixSpectrum matrix_fourier(const MatrixValuedFunction& f);
MatrixValuedFunction matrix_inverse_fourier(const MatrixSpectrum& spec);

/// Checks sum_{|S|=ell} Tr(|F_hat(S)|)^2 <= ((2e ln 2) c'' / ell)^ell where
/// c'' = c when ell <= 2 ln(2) c and otherwise the padded cost
/// c + ceil(ell / (2 ln 2)), reported in `padded_cost`.
struct MatrixLevelAudit {
    int ell = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    int padded_cost = 0;
    bool holds = false;
};

MatrixLevelAudit matrix_level_k_audit(const MatrixValuedFunction& f, int ell);

}  // namespace entlab

#endif
