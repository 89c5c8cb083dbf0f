// Copyright 2026 The qwalk Authors
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

#ifndef QWALK_DIRAC_H
#define QWALK_DIRAC_H

#include <complex>
#include <vector>

#include "qwalk/walk_oracle.h"

namespace qwalk {

/// Modified Bessel function of the second kind, orders 0 and 1, principal
/// branch. Power series for |z| <= 2, Steed/Temme continued fraction
/// beyond. Requires Re z >= 0 outside the series disk; throws
/// std::domain_error at z = 0 and on the negative real axis.
Complex bessel_k(int order, Complex z);
/// Modified Bessel function of the first kind, orders 0 and 1, by power
/// series. Accurate for |z| <= 20.
Complex bessel_i(int order, Complex z);

/// m = theta2 / (1 - theta2^2 / 2). Throws std::domain_error when the
/// denominator is not positive.
double mass_of_theta(double theta2);

struct DiracParams {
    double mass = 0.0;
    double width = 0.0;
    double t = 0.0;
    double x = 0.0;
};

struct SpinorValue {
    Complex upper;
    Complex lower;
    double density() const {
        return std::norm(upper) + std::norm(lower);
    }
};

/// Free Dirac packet
///   Psi = (m N / pi) (K1(m s) [a + i(t + x)] / s + K0(m s),
///                     K1(m s) [a + i(t - x)] / s + K0(m s))
/// with s = sqrt(x^2 + (a + i t)^2) and N = sqrt(pi / 4m) (K1(2ma) +
/// K0(2ma))^(-1/2), which makes the density integrate to 1.
SpinorValue dirac_spinor(const DiracParams &p);
double dirac_density(double mass, double width, double t, double x);

/// Integral of the density over [lo, hi] by adaptive Gauss-Kronrod.
double dirac_mass_between(double mass, double width, double t, double lo, double hi);

struct DiracComparisonRow {
    int x = 0;
    double p_dca = 0.0;
    double dirac_cell = 0.0;
};

struct DiracComparison {
    double mass = 0.0;
    std::vector<DiracComparisonRow> rows;
    /// Dirac probability outside the union of cells.
    double dirac_tail = 0.0;
    double tv_distance = 0.0;
};

/// Two-period DCA (theta1 = 0) after t steps against the Dirac density with
/// m = mass_of_theta(theta2), integrated over width-2 cells centred on the
/// DCA support x = -t, -t + 2, ..., t. tv_distance = (sum |p_dca - cell| +
/// tail) / 2.
DiracComparison compare_dca_dirac(double theta2, double width, int t, Complex alpha, Complex beta);

}  // namespace qwalk

#endif
