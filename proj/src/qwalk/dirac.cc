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

#include "qwalk/dirac.h"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qwalk {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kEulerGamma = std::numbers::egamma;
constexpr double kSeriesRadius = 2.0;
constexpr double kEps = 1e-17;
constexpr int kMaxTerms = 500;
constexpr double kTailEnd = 200.0;

void check_order(int order) {
    if (order != 0 && order != 1) {
        throw std::invalid_argument("bessel: only orders 0 and 1 are implemented");
    }
}

Complex k_series(int order, Complex z) {
    const Complex y = z * z / 4.0;
    const Complex log_half = std::log(z / 2.0);
    if (order == 0) {
        Complex i0 = 1.0, tail = 0.0, term = 1.0;
        double harmonic = 0.0;
        for (int k = 1; k < kMaxTerms; ++k) {
            term *= y / static_cast<double>(k * k);
            harmonic += 1.0 / k;
            i0 += term;
            tail += harmonic * term;
            if (std::abs(term) * (1.0 + harmonic) < kEps * std::abs(i0)) {
                break;
            }
        }
        return -(log_half + kEulerGamma) * i0 + tail;
    }
    // term_k = y^k / (k! (k + 1)!)
    Complex term = 1.0, i1_sum = 1.0;
    double hk = 0.0, hk1 = 1.0;
    Complex psi_sum = (-2 * kEulerGamma + hk + hk1) * term;
    for (int k = 1; k < kMaxTerms; ++k) {
        term *= y / static_cast<double>(k * (k + 1));
        hk += 1.0 / k;
        hk1 += 1.0 / (k + 1);
        i1_sum += term;
        psi_sum += (-2 * kEulerGamma + hk + hk1) * term;
        if (std::abs(term) * (1.0 + hk1) < kEps * std::abs(i1_sum)) {
            break;
        }
    }
    const Complex i1 = z / 2.0 * i1_sum;
    return 1.0 / z + log_half * i1 - z / 4.0 * psi_sum;
}

// Temme's continued fraction for K0 and K1, valid for Re z > 0.
std::pair<Complex, Complex> k_continued_fraction(Complex z) {
    Complex b = 2.0 * (1.0 + z);
    Complex d = 1.0 / b;
    Complex h = d, delh = d;
    Complex q1 = 0.0, q2 = 1.0;
    const double a1 = 0.25;
    Complex q = a1, c = a1;
    double a = -a1;
    Complex s = 1.0 + q * delh;
    int i = 1;
    for (; i < 100000; ++i) {
        a -= 2 * i;
        c = -a * c / (i + 1.0);
        Complex qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        Complex dels = q * delh;
        s += dels;
        if (std::abs(dels) < 1e-16 * std::abs(s)) {
            break;
        }
    }
    if (i == 100000) {
        throw std::runtime_error("bessel_k: continued fraction did not converge");
    }
    h = a1 * h;
    Complex k0 = std::sqrt(kPi / (2.0 * z)) * std::exp(-z) / s;
    Complex k1 = k0 * (z + 0.5 - h) / z;
    return {k0, k1};
}

}  // namespace

Complex bessel_k(int order, Complex z) {
    check_order(order);
    if (z == Complex{0.0, 0.0}) {
        throw std::domain_error("bessel_k: singular at z = 0");
    }
    if (z.imag() == 0.0 && z.real() < 0.0) {
        throw std::domain_error("bessel_k: z on the branch cut (negative real axis)");
    }
    if (std::abs(z) <= kSeriesRadius) {
        return k_series(order, z);
    }
    if (z.real() < 0.0) {
        throw std::domain_error("bessel_k: Re z < 0 outside |z| <= 2 is not supported");
    }
    auto [k0, k1] = k_continued_fraction(z);
    return order == 0 ? k0 : k1;
}

Complex bessel_i(int order, Complex z) {
    check_order(order);
    const Complex y = z * z / 4.0;
    Complex term = order == 0 ? Complex{1.0} : z / 2.0;
    Complex sum = term;
    for (int k = 1; k < kMaxTerms; ++k) {
        term *= y / static_cast<double>(k * (k + order));
        sum += term;
        if (std::abs(term) < kEps * std::abs(sum)) {
            break;
        }
    }
    return sum;
}

double mass_of_theta(double theta2) {
    const double den = 1.0 - theta2 * theta2 / 2.0;
    if (!(den > 0.0)) {
        throw std::domain_error("mass_of_theta: theta2^2 must be below 2");
    }
    return theta2 / den;
}

SpinorValue dirac_spinor(const DiracParams &p) {
    if (!(p.mass > 0.0)) {
        throw std::invalid_argument("dirac_spinor: mass must be positive");
    }
    if (!(p.width > 0.0)) {
        throw std::invalid_argument("dirac_spinor: width must be positive");
    }
    const Complex ait{p.width, p.t};
    const Complex s = std::sqrt(p.x * p.x + ait * ait);
    if (s == Complex{0.0, 0.0}) {
        throw std::domain_error("dirac_spinor: s = 0");
    }
    const double m = p.mass, a = p.width;
    const double norm = std::sqrt(kPi / (4 * m)) /
                        std::sqrt((bessel_k(1, Complex{2 * m * a}) + bessel_k(0, Complex{2 * m * a})).real());
    const Complex k0 = bessel_k(0, m * s);
    const Complex k1s = bessel_k(1, m * s) / s;
    const double pre = m * norm / kPi;
    return {pre * (k1s * Complex{a, p.t + p.x} + k0), pre * (k1s * Complex{a, p.t - p.x} + k0)};
}

double dirac_density(double mass, double width, double t, double x) {
    return dirac_spinor({mass, width, t, x}).density();
}

double dirac_mass_between(double mass, double width, double t, double lo, double hi) {
    if (hi < lo) {
        return -dirac_mass_between(mass, width, t, hi, lo);
    }
    auto f = [&](double x) { return dirac_density(mass, width, t, x); };
    // Unit panels keep the peaks near |x| = t resolved.
    double total = 0.0;
    for (double a = lo; a < hi; a += 1.0) {
        double b = std::min(hi, a + 1.0);
        total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 10, 1e-13);
    }
    return total;
}

DiracComparison compare_dca_dirac(double theta2, double width, int t, Complex alpha, Complex beta) {
    if (t < 0) {
        throw std::invalid_argument("compare_dca_dirac: t must be >= 0");
    }
    DiracComparison out;
    out.mass = mass_of_theta(theta2);
    WalkConfig cfg{0.0, theta2, t, alpha, beta, WalkModel::TwoPeriodDQW};
    auto dist = evolve(cfg).second;
    double l1 = 0.0;
    for (int x = -t; x <= t; x += 2) {
        DiracComparisonRow row{x, dist.at(x), dirac_mass_between(out.mass, width, t, x - 1.0, x + 1.0)};
        l1 += std::abs(row.p_dca - row.dirac_cell);
        out.rows.push_back(row);
    }
    const double edge = t + 1.0;
    out.dirac_tail = dirac_mass_between(out.mass, width, t, -kTailEnd, -edge) +
                     dirac_mass_between(out.mass, width, t, edge, kTailEnd);
    out.tv_distance = 0.5 * (l1 + out.dirac_tail);
    return out;
}

}  // namespace qwalk
