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

// Acceptance gate. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "qwalk/circuit_builder.h"
#include "qwalk/dirac.h"
#include "qwalk/native_compiler.h"
#include "qwalk/readout.h"
#include "qwalk/verify.h"
#include "qwalk/walk_oracle.h"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;
const double kH = 1.0 / std::sqrt(2.0);
const Complex I{0.0, 1.0};

constexpr double kGridSeconds = 10.0;
constexpr long kRCountSlack = 5;
constexpr double kAnalyticTolerance = 1e-12;
constexpr double kMassTolerance = 5e-4;
constexpr double kNormalizationTolerance = 1e-4;
constexpr double kTvBound = 0.15;
constexpr double kTvBaselineT3 = 0.2318819719;
constexpr double kTvBaselineT5 = 0.252192643444;
constexpr double kTvBaselineTolerance = 1e-9;
constexpr double kCrosstalkEps = 0.02;
constexpr double kCrosstalkRelative = 0.10;
constexpr double kDiracWidth = 0.4;
constexpr double kDiracSpan = 200.0;

struct Line {
    int id;
    std::string title;
    bool passed;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Line criterion_1(const GridReport &grid) {
    bool ok = grid.max_oracle_diff < kCircuitOracleTolerance && grid.seconds < kGridSeconds;
    std::ostringstream d;
    d << grid.runs << " runs, max|diff| " << fmt(grid.max_oracle_diff) << " (< " << fmt(kCircuitOracleTolerance)
      << "), " << fmt(grid.seconds) << " s (< " << kGridSeconds << " s)";
    return {1, "oracle/circuit equivalence", ok, d.str()};
}

Line criterion_2() {
    struct Build {
        const char *name;
        WalkConfig config;
        long target_r;
    };
    const Build builds[] = {
        {"dqw |0>", {kPi / 4, 0.0, 5, 1.0, 0.0, WalkModel::DQW}, 78},
        {"dqw |1>", {kPi / 4, 0.0, 5, 0.0, 1.0, WalkModel::DQW}, 78},
        {"dqw plus-i", {kPi / 4, 0.0, 5, kH, I * kH, WalkModel::DQW}, 79},
        {"dca plus-i", {0.0, kPi / 20, 5, kH, I * kH, WalkModel::TwoPeriodDQW}, 81},
    };
    const size_t expect_xx[] = {2, 4, 4, 11, 11};
    bool xx_ok = true, r_ok = true;
    std::ostringstream d;
    for (const auto &b : builds) {
        auto counts = run_walk(b.config).counts;
        xx_ok = xx_ok && counts.xx_count == 32 && counts.per_step.size() == 5;
        for (size_t i = 0; xx_ok && i < 5; ++i) {
            xx_ok = counts.per_step[i].xx == expect_xx[i];
        }
        long r = static_cast<long>(counts.r_count);
        r_ok = r_ok && std::labs(r - b.target_r) <= kRCountSlack;
        d << b.name << " R " << r << "/" << b.target_r << " XX " << counts.xx_count << "; ";
    }
    d << "XX per step " << (xx_ok ? "exact" : "MISMATCH") << ", R within " << kRCountSlack << " "
      << (r_ok ? "yes" : "no");
    return {2, "native gate counts", xx_ok && r_ok, d.str()};
}

Line criterion_3() {
    auto tc = reference_toffoli_cnot_rule();
    auto ttc = reference_toffoli_toffoli4_cnot_rule();
    std::ostringstream d;
    bool ok = tc.xx_count() == 4 && ttc.xx_count() == 11;
    try {
        auto conv = find_conventions({tc, ttc});
        d << "convention " << conv.str() << ", TC dev " << fmt(rule_deviation(tc, conv)) << ", TTC dev "
          << fmt(rule_deviation(ttc, conv));
    } catch (const ConventionSearchError &) {
        ok = false;
        double best_ttc = 1e9;
        for (const auto &c : all_conventions()) {
            best_ttc = std::min(best_ttc, rule_deviation(ttc, c));
        }
        const auto &set = standard_rule_set();
        d << "no convention verifies both; TC dev " << fmt(rule_deviation(tc, set.convention)) << " under "
          << set.convention.str() << ", TTC best dev " << fmt(best_ttc) << " (tol " << fmt(kRuleTolerance) << ")";
    }
    d << "; XX " << tc.xx_count() << "/" << ttc.xx_count();
    return {3, "transcribed block sequences", ok, d.str()};
}

Line criterion_4() {
    auto d = evolve({kPi / 4, 0.0, 2, 1.0, 0.0, WalkModel::DQW}).second;
    double err = std::max({std::abs(d.at(-2) - 0.25), std::abs(d.at(0) - 0.5), std::abs(d.at(2) - 0.25)});
    for (int t = 0; t <= 5; ++t) {
        err = std::max(err, std::abs(evolve({0.0, 0.0, t, 1.0, 0.0, WalkModel::DQW}).second.at(-t) - 1.0));
    }
    return {4, "analytic walk values", err < kAnalyticTolerance, "max err " + fmt(err)};
}

Line criterion_5() {
    const std::pair<double, double> cases[] = {{kPi / 4, 1.1357}, {kPi / 10, 0.3305}, {kPi / 20, 0.1590}};
    double err = 0.0;
    std::ostringstream d;
    for (auto [theta, mass] : cases) {
        double m = mass_of_theta(theta);
        err = std::max(err, std::abs(m - mass));
        d << fmt(m) << " ";
    }
    d << "max err " << fmt(err);
    return {5, "mass relation", err < kMassTolerance, d.str()};
}

Line criterion_6() {
    double worst = 0.0;
    for (double t2 : angle_grid()) {
        worst = std::max(worst, dca_unitary_check(t2, 8));
    }
    return {6, "DCA operator equivalence", worst < kDcaTolerance, "max dev " + fmt(worst)};
}

Line criterion_7() {
    auto r = check_split_step_equivalence();
    return {7, "split-step / two-period equivalence", r.passed, r.detail};
}

Line criterion_8() {
    const Complex alpha = kH, beta = I * kH;
    double mass = mass_of_theta(kPi / 20);
    double norm_err = 0.0;
    for (double t : {0.0, 3.0, 5.0}) {
        norm_err = std::max(norm_err,
                            std::abs(dirac_mass_between(mass, kDiracWidth, t, -kDiracSpan, kDiracSpan) - 1.0));
    }
    double tv3 = compare_dca_dirac(kPi / 20, kDiracWidth, 3, alpha, beta).tv_distance;
    double tv5 = compare_dca_dirac(kPi / 20, kDiracWidth, 5, alpha, beta).tv_distance;
    bool norm_ok = norm_err < kNormalizationTolerance;
    bool tv_ok = tv5 < kTvBound;
    bool frozen_ok = std::abs(tv3 - kTvBaselineT3) < kTvBaselineTolerance &&
                     std::abs(tv5 - kTvBaselineT5) < kTvBaselineTolerance;
    std::ostringstream d;
    d << "norm err " << fmt(norm_err) << " (< " << fmt(kNormalizationTolerance) << "), TV t=5 " << fmt(tv5)
      << " (< " << kTvBound << " " << (tv_ok ? "yes" : "no") << "), baselines t=3 " << kTvBaselineT3 << " t=5 "
      << kTvBaselineT5 << (frozen_ok ? " match" : " DRIFT");
    return {8, "Dirac comparison", norm_ok && tv_ok && frozen_ok, d.str()};
}

Line criterion_9() {
    auto r = check_spam_round_trip(1000, 7);
    return {9, "SPAM round trip", r.passed, r.detail};
}

Line criterion_10(const GridReport &grid) {
    bool ok = grid.max_forbidden_parity < kParityTolerance;
    const double predicted = kCrosstalkEps / kWalkQubits;
    double worst_rel = 0.0;
    bool all_nonzero = true;
    for (const auto &cfg : circuit_grid()) {
        if (cfg.steps == 0) {
            continue;
        }
        auto run = run_walk(cfg);
        auto m = marginalize(crosstalk_leak(run.probabilities, kCrosstalkEps));
        double forbidden = 0.0;
        for (const auto &[x, p] : m.distribution.probs) {
            if ((x + cfg.steps) % 2 != 0) {
                forbidden += p;
            }
        }
        all_nonzero = all_nonzero && forbidden > 0.0;
        worst_rel = std::max(worst_rel, std::abs(forbidden - predicted) / predicted);
    }
    ok = ok && all_nonzero && worst_rel < kCrosstalkRelative;
    std::ostringstream d;
    d << "noiseless max forbidden " << fmt(grid.max_forbidden_parity) << ", crosstalk eps " << kCrosstalkEps
      << " worst rel err vs eps/5 " << fmt(worst_rel);
    return {10, "parity invariant", ok, d.str()};
}

Line criterion_11() {
    // Theory panels come straight from the oracle; the circuit must agree.
    double theory = 0.0;
    for (const auto &[name, ab] : initial_states()) {
        for (int t = 1; t <= 5; ++t) {
            WalkConfig cfg{kPi / 4, 0.0, t, ab.first, ab.second, WalkModel::DQW};
            theory = std::max(theory, Distribution::max_abs_diff(run_walk(cfg).marginal.distribution,
                                                                 evolve(cfg).second));
        }
    }
    for (double t2 : {kPi / 4, kPi / 10, kPi / 20}) {
        WalkConfig cfg{0.0, t2, 5, kH, I * kH, WalkModel::TwoPeriodDQW};
        theory = std::max(theory, Distribution::max_abs_diff(run_walk(cfg).marginal.distribution,
                                                             evolve(cfg).second));
    }
    // Synthetic noise, reported only.
    WalkConfig cfg{kPi / 4, 0.0, 5, 1.0, 0.0, WalkModel::DQW};
    auto run = run_walk(cfg);
    NoiseConfig noise{ConfusionModel::symmetric(kWalkQubits, 0.03, 0.03), 3000, 1};
    noise.model.crosstalk_eps = 0.03;
    auto rec = noisy_sample(run.probabilities, noise);
    auto corrected = marginalize(correct_spam(frequencies(rec, kWalkQubits), noise.model, true));
    auto report = error_report(corrected.distribution, run.marginal.distribution);
    std::ostringstream d;
    d << "theory panels max|diff| " << fmt(theory) << "; synthetic noise (reported) max " << fmt(report.max)
      << " mean " << fmt(report.mean);
    return {11, "figure panels", theory < kCircuitOracleTolerance, d.str()};
}

}  // namespace

int main() {
    auto grid = run_circuit_grid();
    std::vector<Line> lines{criterion_1(grid), criterion_2(), criterion_3(), criterion_4(),
                            criterion_5(),     criterion_6(), criterion_7(), criterion_8(),
                            criterion_9(),     criterion_10(grid), criterion_11()};
    int failed = 0;
    for (const auto &l : lines) {
        std::printf("%s %2d %s: %s\n", l.passed ? "PASS" : "FAIL", l.id, l.title.c_str(), l.detail.c_str());
        failed += !l.passed;
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(lines.size()) - failed, lines.size());
    return failed == 0 ? 0 : 1;
}
