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

#include "qwalk/readout.h"

#include <numbers>
#include <numeric>
#include <random>

#include "gtest/gtest.h"
#include "qwalk/circuit_builder.h"
#include "qwalk/verify.h"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> random_probs(size_t n, std::mt19937_64 &rng) {
    std::exponential_distribution<double> e;
    std::vector<double> p(size_t{1} << n);
    for (auto &v : p) {
        v = e(rng);
    }
    double total = std::accumulate(p.begin(), p.end(), 0.0);
    for (auto &v : p) {
        v /= total;
    }
    return p;
}

double sum(const std::vector<double> &v) {
    return std::accumulate(v.begin(), v.end(), 0.0);
}

size_t popcount(size_t v) {
    size_t c = 0;
    for (; v; v &= v - 1) {
        ++c;
    }
    return c;
}

}  // namespace

TEST(readout, confusion_examples) {
    std::vector<double> p{1.0, 0.0};
    ConfusionModel m{{{0.99, 0.02, 0.01, 0.98}}, 0.0};
    auto out = apply_confusion(p, m);
    ASSERT_NEAR(out[0], 0.99, 1e-15);
    ASSERT_NEAR(out[1], 0.01, 1e-15);

    std::mt19937_64 rng(1);
    auto q = random_probs(3, rng);
    ASSERT_EQ(apply_confusion(q, ConfusionModel::identity(3)), q);
    ASSERT_EQ(correct_spam(q, ConfusionModel::identity(3)), q);
}

TEST(readout, confusion_is_a_tensor_product) {
    ConfusionModel m{{{0.9, 0.2, 0.1, 0.8}, {0.97, 0.05, 0.03, 0.95}}, 0.0};
    std::vector<double> p{0.0, 1.0, 0.0, 0.0};
    auto out = apply_confusion(p, m);
    // True "01": qubit 0 reads 0 w.p. 0.9, qubit 1 reads 1 w.p. 0.95.
    ASSERT_NEAR(out[1], 0.9 * 0.95, 1e-15);
    ASSERT_NEAR(out[0], 0.9 * 0.05, 1e-15);
    ASSERT_NEAR(out[3], 0.1 * 0.95, 1e-15);
}

TEST(readout, model_validation) {
    ASSERT_THROW((ConfusionModel{{{0.9, 0.2, 0.2, 0.8}}, 0.0}).validate(), std::invalid_argument);
    ASSERT_THROW((ConfusionModel{{{1.1, 0.0, -0.1, 1.0}}, 0.0}).validate(), std::invalid_argument);
    ASSERT_THROW((ConfusionModel{{{1.0, 0.0, 0.0, 1.0}}, 0.06}).validate(), std::invalid_argument);
    ASSERT_THROW(correct_spam(std::vector<double>{0.5, 0.5}, ConfusionModel{{{0.5, 0.5, 0.5, 0.5}}, 0.0}),
                 std::invalid_argument);
    ASSERT_THROW(apply_confusion(std::vector<double>{0.5, 0.4}, ConfusionModel::identity(1)), std::invalid_argument);
    ASSERT_THROW(apply_confusion(std::vector<double>{0.5, 0.5}, ConfusionModel::identity(2)), std::invalid_argument);
}

TEST(readout, round_trip_and_sum) {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> err(0.0, 0.2);
    for (int k = 0; k < 1000; ++k) {
        ConfusionModel m;
        for (int q = 0; q < 5; ++q) {
            double a = err(rng), b = err(rng);
            m.matrices.push_back({1 - a, b, a, 1 - b});
        }
        auto p = random_probs(5, rng);
        auto confused = apply_confusion(p, m);
        ASSERT_NEAR(sum(confused), 1.0, 1e-12);
        for (double v : confused) {
            ASSERT_GE(v, 0.0);
        }
        auto back = correct_spam(confused, m);
        ASSERT_NEAR(sum(back), 1.0, 1e-10);
        for (size_t i = 0; i < p.size(); ++i) {
            ASSERT_NEAR(back[i], p[i], 1e-12);
        }
    }
}

TEST(readout, clipping_renormalizes) {
    ConfusionModel m = ConfusionModel::symmetric(1, 0.1, 0.1);
    std::vector<double> freqs{1.0, 0.0};
    auto raw = correct_spam(freqs, m);
    ASSERT_LT(raw[1], 0.0);
    auto clipped = correct_spam(freqs, m, true);
    ASSERT_EQ(clipped[1], 0.0);
    ASSERT_NEAR(clipped[0], 1.0, 1e-15);
}

TEST(readout, crosstalk_moves_mass_to_neighbours) {
    std::vector<double> p(8, 0.0);
    p[0] = 1.0;
    ASSERT_EQ(crosstalk_leak(p, 0.0), p);
    auto out = crosstalk_leak(p, 0.03);
    ASSERT_NEAR(out[0], 0.97, 1e-15);
    for (size_t b : {1, 2, 4}) {
        ASSERT_NEAR(out[b], 0.01, 1e-15);
    }
    ASSERT_NEAR(sum(out), 1.0, 1e-12);
    ASSERT_THROW(crosstalk_leak(p, 0.08), std::invalid_argument);
    ASSERT_THROW(crosstalk_leak(std::vector<double>{0.5, 0.25, 0.25}, 0.01), std::invalid_argument);
}

TEST(readout, crosstalk_forbidden_parity_prediction) {
    // Every flip of qubit 4 changes position parity and no other flip does,
    // so a parity-pure walk output leaks exactly eps / 5 to the other parity.
    const double eps = 0.02;
    for (int t = 1; t <= 5; ++t) {
        auto run = run_walk({kPi / 4, 0.0, t, 1.0, 0.0, WalkModel::DQW});
        auto leaked = crosstalk_leak(run.probabilities, eps);
        auto m = marginalize(leaked);
        double forbidden = 0.0;
        for (const auto &[x, p] : m.distribution.probs) {
            if ((x + t) % 2 != 0) {
                forbidden += p;
            }
        }
        ASSERT_GT(forbidden, 0.0);
        ASSERT_NEAR(forbidden, eps / 5, 0.1 * eps / 5);
    }
}

TEST(readout, crosstalk_counts_hamming_neighbours) {
    std::mt19937_64 rng(5);
    auto p = random_probs(4, rng);
    const double eps = 0.04;
    auto out = crosstalk_leak(p, eps);
    for (size_t i = 0; i < p.size(); ++i) {
        double expect = (1 - eps) * p[i];
        for (size_t j = 0; j < p.size(); ++j) {
            if (popcount(i ^ j) == 1) {
                expect += eps / 4 * p[j];
            }
        }
        ASSERT_NEAR(out[i], expect, 1e-15);
    }
}

TEST(readout, error_report_examples) {
    Distribution a{{{-1, 0.5}, {1, 0.5}}};
    auto same = error_report(a, a);
    ASSERT_EQ(same.max, 0.0);
    ASSERT_EQ(same.mean, 0.0);

    Distribution p{{{-2, 0.25}, {0, 0.5}, {2, 0.25}}};
    Distribution shifted{{{-1, 0.25}, {1, 0.5}, {3, 0.25}}};
    ASSERT_EQ(error_report(p, shifted).max, 0.5);

    auto ab = error_report(a, p), ba = error_report(p, a);
    ASSERT_EQ(ab.abs_diff, ba.abs_diff);
    ASSERT_EQ(ab.max, ba.max);
    ASSERT_GT(ab.mean, 0.0);
}

TEST(readout, noise_config_json) {
    auto doc = nlohmann::json::parse(R"({"readout": [[[0.99, 0.02], [0.01, 0.98]]], "crosstalk_eps": 0.01,
                                         "shots": 500, "seed": 9})");
    auto cfg = noise_config_from_json(doc);
    ASSERT_EQ(cfg.shots, 500u);
    ASSERT_EQ(cfg.seed, 9u);
    ASSERT_EQ(cfg.model.matrices[0], (std::array<double, 4>{0.99, 0.02, 0.01, 0.98}));
    ASSERT_EQ(noise_config_to_json(cfg), doc);
    ASSERT_THROW(noise_config_from_json(nlohmann::json::parse(R"({"readout": [[[0.9, 0.2], [0.2, 0.8]]]})")),
                 std::invalid_argument);
    ASSERT_THROW(noise_config_from_json(nlohmann::json::parse(R"({"readout": [[0.9, 0.1]]})")), std::invalid_argument);
    ASSERT_THROW(noise_config_from_json(nlohmann::json::parse("[]")), std::invalid_argument);
}

TEST(readout, noisy_sample_is_seeded) {
    auto run = run_walk({kPi / 4, 0.0, 3, 1.0, 0.0, WalkModel::DQW});
    NoiseConfig cfg{ConfusionModel::symmetric(5, 0.01, 0.01), 1000, 4};
    auto a = noisy_sample(run.probabilities, cfg);
    ASSERT_EQ(a, noisy_sample(run.probabilities, cfg));
    ASSERT_EQ(a.shots, 1000u);
    auto f = frequencies(a, 5);
    ASSERT_NEAR(sum(f), 1.0, 1e-12);
}

TEST(readout, corrected_shots_track_the_ideal_walk) {
    // Monte Carlo over 100 seeds: 5-step balanced walk, 1% readout error,
    // 3000 shots, inverse-confusion correction.
    auto run = run_walk({kPi / 4, 0.0, 5, 1.0, 0.0, WalkModel::DQW});
    NoiseConfig cfg{ConfusionModel::symmetric(5, 0.01, 0.01), 3000, 0};
    double worst = 0.0, total = 0.0;
    const int seeds = 100;
    for (int s = 0; s < seeds; ++s) {
        cfg.seed = 1000 + s;
        auto rec = noisy_sample(run.probabilities, cfg);
        auto corrected = marginalize(correct_spam(frequencies(rec, 5), cfg.model));
        double err = 0.0;
        for (int x = -5; x <= 5; x += 2) {
            err += std::abs(corrected.distribution.at(x) - run.marginal.distribution.at(x));
        }
        err /= 6;
        worst = std::max(worst, err);
        total += err;
    }
    ASSERT_LT(total / seeds, 0.03);
    ASSERT_LT(worst, 0.03);
}

TEST(readout, spam_check_in_suite) {
    auto r = check_spam_round_trip(200, 3);
    ASSERT_TRUE(r.passed) << r.detail;
}
