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

#include "qwalk/native_compiler.h"

#include <numbers>
#include <random>
#include <set>

#include "gtest/gtest.h"

using namespace qwalk;

namespace {

constexpr double kPi = std::numbers::pi;

size_t xx_in(const std::vector<Gate> &gates) {
    size_t n = 0;
    for (const auto &g : gates) {
        n += g.kind == GateKind::XX;
    }
    return n;
}

Matrix2 random_unitary(std::mt19937_64 &rng) {
    std::uniform_real_distribution<double> u(-kPi, kPi);
    double a = u(rng), b = u(rng), c = u(rng), g = u(rng);
    Eigen::MatrixXcd m = gate_matrix(Gate::rz(0, a)) * gate_matrix(Gate::ry(0, b)) * gate_matrix(Gate::rz(0, c));
    m *= std::exp(Complex(0.0, g));
    return {m(0, 0), m(0, 1), m(1, 0), m(1, 1)};
}

Circuit mixed_abstract_circuit() {
    Circuit c(5);
    c.append(Gate::r(0, 0.7, 0.2));
    c.append(Gate::x(4));
    c.append(Gate::x(0));
    c.append(Gate::cnot(0, 2));
    c.append(Gate::x(0));
    c.mark_step(1, 0);
    size_t begin = c.gates().size();
    c.append(Gate::r(0, 1.1, 0.0));
    c.append(Gate::toffoli(0, 3, 2));
    c.append(Gate::cnot(0, 3));
    c.append(Gate::rz(1, 0.3));
    c.mark_step(2, begin);
    begin = c.gates().size();
    c.append(Gate::x(3));
    c.append(Gate::toffoli(0, 3, 2));
    c.append(Gate::toffoli4(0, 3, 2, 1));
    c.append(Gate::cnot(0, 3));
    c.append(Gate::x(3));
    c.mark_step(3, begin);
    return c;
}

}  // namespace

TEST(native_compiler, eight_distinct_conventions) {
    auto all = all_conventions();
    ASSERT_EQ(all[0], (ConventionChoice{1, 1, 1}));
    std::set<std::string> names;
    for (const auto &c : all) {
        c.validate();
        names.insert(c.str());
    }
    ASSERT_EQ(names.size(), 8u);
    ASSERT_THROW((ConventionChoice{2, 1, 1}).validate(), std::invalid_argument);
}

TEST(native_compiler, identity_rule_holds_under_every_convention) {
    for (const auto &c : all_conventions()) {
        ASSERT_TRUE(verify_rule(identity_rule(), c)) << c.str();
    }
}

TEST(native_compiler, ising_cnot_is_sign_sensitive) {
    auto rule = ising_cnot_rule();
    ASSERT_EQ(rule.xx_count(), 1u);
    ASSERT_TRUE(verify_rule(rule, ConventionChoice{}));
    ASSERT_GT(rule_deviation(rule, ConventionChoice{1, -1, 1}), 0.1);
    ASSERT_EQ(find_conventions({identity_rule(), rule}), (ConventionChoice{}));
}

TEST(native_compiler, search_failure_lists_every_rule) {
    ConventionChoice found;
    try {
        found = find_conventions({ising_cnot_rule(), reference_toffoli_toffoli4_cnot_rule()});
        FAIL() << "expected a search failure, got " << found.str();
    } catch (const ConventionSearchError &e) {
        std::string msg = e.what();
        ASSERT_NE(msg.find(reference_toffoli_toffoli4_cnot_rule().name), std::string::npos);
        ASSERT_NE(msg.find(ising_cnot_rule().name), std::string::npos);
    }
}

TEST(native_compiler, reference_sequences) {
    auto tc = reference_toffoli_cnot_rule();
    auto ttc = reference_toffoli_toffoli4_cnot_rule();
    ASSERT_FALSE(tc.synthesized);
    ASSERT_EQ(tc.xx_count(), 4u);
    ASSERT_EQ(ttc.xx_count(), 11u);
    const auto &set = standard_rule_set();
    ASSERT_TRUE(verify_rule(tc, set.convention));
    // The printed Toffoli-Toffoli4-CNOT sequence matches no sign convention.
    for (const auto &c : all_conventions()) {
        ASSERT_GT(rule_deviation(ttc, c), 0.1) << c.str();
    }
}

TEST(native_compiler, synthesized_sequences_verify) {
    auto tc = synthesized_toffoli_cnot_rule();
    auto ttc = synthesized_toffoli_toffoli4_cnot_rule();
    ASSERT_TRUE(tc.synthesized);
    ASSERT_EQ(tc.xx_count(), 4u);
    ASSERT_EQ(ttc.xx_count(), 11u);
    ASSERT_LT(rule_deviation(tc, ConventionChoice{}), kRuleTolerance);
    ASSERT_LT(rule_deviation(ttc, ConventionChoice{}), kRuleTolerance);
}

TEST(native_compiler, standard_rule_set_status) {
    const auto &set = standard_rule_set();
    ASSERT_FALSE(set.all_references_verified);
    ASSERT_FALSE(set.search_diagnostic.empty());
    ASSERT_EQ(&set, &standard_rule_set());
    for (const auto &rule : set.rules) {
        ASSERT_LT(rule_deviation(rule, ConventionChoice{}), kRuleTolerance) << rule.name;
    }
    ASSERT_FALSE(set.rule(BlockId::ToffoliCNOT).synthesized);
    ASSERT_TRUE(set.rule(BlockId::ToffoliToffoli4CNOT).synthesized);
}

TEST(native_compiler, block_xx_budgets) {
    ASSERT_EQ(xx_in(compile_block(BlockId::CNOT)), 1u);
    ASSERT_EQ(xx_in(compile_block(BlockId::ToffoliCNOT)), 4u);
    ASSERT_EQ(xx_in(compile_block(BlockId::ToffoliToffoli4CNOT)), 11u);
    for (auto b : {BlockId::CNOT, BlockId::ToffoliCNOT, BlockId::ToffoliToffoli4CNOT}) {
        ASSERT_EQ(parse_block(block_name(b)), b);
        for (const auto &g : compile_block(b)) {
            ASSERT_TRUE(g.native());
        }
    }
    ASSERT_THROW(parse_block("toffoli"), std::invalid_argument);
}

TEST(native_compiler, single_qubit_natives_reconstruct) {
    std::mt19937_64 rng(17);
    for (int k = 0; k < 200; ++k) {
        auto u = random_unitary(rng);
        auto gates = single_qubit_natives(0, u);
        ASSERT_LE(gates.size(), 2u);
        Circuit c(1);
        c.append(gates);
        Eigen::MatrixXcd m(2, 2);
        m << u[0], u[1], u[2], u[3];
        ASSERT_LT(phase_aligned_deviation(unitary_of(c), m), 1e-12);
    }
    ASSERT_TRUE(single_qubit_natives(0, {1.0, 0.0, 0.0, 1.0}).empty());
    auto z = gate_matrix(Gate::rz(0, 0.4));
    auto only_z = single_qubit_natives(0, {z(0, 0), z(0, 1), z(1, 0), z(1, 1)});
    ASSERT_EQ(only_z.size(), 1u);
    ASSERT_EQ(only_z[0].kind, GateKind::RotZ);
}

TEST(native_compiler, compile_preserves_the_unitary) {
    auto c = mixed_abstract_circuit();
    auto expect = unitary_of(c);
    for (bool merge : {false, true}) {
        for (bool push : {false, true}) {
            auto native = compile(c, {merge, push});
            for (const auto &g : native.gates()) {
                ASSERT_TRUE(g.native());
            }
            ASSERT_LT(phase_aligned_deviation(unitary_of(native), expect), 1e-9) << merge << push;
            ASSERT_EQ(native.step_markers().size(), 3u);
            ASSERT_EQ(count_native(native).xx_count, 1u + 4u + 11u);
        }
    }
}

TEST(native_compiler, merging_never_adds_rotations) {
    auto c = mixed_abstract_circuit();
    auto raw = count_native(compile(c, {false, false}));
    auto merged = count_native(compile(c, {true, false}));
    auto pushed = count_native(compile(c, {true, true}));
    ASSERT_LE(merged.r_count, raw.r_count);
    ASSERT_LE(pushed.r_count, merged.r_count);
}

TEST(native_compiler, compile_is_deterministic) {
    auto c = mixed_abstract_circuit();
    ASSERT_EQ(compile(c), compile(c));
}

TEST(native_compiler, unmatched_gates_are_rejected) {
    Circuit c(3);
    c.append(Gate::toffoli(0, 1, 2));
    ASSERT_THROW(compile(c), std::invalid_argument);
}
