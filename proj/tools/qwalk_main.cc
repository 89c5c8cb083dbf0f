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

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "qwalk/qwalk.h"

using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInvariant = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ApiError : std::runtime_error {
    ApiError(qwalk_status status, const std::string &msg) : std::runtime_error(msg), status(status) {
    }
    qwalk_status status;
};

/// Radians, or "pi", "pi/N", optionally negated.
double parse_angle(const std::string &text) {
    std::string s = text;
    double sign = 1.0;
    if (!s.empty() && s[0] == '-') {
        sign = -1.0;
        s = s.substr(1);
    }
    if (s == "pi") {
        return sign * std::numbers::pi;
    }
    if (s.rfind("pi/", 0) == 0) {
        size_t used = 0;
        int den = 0;
        try {
            den = std::stoi(s.substr(3), &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (used == 0 || used != s.size() - 3 || den <= 0) {
            throw UsageError("bad angle \"" + text + "\"");
        }
        return sign * std::numbers::pi / den;
    }
    size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(v)) {
        throw UsageError("bad angle \"" + text + "\"; use radians or pi, pi/4, pi/10, pi/20");
    }
    return sign * v;
}

void set_initial(qwalk_walk_config &cfg, const std::string &name) {
    const double h = 1.0 / std::sqrt(2.0);
    if (name == "zero") {
        cfg.alpha_re = 1.0, cfg.alpha_im = 0.0, cfg.beta_re = 0.0, cfg.beta_im = 0.0;
    } else if (name == "one") {
        cfg.alpha_re = 0.0, cfg.alpha_im = 0.0, cfg.beta_re = 1.0, cfg.beta_im = 0.0;
    } else if (name == "plus-i") {
        cfg.alpha_re = h, cfg.alpha_im = 0.0, cfg.beta_re = 0.0, cfg.beta_im = h;
    } else {
        throw UsageError("unknown initial state \"" + name + "\"");
    }
}

qwalk_model parse_model(const std::string &name) {
    if (name == "dqw") {
        return QWALK_MODEL_DQW;
    }
    if (name == "split-step") {
        return QWALK_MODEL_SPLIT_STEP;
    }
    if (name == "two-period" || name == "dca") {
        return QWALK_MODEL_TWO_PERIOD;
    }
    throw UsageError("unknown model \"" + name + "\"");
}

using ResultPtr = std::unique_ptr<qwalk_result, decltype(&qwalk_result_free)>;

ResultPtr checked(qwalk_status status, qwalk_result *const &result) {
    ResultPtr owned(result, &qwalk_result_free);
    if (status != QWALK_OK) {
        throw ApiError(status, qwalk_last_error());
    }
    return owned;
}

json document(const ResultPtr &r) {
    return json::parse(qwalk_result_json(r.get()));
}

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

std::string distribution_csv(const json &doc, const std::vector<std::pair<std::string, const json *>> &extra) {
    std::ostringstream out;
    out << "x,probability";
    for (const auto &[name, col] : extra) {
        out << "," << name;
    }
    out << "\n";
    for (size_t i = 0; i < doc["positions"].size(); ++i) {
        out << doc["positions"][i].get<int>() << "," << fmt(doc["probabilities"][i].get<double>());
        for (const auto &[name, col] : extra) {
            out << "," << fmt((*col)[i].get<double>());
        }
        out << "\n";
    }
    return out.str();
}

std::string panel_csv(const json &panel) {
    std::ostringstream out;
    bool first = true;
    for (const auto &c : panel["columns"]) {
        out << (first ? "" : ",") << c.get<std::string>();
        first = false;
    }
    out << "\n";
    for (const auto &row : panel["rows"]) {
        first = true;
        for (const auto &v : row) {
            out << (first ? "" : ",") << (v.is_number_integer() ? std::to_string(v.get<int64_t>()) : fmt(v.get<double>()));
            first = false;
        }
        out << "\n";
    }
    return out.str();
}

void write_text(const std::string &text, const std::string &path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open " + path + " for writing");
    }
    f << text;
}

struct WalkFlags {
    int steps = 5;
    std::string theta1 = "pi/4";
    std::string theta2 = "0";
    std::string initial = "zero";
    std::string model = "dqw";

    qwalk_walk_config config() const {
        qwalk_walk_config c;
        qwalk_walk_config_init(&c);
        c.steps = steps;
        c.theta1 = parse_angle(theta1);
        c.theta2 = parse_angle(theta2);
        c.model = parse_model(model);
        set_initial(c, initial);
        return c;
    }
};

struct Output {
    std::string format = "json";
    std::string path;
};

void add_walk_flags(CLI::App *cmd, WalkFlags &w, bool with_model) {
    cmd->add_option("--steps", w.steps, "Number of walk steps")->capture_default_str();
    cmd->add_option("--theta,--theta1", w.theta1, "Coin angle (radians or pi/N)")->capture_default_str();
    cmd->add_option("--theta2", w.theta2, "Second coin angle for two-period and split-step walks")
        ->capture_default_str();
    cmd->add_option("--initial", w.initial, "Initial coin state")
        ->check(CLI::IsMember({"zero", "one", "plus-i"}))
        ->capture_default_str();
    if (with_model) {
        cmd->add_option("--model", w.model, "Walk model")
            ->check(CLI::IsMember({"dqw", "two-period", "dca", "split-step"}))
            ->capture_default_str();
    }
}

void add_output_flags(CLI::App *cmd, Output &o) {
    cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    cmd->add_option("--out", o.path, "Write to this file instead of stdout");
}

void emit_distribution(const json &doc, const Output &o) {
    if (o.format == "json") {
        write_text(doc.dump(2) + "\n", o.path);
    } else {
        write_text(distribution_csv(doc, {}), o.path);
    }
}

int run_walk(const WalkFlags &w, const Output &o) {
    auto cfg = w.config();
    qwalk_result *r = nullptr;
    auto res = checked(qwalk_run_walk(&cfg, &r), r);
    emit_distribution(document(res), o);
    return kExitOk;
}

int run_compile(const WalkFlags &w, const Output &o, const std::string &block, bool no_merge) {
    qwalk_result *r = nullptr;
    ResultPtr res(nullptr, &qwalk_result_free);
    if (!block.empty()) {
        res = checked(qwalk_compile_block(block.c_str(), &r), r);
    } else {
        auto cfg = w.config();
        res = checked(qwalk_compile_walk(&cfg, no_merge ? 0 : 1, &r), r);
    }
    json doc = document(res);
    if (o.format == "json") {
        write_text(doc.dump(2) + "\n", o.path);
        return kExitOk;
    }
    std::ostringstream out;
    out << "step,r,xx\n";
    for (const auto &s : doc["gate_counts"]["per_step"]) {
        out << s["step"].get<int>() << "," << s["r"].get<size_t>() << "," << s["xx"].get<size_t>() << "\n";
    }
    out << "total," << doc["gate_counts"]["r"].get<size_t>() << "," << doc["gate_counts"]["xx"].get<size_t>() << "\n";
    write_text(out.str(), o.path);
    return kExitOk;
}

std::string read_file(const std::string &path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot read noise config " + path);
    }
    std::ostringstream s;
    s << f.rdbuf();
    return s.str();
}

int run_sample(const WalkFlags &w, const Output &o, const std::string &noise_path, std::optional<uint64_t> shots,
               std::optional<uint64_t> seed) {
    auto cfg = w.config();
    std::unique_ptr<qwalk_noise, decltype(&qwalk_noise_free)> noise(nullptr, &qwalk_noise_free);
    uint64_t use_shots = 3000, use_seed = 1;
    if (!noise_path.empty()) {
        std::string text = read_file(noise_path);
        qwalk_noise *n = nullptr;
        qwalk_status st = qwalk_noise_parse(text.c_str(), &n);
        noise.reset(n);
        if (st != QWALK_OK) {
            throw ApiError(st, qwalk_last_error());
        }
        json raw = json::parse(text);
        use_shots = raw.value("shots", use_shots);
        use_seed = raw.value("seed", use_seed);
    }
    use_shots = shots.value_or(use_shots);
    use_seed = seed.value_or(use_seed);
    qwalk_result *r = nullptr;
    auto res = checked(qwalk_sample_walk(&cfg, noise.get(), use_shots, use_seed, &r), r);
    json doc = document(res);
    if (o.format == "json") {
        write_text(doc.dump(2) + "\n", o.path);
    } else {
        std::vector<std::pair<std::string, const json *>> extra{{"ideal", &doc["ideal"]["probabilities"]}};
        if (doc.contains("corrected")) {
            extra.push_back({"corrected", &doc["corrected"]["probabilities"]});
        }
        write_text(distribution_csv(doc, extra), o.path);
    }
    return kExitOk;
}

int run_compare(const WalkFlags &w, double width, const Output &o) {
    auto cfg = w.config();
    qwalk_result *r = nullptr;
    auto res = checked(qwalk_compare_dirac(cfg.theta2, width, cfg.steps, cfg.alpha_re, cfg.alpha_im, cfg.beta_re,
                                           cfg.beta_im, &r),
                       r);
    json doc = document(res);
    if (o.format == "json") {
        write_text(doc.dump(2) + "\n", o.path);
    } else {
        write_text(distribution_csv(doc, {{"dirac_cell", &doc["dirac_cells"]}}), o.path);
    }
    return kExitOk;
}

int run_verify(const Output &o) {
    qwalk_result *r = nullptr;
    int passed = 0;
    auto res = checked(qwalk_verify(&r, &passed), r);
    json doc = document(res);
    if (o.format == "json") {
        write_text(doc.dump(2) + "\n", o.path);
    } else {
        std::ostringstream out;
        out << "check,passed,detail\n";
        for (const auto &c : doc["checks"]) {
            out << c["name"].get<std::string>() << "," << (c["passed"].get<bool>() ? "true" : "false") << ",\""
                << c["detail"].get<std::string>() << "\"\n";
        }
        write_text(out.str(), o.path);
    }
    if (!passed) {
        std::cerr << "verify: invariant suite failed\n";
        return kExitInvariant;
    }
    return kExitOk;
}

int run_figures(const std::vector<std::string> &which, const std::string &out_dir, uint64_t seed) {
    std::filesystem::create_directories(out_dir);
    for (const auto &w : which) {
        qwalk_result *r = nullptr;
        auto res = checked(qwalk_figure_data(w.c_str(), seed, &r), r);
        json doc = document(res);
        for (const auto &panel : doc["panels"]) {
            auto path = (std::filesystem::path(out_dir) / (panel["name"].get<std::string>() + ".csv")).string();
            write_text(panel_csv(panel), path);
            std::cout << path << "\n";
        }
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Discrete-time quantum walks on a five-qubit trapped-ion register"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qwalk_version()));

    WalkFlags walk_flags;
    Output walk_out;
    auto *walk = app.add_subcommand("walk", "Walk distribution from the compiled circuit");
    add_walk_flags(walk, walk_flags, true);
    add_output_flags(walk, walk_out);

    WalkFlags dca_flags;
    dca_flags.theta1 = "0";
    dca_flags.theta2 = "pi/20";
    dca_flags.initial = "plus-i";
    dca_flags.model = "two-period";
    Output dca_out;
    auto *dca = app.add_subcommand("dca", "Two-period walk with theta1 = 0");
    add_walk_flags(dca, dca_flags, false);
    add_output_flags(dca, dca_out);

    WalkFlags compile_flags;
    Output compile_out;
    std::string block;
    bool no_merge = false;
    auto *compile = app.add_subcommand("compile", "Native circuit and gate counts");
    add_walk_flags(compile, compile_flags, true);
    add_output_flags(compile, compile_out);
    compile->add_option("--block", block, "Compile one block instead of a walk")
        ->check(CLI::IsMember({"cnot", "toffoli-cnot", "toffoli-toffoli4-cnot"}));
    compile->add_flag("--no-merge", no_merge, "Keep single-qubit gates unmerged");

    WalkFlags sample_flags;
    Output sample_out;
    std::string noise_path;
    std::optional<uint64_t> shots, seed;
    auto *sample = app.add_subcommand("sample", "Shot sampling with optional synthetic readout noise");
    add_walk_flags(sample, sample_flags, true);
    add_output_flags(sample, sample_out);
    sample->add_option("--noise", noise_path, "Noise config JSON");
    sample->add_option("--shots", shots, "Shots (default 3000 or the noise config value)");
    sample->add_option("--seed", seed, "RNG seed (default 1 or the noise config value)");

    WalkFlags dirac_flags;
    dirac_flags.theta2 = "pi/20";
    dirac_flags.initial = "plus-i";
    double width = 0.4;
    Output dirac_out;
    auto *dirac = app.add_subcommand("compare-dirac", "DCA against the free Dirac packet");
    dirac->add_option("--steps", dirac_flags.steps, "Number of walk steps")->capture_default_str();
    dirac->add_option("--theta2", dirac_flags.theta2, "DCA coin angle")->capture_default_str();
    dirac->add_option("--width", width, "Packet width a")->capture_default_str();
    dirac->add_option("--initial", dirac_flags.initial, "Initial coin state")
        ->check(CLI::IsMember({"zero", "one", "plus-i"}))
        ->capture_default_str();
    add_output_flags(dirac, dirac_out);

    Output verify_out;
    auto *verify = app.add_subcommand("verify", "Run the invariant suite");
    add_output_flags(verify, verify_out);

    std::vector<std::string> figures{"fig3", "fig4", "fig5-synthetic", "fig6"};
    std::string out_dir = ".";
    uint64_t fig_seed = 1;
    auto *fig = app.add_subcommand("figures", "Write plot tables as CSV files");
    fig->add_option("--which", figures, "Figures to emit")
        ->check(CLI::IsMember({"fig3", "fig4", "fig5-synthetic", "fig6"}));
    fig->add_option("--out-dir", out_dir, "Directory for the CSV files")->capture_default_str();
    fig->add_option("--seed", fig_seed, "Seed for the synthetic noise panels")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*walk) {
            return run_walk(walk_flags, walk_out);
        }
        if (*dca) {
            return run_walk(dca_flags, dca_out);
        }
        if (*compile) {
            return run_compile(compile_flags, compile_out, block, no_merge);
        }
        if (*sample) {
            return run_sample(sample_flags, sample_out, noise_path, shots, seed);
        }
        if (*dirac) {
            return run_compare(dirac_flags, width, dirac_out);
        }
        if (*verify) {
            return run_verify(verify_out);
        }
        if (*fig) {
            return run_figures(figures, out_dir, fig_seed);
        }
    } catch (const UsageError &e) {
        std::cerr << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    } catch (const ApiError &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.status == QWALK_ERR_INVALID_ARGUMENT ? kExitUsage : kExitInvariant;
    } catch (const json::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
