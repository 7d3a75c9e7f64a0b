// Copyright 2026 The twinbeam Authors
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

#include "commands.h"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <sstream>

#include "twinbeam/detector.h"
#include "twinbeam/errors.h"
#include "twinbeam/io.h"
#include "twinbeam/optics.h"
#include "twinbeam/spdc.h"

namespace twinbeam::cli {

namespace {

using nlohmann::json;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const std::string &path, const std::string &contents) {
    std::ofstream file(path, std::ios::binary);
    if (!file) {
        throw IoError("cannot open '" + path + "' for writing");
    }
    file << contents;
    if (!file) {
        throw IoError("failed writing '" + path + "'");
    }
}

std::string sibling_json(const std::string &path) {
    return std::filesystem::path(path).replace_extension(".json").string();
}

// Writes `primary` to --out (or the stream) and the JSON summary next to it.
void emit(const RunConfig &cfg, const std::string &primary, const json &summary, std::ostream &out) {
    if (cfg.out.empty()) {
        out << primary;
        out << summary.dump(2) << '\n';
        return;
    }
    write_file(cfg.out, primary);
    if (!summary.is_null()) {
        write_file(sibling_json(cfg.out), summary.dump(2) + "\n");
    }
    out << summary.dump(2) << '\n';
}

DetectionMode detection_mode(const RunConfig &cfg) {
    if (cfg.mode == "sampled") {
        return Sampled{cfg.seed};
    }
    return Analytic{};
}

json branch_json(const DetectorBranch &b) {
    json j{{"kind", b.kind == Symmetry::Symmetric ? "symmetric" : "asymmetric"},
           {"probability", b.probability},
           {"window_probability", b.window_probability},
           {"x", b.x},
           {"state", state_to_json(b.state)}};
    j["c_out"] = b.c_out ? json(*b.c_out) : json(nullptr);
    return j;
}

int cmd_figure3(const RunConfig &cfg, std::ostream &out) {
    auto records = cascade_closed_form(cfg.c0, cfg.k);
    json summary{{"c0", cfg.c0},
                 {"k", cfg.k},
                 {"final_c", records.back().c},
                 {"final_cumP", records.back().cumulative_p}};
    emit(cfg, records_to_csv(records), summary, out);
    return kSuccess;
}

int cmd_detect(const RunConfig &cfg, std::ostream &out) {
    auto result = symmetry_detector(FourPhotonFamily(cfg.c0).state(), cfg.alpha, cfg.theta, detection_mode(cfg));
    json report{{"c", cfg.c0}, {"alpha", cfg.alpha}, {"theta", cfg.theta}, {"mode", cfg.mode}};
    report["branches"] = json::array();
    for (const auto &b : result.branches) {
        report["branches"].push_back(branch_json(b));
    }
    report["tail_error"] = result.tail_error;
    if (!cfg.out.empty()) {
        write_file(cfg.out, report.dump(2) + "\n");
    }
    out << report.dump(2) << '\n';
    return kSuccess;
}

int cmd_cascade(const RunConfig &cfg, std::ostream &out) {
    auto closed = cascade_closed_form(cfg.c0, cfg.k);
    if (cfg.mode != "sampled") {
        auto run = cascade_simulated(cfg.c0, cfg.k, cfg.alpha, cfg.theta, Analytic{});
        double max_dc = 0, max_dp = 0;
        for (std::size_t i = 0; i < run.records.size(); i++) {
            max_dc = std::max(max_dc, std::abs(run.records[i].c - closed[i].c));
            max_dp = std::max(max_dp, std::abs(run.records[i].p - closed[i].p));
        }
        json summary{{"mode", "analytic"},
                     {"records", records_to_json(run.records)},
                     {"final_state", state_to_json(run.final_state)},
                     {"max_closed_form_deviation_c", max_dc},
                     {"max_closed_form_deviation_P", max_dp}};
        emit(cfg, records_to_csv(run.records), summary, out);
        return kSuccess;
    }

    // Independent lab-style runs; run r uses seed + r.
    std::map<int, int> aborted_at;
    int completed = 0;
    std::optional<CascadeRun> first_success;
    for (int r = 0; r < cfg.shots; r++) {
        try {
            auto run = cascade_simulated(cfg.c0, cfg.k, cfg.alpha, cfg.theta,
                                         Sampled{cfg.seed + static_cast<std::uint64_t>(r)});
            completed++;
            if (!first_success) {
                first_success = std::move(run);
            }
        } catch (const CascadeAborted &e) {
            aborted_at[e.stage]++;
        }
    }
    json aborts = json::object();
    for (const auto &[stage, count] : aborted_at) {
        aborts[std::to_string(stage)] = count;
    }
    json summary{{"mode", "sampled"},
                 {"runs", cfg.shots},
                 {"completed", completed},
                 {"success_fraction", static_cast<double>(completed) / cfg.shots},
                 {"expected_success_fraction", closed.back().cumulative_p},
                 {"aborted_at_stage", aborts}};
    std::string csv = first_success ? records_to_csv(first_success->records) : records_to_csv({});
    emit(cfg, csv, summary, out);
    return kSuccess;
}

int cmd_classify(const RunConfig &cfg, std::ostream &out) {
    if (cfg.shots < 1) {
        throw std::invalid_argument("--shots must be positive");
    }
    PairClassifier classifier(cfg.alpha, cfg.theta, cfg.n_max);
    int source_cut = cfg.source_n_max;
    if (source_cut < 0) {
        source_cut = adequate_truncation(cfg.tau);
        if (source_cut < 0) {
            throw TruncationTooCoarse(pair_distribution({cfg.tau, 1000}).truncation_loss);
        }
    }
    SpdcParams source{cfg.tau, source_cut};

    std::map<int, PairClassifier::Prepared> prepared;
    std::map<int, std::vector<int>> confusion;  // true n -> counts per declared class
    int correct = 0;
    for (int s = 0; s < cfg.shots; s++) {
        Rng rng(cfg.seed + static_cast<std::uint64_t>(s));
        int n = sample_emission(source, rng);
        auto it = prepared.find(n);
        if (it == prepared.end()) {
            it = prepared.emplace(n, classifier.prepare(pair_state(n), true)).first;
        }
        int declared = *classifier.sample(it->second, rng).declared;
        auto &row = confusion[n];
        row.resize(static_cast<std::size_t>(cfg.n_max) + 1, 0);
        row[static_cast<std::size_t>(declared)]++;
        correct += declared == n ? 1 : 0;
    }

    std::string csv = "true_n";
    for (int m = 0; m <= cfg.n_max; m++) {
        csv += ",declared_" + std::to_string(m);
    }
    csv += '\n';
    for (const auto &[n, row] : confusion) {
        csv += std::to_string(n);
        for (int count : row) {
            csv += ',' + std::to_string(count);
        }
        csv += '\n';
    }

    // Expected per-shot misclassification from the Gaussian tails, weighted by the source.
    auto dist = pair_distribution(source);
    double expected_tail = 0;
    for (int n = 1; n <= std::min(source_cut, cfg.n_max); n++) {
        auto it = prepared.find(n);
        auto analysis = classifier.analyze(it != prepared.end() ? it->second : classifier.prepare(pair_state(n)));
        expected_tail += dist.probabilities[static_cast<std::size_t>(n)] * analysis.tail_error;
    }
    double total_mass = 1.0 - dist.truncation_loss;
    json summary{{"tau", cfg.tau},
                 {"n_max", cfg.n_max},
                 {"source_n_max", source_cut},
                 {"alpha", cfg.alpha},
                 {"theta", cfg.theta},
                 {"shots", cfg.shots},
                 {"accuracy", static_cast<double>(correct) / cfg.shots},
                 {"off_diagonal_fraction", 1.0 - static_cast<double>(correct) / cfg.shots},
                 {"expected_window_error", expected_tail / total_mass}};
    emit(cfg, csv, summary, out);
    return kSuccess;
}

int cmd_spdc(const RunConfig &cfg, std::ostream &out) {
    auto dist = pair_distribution({cfg.tau, cfg.n_max});
    json summary{{"tau", cfg.tau},
                 {"n_max", cfg.n_max},
                 {"truncation_loss", dist.truncation_loss},
                 {"mean_pair_number", mean_pair_number(cfg.tau)}};
    emit(cfg, distribution_to_csv(dist), summary, out);
    return kSuccess;
}

void apply_config_file(const std::string &path, CLI::App &sub, RunConfig &cfg) {
    std::ifstream file(path);
    if (!file) {
        throw IoError("cannot open config file '" + path + "'");
    }
    json j = json::parse(file);
    if (!j.is_object()) {
        throw std::invalid_argument("config file must hold a JSON object");
    }
    // Flags given on the command line win over the file.
    auto unset = [&](const char *flag) { return sub.get_option(flag)->count() == 0; };
    for (const auto &[key, value] : j.items()) {
        if (key == "c0" && unset("--c0")) {
            cfg.c0 = value.get<double>();
        } else if (key == "k" && unset("--k")) {
            cfg.k = value.get<int>();
        } else if (key == "tau" && unset("--tau")) {
            cfg.tau = value.get<double>();
        } else if ((key == "n_max" || key == "n-max") && unset("--n-max")) {
            cfg.n_max = value.get<int>();
        } else if ((key == "source_n_max" || key == "source-n-max") && unset("--source-n-max")) {
            cfg.source_n_max = value.get<int>();
        } else if (key == "alpha" && unset("--alpha")) {
            cfg.alpha = value.get<double>();
        } else if (key == "theta" && unset("--theta")) {
            cfg.theta = value.get<double>();
        } else if (key == "seed" && unset("--seed")) {
            cfg.seed = value.get<std::uint64_t>();
        } else if (key == "mode" && unset("--mode")) {
            cfg.mode = value.get<std::string>();
        } else if (key == "out" && unset("--out")) {
            cfg.out = value.get<std::string>();
        } else if (key == "shots" && unset("--shots")) {
            cfg.shots = value.get<int>();
        } else if (!(key == "c0" || key == "k" || key == "tau" || key == "n_max" || key == "n-max" ||
                     key == "source_n_max" || key == "source-n-max" || key == "alpha" || key == "theta" ||
                     key == "seed" || key == "mode" || key == "out" || key == "shots")) {
            throw std::invalid_argument("unknown config key '" + key + "'");
        }
    }
    if (cfg.mode != "analytic" && cfg.mode != "sampled") {
        throw std::invalid_argument("mode must be 'analytic' or 'sampled'");
    }
}

}  // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"twinbeam: twin-beam symmetry detector simulator"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string config_path;

    struct Sub {
        const char *name;
        const char *help;
        int (*fn)(const RunConfig &, std::ostream &);
    };
    const Sub subs[] = {
        {"figure3", "Closed-form purification cascade (c_i, P_i, cumulative P) per iteration", cmd_figure3},
        {"detect", "Run one four-photon symmetry detector on the family state with coefficient --c0", cmd_detect},
        {"cascade", "Full-simulation purification cascade", cmd_cascade},
        {"classify", "Pair-number classification of sampled SPDC emissions", cmd_classify},
        {"spdc", "SPDC pair-number distribution", cmd_spdc},
    };
    std::map<CLI::App *, const Sub *> lookup;
    for (const auto &s : subs) {
        auto *sub = app.add_subcommand(s.name, s.help);
        sub->add_option("--c0,--c", cfg.c0, "Four-photon family coefficient c")->capture_default_str();
        sub->add_option("--k", cfg.k, "Number of cascaded detectors")->capture_default_str();
        sub->add_option("--tau", cfg.tau, "SPDC interaction parameter")->capture_default_str();
        sub->add_option("--n-max", cfg.n_max, "Truncation / largest pair class")->capture_default_str();
        sub->add_option("--source-n-max", cfg.source_n_max,
                        "SPDC truncation used for emission sampling (default: automatic)");
        sub->add_option("--alpha", cfg.alpha, "Probe coherent amplitude")->capture_default_str();
        sub->add_option("--theta", cfg.theta, "Kerr phase per photon (rad)")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
        sub->add_option("--mode", cfg.mode, "analytic or sampled")
            ->check(CLI::IsMember({"analytic", "sampled"}))
            ->capture_default_str();
        sub->add_option("--out", cfg.out, "Output file (a .json summary is written next to it)");
        sub->add_option("--shots", cfg.shots, "Number of simulated shots")->capture_default_str();
        sub->add_option("--config", config_path, "JSON file with default values for the flags");
        lookup[sub] = &s;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }

    CLI::App *chosen = app.get_subcommands().front();
    try {
        if (!config_path.empty()) {
            apply_config_file(config_path, *chosen, cfg);
        }
        return lookup.at(chosen)->fn(cfg, out);
    } catch (const NumericError &e) {
        err << "error: " << e.what() << '\n';
        return kNumericPrecondition;
    } catch (const IoError &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const json::exception &e) {
        err << "error: bad config: " << e.what() << '\n';
        return kInvalidConfig;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kInvalidConfig;
    }
}

}  // namespace twinbeam::cli
