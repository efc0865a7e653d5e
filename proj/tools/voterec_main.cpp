// voterec: top-k news recommendation as a multi-winner election, with
// user-satisfaction and ideological-bias auditing. Subcommands mirror the
// pipeline stages; `run` does all of them.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "voterec/config.hpp"
#include "voterec/errors.hpp"
#include "voterec/pipeline.hpp"

namespace fs = std::filesystem;
using namespace voterec;

namespace {

void echo_file(const fs::path& p) {
    std::ifstream in(p);
    std::cout << in.rdbuf();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"top-k news recommendation via multi-winner voting rules"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<int> kappa_opt;
    std::optional<uint64_t> seed_opt;
    std::optional<std::string> out_opt;
    app.add_option("--config", config_path, "pipeline config file (key = value lines)");
    app.add_option("--kappa", kappa_opt, "committee size override");
    app.add_option("--seed", seed_opt, "rng seed override");
    app.add_option("--out", out_opt, "output directory override");

    auto* cmd_run = app.add_subcommand("run", "run every stage end to end");
    auto* cmd_synth = app.add_subcommand("synth", "generate a synthetic dataset");
    auto* cmd_ingest = app.add_subcommand("ingest", "validate and import events and corpora");
    auto* cmd_score = app.add_subcommand("score", "events -> rescaled user/article scores");
    auto* cmd_factorize =
        app.add_subcommand("factorize", "complete the score matrix by factorization");
    auto* cmd_elect = app.add_subcommand("elect", "elect committees from the completed matrix");
    std::string rule_arg;
    cmd_elect->add_option("--rule", rule_arg, "run a single rule instead of the configured list");
    auto* cmd_lexicon =
        app.add_subcommand("lexicon", "build the PMI seed lexicon from labeled corpora");
    auto* cmd_label = app.add_subcommand("label", "label every corpus article with the lexicon");
    auto* cmd_evaluate =
        app.add_subcommand("evaluate", "satisfaction and bias per committee -> report.csv");
    auto* cmd_report = app.add_subcommand("report", "render report.csv as a Markdown table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;  // bad usage is an input error
    }

    try {
        PipelineConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (kappa_opt) cfg.kappa = *kappa_opt;
        if (seed_opt) cfg.rng_seed = *seed_opt;
        if (out_opt) cfg.paths.out_dir = *out_opt;
        validate_config(cfg);

        const fs::path dir = prepare_run_dir(cfg);
        if (cmd_run->parsed()) {
            run_pipeline(cfg);
            std::cout << "run directory: " << dir.string() << "\n\n";
            echo_file(dir / artifact::kReportMd);
        } else if (cmd_synth->parsed()) {
            stage_synth(cfg, dir);
            std::cout << "synthetic dataset written to " << dir.string() << "\n";
        } else if (cmd_ingest->parsed()) {
            stage_ingest(cfg, dir);
            std::cout << "events imported into " << dir.string() << "\n";
        } else if (cmd_score->parsed()) {
            stage_score(cfg, dir);
            std::cout << "wrote " << (dir / artifact::kScores).string() << "\n";
        } else if (cmd_factorize->parsed()) {
            stage_factorize(cfg, dir);
            std::cout << "wrote " << (dir / artifact::kCompleted).string() << "\n";
        } else if (cmd_elect->parsed()) {
            if (rule_arg.empty()) {
                stage_elect(cfg, dir);
                std::cout << "wrote committees for " << cfg.rules.size() << " rule(s) to "
                          << dir.string() << "\n";
            } else {
                Rule rule = parse_rule(rule_arg);
                stage_elect_one(cfg, dir, rule);
                std::cout << "wrote " << (dir / artifact::committee_file(rule)).string() << "\n";
            }
        } else if (cmd_lexicon->parsed()) {
            stage_lexicon(cfg, dir);
            std::cout << "wrote " << (dir / artifact::kLexicon).string() << "\n";
        } else if (cmd_label->parsed()) {
            stage_label(cfg, dir);
            std::cout << "wrote " << (dir / artifact::kLabels).string() << "\n";
        } else if (cmd_evaluate->parsed()) {
            stage_evaluate(cfg, dir);
            std::cout << "wrote " << (dir / artifact::kReportCsv).string() << "\n";
        } else if (cmd_report->parsed()) {
            stage_report(cfg, dir);
            echo_file(dir / artifact::kReportMd);
        }
        return 0;
    } catch (const InstanceTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
