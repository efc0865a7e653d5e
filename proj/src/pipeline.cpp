#include "voterec/pipeline.hpp"

#include <fstream>
#include <future>
#include <map>
#include <sstream>

#include "voterec/elections.hpp"
#include "voterec/errors.hpp"
#include "voterec/factorization.hpp"
#include "voterec/ingest.hpp"
#include "voterec/lexicon.hpp"
#include "voterec/metrics.hpp"
#include "voterec/scoring.hpp"
#include "voterec/synth.hpp"

namespace fs = std::filesystem;

namespace voterec {

namespace artifact {

std::string committee_file(Rule rule) {
    return std::string("committee_") + rule_name(rule) + ".json";
}

}  // namespace artifact

namespace {

fs::path require_file(const fs::path& dir, const char* name, const char* hint) {
    fs::path p = dir / name;
    if (!fs::exists(p))
        throw InputError(std::string(name) + " not found in " + dir.string() + "; " + hint);
    return p;
}

std::ofstream open_out(const fs::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    return out;
}

std::ifstream open_in(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InputError("cannot read " + p.string());
    return in;
}

std::string slurp(const fs::path& p) {
    auto in = open_in(p);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

bool synthetic_mode(const PipelineConfig& cfg) { return cfg.paths.events.empty(); }

ScoreMatrix load_completed(const PipelineConfig&, const fs::path& dir) {
    auto in = open_in(require_file(dir, artifact::kCompleted, "run `factorize` first"));
    return read_completed_csv(in);
}

std::vector<ArticleDoc> load_corpus_artifact(const fs::path& dir, const char* name,
                                             const char* hint) {
    auto in = open_in(require_file(dir, name, hint));
    return parse_corpus(in);
}

Committee slurp_committee(const fs::path& dir, Rule rule) {
    const std::string name = artifact::committee_file(rule);
    fs::path p = dir / name;
    if (!fs::exists(p))
        throw InputError(name + " not found in " + dir.string() + "; run `elect` first");
    return committee_from_json(slurp(p));
}

}  // namespace

fs::path prepare_run_dir(const PipelineConfig& cfg) {
    validate_config(cfg);
    fs::path dir = fs::path(cfg.paths.out_dir) / run_dir_name(cfg);
    fs::create_directories(dir);
    open_out(dir / artifact::kConfig) << canonical_config(cfg);
    return dir;
}

void stage_synth(const PipelineConfig& cfg, const fs::path& dir) {
    SynthConfig scfg = cfg.synth;
    scfg.rng_seed = cfg.rng_seed;
    SynthData data = generate(scfg);

    auto events_out = open_out(dir / artifact::kEvents);
    write_events(data.log, events_out);
    auto corpus_out = open_out(dir / artifact::kCorpus);
    write_corpus(data.corpus, corpus_out);

    std::vector<ArticleDoc> left, right;
    for (size_t i = 0; i < data.corpus.size(); ++i) {
        if (data.truth[i].label == Side::Left) left.push_back(data.corpus[i]);
        else if (data.truth[i].label == Side::Right) right.push_back(data.corpus[i]);
    }
    auto left_out = open_out(dir / artifact::kLeftCorpus);
    write_corpus(left, left_out);
    auto right_out = open_out(dir / artifact::kRightCorpus);
    write_corpus(right, right_out);
    auto truth_out = open_out(dir / artifact::kTruthLabels);
    write_labels_csv(data.truth, truth_out);
}

void stage_ingest(const PipelineConfig& cfg, const fs::path& dir) {
    if (synthetic_mode(cfg)) {
        // Nothing external to pull in; re-validate what synth wrote.
        auto in = open_in(require_file(dir, artifact::kEvents, "run `synth` first"));
        parse_events(in, EventFormat::JsonLines);
        return;
    }
    ParsedEvents parsed = parse_events_file(cfg.paths.events, cfg.paths.events_format);
    if (parsed.log.events.empty())
        throw InputError("no usable events in " + cfg.paths.events);
    auto events_out = open_out(dir / artifact::kEvents);
    write_events(parsed.log, events_out);

    auto copy_corpus = [&](const std::string& src, const char* name) {
        if (src.empty()) return;
        auto docs = parse_corpus_file(src);
        auto out = open_out(dir / name);
        write_corpus(docs, out);
    };
    copy_corpus(cfg.paths.corpus, artifact::kCorpus);
    copy_corpus(cfg.paths.left_corpus, artifact::kLeftCorpus);
    copy_corpus(cfg.paths.right_corpus, artifact::kRightCorpus);
}

void stage_score(const PipelineConfig&, const fs::path& dir) {
    auto in = open_in(require_file(dir, artifact::kEvents, "run `synth` or `ingest` first"));
    ParsedEvents parsed = parse_events(in, EventFormat::JsonLines);
    ScoreMatrix m = rescale_per_user(raw_scores(parsed.log));
    auto out = open_out(dir / artifact::kScores);
    write_scores_csv(m, out);
}

void stage_factorize(const PipelineConfig& cfg, const fs::path& dir) {
    auto in = open_in(require_file(dir, artifact::kScores, "run `score` first"));
    ScoreMatrix m = read_scores_csv(in);
    FactorizationConfig fcfg = cfg.factorization;
    fcfg.rng_seed = cfg.rng_seed;
    FactorizationResult result = factorize(m, fcfg);
    ScoreMatrix full = merge(m, result);
    auto completed_out = open_out(dir / artifact::kCompleted);
    write_scores_csv(full, completed_out);
    auto users_out = open_out(dir / artifact::kUserFactors);
    write_factors_csv(result.user_factors, full.users, users_out);
    auto items_out = open_out(dir / artifact::kItemFactors);
    write_factors_csv(result.item_factors, full.articles, items_out);
}

void stage_elect(const PipelineConfig& cfg, const fs::path& dir) {
    ScoreMatrix m = load_completed(cfg, dir);
    const BallotProfile profile = ballots_from_scores(m);

    // Rules are independent over the immutable profile; run them concurrently
    // and write in config order so output bytes never depend on scheduling.
    std::vector<std::future<Committee>> futures;
    futures.reserve(cfg.rules.size());
    for (Rule rule : cfg.rules)
        futures.push_back(std::async(std::launch::async, [&profile, rule, &cfg] {
            return elect(profile, rule, cfg.kappa);
        }));
    for (size_t i = 0; i < cfg.rules.size(); ++i) {
        Committee committee = futures[i].get();
        open_out(dir / artifact::committee_file(cfg.rules[i]))
            << committee_to_json(committee);
    }
}

void stage_elect_one(const PipelineConfig& cfg, const fs::path& dir, Rule rule) {
    ScoreMatrix m = load_completed(cfg, dir);
    Committee committee = elect(ballots_from_scores(m), rule, cfg.kappa);
    open_out(dir / artifact::committee_file(rule)) << committee_to_json(committee);
}

void stage_lexicon(const PipelineConfig& cfg, const fs::path& dir) {
    auto left = load_corpus_artifact(dir, artifact::kLeftCorpus,
                                     "provide input.left_corpus or run `synth` first");
    auto right = load_corpus_artifact(dir, artifact::kRightCorpus,
                                      "provide input.right_corpus or run `synth` first");
    SeedLexicon lex = build_lexicon(left, right, cfg.lexicon.top_n, cfg.lexicon.min_count);
    open_out(dir / artifact::kLexicon) << lexicon_to_json(lex);
}

void stage_label(const PipelineConfig&, const fs::path& dir) {
    auto corpus = load_corpus_artifact(dir, artifact::kCorpus,
                                       "provide input.corpus or run `synth` first");
    SeedLexicon lex =
        lexicon_from_json(slurp(require_file(dir, artifact::kLexicon, "run `lexicon` first")));
    std::vector<ArticleLabel> labels;
    labels.reserve(corpus.size());
    for (const auto& doc : corpus) labels.push_back(label_article(doc, lex));
    auto out = open_out(dir / artifact::kLabels);
    write_labels_csv(labels, out);
}

std::vector<FairnessReport> stage_evaluate(const PipelineConfig& cfg, const fs::path& dir) {
    ScoreMatrix m = load_completed(cfg, dir);
    auto corpus = load_corpus_artifact(dir, artifact::kCorpus,
                                       "provide input.corpus or run `synth` first");
    SeedLexicon lex =
        lexicon_from_json(slurp(require_file(dir, artifact::kLexicon, "run `lexicon` first")));
    auto labels_in = open_in(require_file(dir, artifact::kLabels, "run `label` first"));
    std::vector<ArticleLabel> labels = read_labels_csv(labels_in);
    auto events_in =
        open_in(require_file(dir, artifact::kEvents, "run `synth` or `ingest` first"));
    ParsedEvents parsed = parse_events(events_in, EventFormat::JsonLines);

    const double rho = reference_bias(parsed.log, labels);

    std::map<std::string, const ArticleDoc*> doc_of;
    for (const auto& doc : corpus) doc_of[doc.article_id] = &doc;

    std::vector<FairnessReport> rows;
    for (Rule rule : cfg.rules) {
        Committee committee = slurp_committee(dir, rule);
        FairnessReport row;
        row.rule = rule;
        row.kappa = cfg.kappa;
        row.satisfaction = satisfaction(committee, m, cfg.kappa);
        std::vector<ArticleDoc> winner_docs;
        for (const auto& w : committee.winners) {
            auto it = doc_of.find(w);
            if (it == doc_of.end())
                throw InputError("winner \"" + w + "\" has no article in the corpus");
            winner_docs.push_back(*it->second);
        }
        auto [left_count, right_count] = count_seed_hits(winner_docs, lex);
        row.left_count = left_count;
        row.right_count = right_count;
        row.rho = rho;
        row.bias = bias(left_count, right_count, rho);
        rows.push_back(row);
    }
    auto out = open_out(dir / artifact::kReportCsv);
    write_report_csv(rows, out);
    return rows;
}

void stage_report(const PipelineConfig&, const fs::path& dir) {
    auto in = open_in(require_file(dir, artifact::kReportCsv, "run `evaluate` first"));
    std::vector<FairnessReport> rows = read_report_csv(in);
    auto out = open_out(dir / artifact::kReportMd);
    write_report_markdown(rows, out);
}

namespace {

template <typename Fn>
auto run_stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const InstanceTooLargeError& e) {
        throw InstanceTooLargeError(std::string(name) + ": " + e.what());
    } catch (const NumericalError& e) {
        throw NumericalError(std::string(name) + ": " + e.what());
    } catch (const InputError& e) {
        throw InputError(std::string(name) + ": " + e.what());
    }
}

}  // namespace

std::vector<FairnessReport> run_pipeline(const PipelineConfig& cfg) {
    fs::path dir = prepare_run_dir(cfg);
    if (synthetic_mode(cfg)) {
        run_stage("synth", [&] { stage_synth(cfg, dir); });
    } else {
        run_stage("ingest", [&] { stage_ingest(cfg, dir); });
    }
    run_stage("score", [&] { stage_score(cfg, dir); });
    run_stage("factorize", [&] { stage_factorize(cfg, dir); });
    run_stage("elect", [&] { stage_elect(cfg, dir); });
    run_stage("lexicon", [&] { stage_lexicon(cfg, dir); });
    run_stage("label", [&] { stage_label(cfg, dir); });
    auto rows = run_stage("evaluate", [&] { return stage_evaluate(cfg, dir); });
    run_stage("report", [&] { stage_report(cfg, dir); });
    return rows;
}

}  // namespace voterec
