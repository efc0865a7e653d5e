// Python face of the library: the core types plus the operations a notebook
// actually calls. File-free variants (string in, string out) are provided for
// the serialization helpers so tests can stay in memory.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "voterec/config.hpp"
#include "voterec/elections.hpp"
#include "voterec/errors.hpp"
#include "voterec/factorization.hpp"
#include "voterec/ingest.hpp"
#include "voterec/lexicon.hpp"
#include "voterec/metrics.hpp"
#include "voterec/pipeline.hpp"
#include "voterec/scoring.hpp"
#include "voterec/synth.hpp"

namespace py = pybind11;
using namespace voterec;

PYBIND11_MODULE(_voterec, m) {
    m.doc() = "top-k news recommendation via multi-winner voting rules";

    py::register_exception<InputError>(m, "InputError");
    py::register_exception<NumericalError>(m, "NumericalError");
    py::register_exception<InstanceTooLargeError>(m, "InstanceTooLargeError");

    py::enum_<Rule>(m, "Rule")
        .value("SNTV", Rule::Sntv)
        .value("BLOC", Rule::Bloc)
        .value("K_BORDA", Rule::KBorda)
        .value("STV", Rule::Stv)
        .value("CC", Rule::Cc)
        .value("MONROE", Rule::Monroe)
        .value("CC_EXACT", Rule::CcExact)
        .value("MONROE_EXACT", Rule::MonroeExact);
    m.def("rule_name", &rule_name);
    m.def("parse_rule", &parse_rule);

    py::enum_<Side>(m, "Side")
        .value("LEFT", Side::Left)
        .value("RIGHT", Side::Right)
        .value("NEUTRAL", Side::Neutral);

    py::class_<InteractionEvent>(m, "InteractionEvent")
        .def(py::init<>())
        .def(py::init([](std::string user, std::string article, double t) {
                 return InteractionEvent{std::move(user), std::move(article), t};
             }),
             py::arg("user_id"), py::arg("article_id"), py::arg("active_time"))
        .def_readwrite("user_id", &InteractionEvent::user_id)
        .def_readwrite("article_id", &InteractionEvent::article_id)
        .def_readwrite("active_time", &InteractionEvent::active_time);

    py::class_<InteractionLog>(m, "InteractionLog")
        .def(py::init<>())
        .def("add", &InteractionLog::add)
        .def_readonly("events", &InteractionLog::events)
        .def_readonly("users", &InteractionLog::users)
        .def_readonly("articles", &InteractionLog::articles);

    py::class_<ArticleDoc>(m, "ArticleDoc")
        .def(py::init<>())
        .def(py::init([](std::string id, std::string body, std::string source) {
                 return ArticleDoc{std::move(id), std::move(body), std::move(source)};
             }),
             py::arg("article_id"), py::arg("body"), py::arg("source") = "")
        .def_readwrite("article_id", &ArticleDoc::article_id)
        .def_readwrite("body", &ArticleDoc::body)
        .def_readwrite("source", &ArticleDoc::source);

    py::class_<ScoreMatrix>(m, "ScoreMatrix")
        .def(py::init<>())
        .def_readwrite("users", &ScoreMatrix::users)
        .def_readwrite("articles", &ScoreMatrix::articles)
        .def_readwrite("observed", &ScoreMatrix::observed)
        .def_readwrite("completed", &ScoreMatrix::completed)
        .def("row_of", &ScoreMatrix::row_of)
        .def("col_of", &ScoreMatrix::col_of);

    py::class_<BallotProfile>(m, "BallotProfile")
        .def(py::init<>())
        .def_readwrite("candidates", &BallotProfile::candidates)
        .def_readwrite("voters", &BallotProfile::voters)
        .def_readwrite("rankings", &BallotProfile::rankings)
        .def("num_candidates", &BallotProfile::num_candidates)
        .def("num_voters", &BallotProfile::num_voters);

    py::class_<Committee>(m, "Committee")
        .def(py::init<>())
        .def_readwrite("winners", &Committee::winners)
        .def_readwrite("rule", &Committee::rule)
        .def_readwrite("assignment", &Committee::assignment);

    py::class_<SeedWord>(m, "SeedWord")
        .def(py::init<>())
        .def_readwrite("word", &SeedWord::word)
        .def_readwrite("pmi", &SeedWord::pmi);

    py::class_<SeedLexicon>(m, "SeedLexicon")
        .def(py::init<>())
        .def_readwrite("left", &SeedLexicon::left)
        .def_readwrite("right", &SeedLexicon::right)
        .def_readwrite("top_n", &SeedLexicon::top_n)
        .def_readwrite("underfull", &SeedLexicon::underfull);

    py::class_<ArticleLabel>(m, "ArticleLabel")
        .def(py::init<>())
        .def_readwrite("article_id", &ArticleLabel::article_id)
        .def_readwrite("label", &ArticleLabel::label)
        .def_readwrite("left_hits", &ArticleLabel::left_hits)
        .def_readwrite("right_hits", &ArticleLabel::right_hits);

    py::class_<FairnessReport>(m, "FairnessReport")
        .def(py::init<>())
        .def_readwrite("rule", &FairnessReport::rule)
        .def_readwrite("satisfaction", &FairnessReport::satisfaction)
        .def_readwrite("bias", &FairnessReport::bias)
        .def_readwrite("rho", &FairnessReport::rho)
        .def_readwrite("left_count", &FairnessReport::left_count)
        .def_readwrite("right_count", &FairnessReport::right_count)
        .def_readwrite("kappa", &FairnessReport::kappa);

    // ingest: string-based for convenience
    py::class_<ParsedEvents>(m, "ParsedEvents")
        .def_readonly("log", &ParsedEvents::log)
        .def_readonly("kept", &ParsedEvents::kept)
        .def_readonly("dropped_zero", &ParsedEvents::dropped_zero);
    m.def(
        "parse_events",
        [](const std::string& text, const std::string& format) {
            std::istringstream in(text);
            return parse_events(in, parse_event_format(format));
        },
        py::arg("text"), py::arg("format") = "jsonl");
    m.def("write_events", [](const InteractionLog& log) {
        std::ostringstream out;
        write_events(log, out);
        return out.str();
    });
    m.def("parse_corpus", [](const std::string& text) {
        std::istringstream in(text);
        return parse_corpus(in);
    });
    m.def("write_corpus", [](const std::vector<ArticleDoc>& docs) {
        std::ostringstream out;
        write_corpus(docs, out);
        return out.str();
    });

    // scoring
    m.def("raw_scores", &raw_scores);
    m.def("rescale_per_user", &rescale_per_user);

    // factorization
    py::class_<FactorizationConfig>(m, "FactorizationConfig")
        .def(py::init<>())
        .def_readwrite("latent_dim", &FactorizationConfig::latent_dim)
        .def_readwrite("learning_rate", &FactorizationConfig::learning_rate)
        .def_readwrite("regularization", &FactorizationConfig::regularization)
        .def_readwrite("convergence_tol", &FactorizationConfig::convergence_tol)
        .def_readwrite("max_epochs", &FactorizationConfig::max_epochs)
        .def_readwrite("rng_seed", &FactorizationConfig::rng_seed);
    py::class_<FactorizationResult>(m, "FactorizationResult")
        .def_readonly("user_factors", &FactorizationResult::user_factors)
        .def_readonly("item_factors", &FactorizationResult::item_factors)
        .def_readonly("epochs_run", &FactorizationResult::epochs_run)
        .def_readonly("initial_cost", &FactorizationResult::initial_cost)
        .def_readonly("final_cost", &FactorizationResult::final_cost)
        .def_readonly("converged", &FactorizationResult::converged);
    m.def("factorize", &factorize, py::arg("scores"), py::arg("config"));
    m.def("merge", &merge, py::arg("scores"), py::arg("result"));

    // elections
    m.def("ballots_from_scores", &ballots_from_scores);
    m.def("sntv", &sntv, py::arg("profile"), py::arg("kappa"));
    m.def("bloc", &bloc, py::arg("profile"), py::arg("kappa"));
    m.def("k_borda", &k_borda, py::arg("profile"), py::arg("kappa"));
    m.def("stv", &stv, py::arg("profile"), py::arg("kappa"));
    m.def("chamberlin_courant_greedy", &chamberlin_courant_greedy, py::arg("profile"),
          py::arg("kappa"));
    m.def("chamberlin_courant_exact", &chamberlin_courant_exact, py::arg("profile"),
          py::arg("kappa"));
    m.def("monroe_greedy", &monroe_greedy, py::arg("profile"), py::arg("kappa"));
    m.def("monroe_exact", &monroe_exact, py::arg("profile"), py::arg("kappa"));
    m.def("elect", &elect, py::arg("profile"), py::arg("rule"), py::arg("kappa"));
    m.def("committee_to_json", &committee_to_json);
    m.def("committee_from_json", &committee_from_json);

    // lexicon
    m.def("tokenize", [](const std::string& text) { return tokenize(text); });
    m.def("build_lexicon", &build_lexicon, py::arg("left_corpus"), py::arg("right_corpus"),
          py::arg("top_n"), py::arg("min_count"));
    m.def("label_article", &label_article, py::arg("doc"), py::arg("lexicon"));
    m.def("count_seed_hits", &count_seed_hits, py::arg("docs"), py::arg("lexicon"));
    m.def("lexicon_to_json", &lexicon_to_json);
    m.def("lexicon_from_json", &lexicon_from_json);

    // metrics
    m.def("satisfaction", &satisfaction, py::arg("committee"), py::arg("scores"),
          py::arg("kappa"));
    m.def("reference_bias", &reference_bias, py::arg("log"), py::arg("labels"));
    m.def("bias", &bias, py::arg("left_count"), py::arg("right_count"), py::arg("rho"));

    // synthetic data
    py::class_<SynthConfig>(m, "SynthConfig")
        .def(py::init<>())
        .def_readwrite("n_users", &SynthConfig::n_users)
        .def_readwrite("n_articles", &SynthConfig::n_articles)
        .def_readwrite("left_fraction", &SynthConfig::left_fraction)
        .def_readwrite("polarization", &SynthConfig::polarization)
        .def_readwrite("seed_vocab_size", &SynthConfig::seed_vocab_size)
        .def_readwrite("rng_seed", &SynthConfig::rng_seed);
    py::class_<SynthData>(m, "SynthData")
        .def_readonly("log", &SynthData::log)
        .def_readonly("corpus", &SynthData::corpus)
        .def_readonly("truth", &SynthData::truth)
        .def_readonly("left_markers", &SynthData::left_markers)
        .def_readonly("right_markers", &SynthData::right_markers);
    m.def("generate", &generate, py::arg("config"));

    // pipeline
    py::class_<LexiconConfig>(m, "LexiconConfig")
        .def(py::init<>())
        .def_readwrite("top_n", &LexiconConfig::top_n)
        .def_readwrite("min_count", &LexiconConfig::min_count);
    py::class_<PathsConfig>(m, "PathsConfig")
        .def(py::init<>())
        .def_readwrite("events", &PathsConfig::events)
        .def_readwrite("corpus", &PathsConfig::corpus)
        .def_readwrite("left_corpus", &PathsConfig::left_corpus)
        .def_readwrite("right_corpus", &PathsConfig::right_corpus)
        .def_readwrite("out_dir", &PathsConfig::out_dir);
    py::class_<PipelineConfig>(m, "PipelineConfig")
        .def(py::init<>())
        .def_readwrite("kappa", &PipelineConfig::kappa)
        .def_readwrite("rng_seed", &PipelineConfig::rng_seed)
        .def_readwrite("rules", &PipelineConfig::rules)
        .def_readwrite("factorization", &PipelineConfig::factorization)
        .def_readwrite("lexicon", &PipelineConfig::lexicon)
        .def_readwrite("synth", &PipelineConfig::synth)
        .def_readwrite("paths", &PipelineConfig::paths);
    m.def("default_config", &default_config);
    m.def("load_config", &load_config);
    m.def("parse_config", [](const std::string& text) {
        std::istringstream in(text);
        return parse_config(in);
    });
    m.def("canonical_config", &canonical_config);
    m.def("run_dir_name", &run_dir_name);
    m.def("prepare_run_dir", &prepare_run_dir);
    m.def("run_pipeline", &run_pipeline, py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
}
