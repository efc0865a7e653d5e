#include "voterec/config.hpp"

#include <fstream>
#include <sstream>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

PipelineConfig default_config() { return PipelineConfig{}; }

namespace {

int parse_int(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        int v = std::stoi(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InputError("config: " + key + " expects an integer, got \"" + value + "\"");
    }
}

uint64_t parse_u64(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InputError("config: " + key + " expects a non-negative integer, got \"" + value +
                         "\"");
    }
}

double parse_real(const std::string& value, const std::string& key) {
    try {
        size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw InputError("config: " + key + " expects a number, got \"" + value + "\"");
    }
}

std::vector<Rule> parse_rules(const std::string& value) {
    std::vector<Rule> rules;
    for (const auto& part : split(value, ',')) {
        const std::string name = trim(part);
        if (name.empty()) throw InputError("config: rules has an empty entry");
        Rule r = parse_rule(name);
        for (Rule seen : rules)
            if (seen == r) throw InputError("config: rules lists \"" + name + "\" twice");
        rules.push_back(r);
    }
    if (rules.empty()) throw InputError("config: rules must name at least one rule");
    return rules;
}

void apply(PipelineConfig& cfg, const std::string& key, const std::string& value, int line_no) {
    if (key == "kappa") cfg.kappa = parse_int(value, key);
    else if (key == "rng_seed") cfg.rng_seed = parse_u64(value, key);
    else if (key == "rules") cfg.rules = parse_rules(value);
    else if (key == "out_dir") cfg.paths.out_dir = value;
    else if (key == "input.events") cfg.paths.events = value;
    else if (key == "input.events_format") cfg.paths.events_format = parse_event_format(value);
    else if (key == "input.corpus") cfg.paths.corpus = value;
    else if (key == "input.left_corpus") cfg.paths.left_corpus = value;
    else if (key == "input.right_corpus") cfg.paths.right_corpus = value;
    else if (key == "synth.users") cfg.synth.n_users = parse_int(value, key);
    else if (key == "synth.articles") cfg.synth.n_articles = parse_int(value, key);
    else if (key == "synth.left_fraction") cfg.synth.left_fraction = parse_real(value, key);
    else if (key == "synth.polarization") cfg.synth.polarization = parse_real(value, key);
    else if (key == "synth.seed_vocab") cfg.synth.seed_vocab_size = parse_int(value, key);
    else if (key == "factorization.latent_dim") cfg.factorization.latent_dim = parse_int(value, key);
    else if (key == "factorization.learning_rate") cfg.factorization.learning_rate = parse_real(value, key);
    else if (key == "factorization.regularization") cfg.factorization.regularization = parse_real(value, key);
    else if (key == "factorization.convergence_tol") cfg.factorization.convergence_tol = parse_real(value, key);
    else if (key == "factorization.max_epochs") cfg.factorization.max_epochs = parse_int(value, key);
    else if (key == "lexicon.top_n") cfg.lexicon.top_n = parse_int(value, key);
    else if (key == "lexicon.min_count") cfg.lexicon.min_count = parse_int(value, key);
    else
        throw InputError("config line " + std::to_string(line_no) + ": unknown key \"" + key +
                         "\"");
}

}  // namespace

PipelineConfig parse_config(std::istream& in) {
    PipelineConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw InputError("config line " + std::to_string(line_no) +
                             ": expected key = value");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw InputError("config line " + std::to_string(line_no) + ": empty key");
        apply(cfg, key, value, line_no);
    }
    validate_config(cfg);
    return cfg;
}

PipelineConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open config file " + path);
    return parse_config(in);
}

void validate_config(const PipelineConfig& cfg) {
    if (cfg.kappa < 1) throw InputError("config: kappa must be at least 1");
    if (cfg.rules.empty()) throw InputError("config: rules must name at least one rule");
    if (cfg.synth.n_users < 1) throw InputError("config: synth.users must be at least 1");
    if (cfg.synth.n_articles < 1) throw InputError("config: synth.articles must be at least 1");
    if (cfg.synth.left_fraction < 0.0 || cfg.synth.left_fraction > 1.0)
        throw InputError("config: synth.left_fraction must lie in [0, 1]");
    if (cfg.synth.polarization < 0.0 || cfg.synth.polarization > 1.0)
        throw InputError("config: synth.polarization must lie in [0, 1]");
    if (cfg.synth.seed_vocab_size < 1)
        throw InputError("config: synth.seed_vocab must be at least 1");
    if (cfg.factorization.latent_dim < 1)
        throw InputError("config: factorization.latent_dim must be at least 1");
    if (cfg.factorization.learning_rate <= 0.0)
        throw InputError("config: factorization.learning_rate must be positive");
    if (cfg.factorization.regularization < 0.0)
        throw InputError("config: factorization.regularization cannot be negative");
    if (cfg.factorization.convergence_tol <= 0.0)
        throw InputError("config: factorization.convergence_tol must be positive");
    if (cfg.factorization.max_epochs < 1)
        throw InputError("config: factorization.max_epochs must be at least 1");
    if (cfg.lexicon.top_n < 1) throw InputError("config: lexicon.top_n must be at least 1");
    if (cfg.lexicon.min_count < 1)
        throw InputError("config: lexicon.min_count must be at least 1");
}

std::string canonical_config(const PipelineConfig& cfg) {
    std::ostringstream out;
    out << "kappa = " << cfg.kappa << '\n';
    out << "rng_seed = " << cfg.rng_seed << '\n';
    out << "rules = ";
    for (size_t i = 0; i < cfg.rules.size(); ++i) {
        if (i) out << ',';
        out << rule_name(cfg.rules[i]);
    }
    out << '\n';
    out << "input.events = " << cfg.paths.events << '\n';
    out << "input.events_format = " << event_format_name(cfg.paths.events_format) << '\n';
    out << "input.corpus = " << cfg.paths.corpus << '\n';
    out << "input.left_corpus = " << cfg.paths.left_corpus << '\n';
    out << "input.right_corpus = " << cfg.paths.right_corpus << '\n';
    out << "synth.users = " << cfg.synth.n_users << '\n';
    out << "synth.articles = " << cfg.synth.n_articles << '\n';
    out << "synth.left_fraction = " << fmt_double(cfg.synth.left_fraction) << '\n';
    out << "synth.polarization = " << fmt_double(cfg.synth.polarization) << '\n';
    out << "synth.seed_vocab = " << cfg.synth.seed_vocab_size << '\n';
    out << "factorization.latent_dim = " << cfg.factorization.latent_dim << '\n';
    out << "factorization.learning_rate = " << fmt_double(cfg.factorization.learning_rate) << '\n';
    out << "factorization.regularization = " << fmt_double(cfg.factorization.regularization)
        << '\n';
    out << "factorization.convergence_tol = " << fmt_double(cfg.factorization.convergence_tol)
        << '\n';
    out << "factorization.max_epochs = " << cfg.factorization.max_epochs << '\n';
    out << "lexicon.top_n = " << cfg.lexicon.top_n << '\n';
    out << "lexicon.min_count = " << cfg.lexicon.min_count << '\n';
    return out.str();
}

uint64_t config_hash(const PipelineConfig& cfg) { return fnv1a64(canonical_config(cfg)); }

std::string run_dir_name(const PipelineConfig& cfg) { return "run-" + hex16(config_hash(cfg)); }

}  // namespace voterec
