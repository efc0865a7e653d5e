#include "voterec/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <string>

#include "voterec/errors.hpp"
#include "voterec/util.hpp"

namespace voterec {

double satisfaction(const Committee& committee, const ScoreMatrix& scores, int kappa) {
    if (kappa < 1) throw InputError("satisfaction: kappa must be at least 1");
    if (static_cast<int>(committee.winners.size()) != kappa)
        throw InputError("satisfaction: committee has " +
                         std::to_string(committee.winners.size()) + " winners but kappa is " +
                         std::to_string(kappa));
    if (!scores.completed)
        throw InputError("satisfaction: score matrix has no completed entries; run factorize first");
    const int m = static_cast<int>(scores.articles.size());
    const int n = static_cast<int>(scores.users.size());
    if (kappa > m)
        throw InputError("satisfaction: kappa exceeds the number of articles");
    if (n == 0) throw InputError("satisfaction: score matrix has no users");

    std::set<int> winner_cols;
    for (const auto& w : committee.winners) {
        int col = scores.col_of(w);
        if (col < 0) throw InputError("satisfaction: winner \"" + w + "\" is not a known article");
        winner_cols.insert(col);
    }

    const Eigen::MatrixXd& full = *scores.completed;
    std::vector<int> order(m);
    double total = 0.0;
    for (int u = 0; u < n; ++u) {
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            if (full(u, a) != full(u, b)) return full(u, a) > full(u, b);
            return scores.articles[a] < scores.articles[b];
        });
        int overlap = 0;
        for (int i = 0; i < kappa; ++i)
            if (winner_cols.count(order[i])) ++overlap;
        total += static_cast<double>(overlap) / kappa;
    }
    return total / n;
}

double reference_bias(const InteractionLog& log, const std::vector<ArticleLabel>& labels) {
    std::map<std::string, Side> side_of;
    for (const auto& l : labels) side_of[l.article_id] = l.label;

    double left_time = 0.0;
    double right_time = 0.0;
    for (const auto& ev : log.events) {
        auto it = side_of.find(ev.article_id);
        if (it == side_of.end()) continue;
        if (it->second == Side::Left) left_time += ev.active_time;
        else if (it->second == Side::Right) right_time += ev.active_time;
    }
    if (right_time <= 0.0)
        throw InputError("reference_bias: no reading time on right-labeled articles; rho undefined");
    if (left_time <= 0.0)
        throw InputError("reference_bias: no reading time on left-labeled articles; rho undefined");
    return left_time / right_time;
}

double bias(long left_count, long right_count, double rho) {
    if (left_count < 0 || right_count < 0)
        throw InputError("bias: seed-word counts cannot be negative");
    if (!std::isfinite(rho) || rho <= 0.0)
        throw InputError("bias: rho must be a positive finite number");
    if (left_count == 0 && right_count == 0)
        throw InputError("bias: no ideological evidence in set");
    const double l = static_cast<double>(left_count);
    const double r = rho * static_cast<double>(right_count);
    return (-l + r) / (l + r);
}

void write_report_csv(const std::vector<FairnessReport>& rows, std::ostream& out) {
    out << "rule,kappa,satisfaction,bias,rho,left_count,right_count\n";
    for (const auto& r : rows) {
        out << rule_name(r.rule) << ',' << r.kappa << ',' << fmt_double(r.satisfaction) << ','
            << fmt_double(r.bias) << ',' << fmt_double(r.rho) << ',' << r.left_count << ','
            << r.right_count << '\n';
    }
}

std::vector<FairnessReport> read_report_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) ||
        trim(line) != "rule,kappa,satisfaction,bias,rho,left_count,right_count")
        throw InputError("report: expected header rule,kappa,satisfaction,bias,rho,left_count,right_count");
    std::vector<FairnessReport> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto parts = split(line, ',');
        if (parts.size() != 7)
            throw InputError("report line " + std::to_string(line_no) + ": expected 7 fields");
        FairnessReport r;
        try {
            r.rule = parse_rule(trim(parts[0]));
            r.kappa = std::stoi(trim(parts[1]));
            r.satisfaction = std::stod(trim(parts[2]));
            r.bias = std::stod(trim(parts[3]));
            r.rho = std::stod(trim(parts[4]));
            r.left_count = std::stol(trim(parts[5]));
            r.right_count = std::stol(trim(parts[6]));
        } catch (const InputError&) {
            throw;
        } catch (const std::exception&) {
            throw InputError("report line " + std::to_string(line_no) + ": malformed field");
        }
        rows.push_back(r);
    }
    return rows;
}

void write_report_markdown(const std::vector<FairnessReport>& rows, std::ostream& out) {
    out << "| Election Method | Satisfaction | Bias |\n";
    out << "|---|---|---|\n";
    char buf[64];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "| %s | %.3f | %.3f |\n", rule_display_name(r.rule),
                      r.satisfaction, r.bias);
        out << buf;
    }
}

}  // namespace voterec
