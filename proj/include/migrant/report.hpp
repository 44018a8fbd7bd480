#ifndef MIGRANT_REPORT_HPP
#define MIGRANT_REPORT_HPP

#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "migrant/flowmetrics.hpp"
#include "migrant/migration.hpp"
#include "migrant/rankdiversity.hpp"
#include "migrant/robustness.hpp"

// Plot-ready report text. Every writer is a pure function of its input so that
// identical inputs give identical bytes.

namespace migrant::report {

/// Six significant digits.
inline std::string fmt6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline std::string migrants_tsv(const MigrantSet& migrants) {
    std::string out = "word\tsource\tsource_year\tsource_rank\treceiver\treceiver_year\tambiguous\n";
    for (const auto& m : migrants.words()) {
        for (const auto& [receiver, year] : m.receivers) {
            out += m.word + '\t' + m.source.code() + '\t' + std::to_string(m.source_first.year) + '\t' +
                   std::to_string(m.source_first.rank) + '\t' + receiver.code() + '\t' + std::to_string(year) + '\t' +
                   (m.ambiguous_source ? "true" : "false") + '\n';
        }
    }
    return out;
}

inline std::string nmw_csv(const std::vector<FlowCount>& flows) {
    std::string out = "decade,source,receiver,count\n";
    for (const auto& f : flows)
        out += std::to_string(f.decade.start) + ',' + f.source.code() + ',' + f.receiver.code() + ',' +
               std::to_string(f.count) + '\n';
    return out;
}

inline std::string nmw_words_tsv(const std::vector<FlowCount>& flows) {
    std::string out = "decade\tsource\treceiver\tword\n";
    for (const auto& f : flows)
        for (const auto& w : f.words)
            out += std::to_string(f.decade.start) + '\t' + f.source.code() + '\t' + f.receiver.code() + '\t' + w + '\n';
    return out;
}

/// Gap years are written with an empty use field.
inline std::string use_csv(const std::vector<UseSeries>& series) {
    std::string out = "source,receiver,year,use\n";
    for (const auto& s : series) {
        std::vector<std::pair<Year, std::string>> rows;
        for (const auto& [y, u] : s.points) rows.emplace_back(y, fmt6(u));
        for (const auto& [y, _] : s.gaps) rows.emplace_back(y, "");
        std::sort(rows.begin(), rows.end());
        for (const auto& [y, u] : rows)
            out += s.pair.source.code() + ',' + s.pair.receiver.code() + ',' + std::to_string(y) + ',' + u + '\n';
    }
    return out;
}

inline nlohmann::json use_json(const std::vector<UseSeries>& series) {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& s : series) {
        nlohmann::json points = nlohmann::json::array();
        for (const auto& [y, u] : s.points) points.push_back({{"year", y}, {"use", u}});
        nlohmann::json gaps = nlohmann::json::array();
        for (const auto& [y, g] : s.gaps) gaps.push_back({{"year", y}, {"reason", to_string(g)}});
        doc.push_back({{"source", s.pair.source.code()},
                       {"receiver", s.pair.receiver.code()},
                       {"points", points},
                       {"gaps", gaps}});
    }
    return doc;
}

inline std::string zipf_csv(const std::vector<ZipfResult>& results) {
    std::string out = "source,receiver,year,rank,frequency\n";
    for (const auto& r : results)
        for (const auto& p : r.curve.points)
            out += r.curve.pair.source.code() + ',' + r.curve.pair.receiver.code() + ',' +
                   std::to_string(r.curve.year) + ',' + std::to_string(p.rank) + ',' + std::to_string(p.frequency) +
                   '\n';
    return out;
}

inline nlohmann::json zipf_json(const std::vector<ZipfResult>& results, const ZipfOptions& opt) {
    nlohmann::json doc;
    doc["options"] = {{"min_rank", opt.min_rank},
                      {"max_rank", opt.max_rank},
                      {"drop_head_ties", opt.drop_head_ties},
                      {"min_words", opt.min_words}};
    nlohmann::json fits = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json f = {{"source", r.curve.pair.source.code()},
                            {"receiver", r.curve.pair.receiver.code()},
                            {"year", r.curve.year},
                            {"words", r.curve.points.size()}};
        if (r.fit) {
            f["slope"] = r.fit->slope;
            f["intercept"] = r.fit->intercept;
            f["r_squared"] = r.fit->r_squared;
            f["fit_range"] = {r.fit->first_rank, r.fit->last_rank};
            f["n_points"] = r.fit->n_points;
        } else {
            f["no_fit"] = to_string(r.fit.error());
        }
        fits.push_back(f);
    }
    doc["fits"] = fits;
    return doc;
}

inline std::string diversity_csv(const std::vector<DiversityCurve>& curves) {
    std::string out = "source,receiver,rank,diversity\n";
    for (const auto& c : curves)
        for (const auto& p : c.points)
            out += c.pair.source.code() + ',' + c.pair.receiver.code() + ',' + std::to_string(p.rank) + ',' +
                   fmt6(p.diversity) + '\n';
    return out;
}

inline nlohmann::json sigmoid_json(const Outcome<SigmoidFit, FitFailure>& fit) {
    if (!fit) return {{"fit_failure", to_string(fit.error())}};
    return {{"mu", fit->mu},
            {"sigma", fit->sigma},
            {"r_squared", fit->r_squared},
            {"n_points", fit->n_points},
            {"seed_mu", fit->seed_mu},
            {"seed_sigma", fit->seed_sigma},
            {"iterations", fit->iterations}};
}

inline nlohmann::json diversity_json(const std::vector<DiversityCurve>& curves,
                                     const std::vector<Outcome<SigmoidFit, FitFailure>>& fits,
                                     const Outcome<SigmoidFit, FitFailure>& global) {
    nlohmann::json doc;
    doc["method"] = {{"transform", "probit"},
                     {"clipping", "clip d to [1/(2T), 1-1/(2T)]; clipped points seed only"},
                     {"regression", "least-squares seed, then reweighted by phi(z)^2"}};
    nlohmann::json pairs = nlohmann::json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
        auto f = sigmoid_json(fits[i]);
        f["source"] = curves[i].pair.source.code();
        f["receiver"] = curves[i].pair.receiver.code();
        f["time_slots"] = curves[i].time_slots;
        f["clip_epsilon"] = clip_epsilon(curves[i].time_slots);
        pairs.push_back(f);
    }
    doc["pairs"] = pairs;
    doc["global"] = sigmoid_json(global);
    return doc;
}

inline std::string robustness_csv(const std::vector<RobustnessResult>& results) {
    std::string out = "source,receiver,direction,removal_proportion,avg_distance\n";
    for (const auto& r : results)
        for (const auto& p : r.points)
            out += r.pair.source.code() + ',' + r.pair.receiver.code() + ',' + to_string(r.direction) + ',' +
                   fmt6(p.proportion) + ',' + fmt6(p.avg_distance) + '\n';
    return out;
}

inline nlohmann::json robustness_json(const std::vector<RobustnessResult>& results) {
    nlohmann::json doc;
    doc["elimination_order"] = "receiver list rank in reference year; absent words by peak frequency";
    doc["removal_count"] = "ceil(R_p * m), at least one word kept";
    nlohmann::json pairs = nlohmann::json::array();
    for (const auto& r : results) {
        nlohmann::json j = {{"source", r.pair.source.code()},
                            {"receiver", r.pair.receiver.code()},
                            {"direction", to_string(r.direction)},
                            {"reference_year", r.reference_year},
                            {"years_compared", r.years_compared},
                            {"words", r.words}};
        if (!r.degenerate_reason.empty()) j["degenerate"] = r.degenerate_reason;
        nlohmann::json skipped = nlohmann::json::array();
        for (const auto& [rp, why] : r.skipped) skipped.push_back({{"removal_proportion", rp}, {"reason", why}});
        j["skipped"] = skipped;
        nlohmann::json clamped = nlohmann::json::array();
        for (const auto& p : r.points)
            if (p.clamped) clamped.push_back(p.proportion);
        j["clamped"] = clamped;
        pairs.push_back(j);
    }
    doc["pairs"] = pairs;
    return doc;
}

} // namespace migrant::report

#endif // MIGRANT_REPORT_HPP
