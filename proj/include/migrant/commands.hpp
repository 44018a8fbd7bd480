#ifndef MIGRANT_COMMANDS_HPP
#define MIGRANT_COMMANDS_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "migrant/cache.hpp"
#include "migrant/config.hpp"
#include "migrant/flowmetrics.hpp"
#include "migrant/loader.hpp"
#include "migrant/migration.hpp"
#include "migrant/rankdiversity.hpp"
#include "migrant/report.hpp"
#include "migrant/robustness.hpp"

// The CLI subcommands as library calls. Each writes its report files into
// options.out_dir.

namespace migrant::commands {

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kIo = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::vector<std::string> pairs; // "src:dst"
    std::optional<YearRange> years;
    std::filesystem::path out_dir = ".";
    std::optional<std::size_t> k;
    std::optional<Year> decade_start;
    bool force = false; // ingest: ignore a current cache
};

/// Parses "A..B" (or a single year "A").
inline YearRange parse_years(const std::string& text) {
    auto dots = text.find("..");
    Year a = 0, b = 0;
    bool ok = dots == std::string::npos
                  ? detail::parse_int(text, a) && (b = a, true)
                  : detail::parse_int(std::string_view(text).substr(0, dots), a) &&
                        detail::parse_int(std::string_view(text).substr(dots + 2), b);
    if (!ok || b < a) throw UsageError("invalid year range '" + text + "' (expected A..B)");
    return {a, b};
}

inline std::vector<LanguagePair> resolve_pairs(const CorpusConfig& cfg, const Options& opt) {
    auto known = [&](const std::string& code) {
        for (const auto& l : cfg.languages)
            if (l.code() == code) return l;
        throw UsageError("unknown language '" + code + "'");
    };
    std::vector<LanguagePair> pairs;
    if (opt.pairs.empty()) {
        for (const auto& a : cfg.languages)
            for (const auto& b : cfg.languages)
                if (a != b) pairs.push_back({a, b});
        return pairs;
    }
    for (const auto& p : opt.pairs) {
        auto colon = p.find(':');
        if (colon == std::string::npos) throw UsageError("invalid pair '" + p + "' (expected SRC:DST)");
        LanguagePair lp{known(p.substr(0, colon)), known(p.substr(colon + 1))};
        if (lp.source == lp.receiver) throw UsageError("pair '" + p + "' has identical source and receiver");
        if (std::find(pairs.begin(), pairs.end(), lp) == pairs.end()) pairs.push_back(lp);
    }
    std::sort(pairs.begin(), pairs.end());
    return pairs;
}

inline void write_report(const Options& opt, const std::string& name, const std::string& content) {
    write_atomically(opt.out_dir / name, content);
}

// ---------------------------------------------------------------------------

struct IngestSummary {
    bool cache_hit = false;
    std::size_t lists = 0;
    IngestStats stats;
};

inline IngestSummary cmd_ingest(CorpusConfig cfg, const Options& opt) {
    if (opt.k) cfg.k = *opt.k;
    IngestSummary summary;
    auto fingerprint = input_fingerprint(cfg);
    if (!opt.force && cache_is_current(cfg.cache_dir, fingerprint)) {
        summary.cache_hit = true;
        if (auto m = read_manifest(cfg.cache_dir)) summary.lists = (*m)["lists"].size();
        return summary;
    }
    auto result = load_corpus(cfg);
    write_cache(cfg.cache_dir, result.corpus, cfg, fingerprint);
    summary.lists = result.corpus.list_count();
    summary.stats = std::move(result.stats);
    return summary;
}

/// Loads the cached snapshot, optionally truncated to a smaller K.
inline Corpus load_snapshot(const CorpusConfig& cfg, const Options& opt) {
    Corpus cached = read_cache(cfg.cache_dir);
    if (!opt.k) return cached;
    auto m = read_manifest(cfg.cache_dir);
    std::size_t cached_k = m ? (*m).value("k", std::size_t{0}) : 0;
    if (*opt.k > cached_k) throw UsageError("--k exceeds the cached K (" + std::to_string(cached_k) + "); re-run ingest");
    std::vector<RankedList> lists;
    cached.for_each_list([&](const RankedList& l) {
        std::vector<RankedEntry> entries(l.entries().begin(),
                                         l.entries().begin() + static_cast<std::ptrdiff_t>(std::min(*opt.k, l.size())));
        lists.emplace_back(l.language(), l.year(), std::move(entries));
    });
    return Corpus(std::move(lists));
}

inline MigrantSet detect(const CorpusConfig& cfg, const Corpus& corpus) {
    if (cfg.languages.size() < 2) throw UsageError("migration commands need at least two languages");
    ExclusionList exclusions;
    if (!cfg.exclusion_path.empty()) exclusions = load_exclusions(cfg.exclusion_path);
    return detect_migrants(corpus, exclusions);
}

inline MigrantSet cmd_detect(const CorpusConfig& cfg, const Options& opt) {
    auto corpus = load_snapshot(cfg, opt);
    auto migrants = detect(cfg, corpus);
    write_report(opt, "migrants.tsv", report::migrants_tsv(migrants));
    return migrants;
}

inline std::vector<FlowCount> cmd_nmw(const CorpusConfig& cfg, const Options& opt) {
    auto pairs = resolve_pairs(cfg, opt);
    auto corpus = load_snapshot(cfg, opt);
    auto migrants = detect(cfg, corpus);
    YearRange span = opt.years.value_or(cfg.use_window);
    Year first = opt.decade_start ? Decade::starting(*opt.decade_start).start : Decade::of(span.first).start;
    std::vector<FlowCount> flows;
    for (Year d = first; d <= span.last; d += 10)
        for (const auto& p : pairs) flows.push_back(new_migrant_words(migrants, p.source, p.receiver, Decade{d}));
    write_report(opt, "nmw.csv", report::nmw_csv(flows));
    write_report(opt, "nmw_words.tsv", report::nmw_words_tsv(flows));
    return flows;
}

inline std::vector<UseSeries> cmd_use(const CorpusConfig& cfg, const Options& opt) {
    auto pairs = resolve_pairs(cfg, opt);
    auto corpus = load_snapshot(cfg, opt);
    auto migrants = detect(cfg, corpus);
    YearRange window = opt.years.value_or(cfg.use_window);
    std::vector<UseSeries> series;
    for (const auto& p : pairs) series.push_back(use_series(migrants, corpus, p.source, p.receiver, window));
    write_report(opt, "use.csv", report::use_csv(series));
    write_report(opt, "use.json", report::use_json(series).dump(2) + "\n");
    return series;
}

inline ZipfOptions zipf_options(const CorpusConfig& cfg) {
    ZipfOptions z;
    z.min_rank = cfg.zipf_min_rank;
    z.max_rank = cfg.zipf_max_rank;
    z.drop_head_ties = cfg.zipf_drop_head_ties;
    return z;
}

inline std::vector<ZipfResult> cmd_zipf(const CorpusConfig& cfg, const Options& opt) {
    auto pairs = resolve_pairs(cfg, opt);
    auto corpus = load_snapshot(cfg, opt);
    auto migrants = detect(cfg, corpus);
    YearRange years = opt.years.value_or(YearRange{cfg.use_window.last, cfg.use_window.last});
    auto zopt = zipf_options(cfg);
    std::vector<ZipfResult> results;
    for (const auto& p : pairs)
        for (Year y = years.first; y <= years.last; ++y)
            results.push_back(zipf_curve(migrants, corpus, p.source, p.receiver, y, zopt));
    write_report(opt, "zipf.csv", report::zipf_csv(results));
    write_report(opt, "zipf_fit.json", report::zipf_json(results, zopt).dump(2) + "\n");
    return results;
}

struct DiversityReport {
    std::vector<DiversityCurve> curves;
    std::vector<Outcome<SigmoidFit, FitFailure>> fits;
    Outcome<SigmoidFit, FitFailure> global = FitFailure::TooFewPoints;
};

inline DiversityReport cmd_diversity(const CorpusConfig& cfg, const Options& opt) {
    auto pairs = resolve_pairs(cfg, opt);
    auto corpus = load_snapshot(cfg, opt);
    auto migrants = detect(cfg, corpus);
    YearRange years = opt.years.value_or(cfg.years);
    DiversityReport rep;
    for (const auto& p : pairs) {
        auto occ = rank_occupancy(migrants, corpus, p.source, p.receiver, years);
        if (occ.empty()) continue;
        rep.curves.push_back(diversity(occ));
        rep.fits.push_back(fit_sigmoid(rep.curves.back()));
    }
    rep.global = global_fit(rep.curves);
    write_report(opt, "diversity.csv", report::diversity_csv(rep.curves));
    write_report(opt, "diversity_fit.json", report::diversity_json(rep.curves, rep.fits, rep.global).dump(2) + "\n");
    return rep;
}

inline std::vector<RobustnessResult> cmd_robustness(const CorpusConfig& cfg, const Options& opt) {
    auto pairs = resolve_pairs(cfg, opt);
    auto corpus = load_snapshot(cfg, opt);
    auto migrants = detect(cfg, corpus);
    YearRange window = opt.years.value_or(cfg.use_window);
    auto grid = default_removal_grid();
    std::vector<RobustnessResult> results;
    for (const auto& p : pairs)
        for (auto dir : {Direction::LowestRanksFirst, Direction::HighestRanksFirst})
            results.push_back(robustness_sweep(migrants, corpus, p.source, p.receiver, dir, grid, window,
                                               cfg.robustness_reference_year));
    write_report(opt, "robustness.csv", report::robustness_csv(results));
    write_report(opt, "robustness.json", report::robustness_json(results).dump(2) + "\n");
    return results;
}

} // namespace migrant::commands

#endif // MIGRANT_COMMANDS_HPP
