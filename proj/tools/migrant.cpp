// migrant: ingest yearly 1-gram shards and report migrant-word statistics.

#include <cstdio>
#include <iostream>

#include <CLI11.hpp>

#include "migrant/commands.hpp"

namespace cmd = migrant::commands;

namespace {

struct Args {
    std::string config;
    std::vector<std::string> pairs;
    std::string years;
    std::string out = ".";
    std::size_t k = 0;
    int decade_start = 0;
    bool force = false;
};

cmd::Options to_options(const Args& a, const CLI::App& sub) {
    cmd::Options opt;
    opt.pairs = a.pairs;
    if (!a.years.empty()) opt.years = cmd::parse_years(a.years);
    opt.out_dir = a.out;
    if (sub.count("--k")) {
        if (a.k < 1) throw cmd::UsageError("--k must be at least 1");
        opt.k = a.k;
    }
    if (sub.count("--decade-start")) opt.decade_start = a.decade_start;
    opt.force = a.force;
    return opt;
}

int run(const std::string& name, const migrant::CorpusConfig& cfg, const cmd::Options& opt) {
    if (name == "ingest") {
        auto s = cmd::cmd_ingest(cfg, opt);
        if (s.cache_hit) {
            std::cerr << "ingest: cache up to date (" << s.lists << " lists)\n";
            return cmd::kOk;
        }
        std::cerr << "ingest: " << s.lists << " lists, " << s.stats.records << " records, "
                  << s.stats.skipped_tokens << " rejected tokens, " << s.stats.out_of_range
                  << " out-of-range records, " << s.stats.parse_errors.size() << " malformed lines\n";
        for (const auto& issue : s.stats.parse_errors)
            std::cerr << "  " << issue.file << ":" << issue.error.line << ": " << issue.error.message << "\n";
        return cmd::kOk;
    }
    if (name == "detect") {
        auto m = cmd::cmd_detect(cfg, opt);
        std::cerr << "detect: " << m.size() << " migrant words\n";
    } else if (name == "nmw") {
        cmd::cmd_nmw(cfg, opt);
    } else if (name == "use") {
        cmd::cmd_use(cfg, opt);
    } else if (name == "zipf") {
        cmd::cmd_zipf(cfg, opt);
    } else if (name == "diversity") {
        cmd::cmd_diversity(cfg, opt);
    } else if (name == "robustness") {
        cmd::cmd_robustness(cfg, opt);
    }
    return cmd::kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Migrant-word flow statistics from yearly ranked word lists"};
    app.require_subcommand(1);

    Args args;
    const std::vector<std::pair<std::string, std::string>> subcommands = {
        {"ingest", "Build the ranked-list cache from the configured shards"},
        {"detect", "Detect migrant words and write migrants.tsv"},
        {"nmw", "New migrant words per decade (nmw.csv, nmw_words.tsv)"},
        {"use", "Use series per pair (use.csv, use.json)"},
        {"zipf", "Frequency-rank curves of accumulated migrants (zipf.csv, zipf_fit.json)"},
        {"diversity", "Rank diversity and sigmoid fits (diversity.csv, diversity_fit.json)"},
        {"robustness", "Elimination sweeps (robustness.csv, robustness.json)"},
    };
    for (const auto& [name, help] : subcommands) {
        auto* sub = app.add_subcommand(name, help);
        sub->add_option("--config", args.config, "Config file (JSON)")->required();
        sub->add_option("--pair", args.pairs, "Language pair SRC:DST (repeatable)");
        sub->add_option("--years", args.years, "Year range A..B");
        sub->add_option("--out", args.out, "Output directory");
        sub->add_option("--k", args.k, "Override the top-K cutoff");
        sub->add_option("--decade-start", args.decade_start, "First decade for nmw");
        if (name == "ingest") sub->add_flag("--force", args.force, "Rebuild even if the cache is current");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? cmd::kOk : cmd::kUsage;
    }

    const CLI::App* sub = app.get_subcommands().front();
    try {
        auto opt = to_options(args, *sub);
        auto cfg = migrant::load_config(args.config);
        return run(sub->get_name(), cfg, opt);
    } catch (const cmd::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return cmd::kUsage;
    } catch (const migrant::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return cmd::kUsage;
    } catch (const migrant::IoError& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return cmd::kIo;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return cmd::kIo;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cmd::kFailure;
    }
}
