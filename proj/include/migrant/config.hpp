#ifndef MIGRANT_CONFIG_HPP
#define MIGRANT_CONFIG_HPP

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "migrant/types.hpp"

namespace migrant {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CorpusConfig {
    std::vector<LanguageId> languages;
    std::map<LanguageId, std::vector<std::string>> shard_globs;
    YearRange years{1740, 2009};
    std::size_t k = 5000;
    std::map<LanguageId, std::string> stopword_paths;
    std::string exclusion_path;
    std::string cache_dir = "cache";
    YearRange use_window{1900, 2009};
    // Years before use_window.first that only serve to accumulate migrants.
    YearRange buildup_window{1740, 1899};

    // Zipf slope fit: first rank fitted, optional last rank (0 = all).
    int zipf_min_rank = 3;
    int zipf_max_rank = 0;
    bool zipf_drop_head_ties = true;

    // Receiver list year that orders words for robustness elimination;
    // 0 means use_window.last.
    Year robustness_reference_year = 0;

    void validate() const {
        if (years.empty()) throw ConfigError("year_min must not exceed year_max");
        if (k < 1) throw ConfigError("k must be at least 1");
        if (use_window.empty()) throw ConfigError("use_window is empty");
        for (const auto& lang : languages)
            if (!shard_globs.count(lang)) throw ConfigError("no shards configured for language '" + lang.code() + "'");
    }
};

namespace detail {

inline std::string resolve_path(const std::filesystem::path& base, const std::string& p) {
    if (p.empty()) return p;
    std::filesystem::path path(p);
    return path.is_absolute() ? p : (base / path).lexically_normal().string();
}

inline YearRange parse_window(const nlohmann::json& j, const char* key) {
    if (!j.is_array() || j.size() != 2) throw ConfigError(std::string(key) + " must be [first, last]");
    return {j[0].get<Year>(), j[1].get<Year>()};
}

} // namespace detail

/// Parses the JSON config document. Relative paths resolve against `base_dir`.
inline CorpusConfig parse_config(const nlohmann::json& doc, const std::filesystem::path& base_dir) {
    CorpusConfig cfg;
    try {
        for (const auto& code : doc.at("languages")) cfg.languages.emplace_back(code.get<std::string>());
        for (const auto& [code, globs] : doc.at("shards").items()) {
            auto& dst = cfg.shard_globs[LanguageId(code)];
            if (globs.is_string())
                dst.push_back(detail::resolve_path(base_dir, globs.get<std::string>()));
            else
                for (const auto& g : globs) dst.push_back(detail::resolve_path(base_dir, g.get<std::string>()));
        }
        if (doc.contains("year_min")) cfg.years.first = doc["year_min"].get<Year>();
        if (doc.contains("year_max")) cfg.years.last = doc["year_max"].get<Year>();
        if (doc.contains("k")) {
            auto k = doc["k"].get<long long>();
            if (k < 1) throw ConfigError("k must be at least 1");
            cfg.k = static_cast<std::size_t>(k);
        }
        if (doc.contains("stopwords"))
            for (const auto& [code, path] : doc["stopwords"].items())
                cfg.stopword_paths[LanguageId(code)] = detail::resolve_path(base_dir, path.get<std::string>());
        if (doc.contains("exclusions"))
            cfg.exclusion_path = detail::resolve_path(base_dir, doc["exclusions"].get<std::string>());
        if (doc.contains("cache_dir")) cfg.cache_dir = doc["cache_dir"].get<std::string>();
        cfg.cache_dir = detail::resolve_path(base_dir, cfg.cache_dir);
        if (doc.contains("use_window")) cfg.use_window = detail::parse_window(doc["use_window"], "use_window");
        if (doc.contains("buildup_window"))
            cfg.buildup_window = detail::parse_window(doc["buildup_window"], "buildup_window");
        if (doc.contains("zipf")) {
            const auto& z = doc["zipf"];
            cfg.zipf_min_rank = z.value("min_rank", cfg.zipf_min_rank);
            cfg.zipf_max_rank = z.value("max_rank", cfg.zipf_max_rank);
            cfg.zipf_drop_head_ties = z.value("drop_head_ties", cfg.zipf_drop_head_ties);
        }
        if (doc.contains("robustness"))
            cfg.robustness_reference_year = doc["robustness"].value("reference_year", 0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

/// Reads a config file. MIGRANT_CACHE_DIR, when set, replaces cache_dir.
inline CorpusConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file: " + path);
    nlohmann::json doc;
    try {
        in >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("config " + path + ": " + e.what());
    }
    auto base = std::filesystem::absolute(path).parent_path();
    CorpusConfig cfg = parse_config(doc, base);
    if (const char* env = std::getenv("MIGRANT_CACHE_DIR"); env && *env) cfg.cache_dir = env;
    return cfg;
}

} // namespace migrant

#endif // MIGRANT_CONFIG_HPP
