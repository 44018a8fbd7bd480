#ifndef MIGRANT_CACHE_HPP
#define MIGRANT_CACHE_HPP

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include <json.hpp>

#include "migrant/config.hpp"
#include "migrant/corpus.hpp"
#include "migrant/loader.hpp"

// Ranked-list cache: <dir>/<lang>/<year>.tsv holding `rank TAB word TAB
// frequency`, plus <dir>/manifest.json recording the input fingerprint.

namespace migrant {

namespace fs = std::filesystem;

class Fnv1a {
  public:
    void update(std::string_view s) {
        for (unsigned char c : s) {
            hash_ ^= c;
            hash_ *= 0x100000001b3ULL;
        }
        // separator so that ("ab","c") and ("a","bc") differ
        hash_ ^= 0xFF;
        hash_ *= 0x100000001b3ULL;
    }
    void update(std::uint64_t v) { update(std::to_string(v)); }
    std::uint64_t digest() const noexcept { return hash_; }
    std::string hex() const {
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
        return buf;
    }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

/// Fingerprint of everything that determines the ranked lists: parameters,
/// stopword contents, and each shard's path, size and modification time.
inline std::string input_fingerprint(const CorpusConfig& cfg) {
    Fnv1a h;
    h.update("migrant-cache-v1");
    h.update(static_cast<std::uint64_t>(cfg.k));
    h.update(std::to_string(cfg.years.first) + ".." + std::to_string(cfg.years.last));
    for (const auto& lang : cfg.languages) {
        h.update(lang.code());
        if (auto it = cfg.stopword_paths.find(lang); it != cfg.stopword_paths.end()) {
            std::ifstream in(it->second, std::ios::binary);
            std::stringstream ss;
            ss << in.rdbuf();
            h.update(ss.str());
        }
        for (const auto& file : expand_shards(cfg.shard_globs.at(lang))) {
            h.update(file);
            h.update(static_cast<std::uint64_t>(fs::file_size(file)));
            h.update(static_cast<std::uint64_t>(fs::last_write_time(file).time_since_epoch().count()));
        }
    }
    return h.hex();
}

inline fs::path cache_file(const fs::path& dir, const LanguageId& lang, Year year) {
    return dir / lang.code() / (std::to_string(year) + ".tsv");
}

/// Writes `content` to `path` via a temporary file and rename.
inline void write_atomically(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot write " + tmp.string());
        out << content;
        out.flush();
        if (!out) throw IoError("write failed: " + tmp.string());
    }
    fs::rename(tmp, path);
}

inline std::string serialize_ranked_list(const RankedList& list) {
    std::string out;
    for (const auto& e : list.entries()) {
        out += std::to_string(e.rank);
        out += '\t';
        out += e.word;
        out += '\t';
        out += std::to_string(e.frequency);
        out += '\n';
    }
    return out;
}

inline RankedList parse_ranked_list(std::istream& in, const LanguageId& lang, Year year, const std::string& origin) {
    std::vector<RankedEntry> entries;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        auto t1 = line.find('\t');
        auto t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
        RankedEntry e;
        if (t2 == std::string::npos || !detail::parse_int(std::string_view(line).substr(0, t1), e.rank) ||
            !detail::parse_int(std::string_view(line).substr(t2 + 1), e.frequency))
            throw IoError("malformed cache line " + std::to_string(line_no) + " in " + origin);
        e.word = line.substr(t1 + 1, t2 - t1 - 1);
        entries.push_back(std::move(e));
    }
    return RankedList(lang, year, std::move(entries));
}

/// Writes every list and then the manifest (last, so a crash leaves no manifest
/// pointing at missing files).
inline void write_cache(const fs::path& dir, const Corpus& corpus, const CorpusConfig& cfg,
                        const std::string& fingerprint) {
    nlohmann::json manifest;
    manifest["fingerprint"] = fingerprint;
    manifest["k"] = cfg.k;
    manifest["year_min"] = cfg.years.first;
    manifest["year_max"] = cfg.years.last;
    nlohmann::json langs = nlohmann::json::array();
    for (const auto& l : cfg.languages) langs.push_back(l.code());
    manifest["languages"] = langs;
    nlohmann::json lists = nlohmann::json::array();
    corpus.for_each_list([&](const RankedList& list) {
        write_atomically(cache_file(dir, list.language(), list.year()), serialize_ranked_list(list));
        lists.push_back({{"language", list.language().code()}, {"year", list.year()}, {"entries", list.size()}});
    });
    manifest["lists"] = lists;
    write_atomically(dir / "manifest.json", manifest.dump(2) + "\n");
}

inline std::optional<nlohmann::json> read_manifest(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) return std::nullopt;
    try {
        nlohmann::json m;
        in >> m;
        return m;
    } catch (const nlohmann::json::exception&) {
        return std::nullopt;
    }
}

inline bool cache_is_current(const fs::path& dir, const std::string& fingerprint) {
    auto m = read_manifest(dir);
    return m && m->value("fingerprint", std::string()) == fingerprint;
}

/// Loads the snapshot recorded in the manifest.
inline Corpus read_cache(const fs::path& dir) {
    auto m = read_manifest(dir);
    if (!m) throw IoError("no ranked-list cache at " + dir.string() + " (run `ingest` first)");
    std::vector<RankedList> lists;
    for (const auto& item : (*m)["lists"]) {
        LanguageId lang(item.at("language").get<std::string>());
        Year year = item.at("year").get<Year>();
        auto path = cache_file(dir, lang, year);
        std::ifstream in(path);
        if (!in) throw IoError("missing cache file: " + path.string());
        lists.push_back(parse_ranked_list(in, lang, year, path.string()));
    }
    return Corpus(std::move(lists));
}

} // namespace migrant

#endif // MIGRANT_CACHE_HPP
