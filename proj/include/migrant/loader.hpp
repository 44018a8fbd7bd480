#ifndef MIGRANT_LOADER_HPP
#define MIGRANT_LOADER_HPP

#include <glob.h>
#include <zlib.h>

#include <algorithm>
#include <filesystem>
#include <future>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "migrant/config.hpp"
#include "migrant/corpus.hpp"
#include "migrant/ingest.hpp"

namespace migrant {

/// Line reader over a gzip or plain-text file.
class ShardReader {
  public:
    explicit ShardReader(const std::string& path) : path_(path), file_(gzopen(path.c_str(), "rb")) {
        if (!file_) throw IoError("cannot open shard: " + path);
        gzbuffer(file_, 1 << 17);
    }
    ~ShardReader() {
        if (file_) gzclose(file_);
    }
    ShardReader(const ShardReader&) = delete;
    ShardReader& operator=(const ShardReader&) = delete;

    /// Reads the next line without its terminator. Returns false at EOF.
    bool next_line(std::string& line) {
        line.clear();
        char buf[8192];
        while (gzgets(file_, buf, sizeof buf)) {
            std::size_t len = std::char_traits<char>::length(buf);
            line.append(buf, len);
            if (len > 0 && buf[len - 1] == '\n') {
                line.pop_back();
                return true;
            }
        }
        int err = 0;
        const char* msg = gzerror(file_, &err);
        if (err != Z_OK && err != Z_BUF_ERROR) throw IoError("error reading shard " + path_ + ": " + msg);
        return !line.empty();
    }

  private:
    std::string path_;
    gzFile file_;
};

/// Expands shard patterns to a sorted, de-duplicated file list. A pattern
/// with no matches is an error naming the pattern.
inline std::vector<std::string> expand_shards(const std::vector<std::string>& patterns) {
    std::vector<std::string> files;
    for (const auto& pattern : patterns) {
        glob_t g{};
        int rc = ::glob(pattern.c_str(), 0, nullptr, &g);
        if (rc == GLOB_NOMATCH || (rc == 0 && g.gl_pathc == 0)) {
            globfree(&g);
            throw IoError("shard path not found: " + pattern);
        }
        if (rc != 0) {
            globfree(&g);
            throw IoError("cannot expand shard pattern: " + pattern);
        }
        for (std::size_t i = 0; i < g.gl_pathc; ++i) files.emplace_back(g.gl_pathv[i]);
        globfree(&g);
    }
    std::sort(files.begin(), files.end());
    files.erase(std::unique(files.begin(), files.end()), files.end());
    return files;
}

struct ShardIssue {
    std::string file;
    ParseError error;
};

struct IngestStats {
    std::size_t lines = 0;
    std::size_t records = 0;
    std::size_t skipped_tokens = 0;
    std::size_t out_of_range = 0;
    std::vector<ShardIssue> parse_errors;

    IngestStats& operator+=(const IngestStats& o) {
        lines += o.lines;
        records += o.records;
        skipped_tokens += o.skipped_tokens;
        out_of_range += o.out_of_range;
        parse_errors.insert(parse_errors.end(), o.parse_errors.begin(), o.parse_errors.end());
        return *this;
    }
};

struct LanguageIngest {
    std::vector<RankedList> lists;
    IngestStats stats;
};

/// Streams every shard of one language and builds its per-year lists.
inline LanguageIngest ingest_language(const LanguageId& lang, const std::vector<std::string>& files,
                                      const StopwordSet& stopwords, YearRange years, std::size_t k) {
    LanguageIngest out;
    std::map<Year, RankedListBuilder> builders;
    std::string line;
    for (const auto& file : files) {
        ShardReader reader(file);
        std::size_t line_no = 0;
        while (reader.next_line(line)) {
            ++line_no;
            ++out.stats.lines;
            auto parsed = parse_shard_line(line, line_no);
            if (auto* err = std::get_if<ParseError>(&parsed)) {
                out.stats.parse_errors.push_back({file, std::move(*err)});
                continue;
            }
            if (std::holds_alternative<SkippedLine>(parsed)) {
                ++out.stats.skipped_tokens;
                continue;
            }
            auto& rec = std::get<NgramRecord>(parsed);
            if (!years.contains(rec.year)) {
                ++out.stats.out_of_range;
                continue;
            }
            ++out.stats.records;
            builders[rec.year].add(rec);
        }
    }
    for (auto& [year, builder] : builders) out.lists.push_back(std::move(builder).finish(lang, year, stopwords, k));
    return out;
}

struct IngestResult {
    Corpus corpus;
    IngestStats stats;
};

inline StopwordSet stopwords_for(const CorpusConfig& cfg, const LanguageId& lang) {
    auto it = cfg.stopword_paths.find(lang);
    if (it == cfg.stopword_paths.end()) return StopwordSet(lang, {});
    return load_stopwords(it->second, lang);
}

/// Ingests all configured languages (concurrently, one task per language).
inline IngestResult load_corpus(const CorpusConfig& cfg) {
    cfg.validate();
    std::vector<std::pair<std::vector<std::string>, StopwordSet>> inputs;
    for (const auto& lang : cfg.languages)
        inputs.emplace_back(expand_shards(cfg.shard_globs.at(lang)), stopwords_for(cfg, lang));

    std::vector<std::future<LanguageIngest>> tasks;
    for (std::size_t i = 0; i < cfg.languages.size(); ++i) {
        tasks.push_back(std::async(std::launch::async, [&, i] {
            return ingest_language(cfg.languages[i], inputs[i].first, inputs[i].second, cfg.years, cfg.k);
        }));
    }
    IngestResult result;
    std::vector<RankedList> lists;
    for (auto& t : tasks) {
        auto part = t.get();
        result.stats += part.stats;
        for (auto& l : part.lists) lists.push_back(std::move(l));
    }
    result.corpus = Corpus(std::move(lists));
    return result;
}

} // namespace migrant

#endif // MIGRANT_LOADER_HPP
