#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cubic/serialize.hpp"

namespace cubic {

constexpr int kSchemaVersion = 1;

// kind is one of field, unit, class, order, report.
struct CacheEntry {
    int v = kSchemaVersion;
    std::string kind;
    std::string key;
    json payload;
    std::string hash;   // sha256 of payload.dump()

    std::string line() const;
};

std::string content_hash(const json& payload);

// Append-only JSON-Lines store. Sealed segments are segment-NNNNNN.jsonl and
// never change; the writer appends to open.jsonl and seals it by rename.
class Cache {
public:
    enum class Mode { ReadOnly, Write };

    explicit Cache(std::filesystem::path dir, Mode mode = Mode::Write);
    ~Cache();
    Cache(const Cache&) = delete;
    Cache& operator=(const Cache&) = delete;

    // $CUBIC_CACHE_DIR, else ./.cubic-cache
    static std::filesystem::path default_dir();

    const std::filesystem::path& dir() const { return dir_; }

    // nullptr when absent; StaleCache when two entries disagree on the key.
    const json* find(const std::string& kind, const std::string& key) const;
    // Returns false when an identical entry is already present.
    bool put(const std::string& kind, const std::string& key, json payload);
    // entries of a kind whose key starts with prefix, in key order
    std::vector<std::pair<std::string, const json*>> scan(const std::string& kind, const std::string& prefix) const;

    void seal();
    std::size_t size() const { return entries_.size(); }
    std::size_t discarded_lines() const { return discarded_; }

    // one-line-per-entry manifest "kind key hash", sorted; equal manifests
    // mean equal content
    std::string manifest() const;

private:
    struct Slot {
        CacheEntry entry;
        bool conflict = false;
    };
    void load_file(const std::filesystem::path& p);
    void recover_open_segment();
    std::filesystem::path next_segment_path() const;

    std::filesystem::path dir_;
    Mode mode_;
    int lock_fd_ = -1;
    std::FILE* open_ = nullptr;
    std::size_t open_bytes_ = 0;
    std::size_t discarded_ = 0;
    std::map<std::pair<std::string, std::string>, Slot> entries_;
};

} // namespace cubic
