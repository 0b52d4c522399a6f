#include "cubic/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include <openssl/evp.h>

#include "cubic/errors.hpp"

namespace fs = std::filesystem;

namespace cubic {

namespace {

constexpr std::size_t kRotateBytes = 8u << 20;
const char* kOpenName = "open.jsonl";

bool valid_kind(const std::string& k) {
    return k == "field" || k == "unit" || k == "class" || k == "order" || k == "report";
}

void fsync_path(const fs::path& p) {
    int fd = ::open(p.c_str(), O_RDONLY);
    if (fd >= 0) {
        ::fsync(fd);
        ::close(fd);
    }
}

[[noreturn]] void io_error(const std::string& what, const fs::path& p) {
    throw Error(what + " " + p.string() + ": " + std::strerror(errno));
}

} // namespace

std::string content_hash(const json& payload) {
    std::string s = payload.dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(s.data(), s.size(), md, &len, EVP_sha256(), nullptr) != 1) throw Error("sha256 failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out += hex[md[i] >> 4];
        out += hex[md[i] & 15];
    }
    return out;
}

std::string CacheEntry::line() const {
    json j = {{"v", v}, {"kind", kind}, {"key", key}, {"payload", payload}, {"hash", hash}};
    return j.dump();
}

fs::path Cache::default_dir() {
    const char* env = std::getenv("CUBIC_CACHE_DIR");
    if (env && *env) return fs::path(env);
    return fs::path(".cubic-cache");
}

Cache::Cache(fs::path dir, Mode mode) : dir_(std::move(dir)), mode_(mode) {
    if (mode_ == Mode::Write) {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec) throw Error("cannot create cache directory " + dir_.string() + ": " + ec.message());
        fs::path lock = dir_ / "writer.lock";
        lock_fd_ = ::open(lock.c_str(), O_RDWR | O_CREAT, 0644);
        if (lock_fd_ < 0) io_error("cannot open", lock);
        if (::flock(lock_fd_, LOCK_EX | LOCK_NB) != 0) {
            ::close(lock_fd_);
            throw Error("cache " + dir_.string() + " is in use by another writer");
        }
        recover_open_segment();
    } else if (!fs::is_directory(dir_)) {
        return;   // an absent cache reads as empty
    }
    std::vector<fs::path> segs;
    for (const auto& de : fs::directory_iterator(dir_)) {
        std::string n = de.path().filename().string();
        if (n.rfind("segment-", 0) == 0 && de.path().extension() == ".jsonl") segs.push_back(de.path());
    }
    std::sort(segs.begin(), segs.end());
    for (const auto& s : segs) load_file(s);
    if (mode_ == Mode::ReadOnly && fs::exists(dir_ / kOpenName)) load_file(dir_ / kOpenName);
}

Cache::~Cache() {
    try {
        seal();
    } catch (...) {
    }
    if (lock_fd_ >= 0) {
        ::flock(lock_fd_, LOCK_UN);
        ::close(lock_fd_);
    }
}

void Cache::load_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) io_error("cannot read", p);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("v") || !j.contains("kind") || !j.contains("key") ||
            !j.contains("payload") || !j.contains("hash")) {
            ++discarded_;   // truncated or damaged line
            continue;
        }
        CacheEntry e;
        e.v = j["v"].get<int>();
        if (e.v != kSchemaVersion)
            throw StaleCache("cache entry in " + p.string() + " has schema version " + std::to_string(e.v));
        e.kind = j["kind"].get<std::string>();
        e.key = j["key"].get<std::string>();
        e.payload = std::move(j["payload"]);
        e.hash = j["hash"].get<std::string>();
        if (!valid_kind(e.kind) || content_hash(e.payload) != e.hash) {
            ++discarded_;
            continue;
        }
        auto k = std::make_pair(e.kind, e.key);
        auto it = entries_.find(k);
        if (it == entries_.end()) {
            entries_.emplace(k, Slot{std::move(e), false});
        } else if (it->second.entry.hash != e.hash) {
            it->second.conflict = true;
        }
    }
}

fs::path Cache::next_segment_path() const {
    unsigned long mx = 0;
    for (const auto& de : fs::directory_iterator(dir_)) {
        std::string n = de.path().filename().string();
        if (n.rfind("segment-", 0) == 0 && de.path().extension() == ".jsonl")
            mx = std::max(mx, std::stoul(n.substr(8, n.size() - 8 - 6)));
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "segment-%06lu.jsonl", mx + 1);
    return dir_ / buf;
}

// A writer that was killed leaves open.jsonl behind, possibly ending in a
// partial line. Its complete lines are sealed into a fresh segment.
void Cache::recover_open_segment() {
    fs::path open_path = dir_ / kOpenName;
    if (!fs::exists(open_path)) return;
    std::ifstream in(open_path, std::ios::binary);
    std::string line, good;
    while (std::getline(in, line)) {
        if (in.eof()) break;   // no trailing newline: partial write
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("payload") || !j.contains("hash") ||
            content_hash(j["payload"]) != j["hash"].get<std::string>())
            continue;
        good += line + "\n";
    }
    in.close();
    if (!good.empty()) {
        fs::path seg = next_segment_path();
        fs::path tmp = seg;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            out << good;
            if (!out.flush()) io_error("cannot write", tmp);
        }
        fsync_path(tmp);
        fs::rename(tmp, seg);
    }
    fs::remove(open_path);
}

const json* Cache::find(const std::string& kind, const std::string& key) const {
    auto it = entries_.find({kind, key});
    if (it == entries_.end()) return nullptr;
    if (it->second.conflict) throw StaleCache("cache holds conflicting entries for " + kind + " " + key);
    return &it->second.entry.payload;
}

bool Cache::put(const std::string& kind, const std::string& key, json payload) {
    if (mode_ != Mode::Write) throw Error("cache " + dir_.string() + " is opened read-only");
    if (!valid_kind(kind)) throw InvalidInput("unknown cache entry kind " + kind);
    CacheEntry e;
    e.kind = kind;
    e.key = key;
    e.payload = std::move(payload);
    e.hash = content_hash(e.payload);
    auto k = std::make_pair(kind, key);
    auto it = entries_.find(k);
    if (it != entries_.end()) {
        if (it->second.entry.hash == e.hash) return false;
        throw StaleCache("recomputed " + kind + " " + key + " differs from the cached entry");
    }
    if (!open_) {
        fs::path p = dir_ / kOpenName;
        open_ = std::fopen(p.c_str(), "ab");
        if (!open_) io_error("cannot open", p);
        open_bytes_ = 0;
    }
    std::string l = e.line() + "\n";
    if (std::fwrite(l.data(), 1, l.size(), open_) != l.size() || std::fflush(open_) != 0)
        io_error("cannot append to", dir_ / kOpenName);
    open_bytes_ += l.size();
    entries_.emplace(k, Slot{std::move(e), false});
    if (open_bytes_ >= kRotateBytes) seal();
    return true;
}

std::vector<std::pair<std::string, const json*>> Cache::scan(const std::string& kind, const std::string& prefix) const {
    std::vector<std::pair<std::string, const json*>> out;
    for (auto it = entries_.lower_bound({kind, prefix}); it != entries_.end(); ++it) {
        if (it->first.first != kind || it->first.second.rfind(prefix, 0) != 0) break;
        if (it->second.conflict) throw StaleCache("cache holds conflicting entries for " + kind + " " + it->first.second);
        out.emplace_back(it->first.second, &it->second.entry.payload);
    }
    return out;
}

void Cache::seal() {
    if (!open_) return;
    ::fsync(fileno(open_));
    std::fclose(open_);
    open_ = nullptr;
    fs::path seg = next_segment_path();
    fs::rename(dir_ / kOpenName, seg);
    fsync_path(dir_);
}

std::string Cache::manifest() const {
    std::string out;
    for (const auto& [k, s] : entries_) out += k.first + " " + k.second + " " + s.entry.hash + "\n";
    return out;
}

} // namespace cubic
