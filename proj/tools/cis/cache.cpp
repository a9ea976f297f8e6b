#include "cis/cache.hpp"

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

namespace cis::cli {

namespace fs = std::filesystem;

fs::path ResultCache::default_dir() {
    if (const char* env = std::getenv("CIS_CACHE_DIR"); env && *env) return fs::path(env);
    return fs::path(".cis-cache");
}

ResultCache::ResultCache(fs::path dir, std::ostream* warnings) : dir_(std::move(dir)), warn_(warnings) {}

std::string ResultCache::key(const std::string& quantity, const Json& params, const std::string& version) {
    return quantity + "|" + params.dump() + "|" + version;
}

fs::path ResultCache::path_for(const std::string& key) const {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : key) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream name;
    name << std::hex << std::setw(16) << std::setfill('0') << h << ".json";
    return dir_ / name.str();
}

std::optional<ResultRecord> ResultCache::load(const std::string& quantity, const Json& params) const {
    const std::string k = key(quantity, params);
    const fs::path p = path_for(k);
    std::error_code ec;
    if (!fs::exists(p, ec)) return std::nullopt;
    try {
        std::ifstream in(p);
        Json j = Json::parse(in);
        if (j.value("key", "") != k) return std::nullopt;
        ResultRecord r = record_from_json(j.at("record"));
        r.meta.cached = true;
        return r;
    } catch (const std::exception& e) {
        if (warn_) *warn_ << "warning: ignoring corrupt cache entry " << p.string() << ": " << e.what() << '\n';
        return std::nullopt;
    }
}

void ResultCache::store(const ResultRecord& record) const {
    const std::string k = key(record.quantity, record.params);
    const fs::path p = path_for(k);
    std::error_code ec;
    fs::create_directories(dir_, ec);
    Json j;
    j["key"] = k;
    ResultRecord copy = record;
    copy.meta.cached = false;
    j["record"] = to_json(copy);
    std::random_device rd;
    fs::path tmp = p;
    tmp += ".tmp" + std::to_string(rd());
    {
        std::ofstream out(tmp);
        if (!out) {
            if (warn_) *warn_ << "warning: cannot write cache entry " << tmp.string() << '\n';
            return;
        }
        out << j.dump();
    }
    fs::rename(tmp, p, ec);
    if (ec) {
        fs::remove(tmp, ec);
        if (warn_) *warn_ << "warning: cannot store cache entry " << p.string() << '\n';
    }
}

}  // namespace cis::cli
