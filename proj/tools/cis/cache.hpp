#pragma once

#include "cis/record.hpp"

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

namespace cis::cli {

/// File-per-record cache keyed by quantity, canonical parameters and tool version.
class ResultCache {
public:
    /// Directory from CIS_CACHE_DIR, else ".cis-cache".
    static std::filesystem::path default_dir();

    explicit ResultCache(std::filesystem::path dir, std::ostream* warnings = nullptr);

    static std::string key(const std::string& quantity, const Json& params,
                           const std::string& version = CIS_VERSION);
    std::filesystem::path path_for(const std::string& key) const;

    /// Unreadable or mismatched entries count as misses; corrupt ones warn.
    std::optional<ResultRecord> load(const std::string& quantity, const Json& params) const;
    void store(const ResultRecord& record) const;

private:
    std::filesystem::path dir_;
    std::ostream* warn_;
};

}  // namespace cis::cli
