#pragma once

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace cis::cli {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

struct RecordMeta {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::optional<unsigned> bits;
    std::optional<std::string> engine;
    std::string version = CIS_VERSION;
    bool cached = false;
    std::string timestamp;

    friend bool operator==(const RecordMeta&, const RecordMeta&) = default;
};

/// One computed quantity. Exact rationals travel as "p/q" strings.
struct ResultRecord {
    std::string quantity;
    Json params = Json::object();
    Json value;
    std::optional<double> std_error;
    RecordMeta meta;
    /// Extra numbers that explain the value (residuals, truncation, flags).
    Json diagnostics = Json::object();

    /// Optional tabular view used by the csv and plain renderers.
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;

    friend bool operator==(const ResultRecord& a, const ResultRecord& b) {
        return a.quantity == b.quantity && a.params == b.params && a.value == b.value &&
               a.std_error == b.std_error && a.meta == b.meta && a.diagnostics == b.diagnostics;
    }
};

Json to_json(const ResultRecord& r);
ResultRecord record_from_json(const Json& j);

enum class Format { Json, Csv, Plain };
Format parse_format(const std::string& name);

void render(const std::vector<ResultRecord>& records, Format format, std::ostream& os);

std::string utc_timestamp();

}  // namespace cis::cli
