#include "cis/record.hpp"

#include <cis/errors.hpp>

#include <chrono>
#include <ctime>
#include <iomanip>
#include <sstream>

namespace cis::cli {

Json to_json(const ResultRecord& r) {
    Json j;
    j["schema"] = kSchemaVersion;
    j["quantity"] = r.quantity;
    j["params"] = r.params;
    j["value"] = r.value;
    if (r.std_error) j["stderr"] = *r.std_error;
    Json meta;
    if (r.meta.seed) meta["seed"] = *r.meta.seed;
    if (r.meta.trials) meta["trials"] = *r.meta.trials;
    if (r.meta.bits) meta["bits"] = *r.meta.bits;
    if (r.meta.engine) meta["engine"] = *r.meta.engine;
    meta["version"] = r.meta.version;
    meta["cached"] = r.meta.cached;
    meta["timestamp"] = r.meta.timestamp;
    j["meta"] = meta;
    if (!r.diagnostics.empty()) j["diagnostics"] = r.diagnostics;
    return j;
}

ResultRecord record_from_json(const Json& j) {
    if (!j.is_object() || j.value("schema", 0) != kSchemaVersion)
        throw InvalidArgument("record: unsupported schema");
    ResultRecord r;
    r.quantity = j.at("quantity").get<std::string>();
    r.params = j.at("params");
    r.value = j.at("value");
    if (j.contains("stderr")) r.std_error = j.at("stderr").get<double>();
    const Json& meta = j.at("meta");
    if (meta.contains("seed")) r.meta.seed = meta.at("seed").get<std::uint64_t>();
    if (meta.contains("trials")) r.meta.trials = meta.at("trials").get<std::uint64_t>();
    if (meta.contains("bits")) r.meta.bits = meta.at("bits").get<unsigned>();
    if (meta.contains("engine")) r.meta.engine = meta.at("engine").get<std::string>();
    r.meta.version = meta.at("version").get<std::string>();
    r.meta.cached = meta.at("cached").get<bool>();
    r.meta.timestamp = meta.value("timestamp", "");
    if (j.contains("diagnostics")) r.diagnostics = j.at("diagnostics");
    return r;
}

Format parse_format(const std::string& name) {
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    if (name == "plain") return Format::Plain;
    throw InvalidArgument("unknown format '" + name + "'");
}

namespace {

std::string cell(const Json& v) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += (c == '"') ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_null()) return "";
    return v.dump();
}

void csv_default(const ResultRecord& r, std::ostream& os) {
    os << "quantity";
    for (auto it = r.params.begin(); it != r.params.end(); ++it) os << ',' << it.key();
    os << ",value,stderr\n" << r.quantity;
    for (auto it = r.params.begin(); it != r.params.end(); ++it) os << ',' << cell(*it);
    os << ',' << cell(r.value.is_array() || r.value.is_object() ? Json(r.value.dump()) : r.value)
       << ',' << (r.std_error ? cell(*r.std_error) : std::string()) << '\n';
}

void csv_table(const ResultRecord& r, std::ostream& os) {
    for (std::size_t c = 0; c < r.columns.size(); ++c) os << (c ? "," : "") << r.columns[c];
    os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << cell(row[c]);
        os << '\n';
    }
}

std::string plain_value(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void plain(const ResultRecord& r, std::ostream& os) {
    os << r.quantity;
    for (auto it = r.params.begin(); it != r.params.end(); ++it)
        os << ' ' << it.key() << '=' << plain_value(*it);
    os << '\n';
    if (!r.columns.empty()) {
        for (std::size_t c = 0; c < r.columns.size(); ++c) os << (c ? "\t" : "  ") << r.columns[c];
        os << '\n';
        for (const auto& row : r.rows) {
            for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "\t" : "  ") << plain_value(row[c]);
            os << '\n';
        }
    } else {
        os << "  value = " << plain_value(r.value);
        if (r.std_error) os << " +/- " << *r.std_error;
        os << '\n';
    }
    for (auto it = r.diagnostics.begin(); it != r.diagnostics.end(); ++it)
        os << "  " << it.key() << " = " << plain_value(*it) << '\n';
    if (r.meta.cached) os << "  (cached)\n";
}

}  // namespace

void render(const std::vector<ResultRecord>& records, Format format, std::ostream& os) {
    switch (format) {
        case Format::Json: {
            if (records.size() == 1) {
                os << to_json(records.front()).dump(2) << '\n';
            } else {
                Json arr = Json::array();
                for (const auto& r : records) arr.push_back(to_json(r));
                os << arr.dump(2) << '\n';
            }
            break;
        }
        case Format::Csv:
            for (std::size_t i = 0; i < records.size(); ++i) {
                if (i) os << '\n';
                if (records[i].columns.empty()) csv_default(records[i], os);
                else csv_table(records[i], os);
            }
            break;
        case Format::Plain:
            for (const auto& r : records) plain(r, os);
            break;
    }
}

std::string utc_timestamp() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

}  // namespace cis::cli
