#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "katolab/space_tag.hpp"

namespace katolab {

using Json = nlohmann::ordered_json;

inline std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

inline Json tag_to_json(const SpaceTag& tag) {
    Json j;
    j["name"] = tag.name();
    j["s"] = tag.s;
    j["q"] = tag.q == infty ? Json("inf") : Json(tag.q);
    j["p"] = tag.p == infty ? Json("inf") : Json(tag.p);
    j["lambda"] = tag.lambda;
    j["eps"] = tag.eps;
    return j;
}

// NormReport: a computed norm with provenance
inline Json norm_report(const SpaceTag& tag, double value, int n, int N, const std::string& estimator,
                        const std::map<std::string, double>& constants = {}) {
    Json j;
    j["space"] = tag_to_json(tag);
    j["value"] = value;
    j["grid"] = Json{{"n", n}, {"N", N}};
    j["estimator"] = estimator;
    Json c = Json::object();
    for (const auto& [k, v] : constants) c[k] = v;
    j["constants"] = c;
    return j;
}

inline void write_text(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot write " + path);
    f << content;
}

inline void write_json(const std::string& path, const Json& j) { write_text(path, j.dump(2) + "\n"); }

// fixed %.17g formatting so CSVs are byte-stable
inline std::string fmt_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> header) : header_(std::move(header)) {}
    void row(const std::vector<std::string>& cells) { rows_.push_back(cells); }
    void save(const std::string& path) const {
        std::string out;
        for (std::size_t i = 0; i < header_.size(); ++i) out += (i ? "," : "") + header_[i];
        out += "\n";
        for (const auto& r : rows_) {
            for (std::size_t i = 0; i < r.size(); ++i) out += (i ? "," : "") + r[i];
            out += "\n";
        }
        write_text(path, out);
    }

  private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace katolab
