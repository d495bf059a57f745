// Copyright 2026 The pforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PFORGE_RECORD_IO_HPP
#define PFORGE_RECORD_IO_HPP

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "numtheory.hpp"
#include "record.hpp"

namespace pforge {

inline constexpr const char* schema_version = "1";

struct Provenance {
    std::string tool_version;
    std::string config_digest;
    std::string timestamp;

    friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// One JSON-lines record. Every integer, k included, is a decimal string;
/// absent optionals are null.
struct RecordEnvelope {
    std::string schema = schema_version;
    CurveRecord record;
    Provenance provenance;

    friend bool operator==(const RecordEnvelope&, const RecordEnvelope&) = default;
};

class RecordFormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

inline nlohmann::json opt_int(const std::optional<Integer>& v) {
    return v ? nlohmann::json(v->get_str()) : nlohmann::json(nullptr);
}

inline Integer parse_int(const nlohmann::json& j, const char* field) {
    std::string text;
    if (j.is_string())
        text = j.get<std::string>();
    else if (j.is_number_integer())
        text = j.dump();
    else
        throw RecordFormatError(std::string("field '") + field + "' must be a decimal string");
    // GMP skips embedded whitespace, so insist on [-]digits first
    const std::size_t start = !text.empty() && text[0] == '-' ? 1 : 0;
    const bool digits = text.size() > start &&
                        std::all_of(text.begin() + static_cast<std::ptrdiff_t>(start), text.end(),
                                    [](char c) { return c >= '0' && c <= '9'; });
    Integer v;
    if (!digits || v.set_str(text, 10) != 0)
        throw RecordFormatError(std::string("field '") + field + "' is not a decimal integer: " + text);
    return v;
}

inline std::optional<Integer> parse_opt_int(const nlohmann::json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) return std::nullopt;
    return parse_int(*it, field);
}

inline const nlohmann::json& require(const nlohmann::json& obj, const char* field) {
    auto it = obj.find(field);
    if (it == obj.end() || it->is_null()) throw RecordFormatError(std::string("missing field '") + field + "'");
    return *it;
}

} // namespace detail

inline nlohmann::json to_json(const RecordEnvelope& env) {
    const CurveRecord& r = env.record;
    nlohmann::json j;
    j["schema_version"] = env.schema;
    j["k"] = std::to_string(r.k);
    j["d"] = detail::opt_int(r.d);
    j["x0"] = detail::opt_int(r.x0);
    j["q"] = r.q.get_str();
    j["n"] = r.n.get_str();
    j["t"] = r.t.get_str();
    j["a"] = detail::opt_int(r.a);
    j["b"] = detail::opt_int(r.b);
    j["status"] = status_string(r);
    j["provenance"] = {{"tool_version", env.provenance.tool_version},
                       {"config_digest", env.provenance.config_digest},
                       {"timestamp", env.provenance.timestamp}};
    return j;
}

inline std::string to_json_line(const RecordEnvelope& env) { return to_json(env).dump(); }

/// Parses one line. When t is absent it is derived as q + 1 - n.
inline RecordEnvelope parse_record_line(const std::string& line) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
        throw RecordFormatError(std::string("malformed JSON: ") + e.what());
    }
    if (!j.is_object()) throw RecordFormatError("record must be a JSON object");
    RecordEnvelope env;
    if (auto it = j.find("schema_version"); it != j.end() && it->is_string()) env.schema = it->get<std::string>();
    if (env.schema != schema_version) throw RecordFormatError("unsupported schema_version '" + env.schema + "'");
    CurveRecord& r = env.record;
    const Integer k = detail::parse_int(detail::require(j, "k"), "k");
    if (k < 1 || k > 100000) throw RecordFormatError("field 'k' out of range");
    r.k = static_cast<unsigned>(k.get_ui());
    r.q = detail::parse_int(detail::require(j, "q"), "q");
    r.n = detail::parse_int(detail::require(j, "n"), "n");
    auto t = detail::parse_opt_int(j, "t");
    r.t = t ? *t : Integer(r.q + 1 - r.n);
    r.d = detail::parse_opt_int(j, "d");
    r.x0 = detail::parse_opt_int(j, "x0");
    r.a = detail::parse_opt_int(j, "a");
    r.b = detail::parse_opt_int(j, "b");
    if (auto it = j.find("status"); it != j.end() && !it->is_null()) {
        if (!it->is_string() || !parse_status(it->get<std::string>(), r.status, r.reason))
            throw RecordFormatError("unknown status");
    }
    if (auto it = j.find("provenance"); it != j.end() && it->is_object()) {
        env.provenance.tool_version = it->value("tool_version", "");
        env.provenance.config_digest = it->value("config_digest", "");
        env.provenance.timestamp = it->value("timestamp", "");
    }
    return env;
}

} // namespace pforge

#endif
