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

#ifndef PFORGE_RECORD_HPP
#define PFORGE_RECORD_HPP

#include <optional>
#include <string>

#include "numtheory.hpp"

namespace pforge {

enum class RecordStatus { Pending, PrimeOk, CurveVerified, Rejected };

/// Concrete curve parameters. a and b keep the signed form they were given in
/// (e.g. a = -3); arithmetic reduces them modulo q.
struct CurveRecord {
    unsigned k = 0;
    std::optional<Integer> d;
    std::optional<Integer> x0;
    Integer q = 0;
    Integer n = 0;
    Integer t = 0;
    std::optional<Integer> a;
    std::optional<Integer> b;
    RecordStatus status = RecordStatus::Pending;
    std::string reason;  // set when status == Rejected

    void reject(std::string why) {
        status = RecordStatus::Rejected;
        reason = std::move(why);
    }

    friend bool operator==(const CurveRecord&, const CurveRecord&) = default;
};

/// "PENDING", "PRIME_OK", "CURVE_VERIFIED" or "REJECTED(<reason>)".
inline std::string status_string(const CurveRecord& r) {
    switch (r.status) {
    case RecordStatus::Pending: return "PENDING";
    case RecordStatus::PrimeOk: return "PRIME_OK";
    case RecordStatus::CurveVerified: return "CURVE_VERIFIED";
    case RecordStatus::Rejected: return "REJECTED(" + r.reason + ")";
    }
    return "PENDING";
}

/// Inverse of status_string; returns false on unknown text.
inline bool parse_status(const std::string& text, RecordStatus& status, std::string& reason) {
    reason.clear();
    if (text == "PENDING") {
        status = RecordStatus::Pending;
    } else if (text == "PRIME_OK") {
        status = RecordStatus::PrimeOk;
    } else if (text == "CURVE_VERIFIED") {
        status = RecordStatus::CurveVerified;
    } else if (text.rfind("REJECTED(", 0) == 0 && text.size() >= 10 && text.back() == ')') {
        status = RecordStatus::Rejected;
        reason = text.substr(9, text.size() - 10);
    } else {
        return false;
    }
    return true;
}

} // namespace pforge

#endif
