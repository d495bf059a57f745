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

// The two published k = 10 curves (149-bit and 196-bit).

#ifndef PFORGE_TESTS_FIXTURES_HPP
#define PFORGE_TESTS_FIXTURES_HPP

#include <pforge/record.hpp>

namespace fixture {

inline pforge::CurveRecord make_record(const char* q, const char* n, long d, const char* b) {
    pforge::CurveRecord r;
    r.k = 10;
    r.q = pforge::Integer(q);
    r.n = pforge::Integer(n);
    r.t = r.q + 1 - r.n;
    r.d = pforge::Integer(d);
    r.a = pforge::Integer(-3);
    r.b = pforge::Integer(b);
    return r;
}

inline pforge::CurveRecord curve149() {
    return make_record("503189899097385532598615948567975432740967203",
                       "503189899097385532598571084778608176410973351", 1666603,
                       "78778770898368212452154728282767760988008151");
}

inline pforge::CurveRecord curve196() {
    return make_record("61099963271083128746073769567944870354270161646150914794603",
                       "61099963271083128746073769567450502219087145916434839626301", 579003643,
                       "1112775869471458154129950648198203893613615552476491488167");
}

} // namespace fixture

#endif
