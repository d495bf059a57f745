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

#ifndef PFORGE_SEARCH_HPP
#define PFORGE_SEARCH_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"
#include "families.hpp"
#include "intpoly.hpp"
#include "numtheory.hpp"
#include "pell.hpp"
#include "curve.hpp"
#include "record.hpp"

namespace pforge {

struct SearchConfig {
    std::string family = "freeman10";
    Integer d_min = 1;
    Integer d_max = 1;
    Integer x_min = 0;
    Integer x_max = 0;
    std::size_t max_u_bits = 128;
    std::size_t max_solutions_per_d = 64;  // unit multiples walked per class
    std::size_t q_bits_min = 1;
    std::size_t q_bits_max = std::numeric_limits<std::size_t>::max();
    std::size_t max_records = std::numeric_limits<std::size_t>::max();
    std::size_t max_period = default_max_period;
    std::uint64_t seed = default_seed;
    unsigned workers = 1;
    std::ostream* progress = nullptr;  // "D=..., classes=..., candidates=..." lines

    void validate() const {
        if (d_min > d_max) throw DomainError("search: d-min exceeds d-max");
        if (x_min > x_max) throw DomainError("search: x-min exceeds x-max");
        if (q_bits_min > q_bits_max) throw DomainError("search: q-bits range is inverted");
        if (max_u_bits < 16) throw DomainError("search: max-u-bits must be >= 16");
        if (max_records == 0) throw DomainError("search: max-records must be positive");
        if (max_solutions_per_d == 0) throw DomainError("search: max-solutions-per-d must be positive");
    }
};

/// A candidate plus the (D, |u|) key that fixes the merged output order.
struct SearchHit {
    CurveRecord record;
    Integer d;
    Integer u_abs;

    friend bool operator<(const SearchHit& a, const SearchHit& b) {
        if (a.d != b.d) return a.d < b.d;
        if (a.u_abs != b.u_abs) return a.u_abs < b.u_abs;
        return a.record.x0.value_or(0) < b.record.x0.value_or(0);
    }
};

struct SearchOutcome {
    std::vector<CurveRecord> records;
    std::vector<std::string> skipped;  // per-D diagnostics (capacity errors, rejected D)
};

namespace detail {

inline bool q_bits_in_range(const CurveRecord& r, const SearchConfig& cfg) {
    const std::size_t bits = bit_length(r.q);
    return bits >= cfg.q_bits_min && bits <= cfg.q_bits_max;
}

// PRIME_OK, inside the q-bit window, and of exact embedding degree k.
inline bool emittable(const CurveRecord& r, const SearchConfig& cfg) {
    return r.status == RecordStatus::PrimeOk && q_bits_in_range(r, cfg) && has_exact_embedding_degree(r.q, r.n, r.k);
}

class ProgressLog {
public:
    explicit ProgressLog(std::ostream* out) : out_(out) {}

    void line(const std::string& s) {
        if (!out_) return;
        std::lock_guard<std::mutex> lock(mu_);
        *out_ << s << '\n';
    }

private:
    std::ostream* out_;
    std::mutex mu_;
};

struct WorkerResult {
    std::vector<SearchHit> hits;
    std::vector<std::string> skipped;
};

// Cuts items into contiguous blocks dealt round-robin to `workers` threads,
// runs body(item, rng, result) on each, then merges hits in key order and
// truncates to max_records.
template <class Item, class Body>
SearchOutcome run_partitioned(const std::vector<Item>& items, const SearchConfig& cfg, Body body) {
    const unsigned workers = std::max(1U, std::min<unsigned>(cfg.workers, static_cast<unsigned>(std::max<std::size_t>(1, items.size()))));
    constexpr std::size_t block = 64;
    std::vector<WorkerResult> results(workers);
    // skipped notes tagged with their item index so the merge is worker-count independent
    std::vector<std::vector<std::pair<std::size_t, std::string>>> notes(workers);
    // items arrive in key order, so each worker's first max_records hits cover the merged prefix
    auto run = [&](unsigned w) {
        Rng rng(cfg.seed + w);
        for (std::size_t lo = w * block; lo < items.size(); lo += workers * block) {
            const std::size_t hi = std::min(items.size(), lo + block);
            for (std::size_t i = lo; i < hi && results[w].hits.size() < cfg.max_records; ++i) {
                body(items[i], rng, results[w]);
                for (auto& s : results[w].skipped) notes[w].emplace_back(i, std::move(s));
                results[w].skipped.clear();
            }
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(run, w);
        for (auto& t : threads) t.join();
    }
    std::vector<SearchHit> merged;
    std::vector<std::pair<std::size_t, std::string>> all_notes;
    SearchOutcome out;
    for (unsigned w = 0; w < workers; ++w) {
        std::move(results[w].hits.begin(), results[w].hits.end(), std::back_inserter(merged));
        std::move(notes[w].begin(), notes[w].end(), std::back_inserter(all_notes));
    }
    std::stable_sort(all_notes.begin(), all_notes.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& n : all_notes) out.skipped.push_back(std::move(n.second));
    std::sort(merged.begin(), merged.end());
    if (merged.size() > cfg.max_records) merged.resize(cfg.max_records);
    for (auto& h : merged) out.records.push_back(std::move(h.record));
    return out;
}

} // namespace detail

/// Discriminants in [d_min, d_max] with D = 43 or 67 (mod 120), ascending.
inline std::vector<Integer> k10_discriminant_candidates(const Integer& d_min, const Integer& d_max) {
    std::vector<Integer> out;
    if (d_min > d_max) return out;
    Integer base = d_min - mod_floor(d_min, 120);
    for (Integer b = base; b <= d_max; b += 120)
        for (int r : {43, 67}) {
            Integer d = b + r;
            if (d >= d_min && d <= d_max) out.push_back(d);
        }
    return out;
}

/// All (D, x) for one discriminant: walk unit multiples of every positive
/// class of u^2 - 15D v^2 = -20 while u stays below the bit cap, and take
/// x = (u - 5)/15 for u = 5 (mod 15), x = (-u - 5)/15 for u = 10 (mod 15).
inline void search_k10_one(const Integer& d, const SearchConfig& cfg, Rng& rng, detail::WorkerResult& out,
                           detail::ProgressLog* log = nullptr) {
    const FamilyDescriptor& fam = *find_family("freeman10");
    const FilterResult filt = filter_discriminant_k10(d);
    if (!filt.accepted) return;
    const Integer dprime = 15 * d;
    std::vector<QuadraticInteger> minima;
    QuadraticInteger eps;
    try {
        minima = positive_class_minima(dprime, Integer(-20), cfg.max_period);
        eps = fundamental_unit(dprime, cfg.max_period).norm_one;
    } catch (const CapacityError& e) {
        out.skipped.push_back("D=" + d.get_str() + ": " + e.what());
        return;
    }
    std::size_t candidates = 0;
    for (const auto& zmin : minima) {
        QuadraticInteger w = zmin;
        for (std::size_t step = 0; step < cfg.max_solutions_per_d; ++step, w *= eps) {
            if (bit_length(w.a) > cfg.max_u_bits) break;
            for (const Integer& u : {w.a, Integer(-w.a)}) {
                if (mod_floor(u, 15) != 5) continue;
                const Integer x = (u - 5) / 15;
                CurveRecord rec = instantiate(fam, x, d, &rng);
                if (!detail::emittable(rec, cfg)) continue;
                ++candidates;
                out.hits.push_back({std::move(rec), d, abs(w.a)});
            }
        }
    }
    if (log)
        log->line("D=" + d.get_str() + ", classes=" + std::to_string(minima.size()) +
                  ", candidates=" + std::to_string(candidates));
}

inline SearchOutcome search_k10(const SearchConfig& cfg) {
    cfg.validate();
    detail::ProgressLog log(cfg.progress);
    const auto ds = k10_discriminant_candidates(cfg.d_min, cfg.d_max);
    return detail::run_partitioned(ds, cfg, [&](const Integer& d, Rng& rng, detail::WorkerResult& out) {
        search_k10_one(d, cfg, rng, out, &log);
    });
}

/// BN: f = 3(6x^2+4x+1)^2, so every x solves 3y^2 = f(x); scan x and -x over the range.
inline SearchOutcome search_bn12(const SearchConfig& cfg) {
    cfg.validate();
    const FamilyDescriptor& fam = *find_family("bn12");
    std::set<Integer> xs;
    for (Integer x = cfg.x_min; x <= cfg.x_max; ++x) {
        xs.insert(x);
        xs.insert(Integer(-x));
    }
    std::vector<Integer> items(xs.begin(), xs.end());
    std::sort(items.begin(), items.end(), [](const Integer& a, const Integer& b) {
        const Integer aa = abs(a), ab = abs(b);
        return aa != ab ? aa < ab : a < b;
    });
    return detail::run_partitioned(items, cfg, [&](const Integer& x, Rng& rng, detail::WorkerResult& out) {
        CurveRecord rec = instantiate(fam, x, Integer(3), &rng);
        if (!detail::emittable(rec, cfg)) return;
        // key: |x| then x, via u_abs = 2|x| (+1 for positive x)
        Integer key = 2 * abs(x) + (x > 0 ? 1 : 0);
        out.hits.push_back({std::move(rec), Integer(3), key});
    });
}

/// Integer points (x, y >= 0) of D y^2 = f(x) for a quadratic family, found by
/// walking every positive class of the reduced norm equation while |u| stays
/// within max_u_bits and at most max_steps unit multiples per class. Ordered by |u|.
inline std::vector<std::pair<Integer, Integer>> quadratic_family_points(const FamilyDescriptor& family,
                                                                        const Integer& d, std::size_t max_u_bits,
                                                                        std::size_t max_steps,
                                                                        std::size_t max_period = default_max_period) {
    if (family.f.degree() != 2) throw DomainError("quadratic_family_points: f is not quadratic");
    const QuadraticReduction red = reduce_quadratic(family.f, d);
    const auto minima = positive_class_minima(red.problem.dprime, red.problem.t, max_period);
    const QuadraticInteger eps = fundamental_unit(red.problem.dprime, max_period).norm_one;
    std::vector<std::pair<Integer, std::pair<Integer, Integer>>> keyed;
    std::set<Integer> seen;
    for (const auto& zmin : minima) {
        QuadraticInteger w = zmin;
        for (std::size_t step = 0; step < max_steps; ++step, w *= eps) {
            if (bit_length(w.a) > max_u_bits) break;
            for (const Integer& u : {w.a, Integer(-w.a)}) {
                auto xy = red.project({u, w.b, w.dprime});
                if (!xy || !seen.insert(xy->first).second) continue;
                keyed.push_back({abs(u), {xy->first, abs(xy->second)}});
            }
        }
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::pair<Integer, Integer>> out;
    for (auto& k : keyed) out.push_back(std::move(k.second));
    return out;
}

/// One MNT branch for one square-free D through the norm equation.
inline SearchOutcome search_mnt(const SearchConfig& cfg, const FamilyDescriptor& family, const Integer& d) {
    cfg.validate();
    if (family.k != 3 && family.k != 4 && family.k != 6)
        throw DomainError("search_mnt: " + family.name + " is not an MNT family");
    SearchOutcome out;
    const auto sq = squarefree_decompose(d);
    if (d < 1 || !sq.complete || sq.square_part != 1) {
        out.skipped.push_back("D=" + d.get_str() + ": not square-free");
        return out;
    }
    std::vector<std::pair<Integer, Integer>> pts;
    try {
        pts = quadratic_family_points(family, d, cfg.max_u_bits, cfg.max_solutions_per_d, cfg.max_period);
    } catch (const DomainError& e) {
        out.skipped.push_back("D=" + d.get_str() + ": " + e.what());
        return out;
    } catch (const CapacityError& e) {
        out.skipped.push_back("D=" + d.get_str() + ": " + e.what());
        return out;
    }
    Rng rng(cfg.seed);
    std::vector<SearchHit> hits;
    for (const auto& [x, y] : pts) {
        CurveRecord rec = instantiate(family, x, d, &rng);
        if (!detail::emittable(rec, cfg)) continue;
        const Integer u = 2 * family.f[2] * x + family.f[1];
        hits.push_back({std::move(rec), d, abs(u)});
    }
    std::sort(hits.begin(), hits.end());
    for (auto& h : hits) {
        if (out.records.size() >= cfg.max_records) break;
        out.records.push_back(std::move(h.record));
    }
    if (cfg.progress)
        *cfg.progress << "D=" << d.get_str() << ", classes=-, candidates=" << out.records.size() << '\n';
    return out;
}

/// search_mnt over every square-free D in [d_min, d_max].
inline SearchOutcome search_mnt_range(const SearchConfig& cfg, const FamilyDescriptor& family) {
    cfg.validate();
    std::vector<Integer> ds;
    for (Integer d = std::max(cfg.d_min, Integer(1)); d <= cfg.d_max; ++d) {
        const auto sq = squarefree_decompose(d);
        if (sq.complete && sq.square_part == 1) ds.push_back(d);
    }
    SearchConfig inner = cfg;
    inner.progress = nullptr;
    detail::ProgressLog log(cfg.progress);
    return detail::run_partitioned(ds, cfg, [&](const Integer& d, Rng&, detail::WorkerResult& out) {
        SearchOutcome one = search_mnt(inner, family, d);
        for (auto& s : one.skipped) out.skipped.push_back(std::move(s));
        for (auto& r : one.records) {
            const Integer u = 2 * family.f[2] * *r.x0 + family.f[1];
            out.hits.push_back({std::move(r), d, abs(u)});
        }
        log.line("D=" + d.get_str() + ", classes=-, candidates=" + std::to_string(one.records.size()));
    });
}

/// Dispatches on cfg.family.
inline SearchOutcome run_search(const SearchConfig& cfg) {
    const FamilyDescriptor* fam = find_family(cfg.family);
    if (!fam) throw DomainError("search: unknown family '" + cfg.family + "'");
    if (fam->name == "freeman10") return search_k10(cfg);
    if (fam->name == "bn12") return search_bn12(cfg);
    return search_mnt_range(cfg, *fam);
}

/// Integer x0 with q(x0) = q_value, if any. q is monotone outside [-B, B]
/// for B a Cauchy bound on the roots of q'; the inside is scanned and each
/// tail binary-searched.
inline std::optional<Integer> recover_x_from_q(const FamilyDescriptor& family, const Integer& q_value) {
    const IntPoly& q = family.q;
    if (q.leading() <= 0) throw DomainError("recover_x_from_q: q must have positive leading coefficient");
    if (q.degree() < 1) return q(0) == q_value ? std::optional<Integer>(0) : std::nullopt;
    const IntPoly dq = derivative(q);
    Integer bound = 1;
    if (dq.degree() >= 1) {
        Integer m = 0;
        for (int i = 0; i < dq.degree(); ++i) m = std::max(m, Integer(abs(dq[static_cast<std::size_t>(i)])));
        mpz_cdiv_q(m.get_mpz_t(), m.get_mpz_t(), Integer(abs(dq.leading())).get_mpz_t());
        bound = m + 1;
    }
    for (Integer x = -bound; x <= bound; ++x)
        if (q(x) == q_value) return x;

    // Tail search on s >= bound for g(s) = q(sign * s), monotone there.
    auto tail = [&](int sign) -> std::optional<Integer> {
        auto g = [&](const Integer& s) { return q(Integer(sign * s)); };
        const bool increasing = g(bound + 1) > g(bound);
        auto before = [&](const Integer& v) { return increasing ? v < q_value : v > q_value; };
        Integer lo = bound, hi = bound * 2;
        while (before(g(hi))) {
            lo = hi;
            hi *= 2;
            if (bit_length(hi) > 4 * bit_length(q_value) + 64) return std::nullopt;
        }
        // first s in [lo, hi] with !before(g(s))
        while (lo < hi) {
            Integer mid = (lo + hi) / 2;
            if (before(g(mid)))
                lo = mid + 1;
            else
                hi = mid;
        }
        if (g(lo) == q_value) return Integer(sign * lo);
        return std::nullopt;
    };
    if (auto x = tail(1)) return x;
    return tail(-1);
}

} // namespace pforge

#endif
