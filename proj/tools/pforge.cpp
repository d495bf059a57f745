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


// pforge command-line front end: search, verify, analyze, pell.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <openssl/evp.h>

#include <pforge/pforge.hpp>

#ifndef PFORGE_VERSION
#define PFORGE_VERSION "0.0.0"
#endif

namespace {

using pforge::Integer;

enum ExitCode : int { kOk = 0, kFailure = 1, kUsage = 2, kEmpty = 3, kRejected = 4 };

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// U+2212 is accepted as a minus sign so values can be pasted from typeset text.
std::string ascii_minus(std::string s) {
    const std::string uminus = "\xE2\x88\x92";
    for (std::size_t p; (p = s.find(uminus)) != std::string::npos;) s.replace(p, uminus.size(), "-");
    return s;
}

Integer parse_integer(const std::string& raw, const std::string& flag) {
    const std::string text = ascii_minus(raw);
    Integer v;
    if (text.empty() || text.find_first_not_of("+-0123456789") != std::string::npos ||
        v.set_str(text[0] == '+' ? text.substr(1) : text, 10) != 0)
        throw UsageError(flag + ": not a decimal integer: '" + raw + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& raw, const std::string& flag) {
    const Integer v = parse_integer(raw, flag);
    if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw UsageError(flag + ": out of range: " + raw);
    std::uint64_t out = 0;
    mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
    return out;
}

std::pair<Integer, Integer> parse_modulus_pair(const std::string& raw, const std::string& flag) {
    const auto comma = raw.find(',');
    if (comma == std::string::npos) throw UsageError(flag + ": expected M,R but got '" + raw + "'");
    Integer m = parse_integer(raw.substr(0, comma), flag);
    Integer r = parse_integer(raw.substr(comma + 1), flag);
    if (m < 1) throw UsageError(flag + ": modulus must be positive");
    return {m, r};
}

std::pair<std::size_t, std::size_t> parse_bit_range(const std::string& raw) {
    const auto dots = raw.find("..");
    if (dots == std::string::npos) throw UsageError("--q-bits: expected MIN..MAX but got '" + raw + "'");
    const auto lo = parse_u64(raw.substr(0, dots), "--q-bits");
    const auto hi = parse_u64(raw.substr(dots + 2), "--q-bits");
    if (lo > hi) throw UsageError("--q-bits: range is inverted");
    return {lo, hi};
}

pforge::IntPoly parse_poly_flag(const std::string& raw, const std::string& flag) {
    try {
        return pforge::parse_poly(raw);
    } catch (const pforge::ParseError& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::string sha256_hex(const std::string& data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) return {};
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return out.str();
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Subcommand name plus the supplied options that shape the output, sorted,
// with the effective seed standing in for --seed.
std::string config_digest(const CLI::App& sub, std::uint64_t seed) {
    std::map<std::string, std::string> flags;
    for (const CLI::Option* opt : sub.get_options()) {
        const std::string name = opt->get_name();
        // options that cannot change the records written are left out
        if (opt->count() == 0 || name == "--out" || name == "--help" || name == "--workers" || name == "--quiet")
            continue;
        std::string joined;
        for (const auto& v : opt->results()) joined += (joined.empty() ? "" : ",") + v;
        flags[name] = joined;
    }
    flags["--seed"] = std::to_string(seed);
    std::string canon = sub.get_name();
    for (const auto& [k, v] : flags) canon += "\n" + k + "=" + v;
    return sha256_hex(canon);
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("PFORGE_SEED"); env && *env) return parse_u64(env, "PFORGE_SEED");
    return flag_seed;
}

// Output goes to --out when given, else standard output.
class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

std::string family_names() {
    std::string out;
    for (const auto& f : pforge::builtin_catalog()) out += (out.empty() ? "" : "|") + f.name;
    return out;
}

// ---------------------------------------------------------------------------
// search

struct SearchArgs {
    std::string family;
    std::string d_min, d_max, x_min, x_max;
    std::string q_bits;
    std::size_t max_u_bits = 128;
    std::size_t max_solutions_per_d = 64;
    std::size_t max_records = 1000000;
    std::size_t max_period = pforge::default_max_period;
    unsigned workers = 1;
    std::uint64_t seed = pforge::default_seed;
    std::string out;
    bool quiet = false;
};

int run_search_cmd(const CLI::App& sub, const SearchArgs& args) {
    pforge::SearchConfig cfg;
    cfg.family = args.family;
    const pforge::FamilyDescriptor* fam = pforge::find_family(args.family);
    if (!fam) throw UsageError("--family: unknown family '" + args.family + "' (expected " + family_names() + ")");
    if (fam->name == "bn12") {
        if (args.x_min.empty()) throw UsageError("--family bn12 needs --x-min [--x-max]");
        cfg.x_min = parse_integer(args.x_min, "--x-min");
        cfg.x_max = args.x_max.empty() ? cfg.x_min : parse_integer(args.x_max, "--x-max");
    } else {
        if (args.d_min.empty()) throw UsageError("--family " + fam->name + " needs --d-min [--d-max]");
        cfg.d_min = parse_integer(args.d_min, "--d-min");
        cfg.d_max = args.d_max.empty() ? cfg.d_min : parse_integer(args.d_max, "--d-max");
    }
    if (!args.q_bits.empty()) std::tie(cfg.q_bits_min, cfg.q_bits_max) = parse_bit_range(args.q_bits);
    cfg.max_u_bits = args.max_u_bits;
    cfg.max_solutions_per_d = args.max_solutions_per_d;
    cfg.max_records = args.max_records;
    cfg.max_period = args.max_period;
    cfg.workers = std::max(1U, args.workers);
    cfg.seed = effective_seed(args.seed);
    cfg.progress = args.quiet ? nullptr : &std::cerr;
    try {
        cfg.validate();
    } catch (const pforge::DomainError& e) {
        throw UsageError(e.what());
    }

    Sink sink(args.out);
    const pforge::SearchOutcome res = pforge::run_search(cfg);
    for (const auto& s : res.skipped) std::cerr << "skipped " << s << '\n';

    const pforge::Provenance prov{PFORGE_VERSION, config_digest(sub, cfg.seed), utc_timestamp()};
    for (const auto& r : res.records) sink.stream() << pforge::to_json_line({pforge::schema_version, r, prov}) << '\n';
    sink.stream().flush();
    if (!args.quiet) std::cerr << "records=" << res.records.size() << '\n';
    return res.records.empty() ? kEmpty : kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string in;
    std::string q, n, k, t, d, x, a, b;
    std::string family;
    unsigned trials = 5;
    std::uint64_t seed = pforge::default_seed;
    std::string out;
};

pforge::RecordEnvelope inline_record(const VerifyArgs& args) {
    if (args.q.empty() || args.n.empty() || args.k.empty())
        throw UsageError("verify needs --in PATH or inline --q, --n and --k");
    pforge::RecordEnvelope env;
    pforge::CurveRecord& r = env.record;
    const Integer k = parse_integer(args.k, "--k");
    if (k < 1 || k > 100000) throw UsageError("--k: out of range");
    r.k = static_cast<unsigned>(k.get_ui());
    r.q = parse_integer(args.q, "--q");
    r.n = parse_integer(args.n, "--n");
    r.t = args.t.empty() ? Integer(r.q + 1 - r.n) : parse_integer(args.t, "--t");
    auto opt = [](const std::string& v, const char* flag) -> std::optional<Integer> {
        if (v.empty()) return std::nullopt;
        return parse_integer(v, flag);
    };
    r.d = opt(args.d, "--d");
    r.x0 = opt(args.x, "--x");
    r.a = opt(args.a, "--a");
    r.b = opt(args.b, "--b");
    return env;
}

std::vector<pforge::RecordEnvelope> file_records(const std::string& path) {
    std::ifstream file;
    std::istream* in = &std::cin;
    if (path != "-") {
        file.open(path);
        if (!file) throw UsageError("cannot open input file '" + path + "'");
        in = &file;
    }
    std::vector<pforge::RecordEnvelope> out;
    std::string line;
    for (std::size_t lineno = 1; std::getline(*in, line); ++lineno) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            out.push_back(pforge::parse_record_line(line));
        } catch (const pforge::RecordFormatError& e) {
            throw UsageError(path + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

// Fills or checks x0 against the family's q and n polynomials.
void apply_family(pforge::CurveRecord& r, const pforge::FamilyDescriptor& fam) {
    if (r.k != fam.k) {
        r.reject("family embedding degree");
        return;
    }
    if (!r.x0) r.x0 = pforge::recover_x_from_q(fam, r.q);
    if (!r.x0 || fam.q(*r.x0) != r.q || fam.n(*r.x0) != r.n) r.reject("family parameterization");
}

int run_verify_cmd(const CLI::App& sub, const VerifyArgs& args) {
    const pforge::FamilyDescriptor* fam = nullptr;
    if (!args.family.empty()) {
        fam = pforge::find_family(args.family);
        if (!fam) throw UsageError("--family: unknown family '" + args.family + "' (expected " + family_names() + ")");
    }
    std::vector<pforge::RecordEnvelope> inputs =
        args.in.empty() ? std::vector<pforge::RecordEnvelope>{inline_record(args)} : file_records(args.in);
    if (inputs.empty()) throw UsageError("no records in '" + args.in + "'");

    const std::uint64_t seed = effective_seed(args.seed);
    const pforge::Provenance prov{PFORGE_VERSION, config_digest(sub, seed), utc_timestamp()};
    pforge::Rng rng(seed);
    Sink sink(args.out);
    std::size_t verified = 0, prime_ok = 0, rejected = 0;
    for (auto& env : inputs) {
        pforge::CurveRecord& r = env.record;
        r.status = pforge::RecordStatus::Pending;
        r.reason.clear();
        if (fam) apply_family(r, *fam);
        if (r.status != pforge::RecordStatus::Rejected) r = pforge::verify_record(r, rng, args.trials);
        switch (r.status) {
        case pforge::RecordStatus::CurveVerified: ++verified; break;
        case pforge::RecordStatus::PrimeOk: ++prime_ok; break;
        default: ++rejected; break;
        }
        if (env.provenance.tool_version.empty()) env.provenance = prov;
        sink.stream() << pforge::to_json_line(env) << '\n';
    }
    sink.stream().flush();
    std::cerr << "verified=" << verified << " prime_ok=" << prime_ok << " rejected=" << rejected << '\n';
    return rejected ? kRejected : kOk;
}

// ---------------------------------------------------------------------------
// analyze

struct AnalyzeArgs {
    std::string t, n, q, k, d;
};

int run_analyze_cmd(const AnalyzeArgs& args) {
    const pforge::IntPoly t = parse_poly_flag(args.t, "--t");
    const pforge::IntPoly n = parse_poly_flag(args.n, "--n");
    std::optional<pforge::IntPoly> q;
    if (!args.q.empty()) q = parse_poly_flag(args.q, "--q");
    const Integer kk = parse_integer(args.k, "--k");
    if (kk < 1 || kk > 10000) throw UsageError("--k: out of range");
    const auto k = static_cast<unsigned>(kk.get_ui());
    std::optional<Integer> d;
    if (!args.d.empty()) d = parse_integer(args.d, "--d");

    pforge::FeasibilityReport rep;
    try {
        rep = pforge::analyze_feasibility(t, n, k, q, d);
    } catch (const pforge::DomainError& e) {
        throw UsageError(e.what());
    }
    const pforge::IntPoly qq = q ? *q : n + t - Integer(1);
    const auto cyc = pforge::divides(n, pforge::compose(pforge::cyclotomic(k), t - Integer(1)));

    std::ostream& out = std::cout;
    auto yes = [](bool b) { return b ? "true" : "false"; };
    out << "t: " << pforge::to_string(t) << '\n'
        << "n: " << pforge::to_string(n) << '\n'
        << "q: " << pforge::to_string(qq) << '\n'
        << "k: " << k << '\n'
        << "phi_k: " << pforge::euler_phi(k) << '\n'
        << "degree_check: " << yes(rep.degree_check) << '\n'
        << "balance_check: " << yes(rep.balance_check) << '\n'
        << "leading_coeff_check: " << yes(rep.leading_coeff_check) << '\n'
        << "n_divides_cyclotomic: " << yes(cyc.divides_over_q) << '\n'
        << "f: " << pforge::to_string(rep.f) << '\n'
        << "f_classification: " << pforge::to_string(rep.f_classification) << '\n'
        << "fixed_d: " << (rep.fixed_d ? rep.fixed_d->get_str() : "none") << '\n';
    if (rep.witness)
        out << "witness: x0=" << rep.witness->first.get_str() << " y0=" << rep.witness->second.get_str() << '\n';
    out << "verdict: " << pforge::to_string(rep.verdict) << '\n';
    for (const auto& note : rep.notes) out << "note: " << note << '\n';
    return kOk;
}

// ---------------------------------------------------------------------------
// pell

struct PellArgs {
    std::string dprime;
    std::string t;
    std::size_t count = 5;
    std::string mod_u, mod_v;
    bool fundamental = false;
    std::size_t max_period = pforge::default_max_period;
};

int run_pell_cmd(const PellArgs& args) {
    const Integer dprime = parse_integer(args.dprime, "--dprime");
    std::ostream& out = std::cout;
    try {
        pforge::detail::require_nonsquare(dprime, "--dprime");
        const auto cf = pforge::continued_fraction_sqrt(dprime, args.max_period);
        const auto fu = pforge::fundamental_unit(dprime, args.max_period);
        out << "dprime: " << dprime.get_str() << '\n'
            << "period: " << cf.period.size() << '\n'
            << "fundamental_unit: " << pforge::to_string(fu.norm_one) << '\n'
            << "continued_fraction_unit: " << pforge::to_string(fu.cf_unit) << " norm " << fu.cf_unit.norm().get_str()
            << '\n';
        if (args.fundamental) return kOk;
        if (args.t.empty()) throw UsageError("pell needs --t T (or --fundamental-unit)");
        if (args.count == 0) throw UsageError("--count must be positive");

        const Integer t = parse_integer(args.t, "--t");
        std::pair<Integer, Integer> mu{1, 0}, mv{1, 0};
        if (!args.mod_u.empty()) mu = parse_modulus_pair(args.mod_u, "--mod-u");
        if (!args.mod_v.empty()) mv = parse_modulus_pair(args.mod_v, "--mod-v");
        const auto problem = pforge::PellProblem::make(dprime, t, mu.first, mu.second, mv.first, mv.second);

        const auto classes = pforge::base_solutions(dprime, t, args.max_period);
        out << "t: " << t.get_str() << '\n' << "base_classes: " << classes.size() << '\n';
        for (const auto& z : classes) out << "class: " << pforge::to_string(z) << '\n';

        pforge::ConstrainedSolutions cs = pforge::constrained_solutions(problem, args.max_period);
        out << "congruence_unit: " << pforge::to_string(cs.unit.unit) << " exponent " << cs.unit.exponent << '\n';
        if (cs.streams.empty()) {
            out << "solutions: none\n";
            return kEmpty;
        }
        // k-way merge by |u|, then u, then v
        auto before = [](const pforge::QuadraticInteger& a, const pforge::QuadraticInteger& b) {
            const Integer aa = abs(a.a), ab = abs(b.a);
            if (aa != ab) return aa < ab;
            if (a.a != b.a) return a.a < b.a;
            return a.b < b.b;
        };
        out << "solutions: " << args.count << '\n';
        for (std::size_t i = 0; i < args.count; ++i) {
            auto best = cs.streams.begin();
            for (auto it = cs.streams.begin(); it != cs.streams.end(); ++it)
                if (before(it->peek(), best->peek())) best = it;
            out << "solution: " << pforge::to_string(best->next()) << '\n';
        }
    } catch (const pforge::DomainError& e) {
        throw UsageError(e.what());
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"pforge: pairing-friendly curve parameter search and verification"};
    app.set_version_flag("--version", PFORGE_VERSION);
    app.set_config("--config", "", "read flags from a TOML/INI file");
    app.require_subcommand(1);

    SearchArgs sa;
    auto* search = app.add_subcommand("search", "search a family for prime-order parameters");
    search->add_option("--family", sa.family, family_names())->required();
    search->add_option("--d-min", sa.d_min, "smallest CM discriminant");
    search->add_option("--d-max", sa.d_max, "largest CM discriminant");
    search->add_option("--x-min", sa.x_min, "smallest |x| (bn12)");
    search->add_option("--x-max", sa.x_max, "largest |x| (bn12)");
    search->add_option("--q-bits", sa.q_bits, "q bit-length window MIN..MAX");
    search->add_option("--max-u-bits", sa.max_u_bits, "cap on |u| bits")->capture_default_str();
    search->add_option("--max-solutions-per-d", sa.max_solutions_per_d, "unit multiples per class")
        ->capture_default_str();
    search->add_option("--max-records", sa.max_records, "stop after this many records")->capture_default_str();
    search->add_option("--max-period", sa.max_period, "continued-fraction period cap")->capture_default_str();
    search->add_option("--workers", sa.workers, "worker threads")->capture_default_str();
    search->add_option("--seed", sa.seed, "rng seed (PFORGE_SEED overrides)")->capture_default_str();
    search->add_option("--out", sa.out, "output path (default stdout)");
    search->add_flag("--quiet", sa.quiet, "no progress on stderr");

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "verify curve records");
    auto* in_opt = verify->add_option("--in", va.in, "JSON-lines input ('-' for stdin)");
    std::vector<CLI::Option*> inline_opts{
        verify->add_option("--q", va.q, "field prime"),      verify->add_option("--n", va.n, "group order"),
        verify->add_option("--k", va.k, "embedding degree"), verify->add_option("--t", va.t, "trace (default q+1-n)"),
        verify->add_option("--d", va.d, "CM discriminant"),  verify->add_option("--x", va.x, "family parameter x0"),
        verify->add_option("--a", va.a, "curve coefficient A"), verify->add_option("--b", va.b, "curve coefficient B")};
    for (auto* o : inline_opts) in_opt->excludes(o);
    verify->add_option("--family", va.family, "check or recover x0 against a family");
    verify->add_option("--trials", va.trials, "random points for the order check")->capture_default_str();
    verify->add_option("--seed", va.seed, "rng seed (PFORGE_SEED overrides)")->capture_default_str();
    verify->add_option("--out", va.out, "output path (default stdout)");

    AnalyzeArgs aa;
    auto* analyze = app.add_subcommand("analyze", "feasibility report for a (t, n) candidate");
    analyze->add_option("--t", aa.t, "trace polynomial")->required();
    analyze->add_option("--n", aa.n, "order polynomial")->required();
    analyze->add_option("--q", aa.q, "field polynomial (default n+t-1)");
    analyze->add_option("--k", aa.k, "embedding degree")->required();
    analyze->add_option("--d", aa.d, "discriminant for a witness search");

    PellArgs pa;
    auto* pell = app.add_subcommand("pell", "norm equation u^2 - D'v^2 = T");
    pell->add_option("--dprime", pa.dprime, "non-square radicand D'")->required();
    pell->add_option("--t", pa.t, "right-hand side T");
    pell->add_option("--count", pa.count, "solutions to print")->capture_default_str();
    pell->add_option("--mod-u", pa.mod_u, "u = R (mod M), as M,R");
    pell->add_option("--mod-v", pa.mod_v, "v = R (mod M), as M,R");
    pell->add_flag("--fundamental-unit", pa.fundamental, "print the fundamental unit only");
    pell->add_option("--max-period", pa.max_period, "continued-fraction period cap")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*search) return run_search_cmd(*search, sa);
        if (*verify) return run_verify_cmd(*verify, va);
        if (*analyze) return run_analyze_cmd(aa);
        if (*pell) return run_pell_cmd(pa);
    } catch (const UsageError& e) {
        std::cerr << "pforge: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "pforge: " << e.what() << '\n';
        return kFailure;
    }
    return kUsage;
}
