#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "knormal/charsum.hpp"
#include "knormal/search.hpp"

using json = nlohmann::ordered_json;
using namespace knormal;

namespace {

constexpr int kExitExists = 0;
constexpr int kExitNotExists = 1;
constexpr int kExitUndetermined = 2;
constexpr int kExitUsage = 64;
constexpr int kExitMissingFixture = 66;

struct RunConfig {
    std::uint64_t q = 0;
    unsigned n = 0;
    unsigned k = 0;
    std::string mode;
    std::uint64_t max_exhaustive = 100000000;
    unsigned max_factor_bits = 128;
    unsigned workers = 4;
    std::string format = "json";
    std::string fixtures = KNORMAL_DATA_DIR;
    std::uint64_t seed = 0;
    std::string table;
    std::string q_range, n_range;
};

SearchOptions search_options(const RunConfig& cfg) {
    SearchOptions opts;
    opts.max_exhaustive = Int(static_cast<unsigned long>(cfg.max_exhaustive));
    opts.workers = cfg.workers;
    return opts;
}

json int_json(const Int& v) { return v.get_str(); }

json rat_json(const Rat& v) {
    return json{{"num", v.get_num().get_str()}, {"den", v.get_den().get_str()}};
}

json poly_json(const FqPoly& f) {
    json a = json::array();
    for (std::size_t i = 0; i < f.c.size(); ++i) a.push_back(f.c[i]);
    return a;
}

json sieve_json(const SieveReport& r) {
    json out;
    out["q"] = r.q;
    out["n"] = r.n;
    out["mode"] = to_string(r.mode);
    out["outcome"] = to_string(r.outcome);
    json primes = json::array();
    for (const auto& p : r.sieving_primes) primes.push_back(int_json(p));
    out["sieving_primes"] = primes;
    out["s"] = r.s;
    out["m"] = r.m;
    out["delta"] = rat_json(r.delta);
    out["multiplier"] = rat_json(r.multiplier);
    out["exponent_e"] = r.exponent_e;
    out["lhs"] = r.lhs;
    out["rhs"] = r.rhs;
    out["w_q0"] = int_json(r.w_q0);
    out["w_poly"] = int_json(r.w_poly);
    return out;
}

std::string sieve_csv_header() { return "q,n,mode,outcome,s,delta_num,delta_den,lhs,rhs"; }

std::string sieve_csv_row(const SieveReport& r) {
    std::ostringstream os;
    os << r.q << ',' << r.n << ',' << to_string(r.mode) << ',' << to_string(r.outcome) << ','
       << r.s << ',' << r.delta.get_num().get_str() << ',' << r.delta.get_den().get_str() << ','
       << r.lhs << ',' << r.rhs;
    return os.str();
}

json witness_json(const Witness& w) {
    const ExtensionField* F = w.element.F;
    json field;
    field["p"] = F->p();
    field["t"] = F->t();
    field["n"] = F->n();
    if (F->t() > 1) {
        json bm = json::array();
        for (auto c : F->fq()->base_modulus()) bm.push_back(c);
        field["base_modulus"] = bm;
    } else {
        field["base_modulus"] = nullptr;
    }
    field["extension_modulus"] = poly_json(F->modulus());
    json out;
    out["exponent"] = w.exponent;
    json coords = json::array();
    for (auto c : w.element.coords) coords.push_back(c);
    out["element"] = coords;
    out["field"] = field;
    out["order_ok"] = w.order_ok;
    out["fqorder_ok"] = w.fqorder_ok;
    out["gcd_ok"] = w.gcd_ok;
    return out;
}

json search_json(const SearchResult& r) {
    json out;
    out["status"] = to_string(r.status);
    out["scanned_limit"] = r.scanned_limit;
    if (r.witness) out["witness"] = witness_json(*r.witness);
    return out;
}

json entry_json(const ReproduceEntry& e) {
    json out;
    out["q"] = e.q;
    out["n"] = e.n;
    out["ok"] = e.ok;
    out["skipped"] = e.skipped;
    if (!e.detail.empty()) out["detail"] = e.detail;
    if (e.sieve_outcome) out["sieve_outcome"] = to_string(*e.sieve_outcome);
    if (e.search_status) out["search_status"] = to_string(*e.search_status);
    if (e.witness) out["witness"] = witness_json(*e.witness);
    return out;
}

void emit(const json& out, const RunConfig& cfg, const std::vector<std::string>& csv_lines) {
    if (cfg.format == "csv") {
        for (const auto& line : csv_lines) std::cout << line << '\n';
    } else {
        std::cout << out.dump(2) << '\n';
    }
}

SieveMode default_mode(std::uint64_t p, unsigned n, unsigned k) {
    if (k == 0) return SieveMode::Normal0;
    if (n == 3 && p >= 5) return SieveMode::CubicOneNormal;
    return SieveMode::OneNormal;
}

int cmd_check_pair(const RunConfig& cfg) {
    auto [p, t] = split_prime_power(cfg.q);
    json out;
    out["command"] = "check-pair";
    out["q"] = cfg.q;
    out["n"] = cfg.n;
    out["k"] = cfg.k;
    out["seed"] = cfg.seed;

    std::optional<SieveMode> mode;
    if (!cfg.mode.empty())
        mode = sieve_mode_from_string(cfg.mode);
    else if (cfg.k <= 1)
        mode = default_mode(p, cfg.n, cfg.k);

    std::vector<std::string> csv{sieve_csv_header()};
    int exit_code = kExitUndetermined;
    bool settled = false;
    if (mode) {
        out["mode"] = to_string(*mode);
        try {
            SieveReport sr = run_sieve(p, t, cfg.n, *mode, cfg.max_factor_bits);
            out["sieve"] = sieve_json(sr);
            csv.push_back(sieve_csv_row(sr));
            if (sr.outcome == SieveOutcome::Success) {
                out["exists"] = true;
                exit_code = kExitExists;
                settled = true;
            }
        } catch (const CapExceeded& e) {
            out["sieve"] = nullptr;
            out["sieve_note"] = e.what();
        }
    } else {
        out["mode"] = nullptr;
        out["sieve"] = nullptr;
        out["sieve_note"] = "no sieve mode covers k >= 2; going straight to search";
    }

    if (!settled) {
        try {
            SearchResult res = find_2primitive_knormal(p, t, cfg.n, cfg.k, search_options(cfg));
            out["search"] = search_json(res);
            switch (res.status) {
                case SearchStatus::WitnessFound:
                    out["exists"] = true;
                    exit_code = kExitExists;
                    break;
                case SearchStatus::ExhaustedNoWitness:
                    out["exists"] = false;
                    exit_code = kExitNotExists;
                    break;
                case SearchStatus::CapReached:
                    out["exists"] = nullptr;
                    exit_code = kExitUndetermined;
                    break;
            }
        } catch (const CapExceeded& e) {
            out["search"] = nullptr;
            out["search_note"] = e.what();
            out["exists"] = nullptr;
            exit_code = kExitUndetermined;
        }
    }
    emit(out, cfg, csv);
    return exit_code;
}

int cmd_sieve(const RunConfig& cfg) {
    auto [p, t] = split_prime_power(cfg.q);
    SieveMode mode = cfg.mode.empty() ? SieveMode::Normal0 : sieve_mode_from_string(cfg.mode);
    json out;
    out["command"] = "sieve";
    try {
        SieveReport sr = run_sieve(p, t, cfg.n, mode, cfg.max_factor_bits);
        out["report"] = sieve_json(sr);
        emit(out, cfg, {sieve_csv_header(), sieve_csv_row(sr)});
        return sr.outcome == SieveOutcome::Success ? kExitExists : kExitNotExists;
    } catch (const CapExceeded& e) {
        out["report"] = nullptr;
        out["note"] = e.what();
        emit(out, cfg, {sieve_csv_header()});
        return kExitUndetermined;
    }
}

int cmd_search(const RunConfig& cfg) {
    auto [p, t] = split_prime_power(cfg.q);
    json out;
    out["command"] = "search";
    out["q"] = cfg.q;
    out["n"] = cfg.n;
    out["k"] = cfg.k;
    try {
        SearchResult res = find_2primitive_knormal(p, t, cfg.n, cfg.k, search_options(cfg));
        out["search"] = search_json(res);
        std::string row = std::to_string(cfg.q) + "," + std::to_string(cfg.n) + "," +
                          std::to_string(cfg.k) + "," + to_string(res.status) + "," +
                          (res.witness ? std::to_string(res.witness->exponent) : "");
        emit(out, cfg, {"q,n,k,status,exponent", row});
        switch (res.status) {
            case SearchStatus::WitnessFound: return kExitExists;
            case SearchStatus::ExhaustedNoWitness: return kExitNotExists;
            case SearchStatus::CapReached: return kExitUndetermined;
        }
    } catch (const CapExceeded& e) {
        out["search"] = nullptr;
        out["note"] = e.what();
        emit(out, cfg, {"q,n,k,status,exponent"});
    }
    return kExitUndetermined;
}

int cmd_trace_coverage(const RunConfig& cfg) {
    auto [p, t] = split_prime_power(cfg.q);
    json out;
    out["command"] = "trace-coverage";
    out["q"] = cfg.q;
    out["n"] = cfg.n;
    try {
        TraceCoverageResult res = trace_coverage(p, t, cfg.n, search_options(cfg));
        out["success"] = res.success;
        out["last_exponent"] = res.last_exponent;
        out["uncovered"] = res.uncovered;
        std::string row = std::to_string(cfg.q) + "," + std::to_string(cfg.n) + "," +
                          (res.success ? "Success" : "Fail") + "," +
                          std::to_string(res.last_exponent);
        emit(out, cfg, {"q,n,outcome,last_exponent", row});
        return res.success ? kExitExists : kExitNotExists;
    } catch (const CapExceeded& e) {
        out["success"] = nullptr;
        out["note"] = e.what();
        emit(out, cfg, {"q,n,outcome,last_exponent"});
        return kExitUndetermined;
    }
}

int cmd_reproduce(const RunConfig& cfg) {
    std::string name = cfg.table == "N2" ? "N2Lemma" : cfg.table;
    TableId table = table_id_from_string(name);
    ReproduceReport report;
    switch (table) {
        case TableId::S0:
            report = reproduce_s0(load_pair_list(cfg.fixtures + "/s0_pairs.json"),
                                  search_options(cfg));
            break;
        case TableId::Table2:
            report = reproduce_table2(load_pair_list(cfg.fixtures + "/table2_pairs.json"),
                                      search_options(cfg));
            break;
        case TableId::Table1:
            report = reproduce_table1(load_table1(cfg.fixtures + "/table1_thresholds.json"));
            break;
        case TableId::N2Lemma:
            report = reproduce_n2(load_n2_expectations(cfg.fixtures + "/n2_lemma.json"),
                                  search_options(cfg));
            break;
    }
    json out;
    out["command"] = "reproduce";
    out["table"] = to_string(report.table);
    out["pass"] = report.pass;
    out["checked"] = report.checked;
    out["mismatched"] = report.mismatched;
    out["skipped"] = report.skipped;
    json entries = json::array();
    for (const auto& e : report.entries) entries.push_back(entry_json(e));
    out["entries"] = entries;
    std::vector<std::string> csv{"q,n,ok,skipped,detail"};
    for (const auto& e : report.entries)
        csv.push_back(std::to_string(e.q) + "," + std::to_string(e.n) + "," +
                      (e.ok ? "1" : "0") + "," + (e.skipped ? "1" : "0") + "," + e.detail);
    emit(out, cfg, csv);
    return report.pass ? kExitExists : kExitNotExists;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) {
        std::uint64_t v = std::stoull(s);
        return {v, v};
    }
    return {std::stoull(s.substr(0, colon)), std::stoull(s.substr(colon + 1))};
}

int cmd_sweep(const RunConfig& cfg) {
    auto [q_lo, q_hi] = parse_range(cfg.q_range);
    auto [n_lo, n_hi] = parse_range(cfg.n_range);
    SieveMode mode = cfg.mode.empty() ? SieveMode::Normal0 : sieve_mode_from_string(cfg.mode);
    json out;
    out["command"] = "sweep";
    out["mode"] = to_string(mode);
    json entries = json::array();
    std::vector<std::string> csv{sieve_csv_header()};
    for (std::uint64_t q = q_lo | 1; q <= q_hi; q += 2) {
        std::uint64_t p;
        unsigned t;
        try {
            std::tie(p, t) = split_prime_power(q);
        } catch (const NotPrime&) {
            continue;
        }
        for (std::uint64_t n = n_lo; n <= n_hi; ++n) {
            try {
                SieveReport sr = run_sieve(p, t, static_cast<unsigned>(n), mode,
                                           cfg.max_factor_bits);
                entries.push_back(sieve_json(sr));
                csv.push_back(sieve_csv_row(sr));
            } catch (const CapExceeded& e) {
                json skip;
                skip["q"] = q;
                skip["n"] = n;
                skip["skipped"] = e.what();
                entries.push_back(skip);
            }
        }
    }
    out["entries"] = entries;
    emit(out, cfg, csv);
    return kExitExists;
}

int cmd_verify_identities(const RunConfig& cfg) {
    auto [p, t] = split_prime_power(cfg.q);
    const ExtensionField* F = ExtensionField::build(p, t, cfg.n, cfg.max_factor_bits);
    Limits limits;
    limits.exhaustive_cap = Int(static_cast<unsigned long>(cfg.max_exhaustive));
    limits.factor_cap_bits = cfg.max_factor_bits;

    json out;
    out["command"] = "verify-identities";
    out["q"] = cfg.q;
    out["n"] = cfg.n;
    bool all = true;
    json checks = json::array();

    const auto& cache = char_cache(F, limits);
    const auto& divisors = F->xn1_divisors();

    unsigned delta_fail = 0;
    for (std::size_t j = 0; j < divisors.size(); ++j) {
        Int phi = poly_phi(divisors[j]);
        if (Int(static_cast<unsigned long>(cache.delta_lists[j].size())) != phi) ++delta_fail;
    }
    checks.push_back({{"name", "delta_class_sizes"}, {"cases", divisors.size()},
                      {"failures", delta_fail}});
    all = all && delta_fail == 0;

    unsigned cross_fail = 0, cross_cases = 0;
    for (const Int& tt : sorted_divisors(F->order_factored())) {
        for (const auto& D : divisors) {
            ++cross_cases;
            if (!char_indicator_cross_check(F, tt, D)) ++cross_fail;
        }
    }
    checks.push_back({{"name", "freeness_indicators"}, {"cases", cross_cases},
                      {"failures", cross_fail}});
    all = all && cross_fail == 0;

    unsigned trace_fail = 0, trace_cases = 0;
    for (unsigned m = 1; m <= cfg.n; ++m) {
        if (cfg.n % m != 0) continue;
        Int qm = pow_int(Int(static_cast<unsigned long>(cfg.q)), m);
        for (Int b(0); b < qm; ++b) {
            FieldElement beta = F->element_by_index(b);
            if (!F->in_subfield(beta, m)) continue;
            ++trace_cases;
            if (!trace_indicator_cross_check(F, m, beta)) ++trace_fail;
        }
    }
    checks.push_back({{"name", "trace_indicator"}, {"cases", trace_cases},
                      {"failures", trace_fail}});
    all = all && trace_fail == 0;

    out["checks"] = checks;
    out["all_pass"] = all;
    std::vector<std::string> csv{"name,cases,failures"};
    for (const auto& c : checks)
        csv.push_back(c["name"].get<std::string>() + "," + std::to_string(c["cases"].get<unsigned>()) +
                      "," + std::to_string(c["failures"].get<unsigned>()));
    emit(out, cfg, csv);
    return all ? kExitExists : kExitNotExists;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"2-primitive / k-normal element toolkit"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--max-exhaustive", cfg.max_exhaustive, "exhaustive-scan cap")
            ->envname("KNORMAL_MAX_EXHAUSTIVE")
            ->check(CLI::PositiveNumber);
        sub->add_option("--max-factor-bits", cfg.max_factor_bits, "factorization cap in bits")
            ->envname("KNORMAL_MAX_FACTOR_BITS")
            ->check(CLI::PositiveNumber);
        sub->add_option("--workers", cfg.workers, "search worker threads")
            ->envname("KNORMAL_WORKERS")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "json|csv")
            ->envname("KNORMAL_FORMAT")
            ->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--fixtures", cfg.fixtures, "fixture directory")
            ->envname("KNORMAL_FIXTURES");
        sub->add_option("--seed", cfg.seed, "deterministic seed")->envname("KNORMAL_SEED");
    };
    auto add_q = [&](CLI::App* sub) {
        sub->add_option("--q", cfg.q, "field size (prime power)")
            ->envname("KNORMAL_Q")
            ->required()
            ->check(CLI::PositiveNumber);
    };
    auto add_n = [&](CLI::App* sub) {
        sub->add_option("--n", cfg.n, "extension degree")
            ->envname("KNORMAL_N")
            ->required()
            ->check(CLI::PositiveNumber);
    };

    CLI::App* check = app.add_subcommand("check-pair", "sieve then search one (q, n, k)");
    add_q(check);
    add_n(check);
    check->add_option("--k", cfg.k, "normality defect")->envname("KNORMAL_K")->required();
    check->add_option("--mode", cfg.mode, "sieve mode override")->envname("KNORMAL_MODE");
    add_common(check);

    CLI::App* sieve = app.add_subcommand("sieve", "run the prime sieve for one pair");
    add_q(sieve);
    add_n(sieve);
    sieve->add_option("--mode", cfg.mode, "sieve mode")->envname("KNORMAL_MODE");
    add_common(sieve);

    CLI::App* search = app.add_subcommand("search", "exhaustive witness search");
    add_q(search);
    add_n(search);
    search->add_option("--k", cfg.k, "normality defect")->envname("KNORMAL_K")->required();
    add_common(search);

    CLI::App* tc = app.add_subcommand("trace-coverage", "trace values of the order-(q^n-1)/2 class");
    add_q(tc);
    add_n(tc);
    add_common(tc);

    CLI::App* rep = app.add_subcommand("reproduce", "check a published table against fixtures");
    rep->add_option("--table", cfg.table, "S0|Table1|Table2|N2")
        ->envname("KNORMAL_TABLE")
        ->required()
        ->check(CLI::IsMember({"S0", "Table1", "Table2", "N2", "N2Lemma"}));
    add_common(rep);

    CLI::App* sweep = app.add_subcommand("sweep", "sieve a (q, n) grid");
    sweep->add_option("--q-range", cfg.q_range, "lo:hi")->required();
    sweep->add_option("--n-range", cfg.n_range, "lo:hi")->required();
    sweep->add_option("--mode", cfg.mode, "sieve mode")->envname("KNORMAL_MODE");
    add_common(sweep);

    CLI::App* vid = app.add_subcommand("verify-identities", "character-sum identity suite");
    add_q(vid);
    add_n(vid);
    add_common(vid);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (check->parsed()) return cmd_check_pair(cfg);
        if (sieve->parsed()) return cmd_sieve(cfg);
        if (search->parsed()) return cmd_search(cfg);
        if (tc->parsed()) return cmd_trace_coverage(cfg);
        if (rep->parsed()) return cmd_reproduce(cfg);
        if (sweep->parsed()) return cmd_sweep(cfg);
        if (vid->parsed()) return cmd_verify_identities(cfg);
    } catch (const FixtureError& e) {
        std::cerr << "fixture error: " << e.what() << '\n';
        return kExitMissingFixture;
    } catch (const CapExceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return kExitUndetermined;
    } catch (const NotPrime& e) {
        std::cerr << "invalid q: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionViolated& e) {
        std::cerr << "invalid arguments: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    }
    return kExitUsage;
}
