#include "knormal/fixtures.hpp"

#include <fstream>

#include <json.hpp>

#include "knormal/intarith.hpp"

namespace knormal {

namespace {

nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FixtureError("cannot open fixture: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw FixtureError("malformed fixture " + path + ": " + e.what());
    }
    return j;
}

std::vector<std::pair<std::uint64_t, unsigned>> parse_pairs(const nlohmann::json& arr,
                                                            const std::string& path) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    if (!arr.is_array()) throw FixtureError("expected pair array in " + path);
    for (const auto& item : arr) {
        if (!item.is_array() || item.size() != 2)
            throw FixtureError("expected [q, n] entries in " + path);
        out.emplace_back(item[0].get<std::uint64_t>(), item[1].get<unsigned>());
    }
    return out;
}

} // namespace

PairList load_pair_list(const std::string& path) {
    nlohmann::json j = load_json(path);
    PairList list;
    if (!j.contains("pairs")) throw FixtureError("fixture missing 'pairs': " + path);
    list.pairs = parse_pairs(j["pairs"], path);
    if (j.contains("expected_search_failures"))
        list.expected_search_failures = parse_pairs(j["expected_search_failures"], path);
    return list;
}

Table1Thresholds load_table1(const std::string& path) {
    nlohmann::json j = load_json(path);
    Table1Thresholds t;
    if (!j.contains("ge_columns") || !j.contains("eq_columns"))
        throw FixtureError("fixture missing threshold columns: " + path);
    t.ge_columns = parse_pairs(j["ge_columns"], path);
    t.eq_columns = parse_pairs(j["eq_columns"], path);
    return t;
}

std::vector<N2Expectation> load_n2_expectations(const std::string& path) {
    nlohmann::json j = load_json(path);
    if (!j.contains("entries")) throw FixtureError("fixture missing 'entries': " + path);
    std::vector<N2Expectation> out;
    for (const auto& item : j["entries"]) {
        if (!item.contains("q") || !item.contains("expected"))
            throw FixtureError("bad n2 entry in " + path);
        out.push_back({item["q"].get<std::uint64_t>(), item["expected"].get<std::string>()});
    }
    return out;
}

std::pair<std::uint64_t, unsigned> split_prime_power(std::uint64_t q) {
    if (q < 2) throw NotPrime("split_prime_power: q >= 2 required");
    IntFactorization f = factorize(Int(static_cast<unsigned long>(q)));
    if (f.factors.size() != 1)
        throw NotPrime("split_prime_power: " + std::to_string(q) + " is not a prime power");
    const auto& [p, e] = *f.factors.begin();
    return {p.get_ui(), e};
}

} // namespace knormal
