/**
 * Problem-file schema and JSON/DOT emitters for the CLI.
 *
 * Problem files:
 *   { "kind": "monomial_map", "n": 3, "d": 3, "exponents": [[...], ...] }
 *   { "kind": "binomial_system", "n": 4, "inequalities": [{"u": [...], "v": [...]}, ...] }
 *
 * Exponent entries are non-negative integers, emitted as JSON numbers when
 * they fit in 64 bits and as decimal strings otherwise; both forms parse.
 * Coordinate indices in emitted supports are 1-based. All emitters sort
 * canonically, so byte-identical output across runs is part of the contract.
 */
#pragma once

#include "toricube/cw.hpp"
#include "toricube/oracle.hpp"
#include "toricube/toric.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace toricube::io {

using json = nlohmann::ordered_json;

/// Malformed-input error carrying the offending field.
class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, const std::string& message)
        : std::runtime_error("field '" + field + "': " + message), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

inline json int_to_json(const Int& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(v);
    return v.str();
}

inline Int int_from_json(const json& j, const std::string& field) {
    if (j.is_number_integer()) return Int(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Int(j.get<std::string>());
        } catch (const std::exception&) {
            throw ParseError(field, "not a decimal integer string");
        }
    }
    throw ParseError(field, "expected an integer or a decimal integer string");
}

inline IntVec intvec_from_json(const json& j, const std::string& field, int expected_len) {
    if (!j.is_array()) throw ParseError(field, "expected an array");
    if (expected_len >= 0 && static_cast<int>(j.size()) != expected_len)
        throw ParseError(field, "expected " + std::to_string(expected_len) + " entries");
    IntVec v(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v[i] = int_from_json(j[i], field + "[" + std::to_string(i) + "]");
    return v;
}

inline json intvec_to_json(const IntVec& v) {
    json a = json::array();
    for (std::size_t i = 0; i < v.size(); ++i) a.push_back(int_to_json(v[i]));
    return a;
}

inline json rays_to_json(const std::vector<IntVec>& rays) {
    json a = json::array();
    for (const auto& r : rays) a.push_back(intvec_to_json(r));
    return a;
}

inline json support_to_json(const std::vector<int>& s) {
    json a = json::array();
    for (int i : s) a.push_back(i + 1);  // 1-based coordinates externally
    return a;
}

struct ProblemFile {
    std::variant<MonomialMap, BinomialSystem> payload;

    bool is_map() const { return std::holds_alternative<MonomialMap>(payload); }
    const MonomialMap& map() const { return std::get<MonomialMap>(payload); }
    const BinomialSystem& system() const { return std::get<BinomialSystem>(payload); }
    ToricCube cube() const {
        return is_map() ? ToricCube::from_map(map()) : ToricCube::from_system(system());
    }
};

inline int int_field(const json& j, const std::string& field) {
    if (!j.contains(field)) throw ParseError(field, "missing");
    if (!j[field].is_number_integer()) throw ParseError(field, "expected an integer");
    return j[field].get<int>();
}

inline ProblemFile parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("(document)", e.what());
    }
    if (!j.is_object()) throw ParseError("(document)", "expected a JSON object");
    if (!j.contains("kind")) throw ParseError("kind", "missing");
    if (!j["kind"].is_string())
        throw ParseError("kind", "expected \"monomial_map\" or \"binomial_system\"");
    const std::string kind = j["kind"].get<std::string>();
    const int n = int_field(j, "n");
    if (n < 0) throw ParseError("n", "must be non-negative");
    if (kind == "monomial_map") {
        const int d = int_field(j, "d");
        if (d < 0) throw ParseError("d", "must be non-negative");
        if (!j.contains("exponents") || !j["exponents"].is_array())
            throw ParseError("exponents", "expected an array of rows");
        if (static_cast<int>(j["exponents"].size()) != n)
            throw ParseError("exponents", "expected " + std::to_string(n) + " rows");
        std::vector<IntVec> rows;
        for (int r = 0; r < n; ++r) {
            IntVec row = intvec_from_json(j["exponents"][static_cast<std::size_t>(r)],
                                          "exponents[" + std::to_string(r) + "]", d);
            if (!row.nonneg())
                throw ParseError("exponents[" + std::to_string(r) + "]", "entries must be non-negative");
            rows.push_back(std::move(row));
        }
        return ProblemFile{MonomialMap(n, d, std::move(rows))};
    }
    if (kind == "binomial_system") {
        if (!j.contains("inequalities") || !j["inequalities"].is_array())
            throw ParseError("inequalities", "expected an array");
        std::vector<BinomialInequality> ineqs;
        for (std::size_t i = 0; i < j["inequalities"].size(); ++i) {
            const json& q = j["inequalities"][i];
            const std::string at = "inequalities[" + std::to_string(i) + "]";
            if (!q.is_object() || !q.contains("u") || !q.contains("v"))
                throw ParseError(at, "expected an object with fields 'u' and 'v'");
            IntVec u = intvec_from_json(q["u"], at + ".u", n);
            IntVec v = intvec_from_json(q["v"], at + ".v", n);
            if (!u.nonneg()) throw ParseError(at + ".u", "entries must be non-negative");
            if (!v.nonneg()) throw ParseError(at + ".v", "entries must be non-negative");
            ineqs.emplace_back(std::move(u), std::move(v));
        }
        return ProblemFile{BinomialSystem(n, std::move(ineqs))};
    }
    throw ParseError("kind", "expected \"monomial_map\" or \"binomial_system\"");
}

inline json system_to_json(const BinomialSystem& s) {
    std::vector<BinomialInequality> sorted = s.ineqs;
    std::sort(sorted.begin(), sorted.end());
    json j;
    j["kind"] = "binomial_system";
    j["n"] = s.n;
    json list = json::array();
    for (const auto& q : sorted) {
        json e;
        e["u"] = intvec_to_json(q.u);
        e["v"] = intvec_to_json(q.v);
        list.push_back(std::move(e));
    }
    j["inequalities"] = std::move(list);
    return j;
}

inline json map_to_json(const MonomialMap& m) {
    json j;
    j["kind"] = "monomial_map";
    j["n"] = m.n;
    j["d"] = m.d;
    json rows = json::array();
    for (const auto& r : m.rows) rows.push_back(intvec_to_json(r));
    j["exponents"] = std::move(rows);
    return j;
}

inline json strata_to_json(int n, const std::vector<Stratum>& sts) {
    json list = json::array();
    for (const auto& st : sts) {
        json e;
        e["support"] = support_to_json(st.support);
        e["present"] = st.present;
        if (st.present) e["rays"] = rays_to_json(st.cone->rays());
        list.push_back(std::move(e));
    }
    json j;
    j["n"] = n;
    j["strata"] = std::move(list);
    return j;
}

inline json char_domain_to_json(const CharacteristicDomain& cd) {
    json j;
    json poset = json::array();
    for (std::size_t i = 0; i < cd.poset.elements.size(); ++i) {
        json e;
        json idx = json::array();
        for (int r : cd.poset.elements[i]) idx.push_back(r + 1);
        e["rays"] = std::move(idx);
        e["dim"] = cd.poset.dims[i];
        poset.push_back(std::move(e));
    }
    j["poset"] = std::move(poset);
    j["base_rays"] = rays_to_json(cd.base_rays);
    j["subdivision_rays"] = rays_to_json(cd.subdivision_rays);
    j["sd_exponents"] = map_to_json(cd.sd)["exponents"];
    json chains = json::array();
    for (const auto& c : cd.chains) {
        json chain = json::array();
        for (int e : c) chain.push_back(e + 1);
        chains.push_back(std::move(chain));
    }
    j["maximal_chains"] = std::move(chains);
    return j;
}

inline json complex_to_json(const CWComplex& x, bool char_domains, bool scaled_rays) {
    json j;
    j["n"] = x.n;
    j["cell_count"] = static_cast<int>(x.cells.size());
    j["f_vector"] = x.f_vector();
    j["euler"] = euler(x);
    j["refinement_events"] = x.refinement_events;
    json cells = json::array();
    for (const auto& c : x.cells) {
        json e;
        e["id"] = c.id;
        e["support"] = support_to_json(c.support);
        e["dim"] = c.dim;
        e["rays"] = rays_to_json(c.cone.rays());
        if (char_domains && c.dim >= 1) e["char_domain"] = char_domain_to_json(characteristic_domain(c.cone, scaled_rays));
        cells.push_back(std::move(e));
    }
    j["cells"] = std::move(cells);
    json edges = json::array();
    for (auto [lo, hi] : x.covers) {
        json e = json::array();
        e.push_back(lo + 1);
        e.push_back(hi + 1);
        edges.push_back(std::move(e));
    }
    j["cover_edges"] = std::move(edges);
    return j;
}

inline json report_to_json(const RegularityReport& rep) {
    json j;
    j["pass"] = rep.pass;
    j["graded"] = rep.graded;
    j["diamond"] = rep.diamond;
    j["edges_two_endpoints"] = rep.edges_two_endpoints;
    j["total_euler"] = rep.total_euler;
    j["total_euler_ok"] = rep.total_euler_ok;
    json cells = json::array();
    for (const auto& ck : rep.cells) {
        json e;
        e["id"] = ck.id;
        e["dim"] = ck.dim;
        e["closed_euler"] = ck.closed_euler;
        e["boundary_euler"] = ck.boundary_euler;
        e["euler_ok"] = ck.euler_ok;
        e["boundary_ok"] = ck.boundary_ok;
        cells.push_back(std::move(e));
    }
    j["cells"] = std::move(cells);
    return j;
}

/// Hasse diagram: nodes sorted by (dim, id), cover edges as lexicographically
/// sorted lines, rankdir bottom-to-top.
inline std::string poset_dot(const CWComplex& x) {
    std::ostringstream out;
    out << "digraph {\n  rankdir=BT;\n";
    std::vector<std::pair<int, int>> order;  // (dim, id)
    for (const auto& c : x.cells) order.emplace_back(c.dim, c.id);
    std::sort(order.begin(), order.end());
    for (auto [d, id] : order)
        out << "  \"C" << id << "\" [label=\"C" << id << " dim=" << d << "\"];\n";
    std::vector<std::string> edges;
    for (auto [lo, hi] : x.covers) {
        std::ostringstream e;
        e << "  \"C" << (lo + 1) << "\" -> \"C" << (hi + 1) << "\";\n";
        edges.push_back(e.str());
    }
    std::sort(edges.begin(), edges.end());
    for (const auto& e : edges) out << e;
    out << "}\n";
    return out.str();
}

inline std::string rat_to_string(const Rat& r) {
    std::ostringstream out;
    out << r;
    return out.str();
}

inline json point_to_json(const std::vector<Rat>& x) {
    json a = json::array();
    for (const auto& c : x) a.push_back(rat_to_string(c));
    return a;
}

}  // namespace toricube::io
