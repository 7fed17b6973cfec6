/**
 * Toric-cube algebra: binomial systems, monomial maps, the log/exp
 * correspondence, implicitization, parametrization, cubification, strata,
 * and exact membership.
 *
 * Conventions: a binomial inequality x^u <= x^v corresponds in negated-log
 * space (y = -log x) to (u - v) . y >= 0, and 0^0 = 1 throughout. Inequality
 * exponent pairs are stored verbatim; cancelling a common variable from both
 * sides changes the solution set where that variable is zero.
 */
#pragma once

#include "toricube/cone.hpp"
#include "toricube/exact.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

namespace toricube {

/// Cap on ambient dimension for the 2^n support enumerations.
inline constexpr int kDefaultMaxSupportDim = 12;

struct BinomialInequality {
    IntVec u, v;  // x^u <= x^v

    BinomialInequality(IntVec lhs, IntVec rhs) : u(std::move(lhs)), v(std::move(rhs)) {
        if (u.size() != v.size()) throw std::invalid_argument("binomial inequality: length mismatch");
        if (!u.nonneg() || !v.nonneg())
            throw std::invalid_argument("binomial inequality: exponents must be non-negative");
    }
    friend bool operator==(const BinomialInequality& a, const BinomialInequality& b) {
        return a.u == b.u && a.v == b.v;
    }
    friend bool operator<(const BinomialInequality& a, const BinomialInequality& b) {
        return a.u < b.u || (a.u == b.u && a.v < b.v);
    }
};

/// Finite conjunction of binomial inequalities on [0,1]^n; the empty system
/// denotes the whole cube.
struct BinomialSystem {
    int n = 0;
    std::vector<BinomialInequality> ineqs;

    BinomialSystem() = default;
    explicit BinomialSystem(int dim) : n(dim) {}
    BinomialSystem(int dim, std::vector<BinomialInequality> list) : n(dim), ineqs(std::move(list)) {
        for (const auto& q : ineqs)
            if (static_cast<int>(q.u.size()) != n)
                throw std::invalid_argument("binomial system: inequality of wrong length");
    }
};

/// Coordinatewise monomial map [0,1]^d -> [0,1]^n; row j of the exponent
/// matrix is the exponent vector of the j-th coordinate monomial.
struct MonomialMap {
    int n = 0, d = 0;
    std::vector<IntVec> rows;  // n rows of length d

    MonomialMap() = default;
    MonomialMap(int n_, int d_, std::vector<IntVec> rows_) : n(n_), d(d_), rows(std::move(rows_)) {
        if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("monomial map: wrong row count");
        for (const auto& r : rows) {
            if (static_cast<int>(r.size()) != d) throw std::invalid_argument("monomial map: ragged rows");
            if (!r.nonneg()) throw std::invalid_argument("monomial map: exponents must be non-negative");
        }
    }

    IntVec column(int k) const {
        IntVec c(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) c[static_cast<std::size_t>(j)] = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        return c;
    }

    /// Exact evaluation at a rational parameter point, with 0^0 = 1.
    std::vector<Rat> eval(const std::vector<Rat>& t) const {
        if (static_cast<int>(t.size()) != d) throw std::invalid_argument("monomial map: wrong parameter count");
        std::vector<Rat> x(static_cast<std::size_t>(n), Rat(1));
        for (int j = 0; j < n; ++j) {
            Rat prod = 1;
            for (int k = 0; k < d; ++k) {
                const Int& e = rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
                if (e == 0) continue;
                if (t[static_cast<std::size_t>(k)] == 0) {
                    prod = 0;
                    break;
                }
                const auto exp = static_cast<unsigned>(e);
                prod *= Rat(boost::multiprecision::pow(rat_num(t[static_cast<std::size_t>(k)]), exp),
                            boost::multiprecision::pow(rat_den(t[static_cast<std::size_t>(k)]), exp));
            }
            x[static_cast<std::size_t>(j)] = prod;
        }
        return x;
    }
};

/// x^u with exact rationals and 0^0 = 1.
inline Rat monomial_eval(const std::vector<Rat>& x, const IntVec& u) {
    Rat prod = 1;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u[i] == 0) continue;
        if (x[i] == 0) return Rat(0);
        const auto e = static_cast<unsigned>(u[i]);
        prod *= Rat(boost::multiprecision::pow(rat_num(x[i]), e),
                    boost::multiprecision::pow(rat_den(x[i]), e));
    }
    return prod;
}

/// Cone generated by the d columns of the exponent matrix: the image of the
/// positive orthant in negated-log space.
inline Cone log_cone_of_map(const MonomialMap& m) {
    std::vector<IntVec> cols;
    for (int k = 0; k < m.d; ++k) {
        IntVec c = m.column(k);
        if (!c.is_zero()) cols.push_back(std::move(c));
    }
    return Cone::from_rays(m.n, std::move(cols));
}

/// H-cone { y >= 0 } intersected with (u - v) . y >= 0 per inequality.
inline Cone cone_of_system(const BinomialSystem& s) {
    std::vector<IntVec> h;
    for (int i = 0; i < s.n; ++i) {
        IntVec e(static_cast<std::size_t>(s.n));
        e[static_cast<std::size_t>(i)] = 1;
        h.push_back(std::move(e));
    }
    for (const auto& q : s.ineqs) {
        IntVec w = q.u - q.v;
        if (!w.is_zero()) h.push_back(std::move(w));
    }
    return Cone::from_ineqs(s.n, std::move(h));
}

/// Toric cube, represented by its log-cone D in R^n_{>=0}: the cube is the
/// closure of exp(-D) within [0,1]^n.
class ToricCube {
public:
    ToricCube(int n, Cone log_cone) : n_(n), d_(std::move(log_cone)) {
        if (d_.ambient_dim() != n) throw std::invalid_argument("toric cube: ambient dimension mismatch");
        if (!d_.nonneg()) throw std::invalid_argument("toric cube: log-cone must lie in the non-negative orthant");
    }
    static ToricCube from_map(const MonomialMap& m) { return ToricCube(m.n, log_cone_of_map(m)); }
    static ToricCube from_system(const BinomialSystem& s) { return ToricCube(s.n, cone_of_system(s)); }

    int n() const { return n_; }
    const Cone& log_cone() const { return d_; }

private:
    int n_;
    Cone d_;
};

namespace detail {

inline std::vector<int> complement(const std::vector<int>& s, int n) {
    std::vector<int> c;
    std::vector<bool> in(static_cast<std::size_t>(n), false);
    for (int i : s) in[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < n; ++i)
        if (!in[static_cast<std::size_t>(i)]) c.push_back(i);
    return c;
}

/// Closure rule on a generating ray set: the support-S stratum is present iff
/// the supports of the rays vanishing on S cover the complement of S.
inline bool stratum_present(const std::vector<IntVec>& rays, const std::vector<int>& s, int n) {
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (const auto& r : rays) {
        bool vanishes = true;
        for (int i : s)
            if (r[static_cast<std::size_t>(i)] != 0) { vanishes = false; break; }
        if (!vanishes) continue;
        for (int j = 0; j < n; ++j)
            if (r[static_cast<std::size_t>(j)] != 0) covered[static_cast<std::size_t>(j)] = true;
    }
    std::vector<bool> in_s(static_cast<std::size_t>(n), false);
    for (int i : s) in_s[static_cast<std::size_t>(i)] = true;
    for (int j = 0; j < n; ++j)
        if (!in_s[static_cast<std::size_t>(j)] && !covered[static_cast<std::size_t>(j)]) return false;
    return true;
}

/// All present supports, enumerated sparsely over subsets of the generating
/// rays (a support is present iff it equals the universe minus a union of ray
/// supports). Returns sorted-by-(size,lex) vector of sorted index sets.
inline std::vector<std::vector<int>> present_supports(const std::vector<IntVec>& rays, int n) {
    std::set<std::vector<int>> out;
    const std::size_t k = rays.size();
    if (k > 20) throw std::invalid_argument("present_supports: too many rays for subset enumeration");
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<bool> off(static_cast<std::size_t>(n), false);
        for (std::size_t i = 0; i < k; ++i)
            if (mask & (1u << i))
                for (int j = 0; j < n; ++j)
                    if (rays[i][static_cast<std::size_t>(j)] != 0) off[static_cast<std::size_t>(j)] = true;
        std::vector<int> s;
        for (int j = 0; j < n; ++j)
            if (!off[static_cast<std::size_t>(j)]) s.push_back(j);
        out.insert(std::move(s));
    }
    std::vector<std::vector<int>> v(out.begin(), out.end());
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.size() < b.size() || (a.size() == b.size() && a < b);
    });
    return v;
}

inline void check_support_cap(int n, int cap) {
    if (n > cap) throw std::invalid_argument("support enumeration over 2^n exceeds the configured cap");
}

inline std::vector<std::vector<int>> all_subsets_sorted(int n) {
    std::vector<std::vector<int>> subsets;
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        std::vector<int> s;
        for (int j = 0; j < n; ++j)
            if (mask & (1ull << j)) s.push_back(j);
        subsets.push_back(std::move(s));
    }
    std::sort(subsets.begin(), subsets.end(), [](const auto& a, const auto& b) {
        return a.size() < b.size() || (a.size() == b.size() && a < b);
    });
    return subsets;
}

}  // namespace detail

/// Constant-support slice of a toric cube: present iff the closure rule
/// holds, in which case its log-image is the projection of the log-cone.
struct Stratum {
    std::vector<int> support;
    bool present = false;
    std::optional<Cone> cone;  // in R^S, only when present
};

/// One stratum per subset of {0..n-1}, ordered by (size, lex).
inline std::vector<Stratum> strata(const ToricCube& cube, int max_support_dim = kDefaultMaxSupportDim) {
    detail::check_support_cap(cube.n(), max_support_dim);
    const auto& rays = cube.log_cone().rays();
    std::vector<Stratum> out;
    for (const auto& s : detail::all_subsets_sorted(cube.n())) {
        Stratum st;
        st.support = s;
        st.present = detail::stratum_present(rays, s, cube.n());
        if (st.present) st.cone = project(cube.log_cone(), s);
        out.push_back(std::move(st));
    }
    return out;
}

/// Exact membership: all inequalities hold at the rational point (0^0 = 1).
inline bool member(const std::vector<Rat>& x, const BinomialSystem& s) {
    if (static_cast<int>(x.size()) != s.n) throw std::invalid_argument("member: dimension mismatch");
    for (const Rat& c : x)
        if (c < 0 || c > 1) throw std::invalid_argument("member: coordinate outside [0,1]");
    for (const auto& q : s.ineqs)
        if (monomial_eval(x, q.u) > monomial_eval(x, q.v)) return false;
    return true;
}

/// Log-cone (in R^S) of the solutions of s with support exactly S, or
/// nullopt when that slice is empty. Per inequality x^u <= x^v: if u has a
/// variable outside S the inequality drops (left side is 0); otherwise, if v
/// has one, the slice is empty; otherwise the linear form survives.
inline std::optional<Cone> stratum_restriction(const BinomialSystem& s, const std::vector<int>& sup) {
    std::vector<bool> in_s(static_cast<std::size_t>(s.n), false);
    for (int i : sup) {
        if (i < 0 || i >= s.n) throw std::invalid_argument("stratum_restriction: support index out of range");
        in_s[static_cast<std::size_t>(i)] = true;
    }
    std::vector<IntVec> h;
    for (std::size_t k = 0; k < sup.size(); ++k) {
        IntVec e(sup.size());
        e[k] = 1;
        h.push_back(std::move(e));
    }
    for (const auto& q : s.ineqs) {
        bool u_outside = false, v_outside = false;
        for (int j = 0; j < s.n; ++j) {
            if (in_s[static_cast<std::size_t>(j)]) continue;
            if (q.u[static_cast<std::size_t>(j)] != 0) u_outside = true;
            if (q.v[static_cast<std::size_t>(j)] != 0) v_outside = true;
        }
        if (u_outside) continue;           // 0 <= x^v always
        if (v_outside) return std::nullopt;  // 0 < x^u <= 0 impossible
        IntVec w(sup.size());
        bool zero = true;
        for (std::size_t k = 0; k < sup.size(); ++k) {
            w[k] = q.u[static_cast<std::size_t>(sup[k])] - q.v[static_cast<std::size_t>(sup[k])];
            if (w[k] != 0) zero = false;
        }
        if (!zero) h.push_back(std::move(w));
    }
    return Cone::from_ineqs(static_cast<int>(sup.size()), std::move(h));
}

/// Solution-set equality, checked stratum by stratum.
inline bool system_equiv(const BinomialSystem& a, const BinomialSystem& b,
                         int max_support_dim = kDefaultMaxSupportDim) {
    if (a.n != b.n) throw std::invalid_argument("system_equiv: dimension mismatch");
    detail::check_support_cap(a.n, max_support_dim);
    for (const auto& s : detail::all_subsets_sorted(a.n)) {
        auto ca = stratum_restriction(a, s);
        auto cb = stratum_restriction(b, s);
        if (ca.has_value() != cb.has_value()) return false;
        if (ca && !cone_equal(*ca, *cb)) return false;
    }
    return true;
}

namespace detail {

/// Binomial inequality from a valid linear form, skipping forms that are
/// trivial on the cube (non-negative vectors give x^u <= 1).
inline std::optional<BinomialInequality> binomial_from_form(const IntVec& w) {
    IntVec u(w.size()), v(w.size());
    bool neg = false;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] > 0) u[i] = w[i];
        if (w[i] < 0) {
            v[i] = -w[i];
            neg = true;
        }
    }
    if (!neg) return std::nullopt;
    return BinomialInequality(std::move(u), std::move(v));
}

inline IntVec lift_form(const IntVec& w, const std::vector<int>& sup, int n) {
    IntVec full(static_cast<std::size_t>(n));
    for (std::size_t k = 0; k < sup.size(); ++k) full[static_cast<std::size_t>(sup[k])] = w[k];
    return full;
}

}  // namespace detail

/// Cubification: a system cutting out exactly the closure of the positive
/// solutions of s. Facets of the log-cone, plus a killer inequality for each
/// absent stratum not already excluded, plus the lifted facet inequalities of
/// each present stratum's projected cone. The output is a valid answer, not a
/// canonical one.
inline BinomialSystem cubify(const BinomialSystem& s, int max_support_dim = kDefaultMaxSupportDim) {
    detail::check_support_cap(s.n, max_support_dim);
    const Cone d = cone_of_system(s);
    BinomialSystem out(s.n);
    std::set<BinomialInequality> seen;
    auto emit = [&](const std::optional<BinomialInequality>& q) {
        if (!q) return;
        if (seen.insert(*q).second) out.ineqs.push_back(*q);
    };
    for (const auto& w : d.ineqs()) emit(detail::binomial_from_form(w));
    const auto& rays = d.rays();
    for (const auto& sup : detail::all_subsets_sorted(s.n)) {
        if (detail::stratum_present(rays, sup, s.n)) {
            const Cone p = project(d, sup);
            for (const auto& w : p.ineqs())
                emit(detail::binomial_from_form(detail::lift_form(w, sup, s.n)));
        } else {
            const auto slice = stratum_restriction(out, sup);
            if (!slice) continue;  // already excluded
            auto w = killer_certificate(d, sup);
            if (!w) throw std::logic_error("cubify: absent stratum without killer certificate");
            emit(detail::binomial_from_form(*w));
        }
    }
    return out;
}

/// Implicitization: a binomial system whose solution set equals the image of
/// the map, exactly on all strata.
inline BinomialSystem implicitize(const MonomialMap& m, int max_support_dim = kDefaultMaxSupportDim) {
    const Cone d = log_cone_of_map(m);
    BinomialSystem base(m.n);
    for (const auto& w : d.ineqs()) {
        auto q = detail::binomial_from_form(w);
        if (q) base.ineqs.push_back(*q);
    }
    return cubify(base, max_support_dim);
}

/// Parametrization: columns are the extreme rays (primitive, sorted) of the
/// system's log-cone.
inline MonomialMap parametrize(const BinomialSystem& s) {
    const Cone d = cone_of_system(s);
    const auto& rays = d.rays();
    const int dd = static_cast<int>(rays.size());
    std::vector<IntVec> rows;
    for (int j = 0; j < s.n; ++j) {
        IntVec row(static_cast<std::size_t>(dd));
        for (int k = 0; k < dd; ++k) row[static_cast<std::size_t>(k)] = rays[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
        rows.push_back(std::move(row));
    }
    return MonomialMap(s.n, dd, std::move(rows));
}

/// Is the solution set already the closure of its positive points?
inline bool is_cube(const BinomialSystem& s, int max_support_dim = kDefaultMaxSupportDim) {
    return system_equiv(s, cubify(s, max_support_dim), max_support_dim);
}

/// Cube whose interior is the intersection of the two interiors, or nullopt
/// when the relative interiors of the log-cones do not meet.
inline std::optional<ToricCube> intersect_interiors(const ToricCube& a, const ToricCube& b) {
    if (a.n() != b.n()) throw std::invalid_argument("intersect_interiors: dimension mismatch");
    const Cone c = intersect(a.log_cone(), b.log_cone());
    const IntVec p = c.relint_point();
    if (!a.log_cone().in_relint(p) || !b.log_cone().in_relint(p)) return std::nullopt;
    return ToricCube(a.n(), c);
}

}  // namespace toricube
