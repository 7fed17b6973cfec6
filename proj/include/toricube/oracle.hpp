/**
 * Independent brute-force verifiers, used by the test suites and the CLI
 * `verify` command. Nothing here calls the double description engine:
 * containment is direct inequality evaluation, projections go through
 * Fourier-Motzkin elimination, and ray enumeration solves tight subsystems.
 */
#pragma once

#include "toricube/exact.hpp"
#include "toricube/toric.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

namespace toricube::oracle {

/// Exact image of the full parameter grid {0, 1/res, ..., 1}^d.
struct GridSample {
    int n = 0;
    int res = 1;
    struct Point {
        std::vector<Rat> x;  // image point
        std::vector<Rat> t;  // parameters it came from
    };
    std::vector<Point> points;
};

inline GridSample grid_image(const MonomialMap& m, int res) {
    if (res < 1) throw std::invalid_argument("grid_image: resolution must be at least 1");
    double size = 1.0;
    for (int k = 0; k < m.d; ++k) size *= static_cast<double>(res);
    if (size > 1e6) throw std::invalid_argument("grid_image: res^d exceeds the 10^6 sample cap");
    GridSample g;
    g.n = m.n;
    g.res = res;
    std::vector<int> idx(static_cast<std::size_t>(m.d), 0);
    while (true) {
        GridSample::Point p;
        p.t.resize(static_cast<std::size_t>(m.d));
        for (int k = 0; k < m.d; ++k) p.t[static_cast<std::size_t>(k)] = Rat(idx[static_cast<std::size_t>(k)], res);
        p.x = m.eval(p.t);
        g.points.push_back(std::move(p));
        int k = 0;
        while (k < m.d && idx[static_cast<std::size_t>(k)] == res) {
            idx[static_cast<std::size_t>(k)] = 0;
            ++k;
        }
        if (k == m.d) break;
        ++idx[static_cast<std::size_t>(k)];
    }
    return g;
}

/// Supports realizable by the map: S(T) = { j : supp(row_j) in T } over all
/// parameter supports T.
inline std::set<std::vector<int>> achievable_supports(const MonomialMap& m) {
    std::set<std::vector<int>> out;
    if (m.d > 20) throw std::invalid_argument("achievable_supports: too many parameters");
    for (std::uint32_t mask = 0; mask < (1u << m.d); ++mask) {
        std::vector<int> s;
        for (int j = 0; j < m.n; ++j) {
            bool inside = true;
            for (int k = 0; k < m.d && inside; ++k)
                if (m.rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] != 0 && !(mask & (1u << k)))
                    inside = false;
            if (inside) s.push_back(j);
        }
        out.insert(std::move(s));
    }
    return out;
}

struct Violation {
    std::vector<Rat> x;
    std::vector<Rat> t;
};

/// Sample points that fail membership in the system; empty means pass.
inline std::vector<Violation> check_sample(const BinomialSystem& s, const GridSample& g) {
    if (s.n != g.n) throw std::invalid_argument("check_sample: dimension mismatch");
    std::vector<Violation> bad;
    for (const auto& p : g.points)
        if (!member(p.x, s)) bad.push_back({p.x, p.t});
    return bad;
}

/// Direct evaluation of an H-representation at an exact rational point.
inline bool fm_cone_contains(const std::vector<IntVec>& hrep, const std::vector<Rat>& y) {
    for (const auto& w : hrep)
        if (dot(w, y) < 0) return false;
    return true;
}

/// One Fourier-Motzkin elimination step: project out coordinate k.
inline std::vector<IntVec> fm_eliminate(const std::vector<IntVec>& hrep, int k) {
    std::vector<IntVec> zero, pos, neg;
    for (const auto& w : hrep) {
        const Int& c = w[static_cast<std::size_t>(k)];
        if (c == 0) zero.push_back(w);
        else if (c > 0) pos.push_back(w);
        else neg.push_back(w);
    }
    std::vector<IntVec> combined = zero;
    for (const auto& p : pos)
        for (const auto& q : neg)
            combined.push_back(p[static_cast<std::size_t>(k)] * q - q[static_cast<std::size_t>(k)] * p);
    std::vector<IntVec> out;
    for (const auto& w : combined) {
        IntVec r(w.size() - 1);
        std::size_t pos_out = 0;
        for (std::size_t j = 0; j < w.size(); ++j)
            if (static_cast<int>(j) != k) r[pos_out++] = w[j];
        if (!r.is_zero()) out.push_back(primitive(r));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// H-representation of the projection onto the sorted index set S, by
/// eliminating the complementary coordinates one at a time.
inline std::vector<IntVec> fm_project(std::vector<IntVec> hrep, int n, const std::vector<int>& s) {
    std::vector<bool> keep(static_cast<std::size_t>(n), false);
    for (int i : s) keep[static_cast<std::size_t>(i)] = true;
    for (int k = n - 1; k >= 0; --k)
        if (!keep[static_cast<std::size_t>(k)]) hrep = fm_eliminate(hrep, k);
    return hrep;
}

/// Extreme rays of a pointed H-cone by enumerating (n-1)-subsets of tight
/// constraints: a candidate direction is extreme iff it satisfies every
/// inequality and its tight set has rank n-1.
inline std::vector<IntVec> brute_extreme_rays(const std::vector<IntVec>& hrep, int n) {
    std::vector<IntVec> found;
    if (n == 0) return found;
    const std::size_t m = hrep.size();
    std::vector<int> pick;
    auto consider = [&](const std::vector<int>& subset) {
        std::vector<IntVec> rows;
        for (int i : subset) rows.push_back(hrep[static_cast<std::size_t>(i)]);
        const auto basis = kernel_basis(rows, static_cast<std::size_t>(n));
        if (basis.size() != 1) return;
        for (const IntVec& cand : {basis[0], -basis[0]}) {
            bool inside = true;
            std::vector<IntVec> tight;
            for (const auto& w : hrep) {
                const Int v = dot(w, cand);
                if (v < 0) { inside = false; break; }
                if (v == 0) tight.push_back(w);
            }
            if (!inside) continue;
            if (rank(tight, static_cast<std::size_t>(n)) == n - 1) found.push_back(cand);
        }
    };
    // all subsets of size n-1 (the empty subset handles n = 1)
    std::vector<int> idx(static_cast<std::size_t>(std::max(0, n - 1)));
    auto rec = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
        if (depth == idx.size()) {
            std::vector<int> subset(idx.begin(), idx.end());
            consider(subset);
            return;
        }
        for (std::size_t i = start; i < m; ++i) {
            idx[depth] = static_cast<int>(i);
            self(self, depth + 1, i + 1);
        }
    };
    if (idx.size() <= m) rec(rec, 0, 0);
    std::sort(found.begin(), found.end());
    found.erase(std::unique(found.begin(), found.end()), found.end());
    return found;
}

}  // namespace toricube::oracle
