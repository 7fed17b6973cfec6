/**
 * Exact rational polyhedral cone kernel.
 *
 * A Cone carries lazily computed V- and H-descriptions, both canonical:
 * primitive vectors, lexicographically sorted. The V-side is the set of
 * extreme rays of the pointed part plus a basis of the lineality space; the
 * H-side is the set of facet normals plus an equality pair +/-e for every
 * implicit equality. Conversion in either direction runs the incremental
 * double description method over exact rationals.
 *
 * Lazy caches are not synchronized: share nothing, or evaluate different
 * cones on different threads.
 */
#pragma once

#include "toricube/exact.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricube {

namespace detail {

/// V-description split into extreme rays of the pointed part and a basis of
/// the lineality space.
struct VH {
    std::vector<IntVec> rays;
    std::vector<IntVec> lin;
};

inline std::vector<IntVec> normalize_vectors(std::size_t n, const std::vector<IntVec>& vs) {
    std::vector<IntVec> out;
    for (const auto& v : vs) {
        if (v.size() != n) throw std::invalid_argument("cone: vector of wrong dimension");
        if (v.is_zero()) continue;
        out.push_back(primitive(v));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Incremental double description: extreme rays and lineality basis of
/// { y : w . y >= 0 for all w in ineqs }.
inline VH dd_rays(std::size_t n, const std::vector<IntVec>& ineqs_in) {
    VH result;
    if (n == 0) return result;
    const std::vector<IntVec> ineqs = normalize_vectors(n, ineqs_in);
    result.lin = kernel_basis(ineqs, n);

    // Constraint list whose full system is pointed: the input plus an
    // equality pair per lineality direction.
    std::vector<IntVec> cons = ineqs;
    for (const auto& l : result.lin) {
        cons.push_back(l);
        cons.push_back(-l);
    }

    // Initial basis: the first n linearly independent constraints.
    std::vector<std::size_t> basis;
    {
        std::vector<std::vector<Rat>> elim;  // row-reduced copies
        for (std::size_t i = 0; i < cons.size() && basis.size() < n; ++i) {
            std::vector<Rat> row(n);
            for (std::size_t j = 0; j < n; ++j) row[j] = Rat(cons[i][j]);
            for (const auto& er : elim) {
                std::size_t p = 0;
                while (p < n && er[p] == 0) ++p;
                if (p < n && row[p] != 0) {
                    const Rat f = row[p] / er[p];
                    for (std::size_t j = p; j < n; ++j) row[j] -= f * er[j];
                }
            }
            if (std::any_of(row.begin(), row.end(), [](const Rat& q) { return q != 0; })) {
                // keep rows sorted by pivot position so each new row reduces fully
                elim.push_back(row);
                std::sort(elim.begin(), elim.end(), [n](const auto& a, const auto& b) {
                    std::size_t pa = 0, pb = 0;
                    while (pa < n && a[pa] == 0) ++pa;
                    while (pb < n && b[pb] == 0) ++pb;
                    return pa < pb;
                });
                basis.push_back(i);
            }
        }
    }
    if (basis.size() != n)
        throw std::logic_error("dd_rays: constraint system unexpectedly rank-deficient");

    // Process order: basis rows first (pointed start), then the rest.
    std::vector<std::size_t> order = basis;
    {
        std::vector<bool> used(cons.size(), false);
        for (std::size_t i : basis) used[i] = true;
        for (std::size_t i = 0; i < cons.size(); ++i)
            if (!used[i]) order.push_back(i);
    }

    // Extreme rays of the initial cone { B y >= 0 }: columns of B^{-1}.
    struct Ray {
        IntVec v;
        std::vector<char> tight;  // aligned with processed prefix of `order`
    };
    std::vector<Ray> rays;
    {
        RatMatrix b(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) b.at(i, j) = Rat(cons[basis[i]][j]);
        for (std::size_t j = 0; j < n; ++j) {
            std::vector<Rat> e(n, Rat(0));
            e[j] = 1;
            auto x = solve(b, e);
            if (!x) throw std::logic_error("dd_rays: singular initial basis");
            Ray r;
            r.v = primitive_direction(*x);
            r.tight.assign(n, 0);
            for (std::size_t i = 0; i < n; ++i) r.tight[i] = (i == j) ? 0 : 1;
            rays.push_back(std::move(r));
        }
    }

    for (std::size_t k = n; k < order.size(); ++k) {
        const IntVec& a = cons[order[k]];
        std::vector<Int> val(rays.size());
        bool any_neg = false;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            val[i] = dot(a, rays[i].v);
            if (val[i] < 0) any_neg = true;
        }
        if (!any_neg) {
            for (std::size_t i = 0; i < rays.size(); ++i) rays[i].tight.push_back(val[i] == 0 ? 1 : 0);
            continue;
        }
        std::vector<std::size_t> pos, neg;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] > 0) pos.push_back(i);
            else if (val[i] < 0) neg.push_back(i);
        }
        auto adjacent = [&](std::size_t p, std::size_t q) {
            // combinatorial adjacency over the processed constraints
            std::vector<char> t(k, 0);
            for (std::size_t j = 0; j < k; ++j) t[j] = rays[p].tight[j] & rays[q].tight[j];
            for (std::size_t i = 0; i < rays.size(); ++i) {
                if (i == p || i == q) continue;
                bool contains = true;
                for (std::size_t j = 0; j < k && contains; ++j)
                    if (t[j] && !rays[i].tight[j]) contains = false;
                if (contains) return false;
            }
            return true;
        };
        std::vector<Ray> next;
        for (std::size_t i = 0; i < rays.size(); ++i) {
            if (val[i] < 0) continue;
            Ray r = rays[i];
            r.tight.push_back(val[i] == 0 ? 1 : 0);
            next.push_back(std::move(r));
        }
        for (std::size_t p : pos) {
            for (std::size_t q : neg) {
                if (!adjacent(p, q)) continue;
                IntVec nv = primitive(val[p] * rays[q].v - val[q] * rays[p].v);
                Ray r;
                r.v = std::move(nv);
                r.tight.assign(k + 1, 0);
                for (std::size_t j = 0; j <= k; ++j)
                    r.tight[j] = (dot(cons[order[j]], r.v) == 0) ? 1 : 0;
                next.push_back(std::move(r));
            }
        }
        rays = std::move(next);
    }

    for (auto& r : rays) result.rays.push_back(std::move(r.v));
    std::sort(result.rays.begin(), result.rays.end());
    result.rays.erase(std::unique(result.rays.begin(), result.rays.end()), result.rays.end());
    return result;
}

/// Facets and implicit equalities of the cone generated by `gens` (which must
/// already include the lineality directions as +/- pairs if any). This is
/// dd_rays on the dual side.
inline VH dd_facets(std::size_t n, const std::vector<IntVec>& gens) {
    return dd_rays(n, gens);
}

}  // namespace detail

/// Rational polyhedral cone with dual descriptions.
class Cone {
public:
    Cone() : n_(0) {}

    static Cone from_rays(int n, std::vector<IntVec> rays) {
        Cone c;
        c.n_ = n;
        c.src_rays_ = detail::normalize_vectors(static_cast<std::size_t>(n), rays);
        return c;
    }
    static Cone from_ineqs(int n, std::vector<IntVec> ineqs) {
        Cone c;
        c.n_ = n;
        c.src_ineqs_ = detail::normalize_vectors(static_cast<std::size_t>(n), ineqs);
        return c;
    }
    static Cone zero(int n) { return from_rays(n, {}); }
    static Cone orthant(int n) {
        std::vector<IntVec> rays;
        for (int i = 0; i < n; ++i) {
            IntVec e(static_cast<std::size_t>(n));
            e[static_cast<std::size_t>(i)] = 1;
            rays.push_back(std::move(e));
        }
        return from_rays(n, std::move(rays));
    }

    int ambient_dim() const { return n_; }

    /// Extreme rays of the pointed part, primitive and sorted.
    const std::vector<IntVec>& rays() const {
        ensure_v();
        return v_->rays;
    }
    /// Basis of the lineality space (empty iff pointed).
    const std::vector<IntVec>& lineality() const {
        ensure_v();
        return v_->lin;
    }
    /// Generating set: extreme rays plus +/- lineality basis vectors.
    std::vector<IntVec> generators() const {
        ensure_v();
        std::vector<IntVec> g = v_->rays;
        for (const auto& l : v_->lin) {
            g.push_back(l);
            g.push_back(-l);
        }
        std::sort(g.begin(), g.end());
        return g;
    }
    /// Facet normals (no equality pairs), primitive and sorted.
    const std::vector<IntVec>& facets() const {
        ensure_h();
        return h_->rays;
    }
    /// One normal per implicit equality hyperplane.
    const std::vector<IntVec>& equalities() const {
        ensure_h();
        return h_->lin;
    }
    /// Complete inequality description: facets plus +/- equality pairs.
    const std::vector<IntVec>& ineqs() const {
        ensure_h();
        if (!ineqs_cache_) {
            std::vector<IntVec> all = h_->rays;
            for (const auto& e : h_->lin) {
                all.push_back(e);
                all.push_back(-e);
            }
            std::sort(all.begin(), all.end());
            ineqs_cache_ = std::move(all);
        }
        return *ineqs_cache_;
    }

    bool pointed() const { return lineality().empty(); }
    /// True iff the cone lies in the non-negative orthant.
    bool nonneg() const {
        ensure_v();
        if (!v_->lin.empty()) return false;
        return std::all_of(v_->rays.begin(), v_->rays.end(), [](const IntVec& r) { return r.nonneg(); });
    }

    bool contains(const IntVec& y) const {
        for (const auto& w : ineqs())
            if (dot(w, y) < 0) return false;
        return true;
    }
    bool contains(const std::vector<Rat>& y) const {
        for (const auto& w : ineqs())
            if (dot(w, y) < 0) return false;
        return true;
    }
    /// Relative interior membership: equalities hold, facets strict.
    bool in_relint(const IntVec& y) const {
        for (const auto& e : equalities())
            if (dot(e, y) != 0) return false;
        for (const auto& w : facets())
            if (dot(w, y) <= 0) return false;
        return true;
    }
    bool in_relint(const std::vector<Rat>& y) const {
        for (const auto& e : equalities())
            if (dot(e, y) != 0) return false;
        for (const auto& w : facets())
            if (dot(w, y) <= 0) return false;
        return true;
    }

    /// A point of the relative interior: the sum of all generators.
    IntVec relint_point() const {
        IntVec p(static_cast<std::size_t>(n_));
        for (const auto& r : rays()) p = p + r;
        return p;
    }

private:
    int n_;
    std::optional<std::vector<IntVec>> src_rays_, src_ineqs_;
    mutable std::optional<detail::VH> v_, h_;
    mutable std::optional<std::vector<IntVec>> ineqs_cache_;

    void ensure_v() const {
        if (v_) return;
        if (src_ineqs_) {
            v_ = detail::dd_rays(static_cast<std::size_t>(n_), *src_ineqs_);
        } else {
            ensure_h();
            std::vector<IntVec> all = h_->rays;
            for (const auto& e : h_->lin) {
                all.push_back(e);
                all.push_back(-e);
            }
            v_ = detail::dd_rays(static_cast<std::size_t>(n_), all);
        }
    }
    void ensure_h() const {
        if (h_) return;
        std::vector<IntVec> gens;
        if (src_rays_) {
            gens = *src_rays_;
        } else {
            ensure_v();
            gens = v_->rays;
            for (const auto& l : v_->lin) {
                gens.push_back(l);
                gens.push_back(-l);
            }
        }
        h_ = detail::dd_facets(static_cast<std::size_t>(n_), gens);
    }
};

/// Irredundant facet inequalities (with equality pairs for non-full-dimensional
/// cones). Every ray satisfies all of them.
inline std::vector<IntVec> rays_to_facets(const Cone& c) { return c.ineqs(); }

/// Generating rays; for non-pointed cones includes +/- lineality generators.
inline std::vector<IntVec> facets_to_rays(const Cone& c) { return c.generators(); }

inline int dim(const Cone& c) {
    std::vector<IntVec> g = c.generators();
    if (g.empty()) return 0;
    return rank(g, static_cast<std::size_t>(c.ambient_dim()));
}

inline void check_same_ambient(const Cone& a, const Cone& b) {
    if (a.ambient_dim() != b.ambient_dim())
        throw std::invalid_argument("cone: ambient dimension mismatch");
}

/// Point-set equality via mutual inclusion.
inline bool cone_equal(const Cone& a, const Cone& b) {
    check_same_ambient(a, b);
    for (const auto& g : a.generators())
        if (!b.contains(g)) return false;
    for (const auto& g : b.generators())
        if (!a.contains(g)) return false;
    return true;
}

/// True iff inner is a subset of outer.
inline bool cone_contains(const Cone& outer, const Cone& inner) {
    check_same_ambient(outer, inner);
    for (const auto& g : inner.generators())
        if (!outer.contains(g)) return false;
    return true;
}

inline Cone intersect(const Cone& a, const Cone& b) {
    check_same_ambient(a, b);
    std::vector<IntVec> h = a.ineqs();
    const auto& hb = b.ineqs();
    h.insert(h.end(), hb.begin(), hb.end());
    return Cone::from_ineqs(a.ambient_dim(), std::move(h));
}

/// Do the relative interiors of a and b intersect? Exact: if they do, the
/// relative interior of the intersection is exactly relint(a) ∩ relint(b),
/// so its generic point witnesses membership.
inline bool relint_meets(const Cone& a, const Cone& b) {
    const Cone c = intersect(a, b);
    const IntVec p = c.relint_point();
    return a.in_relint(p) && b.in_relint(p);
}

inline void check_index_set(const Cone& c, const std::vector<int>& s) {
    for (int i : s)
        if (i < 0 || i >= c.ambient_dim())
            throw std::invalid_argument("coordinate index out of range");
}

/// Face of a non-negative cone where all coordinates in S vanish: generated by
/// exactly the generators vanishing on S.
inline Cone face_zero(const Cone& c, const std::vector<int>& s) {
    check_index_set(c, s);
    if (!c.nonneg()) throw std::invalid_argument("face_zero requires a cone in the non-negative orthant");
    std::vector<IntVec> kept;
    for (const auto& r : c.rays()) {
        bool ok = true;
        for (int i : s)
            if (r[static_cast<std::size_t>(i)] != 0) { ok = false; break; }
        if (ok) kept.push_back(r);
    }
    return Cone::from_rays(c.ambient_dim(), std::move(kept));
}

/// Coordinate projection onto the (sorted) index set S.
inline Cone project(const Cone& c, const std::vector<int>& s) {
    check_index_set(c, s);
    std::vector<IntVec> gens;
    auto push_proj = [&](const IntVec& v) {
        IntVec p(s.size());
        for (std::size_t k = 0; k < s.size(); ++k) p[k] = v[static_cast<std::size_t>(s[k])];
        gens.push_back(std::move(p));
    };
    for (const auto& r : c.rays()) push_proj(r);
    for (const auto& l : c.lineality()) {
        push_proj(l);
        push_proj(-l);
    }
    return Cone::from_rays(static_cast<int>(s.size()), std::move(gens));
}

/// Face poset of a pointed cone, apex excluded; elements are the sets of
/// extreme-ray indices spanning each face.
struct FacePoset {
    std::vector<std::vector<int>> elements;       // sorted ray-index sets
    std::vector<int> dims;                        // face dimensions
    std::vector<std::pair<int, int>> covers;      // (lower, upper) element indices
    int top = -1;
};

inline FacePoset face_lattice(const Cone& c) {
    if (!c.pointed()) throw std::invalid_argument("face lattice requires pointed cone");
    FacePoset p;
    const auto& rays = c.rays();
    const std::size_t k = rays.size();
    if (k == 0) return p;
    const auto& facets = c.facets();
    std::vector<std::vector<int>> incid;  // per facet: indices of tight rays
    for (const auto& w : facets) {
        std::vector<int> z;
        for (std::size_t i = 0; i < k; ++i)
            if (dot(w, rays[i]) == 0) z.push_back(static_cast<int>(i));
        incid.push_back(std::move(z));
    }
    std::vector<int> full(k);
    for (std::size_t i = 0; i < k; ++i) full[i] = static_cast<int>(i);
    std::set<std::vector<int>> seen{full};
    std::queue<std::vector<int>> work;
    work.push(full);
    while (!work.empty()) {
        std::vector<int> g = work.front();
        work.pop();
        for (const auto& z : incid) {
            std::vector<int> inter;
            std::set_intersection(g.begin(), g.end(), z.begin(), z.end(), std::back_inserter(inter));
            if (inter.empty() || seen.count(inter)) continue;
            seen.insert(inter);
            work.push(inter);
        }
    }
    std::vector<std::pair<int, std::vector<int>>> with_dim;  // (dim, element)
    for (const auto& e : seen) {
        std::vector<IntVec> sub;
        for (int i : e) sub.push_back(rays[static_cast<std::size_t>(i)]);
        with_dim.emplace_back(rank(sub, static_cast<std::size_t>(c.ambient_dim())), e);
    }
    std::sort(with_dim.begin(), with_dim.end());
    for (auto& [d, e] : with_dim) {
        p.dims.push_back(d);
        p.elements.push_back(e);
    }
    for (std::size_t i = 0; i < p.elements.size(); ++i)
        if (p.elements[i] == full) p.top = static_cast<int>(i);
    for (std::size_t i = 0; i < p.elements.size(); ++i) {
        for (std::size_t j = 0; j < p.elements.size(); ++j) {
            if (p.dims[j] != p.dims[i] + 1) continue;
            if (std::includes(p.elements[j].begin(), p.elements[j].end(), p.elements[i].begin(),
                              p.elements[i].end()))
                p.covers.emplace_back(static_cast<int>(i), static_cast<int>(j));
        }
    }
    return p;
}

/// Farkas-style certificate excluding the support-S stratum: a vector w valid
/// on c with supp(w+) in S and some coordinate of S^c in supp(w-), or nullopt
/// if the stratum is present. Existence exactly when the stratum is absent
/// follows from the rays being non-negative integer vectors: w = M*1_S - e_i
/// with M = max_r r_i is valid whenever i is not covered by the supports of
/// the rays vanishing on S.
inline std::optional<IntVec> killer_certificate(const Cone& c, const std::vector<int>& s) {
    check_index_set(c, s);
    if (!c.nonneg())
        throw std::invalid_argument("killer_certificate requires a cone in the non-negative orthant");
    const int n = c.ambient_dim();
    std::vector<bool> in_s(static_cast<std::size_t>(n), false);
    for (int i : s) in_s[static_cast<std::size_t>(i)] = true;
    std::vector<bool> covered(static_cast<std::size_t>(n), false);
    for (const auto& r : c.rays()) {
        bool vanishes_on_s = true;
        for (int i : s)
            if (r[static_cast<std::size_t>(i)] != 0) { vanishes_on_s = false; break; }
        if (!vanishes_on_s) continue;
        for (int j = 0; j < n; ++j)
            if (r[static_cast<std::size_t>(j)] != 0) covered[static_cast<std::size_t>(j)] = true;
    }
    int witness = -1;
    for (int i = 0; i < n; ++i)
        if (!in_s[static_cast<std::size_t>(i)] && !covered[static_cast<std::size_t>(i)]) { witness = i; break; }
    if (witness < 0) return std::nullopt;  // stratum present
    Int m = 0;
    for (const auto& r : c.rays()) m = std::max(m, Int(r[static_cast<std::size_t>(witness)]));
    IntVec w(static_cast<std::size_t>(n));
    for (int j : s) w[static_cast<std::size_t>(j)] = m;
    w[static_cast<std::size_t>(witness)] = -1;
    return w;
}

/// Fan: cones in a common ambient space with pairwise disjoint relative
/// interiors meeting in common faces.
struct Fan {
    int n = 0;
    std::vector<Cone> cones;
};

namespace detail {

inline std::vector<IntVec> hyperplane_normals(const Cone& c) {
    // facets and equalities, deduplicated up to sign
    std::vector<IntVec> hs;
    auto canon = [](IntVec v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] > 0) return v;
            if (v[i] < 0) return -v;
        }
        return v;
    };
    for (const auto& w : c.facets()) hs.push_back(canon(w));
    for (const auto& e : c.equalities()) hs.push_back(canon(e));
    std::sort(hs.begin(), hs.end());
    hs.erase(std::unique(hs.begin(), hs.end()), hs.end());
    return hs;
}

/// Closures of the nonempty sign regions the hyperplanes cut out of
/// relint(base). Their relative interiors partition relint(base).
inline std::vector<Cone> arrangement_pieces(const Cone& base, const std::vector<IntVec>& hyperplanes) {
    struct Piece {
        std::vector<IntVec> hrep;
        std::vector<IntVec> strict;  // constraints that must be strict at a region point
    };
    std::vector<Piece> pieces{{base.ineqs(), base.facets()}};
    for (const auto& h : hyperplanes) {
        std::vector<Piece> next;
        for (const auto& pc : pieces) {
            for (int sign = -1; sign <= 1; ++sign) {
                Piece cand = pc;
                if (sign == 0) {
                    cand.hrep.push_back(h);
                    cand.hrep.push_back(-h);
                } else {
                    const IntVec hw = (sign > 0) ? h : -h;
                    cand.hrep.push_back(hw);
                    cand.strict.push_back(hw);
                }
                Cone c = Cone::from_ineqs(base.ambient_dim(), cand.hrep);
                const IntVec p = c.relint_point();
                bool nonempty = true;
                for (const auto& w : cand.strict)
                    if (dot(w, p) <= 0) { nonempty = false; break; }
                if (nonempty) next.push_back(std::move(cand));
            }
        }
        pieces = std::move(next);
    }
    std::vector<Cone> out;
    for (const auto& pc : pieces) out.push_back(Cone::from_ineqs(base.ambient_dim(), pc.hrep));
    return out;
}

}  // namespace detail

/// Subdivision of d_prime induced by the facet hyperplanes of d, listed with d
/// first and then the other maximal pieces.
inline Fan subdivide_containing(const Cone& d, const Cone& d_prime) {
    check_same_ambient(d, d_prime);
    for (const auto& g : d.generators()) {
        if (!d_prime.contains(g)) {
            std::ostringstream msg;
            msg << "subdivide_containing: d not contained in d_prime; witness ray (";
            for (std::size_t i = 0; i < g.size(); ++i) msg << (i ? "," : "") << g[i];
            msg << ")";
            throw std::invalid_argument(msg.str());
        }
    }
    std::vector<Cone> pieces = detail::arrangement_pieces(d_prime, detail::hyperplane_normals(d));
    // maximal pieces only, d listed first (whether or not its region survives)
    std::vector<Cone> maximal;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        bool is_max = true;
        for (std::size_t j = 0; j < pieces.size(); ++j) {
            if (i == j) continue;
            if (cone_contains(pieces[j], pieces[i]) && !cone_equal(pieces[i], pieces[j])) {
                is_max = false;
                break;
            }
        }
        if (is_max) maximal.push_back(pieces[i]);
    }
    Fan fan;
    fan.n = d.ambient_dim();
    fan.cones.push_back(d);
    std::vector<std::pair<std::vector<IntVec>, std::size_t>> keyed;
    for (std::size_t i = 0; i < maximal.size(); ++i) {
        if (cone_equal(maximal[i], d)) continue;
        keyed.emplace_back(maximal[i].rays(), i);
    }
    std::sort(keyed.begin(), keyed.end());
    for (const auto& [key, i] : keyed) fan.cones.push_back(maximal[i]);
    return fan;
}

}  // namespace toricube
