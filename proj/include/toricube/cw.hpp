/**
 * Cell decomposition of toric cubes.
 *
 * Cells live stratum by stratum: a cell is a support set S plus a cone G in
 * R^S, and its point set is exp(-relint G) embedded with zeros outside S.
 * The complex builder walks the present supports from largest to smallest,
 * keeps one polyhedral fan per stratum, and refines lower fans by the
 * projected closure pieces of the cells above, so every cell closure is a
 * union of cells. When nothing forces a split, the result is exactly the
 * Tuffley partition (relative interiors of the faces of the stratum cones).
 */
#pragma once

#include "toricube/cone.hpp"
#include "toricube/exact.hpp"
#include "toricube/toric.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricube {

struct OpenCell {
    int id = 0;                // 1-based, stable under the (support, dim, rays) ordering
    std::vector<int> support;  // sorted global coordinate indices
    Cone cone;                 // in R^S
    int dim = 0;
};

struct CWComplex {
    int n = 0;
    std::vector<OpenCell> cells;               // indexed by id - 1
    std::vector<std::vector<int>> below;       // per cell: indices of cells strictly inside its closure
    std::vector<std::pair<int, int>> covers;   // (lower index, upper index)
    int refinement_events = 0;                 // members split while building

    std::vector<int> f_vector() const {
        int top = -1;
        for (const auto& c : cells) top = std::max(top, c.dim);
        std::vector<int> f(static_cast<std::size_t>(top + 1), 0);
        for (const auto& c : cells) ++f[static_cast<std::size_t>(c.dim)];
        return f;
    }
    int dimension() const {
        int top = -1;
        for (const auto& c : cells) top = std::max(top, c.dim);
        return top;
    }
};

namespace detail {

/// All faces of a pointed cone, including the apex, as cones.
inline std::vector<Cone> face_complex(const Cone& p) {
    std::vector<Cone> out{Cone::zero(p.ambient_dim())};
    if (p.rays().empty()) return out;
    const FacePoset fp = face_lattice(p);
    for (const auto& elt : fp.elements) {
        std::vector<IntVec> rs;
        for (int i : elt) rs.push_back(p.rays()[static_cast<std::size_t>(i)]);
        out.push_back(Cone::from_rays(p.ambient_dim(), std::move(rs)));
    }
    return out;
}

inline bool piece_straddles(const Cone& member, const Cone& k) {
    return relint_meets(member, k) && !cone_contains(k, member);
}

/// Split members along the facet hyperplanes of k until k is a union of
/// members. Returns true if any split happened.
inline bool refine_members(std::vector<Cone>& members, const Cone& k) {
    bool needs = false;
    for (const auto& m : members)
        if (piece_straddles(m, k)) { needs = true; break; }
    if (!needs) return false;
    const auto hyps = hyperplane_normals(k);
    std::vector<Cone> pieces;
    for (const auto& m : members) {
        auto ps = arrangement_pieces(m, hyps);
        pieces.insert(pieces.end(), ps.begin(), ps.end());
    }
    std::vector<std::pair<std::pair<int, std::vector<IntVec>>, std::size_t>> keyed;
    for (std::size_t i = 0; i < pieces.size(); ++i)
        keyed.push_back({{dim(pieces[i]), pieces[i].rays()}, i});
    std::sort(keyed.begin(), keyed.end());
    members.clear();
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
        members.push_back(pieces[keyed[i].second]);
    }
    return true;
}

inline void sort_members(std::vector<Cone>& members) {
    std::vector<std::pair<std::pair<int, std::vector<IntVec>>, std::size_t>> keyed;
    for (std::size_t i = 0; i < members.size(); ++i)
        keyed.push_back({{dim(members[i]), members[i].rays()}, i});
    std::sort(keyed.begin(), keyed.end());
    std::vector<Cone> out;
    for (const auto& [key, i] : keyed) out.push_back(members[i]);
    members = std::move(out);
}

struct StratumCells {
    std::vector<int> support;
    std::vector<Cone> members;
};

inline bool support_order(const std::vector<int>& a, const std::vector<int>& b) {
    return a.size() < b.size() || (a.size() == b.size() && a < b);
}

/// Per-stratum fans for the cube, largest supports first during construction;
/// returned in ascending (size, lex) support order. With refinement enabled,
/// the projected closure pieces of every cell are pushed down so that lower
/// fans subdivide them exactly.
inline std::vector<StratumCells> build_fans(const ToricCube& cube, bool refine, int* events,
                                            int max_support_dim) {
    check_support_cap(cube.n(), max_support_dim);
    const Cone& d = cube.log_cone();
    const auto supports = present_supports(d.rays(), cube.n());
    std::vector<std::vector<int>> desc(supports.rbegin(), supports.rend());
    std::map<std::vector<int>, std::vector<Cone>> pending, fans;
    std::set<std::vector<int>> present(supports.begin(), supports.end());
    for (const auto& s : desc) {
        const Cone p = project(d, s);
        std::vector<Cone> members = face_complex(p);
        if (refine) {
            auto& ks = pending[s];
            std::vector<std::pair<std::pair<int, std::vector<IntVec>>, std::size_t>> keyed;
            for (std::size_t i = 0; i < ks.size(); ++i)
                keyed.push_back({{dim(ks[i]), ks[i].rays()}, i});
            std::sort(keyed.begin(), keyed.end());
            for (std::size_t i = 0; i < keyed.size(); ++i) {
                if (i > 0 && keyed[i].first == keyed[i - 1].first) continue;
                if (refine_members(members, ks[keyed[i].second]) && events) ++(*events);
            }
        }
        sort_members(members);
        if (refine) {
            for (const auto& m : members) {
                for (const auto& local : present_supports(m.rays(), static_cast<int>(s.size()))) {
                    if (local.size() == s.size()) continue;
                    std::vector<int> global;
                    for (int pos : local) global.push_back(s[static_cast<std::size_t>(pos)]);
                    if (!present.count(global))
                        throw std::logic_error("build_fans: closure piece on an absent stratum");
                    pending[global].push_back(project(m, local));
                }
            }
        }
        fans[s] = std::move(members);
    }
    std::vector<StratumCells> out;
    for (const auto& s : supports) out.push_back({s, fans[s]});
    return out;
}

/// Present supports of a cell cone, mapped to global labels, with the
/// projected closure piece per support (the cell's own support included).
inline std::map<std::vector<int>, Cone> closure_pieces(const std::vector<int>& support, const Cone& g) {
    std::map<std::vector<int>, Cone> out;
    for (const auto& local : present_supports(g.rays(), static_cast<int>(support.size()))) {
        std::vector<int> global;
        for (int pos : local) global.push_back(support[static_cast<std::size_t>(pos)]);
        out.emplace(std::move(global), project(g, local));
    }
    return out;
}

inline CWComplex assemble(int n, const std::vector<StratumCells>& fans, int events) {
    CWComplex x;
    x.n = n;
    x.refinement_events = events;
    for (const auto& sc : fans)
        for (const auto& m : sc.members)
            x.cells.push_back({static_cast<int>(x.cells.size()) + 1, sc.support, m, dim(m)});
    const std::size_t count = x.cells.size();
    std::vector<std::map<std::vector<int>, Cone>> pieces;
    for (const auto& c : x.cells) pieces.push_back(closure_pieces(c.support, c.cone));
    x.below.assign(count, {});
    std::vector<std::vector<bool>> lt(count, std::vector<bool>(count, false));
    for (std::size_t a = 0; a < count; ++a) {
        for (std::size_t b = 0; b < count; ++b) {
            if (a == b) continue;
            const auto& sa = x.cells[a].support;
            const auto& sb = x.cells[b].support;
            if (sa == sb) {
                if (cone_contains(x.cells[a].cone, x.cells[b].cone)) lt[b][a] = true;
            } else if (sb.size() < sa.size()) {
                auto it = pieces[a].find(sb);
                if (it != pieces[a].end() && cone_contains(it->second, x.cells[b].cone)) lt[b][a] = true;
            }
        }
    }
    for (std::size_t a = 0; a < count; ++a)
        for (std::size_t b = 0; b < count; ++b)
            if (lt[b][a]) x.below[a].push_back(static_cast<int>(b));
    for (std::size_t a = 0; a < count; ++a) {
        for (int b : x.below[a]) {
            bool direct = true;
            for (int c : x.below[a]) {
                if (c == b) continue;
                if (lt[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)]) { direct = false; break; }
            }
            if (direct) x.covers.emplace_back(b, static_cast<int>(a));
        }
    }
    std::sort(x.covers.begin(), x.covers.end());
    return x;
}

}  // namespace detail

/// The Tuffley partition as a CW-style cell list: one cell per face (apex
/// included) of each present stratum cone. The closure relation records
/// containments but boundaries need not be subcomplexes.
inline CWComplex tuffley_complex(const ToricCube& cube, int max_support_dim = kDefaultMaxSupportDim) {
    return detail::assemble(cube.n(), detail::build_fans(cube, false, nullptr, max_support_dim), 0);
}

inline std::vector<OpenCell> tuffley_partition(const ToricCube& cube,
                                               int max_support_dim = kDefaultMaxSupportDim) {
    return tuffley_complex(cube, max_support_dim).cells;
}

/// CW complex of the cube: cells are interiors of toric cubes, their union is
/// the cube, and every cell closure is a union of cells.
inline CWComplex build_cw(const ToricCube& cube, int max_support_dim = kDefaultMaxSupportDim) {
    int events = 0;
    auto fans = detail::build_fans(cube, true, &events, max_support_dim);
    return detail::assemble(cube.n(), fans, events);
}

/// Open cells (from the complex) whose union is the topological closure of
/// the given cell; the cell itself is included. Throws if a closure piece is
/// not a union of cells of the complex.
inline std::vector<OpenCell> cell_closure_in(const CWComplex& x, const OpenCell& cell) {
    int idx = -1;
    for (const auto& c : x.cells)
        if (c.support == cell.support && cone_equal(c.cone, cell.cone)) { idx = c.id - 1; break; }
    if (idx < 0) throw std::invalid_argument("cell_closure: cell not in the partition");
    const auto pieces = detail::closure_pieces(x.cells[static_cast<std::size_t>(idx)].support,
                                               x.cells[static_cast<std::size_t>(idx)].cone);
    std::vector<OpenCell> out;
    for (const auto& [sup, k] : pieces) {
        for (const auto& c : x.cells) {
            if (c.support != sup) continue;
            if (cone_contains(k, c.cone)) {
                out.push_back(c);
            } else if (relint_meets(c.cone, k)) {
                throw std::runtime_error(
                    "cell_closure: closure is not a union of partition cells; refinement required");
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const OpenCell& a, const OpenCell& b) { return a.id < b.id; });
    return out;
}

/// Closure of a cell within the Tuffley partition of the cube.
inline std::vector<OpenCell> cell_closure(const OpenCell& cell, const ToricCube& cube,
                                          int max_support_dim = kDefaultMaxSupportDim) {
    return cell_closure_in(tuffley_complex(cube, max_support_dim), cell);
}

/// Characteristic-domain data for a cell cone: the face poset, the
/// subdivision rays r_sigma (sums over poset elements), the subdivided
/// monomial map with one parameter per poset element, and the maximal chains
/// indexing the subcubes of the domain.
struct CharacteristicDomain {
    FacePoset poset;
    std::vector<IntVec> base_rays;         // extreme rays, rescaled when requested
    std::vector<IntVec> subdivision_rays;  // r_sigma per poset element
    MonomialMap sd;
    std::vector<std::vector<int>> chains;  // maximal chains as poset element indices
};

inline CharacteristicDomain characteristic_domain(const Cone& cone, bool rays_scaled) {
    if (!cone.pointed())
        throw std::invalid_argument("characteristic domain requires a pointed cone");
    if (dim(cone) < 1) throw std::invalid_argument("characteristic domain requires dimension >= 1");
    CharacteristicDomain cd;
    cd.poset = face_lattice(cone);
    const std::size_t n = static_cast<std::size_t>(cone.ambient_dim());
    std::vector<IntVec> rays = cone.rays();
    if (rays_scaled) {
        Int l = 1;
        for (const auto& r : rays) {
            Int sum = 0;
            for (std::size_t j = 0; j < n; ++j) sum += r[j];
            if (sum <= 0) throw std::invalid_argument("ray rescaling requires positive coordinate sums");
            l = boost::multiprecision::lcm(l, sum);
        }
        for (auto& r : rays) {
            Int sum = 0;
            for (std::size_t j = 0; j < n; ++j) sum += r[j];
            r = Int(l / sum) * r;
        }
    }
    cd.base_rays = rays;
    for (const auto& elt : cd.poset.elements) {
        IntVec sum(n);
        for (int i : elt) sum = sum + rays[static_cast<std::size_t>(i)];
        cd.subdivision_rays.push_back(sum);
    }
    std::vector<IntVec> rows;
    for (std::size_t j = 0; j < n; ++j) {
        IntVec row(cd.subdivision_rays.size());
        for (std::size_t k = 0; k < cd.subdivision_rays.size(); ++k) row[k] = cd.subdivision_rays[k][j];
        rows.push_back(std::move(row));
    }
    cd.sd = MonomialMap(static_cast<int>(n), static_cast<int>(cd.subdivision_rays.size()), std::move(rows));
    // maximal chains over the cover relation, atoms to top
    std::vector<std::vector<int>> up(cd.poset.elements.size());
    std::vector<bool> has_lower(cd.poset.elements.size(), false);
    for (auto [lo, hi] : cd.poset.covers) {
        up[static_cast<std::size_t>(lo)].push_back(hi);
        has_lower[static_cast<std::size_t>(hi)] = true;
    }
    std::vector<std::vector<int>> chains;
    std::vector<int> chain;
    auto dfs = [&](auto&& self, int e) -> void {
        chain.push_back(e);
        if (up[static_cast<std::size_t>(e)].empty()) {
            chains.push_back(chain);
        } else {
            for (int nxt : up[static_cast<std::size_t>(e)]) self(self, nxt);
        }
        chain.pop_back();
    };
    for (std::size_t e = 0; e < cd.poset.elements.size(); ++e)
        if (!has_lower[e]) dfs(dfs, static_cast<int>(e));
    std::sort(chains.begin(), chains.end(), [&](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<std::vector<int>> ea, eb;
        for (int i : a) ea.push_back(cd.poset.elements[static_cast<std::size_t>(i)]);
        for (int i : b) eb.push_back(cd.poset.elements[static_cast<std::size_t>(i)]);
        return ea < eb;
    });
    cd.chains = std::move(chains);
    return cd;
}

/// Subdivide the cells of X so that every cell is contained in or disjoint
/// from each given cube interior; cell closures remain unions of cells.
inline CWComplex refine_complex(const CWComplex& x, const std::vector<ToricCube>& cubes) {
    for (const auto& c : cubes)
        if (c.n() != x.n) throw std::invalid_argument("refine_complex: ambient dimension mismatch");
    std::map<std::vector<int>, std::vector<Cone>> fans;
    for (const auto& c : x.cells) fans[c.support].push_back(c.cone);
    std::vector<std::vector<int>> supports;
    for (const auto& [s, members] : fans) supports.push_back(s);
    std::sort(supports.begin(), supports.end(), detail::support_order);
    std::map<std::vector<int>, std::vector<Cone>> pending;
    std::vector<int> full(static_cast<std::size_t>(x.n));
    for (int i = 0; i < x.n; ++i) full[static_cast<std::size_t>(i)] = i;
    if (fans.count(full))
        for (const auto& c : cubes) pending[full].push_back(c.log_cone());
    int events = x.refinement_events;
    for (auto it = supports.rbegin(); it != supports.rend(); ++it) {
        auto& members = fans[*it];
        for (const auto& k : pending[*it])
            if (detail::refine_members(members, k)) ++events;
        detail::sort_members(members);
        for (const auto& m : members) {
            for (const auto& local : detail::present_supports(m.rays(), static_cast<int>(it->size()))) {
                if (local.size() == it->size()) continue;
                std::vector<int> global;
                for (int pos : local) global.push_back((*it)[static_cast<std::size_t>(pos)]);
                if (!fans.count(global))
                    throw std::logic_error("refine_complex: closure piece on a missing stratum");
                pending[global].push_back(project(m, local));
            }
        }
    }
    std::vector<detail::StratumCells> out;
    for (const auto& s : supports) out.push_back({s, fans[s]});
    return detail::assemble(x.n, out, events);
}

inline long long euler(const std::vector<int>& f_vector) {
    long long chi = 0;
    for (std::size_t k = 0; k < f_vector.size(); ++k)
        chi += (k % 2 == 0) ? f_vector[k] : -f_vector[k];
    return chi;
}

inline long long euler(const CWComplex& x) {
    if (x.cells.empty()) return 0;
    return euler(x.f_vector());
}

/// Euler characteristic of one closed cell (the cell plus everything below).
inline long long closed_cell_euler(const CWComplex& x, int cell_index) {
    long long chi = (x.cells[static_cast<std::size_t>(cell_index)].dim % 2 == 0) ? 1 : -1;
    for (int b : x.below[static_cast<std::size_t>(cell_index)])
        chi += (x.cells[static_cast<std::size_t>(b)].dim % 2 == 0) ? 1 : -1;
    return chi;
}

struct CellCheck {
    int id = 0;
    int dim = 0;
    long long closed_euler = 0;    // must be 1
    long long boundary_euler = 0;  // must be 1 + (-1)^(k-1) for k >= 1
    bool euler_ok = false;
    bool boundary_ok = false;
};

struct RegularityReport {
    bool graded = true;                  // all covers step dimension by one
    bool diamond = true;                 // length-2 intervals have 4 elements
    bool edges_two_endpoints = true;     // every 1-cell has exactly two 0-cells below
    long long total_euler = 0;
    bool total_euler_ok = false;
    std::vector<CellCheck> cells;
    bool pass = false;
};

inline RegularityReport regularity_report(const CWComplex& x) {
    RegularityReport rep;
    rep.total_euler = euler(x);
    rep.total_euler_ok = (rep.total_euler == 1);
    for (std::size_t i = 0; i < x.cells.size(); ++i) {
        CellCheck ck;
        ck.id = x.cells[i].id;
        ck.dim = x.cells[i].dim;
        ck.closed_euler = closed_cell_euler(x, static_cast<int>(i));
        ck.boundary_euler = ck.closed_euler - ((ck.dim % 2 == 0) ? 1 : -1);
        ck.euler_ok = (ck.closed_euler == 1);
        if (ck.dim == 0) {
            ck.boundary_ok = true;
        } else {
            const long long expected = 1 + (((ck.dim - 1) % 2 == 0) ? 1 : -1);
            ck.boundary_ok = (ck.boundary_euler == expected);
        }
        rep.cells.push_back(ck);
    }
    for (auto [lo, hi] : x.covers)
        if (x.cells[static_cast<std::size_t>(hi)].dim != x.cells[static_cast<std::size_t>(lo)].dim + 1)
            rep.graded = false;
    // diamond: between any pair at dimension distance two, exactly two cells
    const std::size_t count = x.cells.size();
    std::vector<std::vector<bool>> lt(count, std::vector<bool>(count, false));
    for (std::size_t a = 0; a < count; ++a)
        for (int b : x.below[a]) lt[static_cast<std::size_t>(b)][a] = true;
    for (std::size_t a = 0; a < count; ++a) {
        for (int b : x.below[a]) {
            if (x.cells[a].dim - x.cells[static_cast<std::size_t>(b)].dim != 2) continue;
            int middles = 0;
            for (int z : x.below[a])
                if (lt[static_cast<std::size_t>(b)][static_cast<std::size_t>(z)]) ++middles;
            if (middles != 2) rep.diamond = false;
        }
    }
    for (std::size_t a = 0; a < count; ++a) {
        if (x.cells[a].dim != 1) continue;
        int endpoints = 0;
        for (int b : x.below[a])
            if (x.cells[static_cast<std::size_t>(b)].dim == 0) ++endpoints;
        if (endpoints != 2) rep.edges_two_endpoints = false;
    }
    rep.pass = rep.graded && rep.diamond && rep.edges_two_endpoints && rep.total_euler_ok;
    for (const auto& ck : rep.cells) rep.pass = rep.pass && ck.euler_ok && ck.boundary_ok;
    return rep;
}

}  // namespace toricube
