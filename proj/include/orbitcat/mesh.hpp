#pragma once

// The translation quiver ZQ and its mesh category.
//
// Vertices are (p, i) with p an integer slice and i a vertex of Q. Each
// Q-arrow a: f -> t contributes two arrow families:
//   flat(p, a):  (p, t) -> (p, f)      within a slice
//   cross(p, a): (p, f) -> (p+1, t)    to the next slice
// so p never decreases along a path and within a slice paths move strictly
// backwards in the topological order of Q. The translation is tau(p, i) =
// (p-1, i), and sigma pairs each arrow alpha: u -> z with the arrow
// sigma(alpha): tau(z) -> u. The mesh relator at z is the sum of the
// composites alpha . sigma(alpha) over all arrows into z.
//
// Morphism spaces are spans of paths modulo the two-sided ideal generated by
// relators; bases come from a sparse row-reduction over Q with the path list
// in (length, arrow sequence) order, which makes every basis deterministic
// and translation-equivariant.

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orbitcat/errors.hpp"
#include "orbitcat/matrix.hpp"
#include "orbitcat/quiver.hpp"
#include "orbitcat/rational.hpp"

namespace orbitcat {

struct ZQVertex {
    int p = 0;
    int i = 1;

    friend bool operator==(const ZQVertex& a, const ZQVertex& b) {
        return a.p == b.p && a.i == b.i;
    }
    friend bool operator!=(const ZQVertex& a, const ZQVertex& b) { return !(a == b); }
    friend bool operator<(const ZQVertex& a, const ZQVertex& b) {
        return std::tie(a.p, a.i) < std::tie(b.p, b.i);
    }
    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(i) + ")"; }
};

inline ZQVertex zq_tau(ZQVertex v, int k = 1) { return {v.p - k, v.i}; }

enum class ArrowKind : int { Flat = 0, Cross = 1 };

struct ZQArrow {
    int p = 0;
    ArrowKind kind = ArrowKind::Flat;
    int arrow_idx = 0;

    friend bool operator==(const ZQArrow& a, const ZQArrow& b) {
        return a.p == b.p && a.kind == b.kind && a.arrow_idx == b.arrow_idx;
    }
    friend bool operator<(const ZQArrow& a, const ZQArrow& b) {
        return std::tie(a.p, a.kind, a.arrow_idx) < std::tie(b.p, b.kind, b.arrow_idx);
    }
};

inline ZQVertex zq_source(const Quiver& q, const ZQArrow& a) {
    const Arrow& qa = q.arrows()[static_cast<std::size_t>(a.arrow_idx)];
    return a.kind == ArrowKind::Flat ? ZQVertex{a.p, qa.to} : ZQVertex{a.p, qa.from};
}

inline ZQVertex zq_target(const Quiver& q, const ZQArrow& a) {
    const Arrow& qa = q.arrows()[static_cast<std::size_t>(a.arrow_idx)];
    return a.kind == ArrowKind::Flat ? ZQVertex{a.p, qa.from} : ZQVertex{a.p + 1, qa.to};
}

// sigma sends an arrow alpha: u -> z to the arrow tau(z) -> u.
inline ZQArrow zq_sigma(const ZQArrow& a) {
    return a.kind == ArrowKind::Flat ? ZQArrow{a.p - 1, ArrowKind::Cross, a.arrow_idx}
                                     : ZQArrow{a.p, ArrowKind::Flat, a.arrow_idx};
}

inline std::vector<ZQArrow> zq_arrows_out(const Quiver& q, ZQVertex v) {
    std::vector<ZQArrow> out;
    for (int ai : q.arrows_into(v.i)) out.push_back({v.p, ArrowKind::Flat, ai});
    for (int ai : q.arrows_from(v.i)) out.push_back({v.p, ArrowKind::Cross, ai});
    return out;
}

inline std::vector<ZQArrow> zq_arrows_in(const Quiver& q, ZQVertex v) {
    std::vector<ZQArrow> in;
    for (int ai : q.arrows_from(v.i)) in.push_back({v.p, ArrowKind::Flat, ai});
    for (int ai : q.arrows_into(v.i)) in.push_back({v.p - 1, ArrowKind::Cross, ai});
    return in;
}

// The mesh relator at z as a list of 2-paths tau(z) -> z, one per arrow into
// z, each to be taken with coefficient +1.
inline std::vector<std::array<ZQArrow, 2>> mesh_relator(const Quiver& q, ZQVertex z) {
    std::vector<std::array<ZQArrow, 2>> rel;
    for (const ZQArrow& a : zq_arrows_in(q, z)) rel.push_back({zq_sigma(a), a});
    return rel;
}

using ZQPath = std::vector<ZQArrow>; // composition order: path[0] starts at the source

inline constexpr std::size_t kMaxPaths = 10000;

// All paths x -> y, sorted by (length, arrow sequence). Throws when the
// count passes `cap`; with Dynkin slice widths this only triggers on windows
// far beyond anything the engine asks for.
inline std::vector<ZQPath> zq_paths(const Quiver& q, ZQVertex x, ZQVertex y,
                                    std::size_t cap = kMaxPaths) {
    std::vector<ZQPath> found;
    if (y.p < x.p) return found;
    ZQPath cur;
    std::function<void(ZQVertex)> dfs = [&](ZQVertex v) {
        if (v == y) {
            found.push_back(cur);
            if (found.size() > cap)
                throw bound_exceeded("path enumeration " + x.str() + " -> " + y.str() +
                                     " exceeded " + std::to_string(cap));
            return; // p is nondecreasing and slices are acyclic: no path returns
        }
        for (const ZQArrow& a : zq_arrows_out(q, v)) {
            ZQVertex w = zq_target(q, a);
            if (w.p > y.p) continue;
            cur.push_back(a);
            dfs(w);
            cur.pop_back();
        }
    };
    dfs(x);
    std::sort(found.begin(), found.end(), [](const ZQPath& a, const ZQPath& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return a < b;
    });
    return found;
}

namespace detail {

using SparseRow = std::vector<std::pair<std::size_t, Rational>>; // sorted by column

inline void row_axpy(SparseRow& r, const Rational& c, const SparseRow& s) {
    SparseRow out;
    out.reserve(r.size() + s.size());
    std::size_t i = 0, j = 0;
    while (i < r.size() || j < s.size()) {
        if (j == s.size() || (i < r.size() && r[i].first < s[j].first)) {
            out.push_back(r[i++]);
        } else if (i == r.size() || s[j].first < r[i].first) {
            out.emplace_back(s[j].first, c * s[j].second);
            ++j;
        } else {
            Rational v = r[i].second + c * s[j].second;
            if (!v.is_zero()) out.emplace_back(r[i].first, v);
            ++i;
            ++j;
        }
    }
    r = std::move(out);
}

// Incremental full row reduction: rows are stored normalized (pivot
// coefficient 1) and mutually reduced, keyed by pivot column.
class SparseRref {
public:
    // Reduce `row` against the current rows; returns the fully reduced row.
    SparseRow reduce(SparseRow row) const {
        std::size_t scan = 0;
        while (scan < row.size()) {
            auto it = rows_.find(row[scan].first);
            if (it == rows_.end()) {
                ++scan;
                continue;
            }
            Rational c = Rational(0) - row[scan].second;
            row_axpy(row, c, it->second);
            // the eliminated column vanished; columns before `scan` are
            // non-pivot and stay untouched because stored rows only carry
            // their own pivot plus non-pivot columns
        }
        return row;
    }

    // Insert a row; returns false if it reduced to zero.
    bool insert(SparseRow row) {
        row = reduce(std::move(row));
        if (row.empty()) return false;
        std::size_t piv = row[0].first;
        Rational inv = Rational(1) / row[0].second;
        for (auto& e : row) e.second *= inv;
        for (auto& [p, r] : rows_) {
            auto hit = std::find_if(r.begin(), r.end(),
                                    [&](const auto& e) { return e.first == piv; });
            if (hit != r.end()) {
                Rational c = Rational(0) - hit->second;
                row_axpy(r, c, row);
            }
        }
        rows_.emplace(piv, std::move(row));
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    bool is_pivot(std::size_t col) const { return rows_.count(col) > 0; }

private:
    std::map<std::size_t, SparseRow> rows_;
};

} // namespace detail

// Hom(x, y) in the mesh category: the path span modulo embedded relators.
class MorphismSpace {
public:
    MorphismSpace(const Quiver& q, ZQVertex x, ZQVertex y, std::size_t cap = kMaxPaths)
        : x_(x), y_(y), paths_(zq_paths(q, x, y, cap)) {
        for (std::size_t k = 0; k < paths_.size(); ++k) path_index_[paths_[k]] = k;

        for (int pz = x.p + 1; pz <= y.p; ++pz) {
            for (int iz = 1; iz <= q.rank(); ++iz) {
                ZQVertex z{pz, iz};
                auto rel = mesh_relator(q, z);
                if (rel.empty()) continue;
                auto pre = zq_paths(q, x, zq_tau(z), cap);
                if (pre.empty()) continue;
                auto post = zq_paths(q, z, y, cap);
                if (post.empty()) continue;
                for (const ZQPath& r : pre)
                    for (const ZQPath& s : post) {
                        std::map<std::size_t, Rational> row;
                        for (const auto& pair2 : rel) {
                            ZQPath full = r;
                            full.push_back(pair2[0]);
                            full.push_back(pair2[1]);
                            full.insert(full.end(), s.begin(), s.end());
                            auto it = path_index_.find(full);
                            if (it == path_index_.end())
                                throw internal_error("relator embedding produced unknown path");
                            row[it->second] += Rational(1);
                        }
                        detail::SparseRow sr(row.begin(), row.end());
                        rref_.insert(std::move(sr));
                    }
            }
        }
        for (std::size_t k = 0; k < paths_.size(); ++k)
            if (!rref_.is_pivot(k)) {
                basis_pos_[k] = basis_.size();
                basis_.push_back(k);
            }
    }

    ZQVertex source() const { return x_; }
    ZQVertex target() const { return y_; }
    std::size_t dim() const { return basis_.size(); }
    std::size_t path_count() const { return paths_.size(); }
    const ZQPath& basis_path(std::size_t k) const { return paths_[basis_[k]]; }

    // Express a linear combination of paths in the chosen basis.
    std::vector<Rational> reduce(const std::map<ZQPath, Rational>& combo) const {
        std::map<std::size_t, Rational> acc;
        for (const auto& [path, c] : combo) {
            if (c.is_zero()) continue;
            auto it = path_index_.find(path);
            if (it == path_index_.end())
                throw internal_error("reduce: path not between " + x_.str() + " and " +
                                     y_.str());
            acc[it->second] += c;
        }
        detail::SparseRow row;
        for (const auto& [col, v] : acc)
            if (!v.is_zero()) row.emplace_back(col, v);
        row = rref_.reduce(std::move(row));
        std::vector<Rational> out(basis_.size(), Rational(0));
        for (const auto& [col, v] : row) out[basis_pos_.at(col)] = v;
        return out;
    }

    std::vector<Rational> reduce_path(const ZQPath& p) const {
        std::map<ZQPath, Rational> combo;
        combo[p] = Rational(1);
        return reduce(combo);
    }

private:
    ZQVertex x_, y_;
    std::vector<ZQPath> paths_;
    std::map<ZQPath, std::size_t> path_index_;
    detail::SparseRref rref_;
    std::vector<std::size_t> basis_;           // path indices of basis elements
    std::map<std::size_t, std::size_t> basis_pos_;
};

// A morphism as coordinates in the basis of MorphismSpace(src, dst).
struct MeshMorphism {
    ZQVertex src, dst;
    std::vector<Rational> coeffs;

    bool is_zero() const {
        for (const auto& c : coeffs)
            if (!c.is_zero()) return false;
        return true;
    }
    friend bool operator==(const MeshMorphism& a, const MeshMorphism& b) {
        return a.src == b.src && a.dst == b.dst && a.coeffs == b.coeffs;
    }
};

// Memoized access to morphism spaces plus the algebra on top of them.
// Thread-safe: spaces are computed outside the lock and the first insert
// wins, so concurrent queries agree.
class MeshCategory {
public:
    explicit MeshCategory(const Quiver& q) : q_(q) {}

    const Quiver& quiver() const { return q_; }

    const MorphismSpace& space(ZQVertex x, ZQVertex y) {
        const auto key = std::make_pair(x, y);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = spaces_.find(key);
            if (it != spaces_.end()) return it->second;
        }
        MorphismSpace built(q_, x, y);
        std::lock_guard<std::mutex> lock(mu_);
        auto [it, inserted] = spaces_.try_emplace(key, std::move(built));
        return it->second;
    }

    std::int64_t hom_dim_basis(ZQVertex x, ZQVertex y) {
        return static_cast<std::int64_t>(space(x, y).dim());
    }

    MeshMorphism zero(ZQVertex x, ZQVertex y) {
        return {x, y, std::vector<Rational>(space(x, y).dim(), Rational(0))};
    }

    MeshMorphism identity(ZQVertex x) {
        const MorphismSpace& s = space(x, x);
        MeshMorphism m{x, x, {}};
        m.coeffs = s.reduce_path({});
        return m;
    }

    MeshMorphism basis_element(ZQVertex x, ZQVertex y, std::size_t k) {
        const MorphismSpace& s = space(x, y);
        if (k >= s.dim()) throw internal_error("basis index out of range");
        MeshMorphism m{x, y, std::vector<Rational>(s.dim(), Rational(0))};
        m.coeffs[k] = Rational(1);
        return m;
    }

    // g after f.
    MeshMorphism compose(const MeshMorphism& g, const MeshMorphism& f) {
        if (f.dst != g.src)
            throw internal_error("compose: mismatched endpoints " + f.dst.str() + " vs " +
                                 g.src.str());
        const MorphismSpace& sf = space(f.src, f.dst);
        const MorphismSpace& sg = space(g.src, g.dst);
        const MorphismSpace& st = space(f.src, g.dst);
        std::map<ZQPath, Rational> combo;
        for (std::size_t a = 0; a < sf.dim(); ++a) {
            if (f.coeffs[a].is_zero()) continue;
            for (std::size_t b = 0; b < sg.dim(); ++b) {
                if (g.coeffs[b].is_zero()) continue;
                ZQPath cat = sf.basis_path(a);
                const ZQPath& tail = sg.basis_path(b);
                cat.insert(cat.end(), tail.begin(), tail.end());
                combo[cat] += f.coeffs[a] * g.coeffs[b];
            }
        }
        return {f.src, g.dst, st.reduce(combo)};
    }

    // Shift the whole picture dp slices; the basis matches index-by-index
    // because path order and relators are translation-equivariant.
    MeshMorphism translate(const MeshMorphism& f, int dp) {
        ZQVertex sx{f.src.p + dp, f.src.i}, sy{f.dst.p + dp, f.dst.i};
        const MorphismSpace& st = space(sx, sy);
        if (st.dim() != f.coeffs.size())
            throw internal_error("translate: basis size changed");
        return {sx, sy, f.coeffs};
    }

    // Push a morphism through a vertex bijection that preserves the arrow
    // structure (tau powers, the shift, their words). Arrows map to the
    // unique arrow between image vertices.
    MeshMorphism transport(const MeshMorphism& f,
                           const std::function<ZQVertex(ZQVertex)>& vmap) {
        ZQVertex sx = vmap(f.src), sy = vmap(f.dst);
        const MorphismSpace& sf = space(f.src, f.dst);
        const MorphismSpace& st = space(sx, sy);
        std::map<ZQPath, Rational> combo;
        for (std::size_t k = 0; k < sf.dim(); ++k) {
            if (f.coeffs[k].is_zero()) continue;
            ZQPath img;
            ZQVertex at = sx;
            for (const ZQArrow& a : sf.basis_path(k)) {
                ZQVertex u = vmap(zq_source(q_, a)), w = vmap(zq_target(q_, a));
                if (u != at) throw internal_error("transport: path image disconnected");
                img.push_back(find_arrow(u, w));
                at = w;
            }
            if (at != sy) throw internal_error("transport: path image misses target");
            combo[img] += f.coeffs[k];
        }
        return {sx, sy, st.reduce(combo)};
    }

private:
    ZQArrow find_arrow(ZQVertex u, ZQVertex w) const {
        if (w.p == u.p) {
            for (int ai : q_.arrows_from(w.i))
                if (q_.arrows()[static_cast<std::size_t>(ai)].to == u.i)
                    return {u.p, ArrowKind::Flat, ai};
        } else if (w.p == u.p + 1) {
            for (int ai : q_.arrows_from(u.i))
                if (q_.arrows()[static_cast<std::size_t>(ai)].to == w.i)
                    return {u.p, ArrowKind::Cross, ai};
        }
        throw internal_error("no arrow " + u.str() + " -> " + w.str());
    }

    Quiver q_;
    std::mutex mu_;
    std::map<std::pair<ZQVertex, ZQVertex>, MorphismSpace> spaces_;
};

// Hammock count of dim Hom(x, -) at y. Walks slices left to right, inside a
// slice against the topological order of Q so every in-neighbour lands
// first. The value at z answers to the ones a mesh below via
//   g(z) = sum of g over in-neighbours - g(tau z) + [z == Sx],
// with g(x) seeded to 1; `shift_of_x` supplies the coordinate of Sx (the
// cone tip where the count picks an extra unit back up).
inline std::int64_t hammock_hom_dim(const Quiver& q, ZQVertex x, ZQVertex y,
                                    const std::optional<ZQVertex>& shift_of_x) {
    if (y.p < x.p) return 0;
    if (x == y) return 1;

    std::vector<int> order = q.topological_order(); // reversed per slice below
    std::map<ZQVertex, std::int64_t> g;
    auto val = [&](ZQVertex v) -> std::int64_t {
        auto it = g.find(v);
        return it == g.end() ? 0 : it->second;
    };
    for (int p = x.p; p <= y.p; ++p) {
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            ZQVertex z{p, *it};
            if (z == x) {
                g[z] = 1;
                continue;
            }
            std::int64_t acc = 0;
            for (const ZQArrow& a : zq_arrows_in(q, z)) acc += val(zq_source(q, a));
            acc -= val(zq_tau(z));
            if (shift_of_x && z == *shift_of_x) acc += 1;
            if (acc < 0)
                throw internal_error("hammock count went negative at " + z.str());
            if (acc != 0) g[z] = acc;
        }
    }
    return val(y);
}

} // namespace orbitcat
