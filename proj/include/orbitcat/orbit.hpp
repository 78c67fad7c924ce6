#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "orbitcat/derived.hpp"
#include "orbitcat/functor_word.hpp"

namespace orbitcat {

// Graded hom space between two orbit objects. Component k collects the maps
// that factor through the k-th power of the gluing functor applied to the
// target; total is the dimension of the whole space.
struct OrbitHom {
    std::map<int, std::int64_t> components;
    std::int64_t total = 0;
};

// Outcome of the admissibility analysis for a gluing word F = t^a * S^b.
//
// finite_heart_hits: every F-orbit of indecomposables meets the shift-0 slice
// finitely often. shifts_bounded: there is a global bound N such that every
// F-orbit contains a member whose shift lies in [0, N]; shift_bound is the
// smallest such N found. Both hold exactly when the drift b*h - 2a of the
// shift across h applications of F is nonzero. When the drift vanishes, F^h
// fixes every object (objectwise_periodic) and both properties fail.
struct OrbitConditions {
    bool ok = false;
    bool finite_heart_hits = false;
    bool shifts_bounded = false;
    bool objectwise_periodic = false;
    int shift_bound = 0;
    std::string witness;
    std::vector<std::string> evidence;
};

// Canonical representative of an F-orbit: the orbit member with the smallest
// nonnegative shift, ties broken by the lexicographically least coordinate.
struct OrbitObjectRep {
    std::size_t root_index = 0;
    DimVector dimv;
    int shift = 0;
    ZQVertex coord;

    std::string str() const { return dim_str(dimv) + "@" + std::to_string(shift); }

    friend bool operator==(const OrbitObjectRep& a, const OrbitObjectRep& b) {
        return a.coord == b.coord;
    }
    friend bool operator!=(const OrbitObjectRep& a, const OrbitObjectRep& b) {
        return !(a == b);
    }
};

// A morphism between orbit objects, stored degreewise: parts[k] is a mesh
// morphism from the source coordinate to the coordinate of the k-th functor
// power of the target. Zero parts are never stored.
struct OrbitMorphism {
    ZQVertex src, dst;
    std::map<int, MeshMorphism> parts;

    bool is_zero() const { return parts.empty(); }

    friend bool operator==(const OrbitMorphism& a, const OrbitMorphism& b) {
        return a.src == b.src && a.dst == b.dst && a.parts == b.parts;
    }
    friend bool operator!=(const OrbitMorphism& a, const OrbitMorphism& b) {
        return !(a == b);
    }
};

// Structure constants of the graded endomorphism algebra of one orbit object.
// basis[i] = (degree, index within that degree); table[i][j] holds the
// coordinates of e_i composed after e_j in the global basis.
struct EndAlgebra {
    OrbitObjectRep object;
    std::map<int, std::int64_t> component_dims;
    std::int64_t total_dim = 0;
    std::vector<std::pair<int, std::size_t>> basis;
    std::vector<std::vector<std::vector<Rational>>> table;
    std::vector<Rational> identity;

    std::vector<Rational> unit_vector(std::size_t i) const {
        std::vector<Rational> u(basis.size(), Rational(0));
        u[i] = Rational(1);
        return u;
    }

    // u after v, extended bilinearly from the table.
    std::vector<Rational> mul(const std::vector<Rational>& u,
                              const std::vector<Rational>& v) const {
        const std::size_t n = basis.size();
        std::vector<Rational> out(n, Rational(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (u[i].is_zero()) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (v[j].is_zero()) continue;
                const Rational c = u[i] * v[j];
                for (std::size_t m = 0; m < n; ++m)
                    out[m] = out[m] + c * table[i][j][m];
            }
        }
        return out;
    }

    bool check_identity() const {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            const auto e = unit_vector(j);
            if (mul(identity, e) != e || mul(e, identity) != e) return false;
        }
        return true;
    }

    bool check_associativity() const {
        const std::size_t n = basis.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                for (std::size_t k = 0; k < n; ++k) {
                    const auto ei = unit_vector(i);
                    const auto jk = mul(unit_vector(j), unit_vector(k));
                    if (mul(ei, jk) != mul(mul(ei, unit_vector(j)), unit_vector(k)))
                        return false;
                }
        return true;
    }
};

// Result of probing for the least power d with nu isomorphic to S^d on the
// orbit category. compatible lists every d in [0, d_max] that passes both the
// object test and the hom-pairing test; dimension is the least positive such
// d, falling back to 0 when only d = 0 passes, and empty when nothing does.
struct CyProbe {
    std::vector<int> compatible;
    std::optional<int> dimension;
};

// The quiver of irreducible maps between the canonical objects, together with
// the induced translation. Parallel edges are kept with multiplicity.
struct ArQuiverData {
    std::vector<OrbitObjectRep> vertices;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::vector<std::size_t> tau_of;
};

// The orbit construction for a gluing word F = t^a * S^b acting on the
// indecomposables of a DerivedCategory. Everything runs on stalks
// (dimension vector, shift): one application of F costs |a| translation
// steps, so orbit scans stay cheap even far from the base slice.
//
// All window sizes below come with a stability margin: after the core scan,
// a few extra steps are checked to confirm that nothing relevant can appear
// beyond the window. A margin violation raises bound_exceeded rather than
// returning a silently truncated answer.
class OrbitCategory {
public:
    using Stalk = DerivedCategory::Stalk;

    // scan_slack widens every certified scan window by that many extra steps.
    // Answers must not depend on it; the stability suite compares slack 0
    // against a widened instance.
    OrbitCategory(DerivedCategory& dc, const FunctorWord& word, std::int64_t scan_slack = 0)
        : dc_(dc), word_(word), slack_(scan_slack) {
        if (word.is_identity())
            throw hypothesis_failed("gluing word " + word.str() +
                                    " fixes every object, so each orbit carries "
                                    "endomorphisms in every degree");
        h_ = dc_.cartan().dynkin().coxeter_number;
        a_ = word.tau_pow;
        b_ = word.shift_pow;
        if (std::llabs(a_) > 1000000 || std::llabs(b_) > 1000000)
            throw validation_error("gluing word exponent out of range");
        if (scan_slack < 0 || scan_slack > 1000)
            throw validation_error("scan slack out of range");
        delta_ = b_ * h_ - 2 * a_;
    }

    const FunctorWord& word() const { return word_; }
    const DerivedCategory& derived() const { return dc_; }
    int coxeter_number() const { return h_; }

    // Net shift produced by h applications of the word; the orbit machinery
    // is available exactly when this is nonzero.
    std::int64_t shift_drift() const { return delta_; }

    Stalk functor_stalk(Stalk s, std::int64_t k = 1) const {
        s.second = check_int(s.second + b_ * k, "shift");
        return dc_.tau_object(std::move(s), a_ * k);
    }

    const OrbitConditions& conditions() {
        if (!cond_) cond_ = compute_conditions();
        return *cond_;
    }

    void ensure_usable() {
        const OrbitConditions& c = conditions();
        if (!c.ok)
            throw hypothesis_failed(c.witness.empty()
                                        ? "orbit construction unavailable for this word"
                                        : c.witness);
    }

    // Canonical representative of the orbit through the object with the
    // given dimension vector and shift.
    OrbitObjectRep canonical_rep(const DimVector& dimv, int shift) {
        ensure_usable();
        int ri = dc_.cartan().root_index(dimv);
        if (ri < 0)
            throw validation_error("dimension vector " + dim_str(dimv) +
                                   " does not belong to an indecomposable");
        return canonical_cached(static_cast<std::size_t>(ri), shift);
    }

    OrbitObjectRep canonical_rep(ZQVertex coord) {
        DerivedIndec x = dc_.resolve(coord);
        return canonical_rep(x.dimv, x.shift);
    }

    // All canonical objects, sorted by (shift, coordinate).
    const std::vector<OrbitObjectRep>& objects() {
        ensure_usable();
        if (objects_done_) return objects_;
        const auto& roots = dc_.cartan().positive_roots();
        const int bound = conditions().shift_bound;
        std::set<std::pair<int, int>> seen;
        for (std::size_t ri = 0; ri < roots.size(); ++ri)
            for (int s = 0; s <= bound; ++s) {
                OrbitObjectRep rep = canonical_cached(ri, s);
                if (seen.insert({rep.coord.p, rep.coord.i}).second) objects_.push_back(rep);
            }
        std::sort(objects_.begin(), objects_.end(),
                  [](const OrbitObjectRep& x, const OrbitObjectRep& y) {
                      return std::tie(x.shift, x.coord.p, x.coord.i) <
                             std::tie(y.shift, y.coord.p, y.coord.i);
                  });
        for (std::size_t k = 0; k < objects_.size(); ++k)
            obj_index_[{objects_[k].coord.p, objects_[k].coord.i}] = k;
        objects_done_ = true;
        return objects_;
    }

    std::optional<std::size_t> object_index(ZQVertex coord) {
        objects();
        auto it = obj_index_.find({coord.p, coord.i});
        if (it == obj_index_.end()) return std::nullopt;
        return it->second;
    }

    OrbitHom hom(const OrbitObjectRep& x, const OrbitObjectRep& y) {
        ensure_usable();
        const auto key = std::make_pair(std::make_pair(x.coord.p, x.coord.i),
                                        std::make_pair(y.coord.p, y.coord.i));
        auto it = hom_cache_.find(key);
        if (it != hom_cache_.end()) return it->second;

        const std::int64_t dshift = std::llabs(std::int64_t{x.shift} - y.shift);
        const std::int64_t core =
            std::max(word_window(), ceil_div((dshift + 6) * h_, std::llabs(delta_)) + h_ + 4) +
            slack_;

        OrbitHom out;
        const Stalk xs{x.dimv, x.shift};
        scan_orbit({y.dimv, y.shift}, core, kMargin, [&](std::int64_t k, const Stalk& st) {
            const int gap = st.second - x.shift;
            const bool relevant = gap == 0 || gap == 1;
            if (std::llabs(k) > core) {
                if (relevant)
                    throw bound_exceeded("graded hom scan: margin step " + std::to_string(k) +
                                         " still contributes");
                return;
            }
            if (!relevant) return;
            std::int64_t d = dc_.hom_dim_stalk(xs, st);
            if (d > 0) {
                out.components[static_cast<int>(k)] += d;
                out.total += d;
            }
        });
        hom_cache_.emplace(key, out);
        return out;
    }

    // Sum of hom dimensions over all ordered pairs of canonical objects.
    std::int64_t category_algebra_dim() {
        const auto& t = totals_matrix();
        std::int64_t acc = 0;
        for (const auto& row : t)
            for (std::int64_t v : row) acc = check_int(acc + v, "algebra dimension");
        return acc;
    }

    OrbitMorphism identity_morphism(const OrbitObjectRep& x) {
        ensure_usable();
        OrbitMorphism m{x.coord, x.coord, {}};
        MeshMorphism id = dc_.mesh().identity(x.coord);
        if (!id.is_zero()) m.parts.emplace(0, std::move(id));
        return m;
    }

    // The idx-th basis element of the degree-k component of hom(x, y).
    OrbitMorphism basis_morphism(const OrbitObjectRep& x, const OrbitObjectRep& y, int degree,
                                 std::size_t idx) {
        ensure_usable();
        OrbitHom g = hom(x, y);
        auto it = g.components.find(degree);
        if (it == g.components.end() || idx >= static_cast<std::size_t>(it->second))
            throw validation_error("no basis morphism of degree " + std::to_string(degree) +
                                   " and index " + std::to_string(idx));
        ZQVertex c = power_coord(y, degree);
        if (dc_.mesh().hom_dim_basis(x.coord, c) != it->second)
            throw internal_error("mesh morphism space dimension differs from module count");
        OrbitMorphism m{x.coord, y.coord, {}};
        m.parts.emplace(degree, dc_.mesh().basis_element(x.coord, c, idx));
        return m;
    }

    // g after f. Degreewise: (g.f)_n = sum over m + k = n of F^m(g_k) . f_m.
    OrbitMorphism compose(const OrbitMorphism& g, const OrbitMorphism& f) {
        ensure_usable();
        if (!(f.dst == g.src))
            throw validation_error("cannot compose: codomain " + f.dst.str() +
                                   " differs from domain " + g.src.str());
        OrbitMorphism out{f.src, g.dst, {}};
        MeshCategory& mesh = dc_.mesh();
        for (const auto& fp : f.parts) {
            const int m = fp.first;
            const FunctorWord wm = word_.pow(m);
            for (const auto& gp : g.parts) {
                MeshMorphism tg =
                    m == 0 ? gp.second
                           : mesh.transport(gp.second, [&](ZQVertex v) {
                                 return dc_.apply_word(wm, v);
                             });
                MeshMorphism prod = mesh.compose(tg, fp.second);
                if (prod.is_zero()) continue;
                const int n = m + gp.first;
                auto it = out.parts.find(n);
                if (it == out.parts.end()) {
                    out.parts.emplace(n, std::move(prod));
                } else {
                    if (it->second.coeffs.size() != prod.coeffs.size())
                        throw internal_error("degree component size mismatch in composition");
                    for (std::size_t i = 0; i < prod.coeffs.size(); ++i)
                        it->second.coeffs[i] = it->second.coeffs[i] + prod.coeffs[i];
                }
            }
        }
        for (auto it = out.parts.begin(); it != out.parts.end();)
            it = it->second.is_zero() ? out.parts.erase(it) : std::next(it);
        return out;
    }

    EndAlgebra end_algebra(const OrbitObjectRep& x0) {
        ensure_usable();
        OrbitObjectRep x = canonical_cached(x0.root_index, x0.shift);
        EndAlgebra e;
        e.object = x;
        OrbitHom g = hom(x, x);
        e.component_dims = g.components;
        e.total_dim = g.total;

        MeshCategory& mesh = dc_.mesh();
        std::map<int, std::size_t> offset;
        std::vector<MeshMorphism> elems;
        for (const auto& comp : g.components) {
            const int k = comp.first;
            ZQVertex c = power_coord(x, k);
            if (mesh.hom_dim_basis(x.coord, c) != comp.second)
                throw internal_error("mesh morphism space dimension differs from module count");
            offset[k] = e.basis.size();
            for (std::int64_t idx = 0; idx < comp.second; ++idx) {
                e.basis.push_back({k, static_cast<std::size_t>(idx)});
                elems.push_back(mesh.basis_element(x.coord, c, static_cast<std::size_t>(idx)));
            }
        }

        const std::size_t n = e.basis.size();
        e.table.assign(n, std::vector<std::vector<Rational>>(n));
        for (std::size_t j = 0; j < n; ++j) {
            const int kj = e.basis[j].first;
            const FunctorWord wj = word_.pow(kj);
            for (std::size_t i = 0; i < n; ++i) {
                MeshMorphism ti =
                    kj == 0 ? elems[i]
                            : mesh.transport(elems[i], [&](ZQVertex v) {
                                  return dc_.apply_word(wj, v);
                              });
                MeshMorphism prod = mesh.compose(ti, elems[j]);
                std::vector<Rational> row(n, Rational(0));
                const int kd = e.basis[i].first + kj;
                auto it = offset.find(kd);
                if (it != offset.end()) {
                    if (prod.coeffs.size() !=
                        static_cast<std::size_t>(e.component_dims.at(kd)))
                        throw internal_error("degree component size mismatch in product");
                    for (std::size_t m = 0; m < prod.coeffs.size(); ++m)
                        row[it->second + m] = prod.coeffs[m];
                } else if (!prod.is_zero()) {
                    throw internal_error("nonzero product lands in a zero component");
                }
                e.table[i][j] = std::move(row);
            }
        }

        MeshMorphism idm = mesh.identity(x.coord);
        e.identity.assign(n, Rational(0));
        for (std::size_t m = 0; m < idm.coeffs.size(); ++m)
            e.identity[offset.at(0) + m] = idm.coeffs[m];
        return e;
    }

    // Least d in [0, d_max] with nu = S^d on objects and on hom pairings.
    CyProbe cy_probe(int d_max) {
        ensure_usable();
        const auto& obj = objects();
        const auto& t = totals_matrix();
        CyProbe out;
        for (int d = 0; d <= d_max; ++d) {
            bool good = true;
            std::vector<std::size_t> serre_idx(obj.size(), 0);
            for (std::size_t xi = 0; xi < obj.size() && good; ++xi) {
                Stalk nx = dc_.tau_object({obj[xi].dimv, obj[xi].shift}, 1);
                nx.second += 1;
                OrbitObjectRep cn = canonical_stalk(nx);
                OrbitObjectRep cs = canonical_cached(obj[xi].root_index, obj[xi].shift + d);
                if (cn != cs) {
                    good = false;
                    break;
                }
                auto idx = object_index(cs.coord);
                if (!idx) throw internal_error("canonical object missing from object list");
                serre_idx[xi] = *idx;
            }
            for (std::size_t xi = 0; xi < obj.size() && good; ++xi)
                for (std::size_t yi = 0; yi < obj.size(); ++yi)
                    if (t[xi][yi] != t[yi][serre_idx[xi]]) {
                        good = false;
                        break;
                    }
            if (good) out.compatible.push_back(d);
        }
        for (int d : out.compatible)
            if (d > 0) {
                out.dimension = d;
                break;
            }
        if (!out.dimension && !out.compatible.empty() && out.compatible.front() == 0)
            out.dimension = 0;
        return out;
    }

    // Does the translation fix every canonical object's orbit?
    CheckReport tau_identity_check() {
        ensure_usable();
        for (const auto& x : objects()) {
            Stalk tx = dc_.tau_object({x.dimv, x.shift}, 1);
            OrbitObjectRep c = canonical_stalk(tx);
            if (c != x)
                return {false, "translate of " + x.str() + " lies in the orbit of " + c.str()};
        }
        return {};
    }

    ArQuiverData ar_quiver() {
        ensure_usable();
        ArQuiverData out;
        out.vertices = objects();
        const Quiver& q = dc_.quiver();
        for (std::size_t xi = 0; xi < out.vertices.size(); ++xi) {
            const OrbitObjectRep& x = out.vertices[xi];
            for (const ZQArrow& a : zq_arrows_out(q, x.coord)) {
                DerivedIndec t = dc_.resolve(zq_target(q, a));
                auto idx = object_index(canonical_stalk({t.dimv, t.shift}).coord);
                if (!idx) throw internal_error("arrow target missing from object list");
                out.edges.push_back({xi, *idx});
            }
            Stalk tx = dc_.tau_object({x.dimv, x.shift}, 1);
            auto ti = object_index(canonical_stalk(tx).coord);
            if (!ti) throw internal_error("translate missing from object list");
            out.tau_of.push_back(*ti);
        }
        return out;
    }

    OrbitObjectRep canonical_stalk(const Stalk& s) {
        int ri = dc_.cartan().root_index(s.first);
        if (ri < 0) throw internal_error("stalk dimension vector is not a root");
        return canonical_cached(static_cast<std::size_t>(ri), s.second);
    }

private:
    static constexpr std::int64_t kMargin = 4;

    static std::int64_t ceil_div(std::int64_t p, std::int64_t q) { return (p + q - 1) / q; }

    static std::int64_t check_int(std::int64_t v, const char* what) {
        if (v > 1000000000 || v < -1000000000)
            throw bound_exceeded(std::string(what) + " out of tracked range");
        return v;
    }

    std::int64_t word_window() const {
        return (h_ + 2) * (std::llabs(a_) + std::llabs(b_) + 2) + 8;
    }

    // Walk the orbit of base over steps k in [-(core+margin), core+margin],
    // feeding every stalk to visit. Guards the certified drift bound: the
    // shift of the k-th power stays within 4 of base.shift + k*delta/h.
    void scan_orbit(const Stalk& base, std::int64_t core, std::int64_t margin,
                    const std::function<void(std::int64_t, const Stalk&)>& visit) const {
        const std::int64_t reach = core + margin;
        auto guard = [&](std::int64_t k, const Stalk& st) {
            const std::int64_t lhs = std::int64_t{h_} * st.second;
            const std::int64_t rhs = std::int64_t{h_} * base.second + k * delta_;
            if (std::llabs(lhs - rhs) > 4 * h_)
                throw internal_error("orbit shift drifts outside the certified corridor");
            visit(k, st);
        };
        guard(0, base);
        Stalk fwd = base;
        for (std::int64_t k = 1; k <= reach; ++k) {
            fwd = functor_stalk(std::move(fwd));
            guard(k, fwd);
        }
        Stalk bwd = base;
        for (std::int64_t k = 1; k <= reach; ++k) {
            bwd = functor_stalk(std::move(bwd), -1);
            guard(-k, bwd);
        }
    }

    OrbitConditions compute_conditions() {
        OrbitConditions r;
        const auto& roots = dc_.cartan().positive_roots();
        if (delta_ == 0) {
            r.objectwise_periodic = true;
            int max_shift = 0;
            for (int i = 1; i <= dc_.quiver().rank(); ++i) {
                Stalk base{dc_.cartan().dim_projective(i), 0};
                Stalk cur = base;
                for (int k = 0; k < h_; ++k) {
                    cur = functor_stalk(std::move(cur));
                    max_shift = std::max(max_shift, cur.second);
                }
                if (cur != base)
                    throw internal_error("zero drift but the h-th power moves an object");
            }
            const int drop = -(max_shift + 1);
            r.witness = "the " + std::to_string(h_) + "-th power of " + word_.str() +
                        " fixes every object, so the orbit of " + dim_str(roots[0]) +
                        "@0 meets shift 0 infinitely often and the orbit of " +
                        dim_str(roots[0]) + "@" + std::to_string(drop) +
                        " never reaches a nonnegative shift";
            r.evidence.push_back("h-th power verified as the identity on the projectives");
            return r;
        }

        const std::int64_t ad = std::llabs(delta_);
        const int s_cap = static_cast<int>(ceil_div(ad, h_)) + 8;
        const std::int64_t k3 = ceil_div(16 * std::int64_t{h_}, ad) + h_ + 6;
        std::set<std::pair<int, int>> visited;
        int shift_bound = 0;
        std::size_t orbit_count = 0;
        for (std::size_t ri = 0; ri < roots.size(); ++ri)
            for (int s = 0; s <= s_cap; ++s) {
                if (visited.count({static_cast<int>(ri), s})) continue;
                ++orbit_count;
                std::int64_t heart_hits = 0;
                std::optional<int> min_nonneg;
                scan_orbit({roots[ri], s}, k3, 0, [&](std::int64_t, const Stalk& st) {
                    int rj = dc_.cartan().root_index(st.first);
                    if (rj < 0) throw internal_error("orbit stalk is not a root");
                    if (st.second >= 0 && st.second <= s_cap) visited.insert({rj, st.second});
                    if (st.second == 0) ++heart_hits;
                    if (st.second >= 0 && (!min_nonneg || st.second < *min_nonneg))
                        min_nonneg = st.second;
                });
                if (!min_nonneg)
                    throw internal_error("orbit scan found no member of nonnegative shift");
                shift_bound = std::max(shift_bound, *min_nonneg);
                r.evidence.push_back("orbit of " + dim_str(roots[ri]) + "@" + std::to_string(s) +
                                     ": " + std::to_string(heart_hits) +
                                     " members at shift 0 within " + std::to_string(2 * k3 + 1) +
                                     " steps, least nonnegative shift " +
                                     std::to_string(*min_nonneg));
            }
        r.finite_heart_hits = true;
        r.shifts_bounded = true;
        r.shift_bound = shift_bound;
        r.ok = true;
        r.evidence.push_back(std::to_string(orbit_count) +
                             " orbits scanned; every orbit reaches a shift in [0, " +
                             std::to_string(shift_bound) + "]");
        return r;
    }

    OrbitObjectRep canonical_cached(std::size_t ri, int shift) {
        const auto key = std::make_pair(ri, shift);
        auto it = canon_cache_.find(key);
        if (it != canon_cache_.end()) return it->second;
        OrbitObjectRep rep = compute_canonical(ri, shift);
        canon_cache_.emplace(key, rep);
        return rep;
    }

    OrbitObjectRep compute_canonical(std::size_t ri, int shift) {
        const auto& roots = dc_.cartan().positive_roots();
        const std::int64_t ad = std::llabs(delta_);
        const std::int64_t core =
            std::max(word_window(),
                     ceil_div((std::llabs(std::int64_t{shift}) + 24) * h_, ad) + h_ + 8) +
            slack_;

        std::vector<Stalk> hits;
        std::vector<std::pair<std::int64_t, int>> margin_shifts;
        std::optional<int> best;
        scan_orbit({roots[ri], shift}, core, kMargin, [&](std::int64_t k, const Stalk& st) {
            if (std::llabs(k) <= core) {
                if (st.second >= 0) {
                    hits.push_back(st);
                    if (!best || st.second < *best) best = st.second;
                }
            } else {
                margin_shifts.push_back({k, st.second});
            }
        });
        if (!best)
            throw bound_exceeded("canonical representative scan window exhausted without "
                                 "reaching a nonnegative shift");
        for (const auto& ms : margin_shifts)
            if (ms.second >= 0 && ms.second <= *best)
                throw bound_exceeded("canonical representative scan: margin step " +
                                     std::to_string(ms.first) + " still competes");

        OrbitObjectRep out;
        out.shift = *best;
        std::optional<ZQVertex> best_coord;
        for (const Stalk& st : hits) {
            if (st.second != *best) continue;
            ZQVertex c = dc_.locate(st.first, st.second);
            if (!best_coord || c < *best_coord) {
                best_coord = c;
                int rj = dc_.cartan().root_index(st.first);
                if (rj < 0) throw internal_error("orbit stalk is not a root");
                out.root_index = static_cast<std::size_t>(rj);
                out.dimv = st.first;
            }
        }
        out.coord = *best_coord;
        return out;
    }

    ZQVertex power_coord(const OrbitObjectRep& x, int k) {
        Stalk st = functor_stalk({x.dimv, x.shift}, k);
        return dc_.locate(st.first, st.second);
    }

    const std::vector<std::vector<std::int64_t>>& totals_matrix() {
        const auto& obj = objects();
        if (totals_.empty() && !obj.empty()) {
            totals_.assign(obj.size(), std::vector<std::int64_t>(obj.size(), 0));
            for (std::size_t i = 0; i < obj.size(); ++i)
                for (std::size_t j = 0; j < obj.size(); ++j)
                    totals_[i][j] = hom(obj[i], obj[j]).total;
        }
        return totals_;
    }

    DerivedCategory& dc_;
    FunctorWord word_;
    std::int64_t slack_ = 0;
    int h_ = 0;
    std::int64_t a_ = 0, b_ = 0, delta_ = 0;
    std::optional<OrbitConditions> cond_;
    std::map<std::pair<std::size_t, int>, OrbitObjectRep> canon_cache_;
    std::vector<OrbitObjectRep> objects_;
    bool objects_done_ = false;
    std::map<std::pair<int, int>, std::size_t> obj_index_;
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, OrbitHom> hom_cache_;
    std::vector<std::vector<std::int64_t>> totals_;
};

}  // namespace orbitcat
