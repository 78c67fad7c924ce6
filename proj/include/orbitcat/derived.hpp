#pragma once

// The bounded derived category of a Dynkin quiver, seen through its
// Auslander-Reiten quiver ZQ and the stalk description: every
// indecomposable is an indecomposable module placed in a single degree.
//
// The dictionary between the two pictures walks tau steps:
//   forward (one slice right):  non-injective (d, n) -> (Phi^{-1} d, n),
//                               injective (dim I_j, n) -> (dim P_j, n+1)
//   backward (one slice left):  non-projective (d, n) -> (Phi d, n),
//                               projective (dim P_j, n) -> (dim I_j, n-1)
// anchored at (0, i) = (dim P_i, 0). The shift acts on (d, n) by bumping n;
// its coordinate action is recovered by locating the bumped object.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "orbitcat/cartan.hpp"
#include "orbitcat/errors.hpp"
#include "orbitcat/functor_word.hpp"
#include "orbitcat/mesh.hpp"
#include "orbitcat/quiver.hpp"
#include "orbitcat/rep.hpp"

namespace orbitcat {

struct DerivedIndec {
    ZQVertex coord;
    DimVector dimv; // a positive root
    int shift = 0;

    std::string str() const {
        return dim_str(dimv) + "@" + std::to_string(shift) + " = " + coord.str();
    }
    friend bool operator==(const DerivedIndec& a, const DerivedIndec& b) {
        return a.coord == b.coord;
    }
};

struct CheckReport {
    bool ok = true;
    std::string witness; // empty when ok

    explicit operator bool() const { return ok; }
};

class DerivedCategory {
public:
    explicit DerivedCategory(const Quiver& q) : q_(q), cartan_(q), mesh_(q) {}

    const Quiver& quiver() const { return q_; }
    const Cartan& cartan() const { return cartan_; }
    MeshCategory& mesh() { return mesh_; }
    int coxeter_number() const { return cartan_.dynkin().coxeter_number; }

    // ---- dictionary -------------------------------------------------------

    DerivedIndec resolve(ZQVertex coord) {
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = resolve_cache_.find(coord);
            if (it != resolve_cache_.end()) return it->second;
        }
        DimVector d = cartan_.dim_projective(coord.i);
        int n = 0;
        for (int s = 0; s < coord.p; ++s) step_forward(d, n);
        for (int s = 0; s > coord.p; --s) step_backward(d, n);
        DerivedIndec out{coord, d, n};
        std::lock_guard<std::mutex> lock(mu_);
        resolve_cache_.emplace(coord, out);
        return out;
    }

    ZQVertex locate(const DimVector& root, int shift) {
        int ri = cartan_.root_index(root);
        if (ri < 0)
            throw validation_error("dimension vector " + dim_str(root) +
                                   " is not a positive root");
        const auto key = std::make_pair(ri, shift);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = locate_cache_.find(key);
            if (it != locate_cache_.end()) return it->second;
        }
        const int cap = (std::abs(shift) + 2) * coxeter_number() + 64;
        DimVector d = root;
        int n = shift;
        ZQVertex coord;
        if (shift >= 0) {
            int t = 0;
            while (true) {
                if (n == 0) {
                    int j = cartan_.projective_vertex(d);
                    if (j) {
                        coord = {t, j};
                        break;
                    }
                }
                step_backward(d, n);
                if (++t > cap) throw internal_error("locate walk exceeded " + std::to_string(cap));
            }
        } else {
            int t = 0;
            while (true) {
                if (n == 0) {
                    int j = cartan_.projective_vertex(d);
                    if (j) {
                        coord = {-t, j};
                        break;
                    }
                }
                step_forward(d, n);
                if (++t > cap) throw internal_error("locate walk exceeded " + std::to_string(cap));
            }
        }
        std::lock_guard<std::mutex> lock(mu_);
        locate_cache_.emplace(key, coord);
        return coord;
    }

    DerivedIndec object(const DimVector& root, int shift) {
        return {locate(root, shift), root, shift};
    }

    // Stalk form of an object: (dimension vector, shift), no coordinate.
    using Stalk = std::pair<DimVector, int>;

    // tau^k without coordinates; k may be negative.
    Stalk tau_object(Stalk s, std::int64_t k = 1) const {
        for (std::int64_t i = 0; i < k; ++i) step_backward(s.first, s.second);
        for (std::int64_t i = 0; i > k; --i) step_forward(s.first, s.second);
        return s;
    }

    // ---- functors ---------------------------------------------------------

    // t^a S^b on coordinates: bump the shift through the dictionary, then
    // subtract a from the slice (tau moves one slice left).
    ZQVertex apply_word(const FunctorWord& w, ZQVertex x) {
        if (w.tau_pow == 0 && w.shift_pow == 0) return x;
        DerivedIndec obj = resolve(x);
        ZQVertex moved = w.shift_pow == 0
                             ? x
                             : locate(obj.dimv, obj.shift + check_int(w.shift_pow, "shift"));
        moved.p -= check_int(w.tau_pow, "translate");
        return moved;
    }

    ZQVertex shift_coord(ZQVertex x, int k = 1) { return apply_word({0, k}, x); }
    ZQVertex serre_coord(ZQVertex x, int k = 1) { return apply_word({k, k}, x); }

    // ---- hom spaces -------------------------------------------------------

    // Module-level hom between two positive roots, memoized.
    std::int64_t rep_hom(const DimVector& a, const DimVector& b) {
        int ia = cartan_.root_index(a), ib = cartan_.root_index(b);
        if (ia < 0 || ib < 0) throw internal_error("rep_hom on non-roots");
        const auto key = std::make_pair(ia, ib);
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = rep_hom_cache_.find(key);
            if (it != rep_hom_cache_.end()) return it->second;
        }
        std::int64_t d = orbitcat::hom_dim(q_, rep_for(ia), rep_for(ib));
        std::lock_guard<std::mutex> lock(mu_);
        rep_hom_cache_.emplace(key, d);
        return d;
    }

    std::int64_t rep_ext1(const DimVector& a, const DimVector& b) {
        std::int64_t e = rep_hom(a, b) - cartan_.euler_form(a, b);
        if (e < 0) throw internal_error("negative Ext^1");
        return e;
    }

    // dim Hom in the derived category via the stalk description: only shift
    // gaps 0 and 1 survive over a hereditary algebra.
    std::int64_t hom_dim_stalk(const Stalk& x, const Stalk& y) {
        int gap = y.second - x.second;
        if (gap == 0) return rep_hom(x.first, y.first);
        if (gap == 1) return rep_ext1(x.first, y.first);
        return 0;
    }

    std::int64_t hom_dim_rep(const DerivedIndec& x, const DerivedIndec& y) {
        return hom_dim_stalk({x.dimv, x.shift}, {y.dimv, y.shift});
    }

    // Same number through the mesh picture: a hammock count seeded at x.
    std::int64_t hom_dim_mesh(ZQVertex x, ZQVertex y) {
        return hammock_hom_dim(q_, x, y, shift_coord(x));
    }

    // ---- window checks ----------------------------------------------------

    // dim Hom(X, Y) == dim Hom(Y, S tau X) for all X, Y with slices in
    // [p_min, p_max] (both sides counted through hammocks).
    CheckReport serre_check(int p_min, int p_max) {
        const int n = q_.rank();
        for (int px = p_min; px <= p_max; ++px)
            for (int ix = 1; ix <= n; ++ix) {
                ZQVertex x{px, ix};
                ZQVertex nu_x = serre_coord(x);
                for (int py = p_min; py <= p_max; ++py)
                    for (int iy = 1; iy <= n; ++iy) {
                        ZQVertex y{py, iy};
                        std::int64_t lhs = hom_dim_mesh(x, y);
                        std::int64_t rhs = hom_dim_mesh(y, nu_x);
                        if (lhs != rhs)
                            return {false, "dim Hom(" + x.str() + "," + y.str() + ") = " +
                                               std::to_string(lhs) + " but dim Hom(" +
                                               y.str() + "," + nu_x.str() + ") = " +
                                               std::to_string(rhs)};
                    }
            }
        return {};
    }

    // Two functor words agree on every object with slice in [p_min, p_max].
    CheckReport word_identity_check(const FunctorWord& lw, const FunctorWord& rw, int p_min,
                                    int p_max) {
        const int n = q_.rank();
        for (int p = p_min; p <= p_max; ++p)
            for (int i = 1; i <= n; ++i) {
                ZQVertex x{p, i};
                ZQVertex lhs = apply_word(lw, x);
                ZQVertex rhs = apply_word(rw, x);
                if (!(lhs == rhs))
                    return {false, lw.str() + " sends " + x.str() + " to " + lhs.str() +
                                       " but " + rw.str() + " sends it to " + rhs.str()};
            }
        return {};
    }

    // (t S)^u == S^v on every object with slice in [p_min, p_max].
    CheckReport power_identity_check(int u, int v, int p_min, int p_max) {
        return word_identity_check({u, u}, {0, v}, p_min, p_max);
    }

    // The fractional Calabi-Yau identity nu^h = S^{h-2} on a window.
    CheckReport fractional_cy_check(int p_min, int p_max) {
        const int h = coxeter_number();
        return power_identity_check(h, h - 2, p_min, p_max);
    }

private:
    static int check_int(std::int64_t v, const char* what) {
        if (v > 1000000 || v < -1000000)
            throw validation_error(std::string(what) + " exponent too large");
        return static_cast<int>(v);
    }

    void step_forward(DimVector& d, int& n) const {
        int j = cartan_.injective_vertex(d);
        if (j) {
            d = cartan_.dim_projective(j);
            n += 1;
        } else {
            d = int_apply(cartan_.coxeter_inverse_matrix(), d);
            if (!dim_nonneg(d)) throw internal_error("forward step left the root cone");
        }
    }

    void step_backward(DimVector& d, int& n) const {
        int j = cartan_.projective_vertex(d);
        if (j) {
            d = cartan_.dim_injective(j);
            n -= 1;
        } else {
            d = int_apply(cartan_.coxeter_matrix(), d);
            if (!dim_nonneg(d)) throw internal_error("backward step left the root cone");
        }
    }

    Quiver q_;
    Cartan cartan_;
    MeshCategory mesh_;

    std::mutex mu_;
    std::map<ZQVertex, DerivedIndec> resolve_cache_;
    std::map<std::pair<int, int>, ZQVertex> locate_cache_;
    std::map<int, Representation> rep_cache_;
    std::map<std::pair<int, int>, std::int64_t> rep_hom_cache_;

    const Representation& rep_for(int root_idx) {
        std::lock_guard<std::mutex> lock(rep_mu_);
        auto it = rep_cache_.find(root_idx);
        if (it != rep_cache_.end()) return it->second;
        Representation r = indec_from_root(
            q_, cartan_, cartan_.positive_roots()[static_cast<std::size_t>(root_idx)]);
        return rep_cache_.emplace(root_idx, std::move(r)).first->second;
    }
    std::mutex rep_mu_;
};

} // namespace orbitcat
