#pragma once

// Bilinear forms and root combinatorics attached to a Dynkin quiver.
//
// E = Id - Adj with Adj[i][j] counting arrows i -> j, so the Euler form is
// <d,e> = d^T E e. E is unitriangular in any admissible ordering, hence
// E^{-1} is integral; its rows are the projective dimension vectors and its
// columns the injective ones. The Coxeter transformation Phi = -E^{-1} E^T
// sends the class of a non-projective indecomposable to the class of its
// Auslander-Reiten translate.

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "orbitcat/errors.hpp"
#include "orbitcat/matrix.hpp"
#include "orbitcat/quiver.hpp"

namespace orbitcat {

class Cartan {
public:
    explicit Cartan(const Quiver& q) : dynkin_(classify_dynkin(q)) {
        if (!dynkin_.is_dynkin())
            throw unsupported_quiver("quiver is not Dynkin: " + dynkin_.witness,
                                     dynkin_.witness);
        const int n = q.rank();
        euler_ = int_identity(n);
        for (const auto& a : q.arrows())
            euler_[static_cast<std::size_t>(a.from - 1)][static_cast<std::size_t>(a.to - 1)] -= 1;
        sym_ = euler_;
        {
            IntMatrix et = int_transpose(euler_);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    sym_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        et[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
        RatMatrix einv_rat = RatMatrix::from_int(euler_).inverse();
        if (!einv_rat.is_integral()) throw internal_error("E^{-1} not integral");
        euler_inv_ = einv_rat.to_int();
        // Phi = -E^{-1} E^T, Phi^{-1} = -E^{-T} E
        coxeter_ = int_mul(euler_inv_, int_transpose(euler_));
        for (auto& row : coxeter_)
            for (auto& x : row) x = -x;
        RatMatrix einv_t = RatMatrix::from_int(int_transpose(euler_)).inverse();
        if (!einv_t.is_integral()) throw internal_error("E^{-T} not integral");
        coxeter_inv_ = int_mul(einv_t.to_int(), euler_);
        for (auto& row : coxeter_inv_)
            for (auto& x : row) x = -x;

        compute_roots(n);
    }

    const DynkinClass& dynkin() const { return dynkin_; }
    int rank() const { return static_cast<int>(euler_.size()); }

    const IntMatrix& euler_matrix() const { return euler_; }
    const IntMatrix& euler_inverse() const { return euler_inv_; }
    const IntMatrix& symmetrized() const { return sym_; }
    const IntMatrix& coxeter_matrix() const { return coxeter_; }
    const IntMatrix& coxeter_inverse_matrix() const { return coxeter_inv_; }

    std::int64_t euler_form(const DimVector& d, const DimVector& e) const {
        return bilinear(euler_, d, e);
    }
    std::int64_t symmetric_form(const DimVector& d, const DimVector& e) const {
        return bilinear(sym_, d, e);
    }

    // Phi^k d for any integer k; Phi has order h so k is reduced first.
    DimVector coxeter_apply(const DimVector& d, std::int64_t k) const {
        const int h = dynkin_.coxeter_number;
        std::int64_t r = k % h;
        if (r < 0) r += h;
        DimVector v = d;
        for (std::int64_t i = 0; i < r; ++i) v = int_apply(coxeter_, v);
        return v;
    }

    // Simple reflection on the root lattice: s_v(d) = d - (d^T C e_v) e_v.
    DimVector reflect_dim(const DimVector& d, int v) const {
        DimVector ev(d.size(), 0);
        ev[static_cast<std::size_t>(v - 1)] = 1;
        std::int64_t c = symmetric_form(d, ev);
        DimVector r = d;
        r[static_cast<std::size_t>(v - 1)] -= c;
        return r;
    }

    // Positive roots, lexicographically sorted.
    const std::vector<DimVector>& positive_roots() const { return roots_; }

    // Index into positive_roots(), or -1.
    int root_index(const DimVector& d) const {
        auto it = root_idx_.find(d);
        return it == root_idx_.end() ? -1 : it->second;
    }
    bool is_positive_root(const DimVector& d) const { return root_index(d) >= 0; }

    DimVector dim_projective(int i) const {
        return euler_inv_[static_cast<std::size_t>(i - 1)];
    }
    DimVector dim_injective(int j) const {
        DimVector v(euler_inv_.size());
        for (std::size_t r = 0; r < euler_inv_.size(); ++r)
            v[r] = euler_inv_[r][static_cast<std::size_t>(j - 1)];
        return v;
    }

    // Vertex i with d == dim P_i, or 0. Rows of E^{-1} are distinct, so this
    // is well defined.
    int projective_vertex(const DimVector& d) const {
        auto it = proj_idx_.find(d);
        return it == proj_idx_.end() ? 0 : it->second;
    }
    int injective_vertex(const DimVector& d) const {
        auto it = inj_idx_.find(d);
        return it == inj_idx_.end() ? 0 : it->second;
    }

private:
    static std::int64_t bilinear(const IntMatrix& m, const DimVector& d, const DimVector& e) {
        DimVector me = int_apply(m, e);
        __int128 acc = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            acc += static_cast<__int128>(d[i]) * me[i];
        return detail::narrow128(acc, "bilinear form");
    }

    void compute_roots(int n) {
        // Orbit of the simple roots under all simple reflections. Finite
        // type makes this terminate; the cap is a safety net (E8 has 240
        // roots in total).
        std::set<DimVector> seen;
        std::vector<DimVector> queue;
        for (int i = 1; i <= n; ++i) {
            DimVector e(static_cast<std::size_t>(n), 0);
            e[static_cast<std::size_t>(i - 1)] = 1;
            seen.insert(e);
            queue.push_back(e);
        }
        for (std::size_t head = 0; head < queue.size(); ++head) {
            DimVector d = queue[head];
            for (int v = 1; v <= n; ++v) {
                DimVector r = reflect_dim(d, v);
                if (seen.insert(r).second) {
                    queue.push_back(r);
                    if (seen.size() > 300) throw internal_error("root closure runaway");
                }
            }
        }
        for (const auto& d : seen)
            if (dim_nonneg(d) && !dim_is_zero(d)) roots_.push_back(d);
        std::sort(roots_.begin(), roots_.end());
        for (std::size_t i = 0; i < roots_.size(); ++i)
            root_idx_[roots_[i]] = static_cast<int>(i);
        for (int i = 1; i <= n; ++i) {
            proj_idx_[dim_projective(i)] = i;
            inj_idx_[dim_injective(i)] = i;
        }
    }

    DynkinClass dynkin_;
    IntMatrix euler_, sym_, euler_inv_, coxeter_, coxeter_inv_;
    std::vector<DimVector> roots_;
    std::map<DimVector, int> root_idx_, proj_idx_, inj_idx_;
};

} // namespace orbitcat
