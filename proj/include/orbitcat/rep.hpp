#pragma once

// Finite-dimensional quiver representations over Q, built exactly.
//
// The construction route for indecomposables avoids any search: a positive
// root is dragged down to a simple root by reflecting at sinks, then the
// representation is rebuilt by inverse reflection at each step. Hom spaces
// are intertwiner null spaces, and Ext^1 follows from hom minus the Euler
// form (the path algebra is hereditary, so nothing higher survives).

#include <cstddef>
#include <cstdint>
#include <vector>

#include "orbitcat/cartan.hpp"
#include "orbitcat/errors.hpp"
#include "orbitcat/matrix.hpp"
#include "orbitcat/quiver.hpp"

namespace orbitcat {

struct Representation {
    DimVector dims;               // per vertex, index v-1
    std::vector<RatMatrix> maps;  // per arrow index, shape dims[to-1] x dims[from-1]

    std::size_t dim_at(int v) const {
        return static_cast<std::size_t>(dims[static_cast<std::size_t>(v - 1)]);
    }
};

inline Representation simple_rep(const Quiver& q, int v) {
    Representation r;
    r.dims.assign(static_cast<std::size_t>(q.rank()), 0);
    r.dims[static_cast<std::size_t>(v - 1)] = 1;
    for (const auto& a : q.arrows())
        r.maps.emplace_back(a.to == v ? 1 : 0, a.from == v ? 1 : 0);
    return r;
}

enum class SinkStrategy { SmallestSink, LargestSink };

namespace detail {

// v is a source of `cur` and a sink of `prev` (same arrow indices, endpoints
// at v swapped). Rebuild the representation one level down: the new space at
// v is the cokernel of the diagonal map M_v -> (+) M_w over arrows v -> w,
// and each reversed arrow acts by inclusion followed by the quotient map.
inline Representation inverse_reflection(const Quiver& prev, const Quiver& cur, int v,
                                         const Representation& m) {
    const auto& arrow_ids = cur.arrows_from(v);
    std::size_t stack_rows = 0;
    for (int ai : arrow_ids)
        stack_rows += m.dim_at(cur.arrows()[static_cast<std::size_t>(ai)].to);
    const std::size_t dv = m.dim_at(v);

    RatMatrix diag(stack_rows, dv);
    {
        std::size_t row = 0;
        for (int ai : arrow_ids) {
            const RatMatrix& f = m.maps[static_cast<std::size_t>(ai)];
            for (std::size_t r = 0; r < f.rows(); ++r)
                for (std::size_t c = 0; c < dv; ++c) diag.at(row + r, c) = f.at(r, c);
            row += f.rows();
        }
    }

    // Quotient projection with kernel im(diag): reduce the transpose, then
    // non-pivot coordinates survive and pivot coordinates fold back in.
    RatMatrix dt = diag.transpose();
    std::vector<std::size_t> pivots = dt.rref();
    std::vector<char> is_pivot(stack_rows, 0);
    for (std::size_t p : pivots) is_pivot[p] = 1;
    std::vector<std::size_t> keep;
    for (std::size_t j = 0; j < stack_rows; ++j)
        if (!is_pivot[j]) keep.push_back(j);
    const std::size_t coker = keep.size();

    RatMatrix proj(coker, stack_rows);
    for (std::size_t k = 0; k < coker; ++k) proj.at(k, keep[k]) = Rational(1);
    for (std::size_t pi = 0; pi < pivots.size(); ++pi)
        for (std::size_t k = 0; k < coker; ++k)
            proj.at(k, pivots[pi]) = proj.at(k, pivots[pi]) - dt.at(pi, keep[k]);

    Representation out;
    out.dims = m.dims;
    out.dims[static_cast<std::size_t>(v - 1)] = static_cast<std::int64_t>(coker);
    out.maps = m.maps;
    {
        std::size_t row = 0;
        for (int ai : arrow_ids) {
            std::size_t dw = m.dim_at(cur.arrows()[static_cast<std::size_t>(ai)].to);
            RatMatrix block(coker, dw);
            for (std::size_t r = 0; r < coker; ++r)
                for (std::size_t c = 0; c < dw; ++c) block.at(r, c) = proj.at(r, row + c);
            out.maps[static_cast<std::size_t>(ai)] = std::move(block);
            row += dw;
        }
    }
    // Arrows untouched by the reflection keep their maps; shapes still match
    // because only the space at v changed and those arrows avoid v.
    (void)prev;
    return out;
}

} // namespace detail

// The indecomposable representation with the given positive root as its
// dimension vector (Gabriel bijection). Deterministic for a fixed strategy;
// both strategies give isomorphic output, which the tests pin down.
inline Representation indec_from_root(const Quiver& q, const Cartan& cartan,
                                      const DimVector& root,
                                      SinkStrategy strategy = SinkStrategy::SmallestSink) {
    if (!cartan.is_positive_root(root))
        throw validation_error("dimension vector " + dim_str(root) + " is not a positive root");

    auto unit_at = [](const DimVector& d) -> int {
        int v = 0;
        for (std::size_t i = 0; i < d.size(); ++i) {
            if (d[i] == 1 && v == 0)
                v = static_cast<int>(i) + 1;
            else if (d[i] != 0)
                return 0;
        }
        return v;
    };

    std::vector<Quiver> quivers{q};
    std::vector<int> seq;
    DimVector d = root;
    const int cap = q.rank() * cartan.dynkin().coxeter_number * 4 + 64;
    while (unit_at(d) == 0) {
        const Quiver& cur = quivers.back();
        int pick = 0;
        for (int v = 1; v <= cur.rank(); ++v) {
            if (!cur.is_sink(v)) continue;
            if (pick == 0 || (strategy == SinkStrategy::LargestSink && v > pick)) pick = v;
            if (strategy == SinkStrategy::SmallestSink) break;
        }
        if (pick == 0) throw internal_error("acyclic quiver without a sink");
        d = cartan.reflect_dim(d, pick);
        if (!dim_nonneg(d)) throw internal_error("reflection left the positive cone");
        seq.push_back(pick);
        quivers.push_back(cur.reflected_at(pick));
        if (static_cast<int>(seq.size()) > cap)
            throw bound_exceeded("sink reflection walk exceeded " + std::to_string(cap) +
                                 " steps");
    }

    Representation m = simple_rep(quivers.back(), unit_at(d));
    for (std::size_t j = seq.size(); j-- > 0;)
        m = detail::inverse_reflection(quivers[j], quivers[j + 1], seq[j], m);
    if (m.dims != root) throw internal_error("rebuilt representation has wrong dimension vector");
    return m;
}

// dim Hom(M, N): solve the intertwiner equations N_a f_u = f_w M_a for all
// arrows a: u -> w in one big linear system over Q.
inline std::int64_t hom_dim(const Quiver& q, const Representation& m, const Representation& n) {
    const int nv = q.rank();
    std::vector<std::size_t> off(static_cast<std::size_t>(nv + 1), 0);
    for (int v = 1; v <= nv; ++v)
        off[static_cast<std::size_t>(v)] =
            off[static_cast<std::size_t>(v - 1)] + n.dim_at(v) * m.dim_at(v);
    const std::size_t unknowns = off[static_cast<std::size_t>(nv)];

    std::size_t rows = 0;
    for (const auto& a : q.arrows()) rows += n.dim_at(a.to) * m.dim_at(a.from);

    RatMatrix sys(rows, unknowns);
    std::size_t row = 0;
    auto var = [&](int v, std::size_t r, std::size_t c) {
        return off[static_cast<std::size_t>(v - 1)] + r * m.dim_at(v) + c;
    };
    for (std::size_t ai = 0; ai < q.arrows().size(); ++ai) {
        const auto& a = q.arrows()[ai];
        const RatMatrix& ma = m.maps[ai];
        const RatMatrix& na = n.maps[ai];
        for (std::size_t r = 0; r < n.dim_at(a.to); ++r)
            for (std::size_t c = 0; c < m.dim_at(a.from); ++c) {
                for (std::size_t k = 0; k < n.dim_at(a.from); ++k) {
                    std::size_t j = var(a.from, k, c);
                    sys.at(row, j) = sys.at(row, j) + na.at(r, k);
                }
                for (std::size_t k = 0; k < m.dim_at(a.to); ++k) {
                    std::size_t j = var(a.to, r, k);
                    sys.at(row, j) = sys.at(row, j) - ma.at(k, c);
                }
                ++row;
            }
    }
    return static_cast<std::int64_t>(unknowns) - static_cast<std::int64_t>(sys.rank());
}

// dim Ext^1(M, N) = dim Hom(M, N) - <dim M, dim N>. Nonnegative by
// hereditarity; a negative value would mean the inputs are inconsistent.
inline std::int64_t ext1_dim(const Quiver& q, const Cartan& cartan, const Representation& m,
                             const Representation& n) {
    std::int64_t e = hom_dim(q, m, n) - cartan.euler_form(m.dims, n.dims);
    if (e < 0) throw internal_error("negative Ext^1 dimension");
    return e;
}

} // namespace orbitcat
