#pragma once
// Brute-force graded dimension counter for path algebras modulo sign-free
// quadratic relations. The orbit tests use it as an independent oracle for
// endomorphism algebra dimensions: it never touches the mesh machinery,
// it just enumerates paths degree by degree and row-reduces every embedded
// relator p*r*q.
//
// Composition is diagrammatic: the monomial [x, y] is "x then y", so it
// needs to(x) == from(y). All monomials of one relator must share their
// endpoints and their length, and every coefficient is +1; on trees that
// loses no generality because arrows can be rescaled independently.

#include <orbitcat/orbitcat.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace oracle {

struct OArrow {
    int from = 0;
    int to = 0;
    std::string label;
};

using Monomial = std::vector<std::string>;
using Relator = std::vector<Monomial>;

class PathAlgebraOracle {
public:
    PathAlgebraOracle(int vertex_count, std::vector<OArrow> arrows,
                      std::vector<Relator> relators)
        : n_(vertex_count), arrows_(std::move(arrows)) {
        if (n_ <= 0) throw std::runtime_error("oracle: no vertices");
        for (std::size_t i = 0; i < arrows_.size(); ++i) {
            const OArrow& a = arrows_[i];
            if (a.from < 1 || a.from > n_ || a.to < 1 || a.to > n_)
                throw std::runtime_error("oracle: arrow endpoint out of range");
            if (!label_index_.emplace(a.label, i).second)
                throw std::runtime_error("oracle: duplicate arrow label " + a.label);
        }
        for (const Relator& r : relators) {
            RRel rr = resolve(r);
            if (!rr.monomials.empty()) rels_.push_back(std::move(rr));
        }
        run();
    }

    std::int64_t total_dim() const { return total_; }

    // pair_dims()[u][v] counts surviving paths from vertex u+1 to v+1.
    const std::vector<std::vector<std::int64_t>>& pair_dims() const { return pair_; }

    // Graded by path length; the last entry is the first vanishing degree.
    const std::vector<std::int64_t>& dims_by_degree() const { return by_degree_; }

private:
    struct Path {
        int from = 0;
        int to = 0;
        std::vector<std::size_t> arr;
    };
    struct RRel {
        int from = 0;
        int to = 0;
        std::size_t len = 0;
        std::vector<std::vector<std::size_t>> monomials;
    };

    static constexpr int kMaxDegree = 200;
    static constexpr std::size_t kMaxPathsPerDegree = 100000;

    RRel resolve(const Relator& r) const {
        RRel out;
        for (const Monomial& m : r) {
            if (m.empty()) throw std::runtime_error("oracle: empty monomial");
            std::vector<std::size_t> seq;
            int at = 0;
            for (const std::string& lab : m) {
                auto it = label_index_.find(lab);
                if (it == label_index_.end())
                    throw std::runtime_error("oracle: unknown label " + lab);
                const OArrow& a = arrows_[it->second];
                if (!seq.empty() && a.from != at)
                    throw std::runtime_error("oracle: monomial does not compose");
                seq.push_back(it->second);
                at = a.to;
            }
            int mfrom = arrows_[seq.front()].from;
            if (out.monomials.empty()) {
                out.from = mfrom;
                out.to = at;
                out.len = seq.size();
            } else if (out.from != mfrom || out.to != at || out.len != seq.size()) {
                throw std::runtime_error("oracle: relator is not homogeneous");
            }
            out.monomials.push_back(std::move(seq));
        }
        return out;
    }

    void run() {
        pair_.assign(static_cast<std::size_t>(n_),
                     std::vector<std::int64_t>(static_cast<std::size_t>(n_), 0));
        std::vector<std::vector<Path>> levels;
        std::vector<Path> trivial;
        for (int v = 1; v <= n_; ++v) {
            trivial.push_back({v, v, {}});
            pair_[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(v - 1)] += 1;
        }
        levels.push_back(std::move(trivial));
        by_degree_.push_back(n_);
        total_ = n_;

        for (int d = 1; d <= kMaxDegree; ++d) {
            std::vector<Path> cur;
            for (const Path& p : levels.back())
                for (std::size_t ai = 0; ai < arrows_.size(); ++ai)
                    if (arrows_[ai].from == p.to) {
                        Path q = p;
                        q.arr.push_back(ai);
                        q.to = arrows_[ai].to;
                        cur.push_back(std::move(q));
                    }
            if (cur.size() > kMaxPathsPerDegree)
                throw std::runtime_error("oracle: path explosion at degree " +
                                         std::to_string(d));
            std::map<std::vector<std::size_t>, std::size_t> col;
            for (std::size_t k = 0; k < cur.size(); ++k) col[cur[k].arr] = k;

            orbitcat::detail::SparseRref rref;
            for (const RRel& rel : rels_) {
                if (rel.len > static_cast<std::size_t>(d)) continue;
                const int rest = d - static_cast<int>(rel.len);
                for (int a = 0; a <= rest; ++a) {
                    const int b = rest - a;
                    for (const Path& p : levels[static_cast<std::size_t>(a)]) {
                        if (p.to != rel.from) continue;
                        for (const Path& q : levels[static_cast<std::size_t>(b)]) {
                            if (q.from != rel.to) continue;
                            std::map<std::size_t, orbitcat::Rational> row;
                            for (const auto& mono : rel.monomials) {
                                std::vector<std::size_t> whole = p.arr;
                                whole.insert(whole.end(), mono.begin(), mono.end());
                                whole.insert(whole.end(), q.arr.begin(), q.arr.end());
                                row[col.at(whole)] += orbitcat::Rational(1);
                            }
                            orbitcat::detail::SparseRow sr(row.begin(), row.end());
                            rref.insert(std::move(sr));
                        }
                    }
                }
            }

            const std::int64_t dim_d =
                static_cast<std::int64_t>(cur.size()) -
                static_cast<std::int64_t>(rref.rank());
            by_degree_.push_back(dim_d);
            if (dim_d == 0) return; // generated in degree one, so nothing survives above
            total_ += dim_d;
            for (std::size_t k = 0; k < cur.size(); ++k)
                if (!rref.is_pivot(k))
                    pair_[static_cast<std::size_t>(cur[k].from - 1)]
                         [static_cast<std::size_t>(cur[k].to - 1)] += 1;
            levels.push_back(std::move(cur));
        }
        throw std::runtime_error("oracle: dimensions never vanished");
    }

    int n_;
    std::vector<OArrow> arrows_;
    std::map<std::string, std::size_t> label_index_;
    std::vector<RRel> rels_;
    std::int64_t total_ = 0;
    std::vector<std::vector<std::int64_t>> pair_;
    std::vector<std::int64_t> by_degree_;
};

// Doubled quiver of a tree, one mesh-style relator per vertex: every edge
// at v contributes the out-and-back loop through that edge.
inline PathAlgebraOracle preprojective_oracle(const orbitcat::Quiver& q) {
    std::vector<OArrow> arr;
    for (const auto& a : q.arrows()) {
        arr.push_back({a.from, a.to, "c_" + a.label});
        arr.push_back({a.to, a.from, "f_" + a.label});
    }
    std::vector<Relator> rels;
    for (int v : q.vertices()) {
        Relator r;
        for (const auto& a : q.arrows()) {
            if (a.from == v) r.push_back({"c_" + a.label, "f_" + a.label});
            if (a.to == v) r.push_back({"f_" + a.label, "c_" + a.label});
        }
        rels.push_back(std::move(r));
    }
    return PathAlgebraOracle(q.rank(), std::move(arr), std::move(rels));
}

// Chain 1 - 2 - ... - n with an extra loop e at vertex 1. The loop squares
// to the out-and-back through the first edge; every other vertex carries
// the usual mesh-style relator.
inline PathAlgebraOracle loop_chain_oracle(int n) {
    std::vector<OArrow> arr{{1, 1, "e"}};
    for (int v = 1; v < n; ++v) {
        arr.push_back({v, v + 1, "a" + std::to_string(v)});
        arr.push_back({v + 1, v, "b" + std::to_string(v)});
    }
    std::vector<Relator> rels;
    {
        Relator r1{{"e", "e"}};
        if (n >= 2) r1.push_back({"a1", "b1"});
        rels.push_back(std::move(r1));
    }
    for (int v = 2; v <= n; ++v) {
        Relator r{{"b" + std::to_string(v - 1), "a" + std::to_string(v - 1)}};
        if (v < n) r.push_back({"a" + std::to_string(v), "b" + std::to_string(v)});
        rels.push_back(std::move(r));
    }
    return PathAlgebraOracle(n, std::move(arr), std::move(rels));
}

} // namespace oracle
