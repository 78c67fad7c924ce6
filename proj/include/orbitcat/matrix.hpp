#pragma once

// Dense exact linear algebra over Rational, plus the small integer-vector
// helpers used for dimension vectors.
//
// Elimination is deterministic: pivots are always chosen as the first row
// with a nonzero entry in the current column (no magnitude heuristics), so
// echelon forms, null-space bases and quotient bases are reproducible across
// runs and platforms.

#include <cassert>
#include <cstdint>
#include <string>
#include <vector>

#include "orbitcat/rational.hpp"

namespace orbitcat {

using DimVector = std::vector<std::int64_t>;

inline DimVector dim_add(const DimVector& a, const DimVector& b) {
    assert(a.size() == b.size());
    DimVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline bool dim_nonneg(const DimVector& d) {
    for (auto v : d)
        if (v < 0) return false;
    return true;
}

inline bool dim_is_zero(const DimVector& d) {
    for (auto v : d)
        if (v != 0) return false;
    return true;
}

inline std::string dim_str(const DimVector& d) {
    std::string s;
    for (std::size_t i = 0; i < d.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(d[i]);
    }
    return s;
}

// Integer square matrix acting on DimVector columns.
using IntMatrix = std::vector<std::vector<std::int64_t>>;

inline IntMatrix int_identity(std::size_t n) {
    IntMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix int_mul(const IntMatrix& a, const IntMatrix& b) {
    std::size_t n = a.size();
    IntMatrix c(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j)
                c[i][j] = detail::narrow128(
                    static_cast<__int128>(c[i][j]) +
                        static_cast<__int128>(a[i][k]) * b[k][j],
                    "int matrix product");
        }
    return c;
}

inline DimVector int_apply(const IntMatrix& m, const DimVector& v) {
    std::size_t n = m.size();
    assert(v.size() == n);
    DimVector r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        __int128 acc = 0;
        for (std::size_t j = 0; j < n; ++j)
            acc += static_cast<__int128>(m[i][j]) * v[j];
        r[i] = detail::narrow128(acc, "int matrix apply");
    }
    return r;
}

inline IntMatrix int_transpose(const IntMatrix& m) {
    std::size_t n = m.size();
    IntMatrix t(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) t[j][i] = m[i][j];
    return t;
}

class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rational(1);
        return m;
    }

    static RatMatrix from_int(const IntMatrix& a) {
        RatMatrix m(a.size(), a.empty() ? 0 : a[0].size());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) = Rational(a[i][j]);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rational& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        assert(a.cols_ == b.rows_);
        RatMatrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Rational& aik = a.at(i, k);
                if (aik.is_zero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    const Rational& bkj = b.at(k, j);
                    if (!bkj.is_zero()) c.at(i, j) += aik * bkj;
                }
            }
        return c;
    }

    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    // In-place reduced row echelon form; returns pivot column indices in
    // increasing order. First-nonzero pivoting.
    std::vector<std::size_t> rref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t sel = rows_;
            for (std::size_t r = row; r < rows_; ++r)
                if (!at(r, col).is_zero()) { sel = r; break; }
            if (sel == rows_) continue;
            if (sel != row)
                for (std::size_t c = 0; c < cols_; ++c) std::swap(at(row, c), at(sel, c));
            Rational inv = Rational(1) / at(row, col);
            for (std::size_t c = col; c < cols_; ++c) at(row, c) *= inv;
            for (std::size_t r = 0; r < rows_; ++r) {
                if (r == row || at(r, col).is_zero()) continue;
                Rational f = at(r, col);
                for (std::size_t c = col; c < cols_; ++c)
                    at(r, c) -= f * at(row, c);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

    std::size_t rank() const {
        RatMatrix copy = *this;
        return copy.rref().size();
    }

    // Basis of { x : A x = 0 }, one column vector per free variable, in
    // increasing free-column order. Free variable set to 1.
    std::vector<std::vector<Rational>> null_space() const {
        RatMatrix r = *this;
        std::vector<std::size_t> pivots = r.rref();
        std::vector<bool> is_pivot(cols_, false);
        for (auto p : pivots) is_pivot[p] = true;
        std::vector<std::vector<Rational>> basis;
        for (std::size_t free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<Rational> v(cols_);
            v[free] = Rational(1);
            for (std::size_t k = 0; k < pivots.size(); ++k)
                v[pivots[k]] = -r.at(k, free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    // Inverse via Gauss-Jordan; throws std::domain_error when singular.
    RatMatrix inverse() const {
        assert(rows_ == cols_);
        RatMatrix aug(rows_, 2 * cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
            aug.at(i, cols_ + i) = Rational(1);
        }
        std::vector<std::size_t> pivots = aug.rref();
        if (pivots.size() != rows_ || pivots.back() >= cols_)
            throw std::domain_error("matrix not invertible");
        for (std::size_t i = 0; i < rows_; ++i)
            if (pivots[i] != i) throw std::domain_error("matrix not invertible");
        RatMatrix inv(rows_, cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
        return inv;
    }

    bool is_integral() const {
        for (const auto& v : data_)
            if (!v.is_integer()) return false;
        return true;
    }

    IntMatrix to_int() const {
        IntMatrix m(rows_, std::vector<std::int64_t>(cols_, 0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) {
                if (!at(i, j).is_integer())
                    throw std::domain_error("matrix entry not integral");
                m[i][j] = at(i, j).num();
            }
        return m;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rational> data_;
};

} // namespace orbitcat
