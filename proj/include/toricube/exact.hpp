/**
 * Exact arithmetic kernel: arbitrary-precision integer vectors, rational
 * matrices, and the small amount of linear algebra the cone engine needs.
 * No floating point anywhere in the library.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace toricube {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int rat_num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int rat_den(const Rat& r) { return boost::multiprecision::denominator(r); }

/// Fixed-length vector of arbitrary-precision integers. The length is fixed
/// at construction.
class IntVec {
public:
    IntVec() = default;
    explicit IntVec(std::size_t n) : e_(n) {}
    IntVec(std::initializer_list<Int> init) : e_(init) {}
    explicit IntVec(std::vector<Int> entries) : e_(std::move(entries)) {}

    std::size_t size() const { return e_.size(); }
    const Int& operator[](std::size_t i) const { return e_[i]; }
    Int& operator[](std::size_t i) { return e_[i]; }
    const std::vector<Int>& entries() const { return e_; }

    bool is_zero() const {
        return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x == 0; });
    }

    /// Indices of nonzero entries.
    std::vector<int> support() const {
        std::vector<int> s;
        for (std::size_t i = 0; i < e_.size(); ++i)
            if (e_[i] != 0) s.push_back(static_cast<int>(i));
        return s;
    }

    bool nonneg() const {
        return std::all_of(e_.begin(), e_.end(), [](const Int& x) { return x >= 0; });
    }

    friend bool operator==(const IntVec& a, const IntVec& b) { return a.e_ == b.e_; }
    friend bool operator!=(const IntVec& a, const IntVec& b) { return !(a == b); }
    // lexicographic; used for all canonical sorting
    friend bool operator<(const IntVec& a, const IntVec& b) { return a.e_ < b.e_; }

private:
    std::vector<Int> e_;
};

inline Int dot(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const IntVec& a, const std::vector<Rat>& b) {
    if (a.size() != b.size()) throw std::invalid_argument("dot: dimension mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
    return s;
}

inline IntVec operator-(const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline IntVec operator+(const IntVec& a, const IntVec& b) {
    if (a.size() != b.size()) throw std::invalid_argument("sum: dimension mismatch");
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec operator-(const IntVec& a, const IntVec& b) { return a + (-b); }

inline IntVec operator*(const Int& c, const IntVec& a) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
    return r;
}

/// v / gcd(|v_i|); same direction, entries coprime.
inline IntVec primitive(const IntVec& v) {
    if (v.is_zero()) throw std::invalid_argument("zero vector has no primitive form");
    Int g = 0;
    for (std::size_t i = 0; i < v.size(); ++i) g = boost::multiprecision::gcd(g, v[i]);
    IntVec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[i] / g;
    return r;
}

/// Rectangular matrix of exact rationals.
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
    explicit RatMatrix(const std::vector<std::vector<Rat>>& rows)
        : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()) {
        a_.reserve(rows_ * cols_);
        for (const auto& r : rows) {
            if (r.size() != cols_) throw std::invalid_argument("RatMatrix: ragged rows");
            a_.insert(a_.end(), r.begin(), r.end());
        }
    }
    static RatMatrix from_int_rows(const std::vector<IntVec>& rows, std::size_t cols) {
        RatMatrix m(rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols) throw std::invalid_argument("RatMatrix: ragged rows");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = Rat(rows[i][j]);
        }
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

/// Exact rank by fraction-free (Bareiss) elimination on a row-scaled integer
/// copy of the matrix.
inline int rank(const RatMatrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    if (rows == 0 || cols == 0) return 0;
    // clear denominators row by row; row scaling does not change the rank
    std::vector<std::vector<Int>> a(rows, std::vector<Int>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < cols; ++j) l = boost::multiprecision::lcm(l, rat_den(m.at(i, j)));
        for (std::size_t j = 0; j < cols; ++j) {
            const Rat v = m.at(i, j) * Rat(l);
            a[i][j] = rat_num(v);
        }
    }
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;  // exact by Bareiss
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return static_cast<int>(r);
}

inline int rank(const std::vector<IntVec>& rows, std::size_t cols) {
    return rank(RatMatrix::from_int_rows(rows, cols));
}

/// One exact solution of M x = b if the system is consistent (free variables
/// set to zero), std::nullopt otherwise.
inline std::optional<std::vector<Rat>> solve(const RatMatrix& m, const std::vector<Rat>& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve: dimension mismatch");
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<Rat>> a(rows, std::vector<Rat>(cols + 1));
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
        a[i][cols] = b[i];
    }
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && a[piv][c] == 0) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[r]);
        const Rat d = a[r][c];
        for (std::size_t j = c; j <= cols; ++j) a[r][j] /= d;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = c; j <= cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    for (std::size_t i = r; i < rows; ++i)
        if (a[i][cols] != 0) return std::nullopt;  // 0 = nonzero: inconsistent
    std::vector<Rat> x(cols, Rat(0));
    for (std::size_t k = 0; k < pivot_col.size(); ++k) x[pivot_col[k]] = a[k][cols];
    return x;
}

/// Basis of the kernel of the row matrix, as primitive integer vectors in a
/// deterministic (RREF-derived) form, sorted lexicographically.
inline std::vector<IntVec> kernel_basis(const std::vector<IntVec>& rows, std::size_t n) {
    std::vector<std::vector<Rat>> a;
    for (const auto& r : rows) {
        if (r.size() != n) throw std::invalid_argument("kernel_basis: dimension mismatch");
        std::vector<Rat> row(n);
        for (std::size_t j = 0; j < n; ++j) row[j] = Rat(r[j]);
        a.push_back(std::move(row));
    }
    std::vector<int> pivot_col;
    std::size_t r = 0;
    for (std::size_t c = 0; c < n && r < a.size(); ++c) {
        std::size_t piv = r;
        while (piv < a.size() && a[piv][c] == 0) ++piv;
        if (piv == a.size()) continue;
        std::swap(a[piv], a[r]);
        const Rat d = a[r][c];
        for (std::size_t j = c; j < n; ++j) a[r][j] /= d;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = c; j < n; ++j) a[i][j] -= f * a[r][j];
        }
        pivot_col.push_back(static_cast<int>(c));
        ++r;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    std::vector<IntVec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[f] = 1;
        for (std::size_t k = 0; k < pivot_col.size(); ++k) v[pivot_col[k]] = -a[k][f];
        // clear denominators and reduce
        Int l = 1;
        for (const Rat& q : v) l = boost::multiprecision::lcm(l, rat_den(q));
        IntVec iv(n);
        for (std::size_t j = 0; j < n; ++j) iv[j] = rat_num(v[j] * Rat(l));
        basis.push_back(primitive(iv));
    }
    std::sort(basis.begin(), basis.end());
    return basis;
}

/// Scale a rational vector to a primitive integer vector with the same
/// direction.
inline IntVec primitive_direction(const std::vector<Rat>& v) {
    Int l = 1;
    for (const Rat& q : v) l = boost::multiprecision::lcm(l, rat_den(q));
    IntVec iv(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) iv[j] = rat_num(v[j] * Rat(l));
    return primitive(iv);
}

}  // namespace toricube
