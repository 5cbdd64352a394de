#pragma once

#include "gpa/field.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gpa {

// Dense row-major matrix over an exact field.  Subspaces of K^n are
// represented by matrices whose columns form a basis.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : r_(r), c_(c), a_(r * c, T(0)) {}

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return r_; }
    std::size_t cols() const { return c_; }
    bool empty() const { return r_ == 0 || c_ == 0; }

    T& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

    bool is_zero() const {
        for (const auto& x : a_)
            if (!Field<T>::is_zero(x)) return false;
        return true;
    }

    Matrix transpose() const {
        Matrix t(c_, r_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    Matrix operator*(const Matrix& b) const {
        if (c_ != b.r_) throw std::invalid_argument("matrix product shape mismatch");
        Matrix m(r_, b.c_);
        for (std::size_t i = 0; i < r_; ++i)
            for (std::size_t k = 0; k < c_; ++k) {
                const T& x = (*this)(i, k);
                if (Field<T>::is_zero(x)) continue;
                for (std::size_t j = 0; j < b.c_; ++j) m(i, j) += x * b(k, j);
            }
        return m;
    }
    Matrix operator+(const Matrix& b) const {
        check_same(b);
        Matrix m = *this;
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] += b.a_[k];
        return m;
    }
    Matrix operator-(const Matrix& b) const {
        check_same(b);
        Matrix m = *this;
        for (std::size_t k = 0; k < a_.size(); ++k) m.a_[k] -= b.a_[k];
        return m;
    }
    Matrix scaled(const T& s) const {
        Matrix m = *this;
        for (auto& x : m.a_) x *= s;
        return m;
    }
    bool operator==(const Matrix& b) const {
        if (r_ != b.r_ || c_ != b.c_) return false;
        for (std::size_t k = 0; k < a_.size(); ++k)
            if (!(a_[k] == b.a_[k])) return false;
        return true;
    }

    Matrix block(std::size_t i0, std::size_t j0, std::size_t nr, std::size_t nc) const {
        Matrix m(nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(i0 + i, j0 + j);
        return m;
    }
    void set_block(std::size_t i0, std::size_t j0, const Matrix& b) {
        for (std::size_t i = 0; i < b.r_; ++i)
            for (std::size_t j = 0; j < b.c_; ++j) (*this)(i0 + i, j0 + j) = b(i, j);
    }
    Matrix column(std::size_t j) const { return block(0, j, r_, 1); }

    Matrix pow(unsigned e) const {
        Matrix r = identity(r_), b = *this;
        while (e) {
            if (e & 1) r = r * b;
            e >>= 1;
            if (e) b = b * b;
        }
        return r;
    }

    const std::vector<T>& data() const { return a_; }

private:
    void check_same(const Matrix& b) const {
        if (r_ != b.r_ || c_ != b.c_) throw std::invalid_argument("matrix shape mismatch");
    }
    std::size_t r_ = 0, c_ = 0;
    std::vector<T> a_;
};

template <class T>
Matrix<T> hstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    Matrix<T> m(a.rows(), a.cols() + b.cols());
    m.set_block(0, 0, a);
    m.set_block(0, a.cols(), b);
    return m;
}

template <class T>
Matrix<T> vstack(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
    Matrix<T> m(a.rows() + b.rows(), a.cols());
    m.set_block(0, 0, a);
    m.set_block(a.rows(), 0, b);
    return m;
}

// Reduced row echelon form in place; returns pivot columns.
template <class T>
std::vector<std::size_t> rref(Matrix<T>& a) {
    std::vector<std::size_t> piv;
    std::size_t row = 0;
    const std::size_t R = a.rows(), C = a.cols();
    for (std::size_t col = 0; col < C && row < R; ++col) {
        std::size_t sel = R;
        for (std::size_t i = row; i < R; ++i)
            if (!Field<T>::is_zero(a(i, col))) {
                sel = i;
                break;
            }
        if (sel == R) continue;
        if (sel != row)
            for (std::size_t j = 0; j < C; ++j) std::swap(a(sel, j), a(row, j));
        T inv = T(1) / a(row, col);
        for (std::size_t j = col; j < C; ++j) a(row, j) *= inv;
        for (std::size_t i = 0; i < R; ++i) {
            if (i == row || Field<T>::is_zero(a(i, col))) continue;
            T f = a(i, col);
            for (std::size_t j = col; j < C; ++j)
                if (!Field<T>::is_zero(a(row, j))) a(i, j) -= f * a(row, j);
        }
        piv.push_back(col);
        ++row;
    }
    return piv;
}

template <class T>
std::size_t rank(Matrix<T> a) {
    return rref(a).size();
}

// Basis of the right kernel {x : A x = 0}, as columns.
template <class T>
Matrix<T> nullspace(Matrix<T> a) {
    const std::size_t C = a.cols();
    auto piv = rref(a);
    std::vector<char> is_piv(C, 0);
    for (auto p : piv) is_piv[p] = 1;
    std::vector<std::size_t> free;
    for (std::size_t j = 0; j < C; ++j)
        if (!is_piv[j]) free.push_back(j);
    Matrix<T> n(C, free.size());
    for (std::size_t k = 0; k < free.size(); ++k) {
        n(free[k], k) = T(1);
        for (std::size_t r = 0; r < piv.size(); ++r) n(piv[r], k) = -a(r, free[k]);
    }
    return n;
}

// Canonical basis of the column space: transpose of the nonzero RREF rows of A^T.
template <class T>
Matrix<T> canonical_basis(const Matrix<T>& a) {
    Matrix<T> t = a.transpose();
    auto piv = rref(t);
    return t.block(0, 0, piv.size(), t.cols()).transpose();
}

// Linearly independent columns spanning col(A) (a subset of A's columns).
template <class T>
Matrix<T> column_basis(const Matrix<T>& a) {
    Matrix<T> w = a;
    auto piv = rref(w);
    Matrix<T> b(a.rows(), piv.size());
    for (std::size_t k = 0; k < piv.size(); ++k)
        for (std::size_t i = 0; i < a.rows(); ++i) b(i, k) = a(i, piv[k]);
    return b;
}

template <class T>
Matrix<T> span_sum(const Matrix<T>& a, const Matrix<T>& b) {
    return column_basis(hstack(a, b));
}

template <class T>
Matrix<T> intersect(const Matrix<T>& a, const Matrix<T>& b) {
    if (a.cols() == 0 || b.cols() == 0) return Matrix<T>(a.rows(), 0);
    Matrix<T> n = nullspace(hstack(a, b.scaled(T(-1))));
    Matrix<T> top = n.block(0, 0, a.cols(), n.cols());
    return column_basis(a * top);
}

// Unit vectors completing the columns of B (assumed independent) to a basis.
template <class T>
Matrix<T> complement_basis(const Matrix<T>& b, std::size_t n) {
    Matrix<T> t = b.transpose();
    auto piv = rref(t);
    std::vector<char> used(n, 0);
    for (auto p : piv) used[p] = 1;
    std::vector<std::size_t> rest;
    for (std::size_t j = 0; j < n; ++j)
        if (!used[j]) rest.push_back(j);
    Matrix<T> c(n, rest.size());
    for (std::size_t k = 0; k < rest.size(); ++k) c(rest[k], k) = T(1);
    return c;
}

// Some X with A X = B, or nullopt.
template <class T>
std::optional<Matrix<T>> solve(const Matrix<T>& a, const Matrix<T>& b) {
    Matrix<T> aug = hstack(a, b);
    auto piv = rref(aug);
    const std::size_t n = a.cols();
    for (auto p : piv)
        if (p >= n) return std::nullopt;
    Matrix<T> x(n, b.cols());
    for (std::size_t r = 0; r < piv.size(); ++r)
        for (std::size_t j = 0; j < b.cols(); ++j) x(piv[r], j) = aug(r, n + j);
    return x;
}

template <class T>
std::optional<Matrix<T>> inverse(const Matrix<T>& a) {
    if (a.rows() != a.cols()) return std::nullopt;
    auto x = solve(a, Matrix<T>::identity(a.rows()));
    if (!x) return std::nullopt;
    if (rank(a) != a.rows()) return std::nullopt;
    return x;
}

template <class T>
bool is_nilpotent(const Matrix<T>& a) {
    if (a.rows() == 0) return true;
    return a.pow(static_cast<unsigned>(a.rows())).is_zero();
}

// Partition (weakly decreasing) given by the Jordan type of a nilpotent matrix.
template <class T>
std::vector<int> nilpotent_jordan_type(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    std::vector<std::size_t> rk{n};
    Matrix<T> p = Matrix<T>::identity(n);
    while (rk.back() > 0) {
        p = p * a;
        std::size_t r = rank(p);
        if (r == rk.back()) throw std::domain_error("matrix is not nilpotent");
        rk.push_back(r);
    }
    // at_least[j] = number of blocks of size >= j+1
    std::vector<std::size_t> at_least;
    for (std::size_t j = 0; j + 1 < rk.size(); ++j) at_least.push_back(rk[j] - rk[j + 1]);
    std::vector<int> parts;
    for (std::size_t j = 0; j < at_least.size(); ++j) {
        std::size_t exact = at_least[j] - (j + 1 < at_least.size() ? at_least[j + 1] : 0);
        for (std::size_t k = 0; k < exact; ++k) parts.push_back(static_cast<int>(j + 1));
    }
    std::sort(parts.rbegin(), parts.rend());
    return parts;
}

// Jordan chains of a nilpotent matrix: generators g with lengths L such that
// {A^t g : t < L} over all chains is a basis.  Sorted by decreasing length.
template <class T>
std::vector<std::pair<Matrix<T>, int>> jordan_chains(const Matrix<T>& a) {
    const std::size_t n = a.rows();
    std::vector<std::pair<Matrix<T>, int>> out;
    if (n == 0) return out;
    std::vector<Matrix<T>> ker{Matrix<T>(n, 0)};  // ker[k] = basis of Ker A^k
    Matrix<T> p = Matrix<T>::identity(n);
    while (ker.back().cols() < n) {
        p = p * a;
        ker.push_back(nullspace(p));
    }
    const int h = static_cast<int>(ker.size()) - 1;
    std::vector<Matrix<T>> level_span(h + 1, Matrix<T>(n, 0));
    for (int k = h; k >= 1; --k) {
        // Need vectors in Ker A^k not in Ker A^{k-1} + (images of longer chains at level k).
        Matrix<T> base = span_sum(ker[k - 1], level_span[k]);
        std::size_t r = base.cols();
        for (std::size_t j = 0; j < ker[k].cols(); ++j) {
            Matrix<T> v = ker[k].column(j);
            Matrix<T> ext = hstack(base, v);
            if (rank(ext) > r) {
                base = ext;
                ++r;
                out.push_back({v, k});
                Matrix<T> w = v;
                for (int t = k; t >= 1; --t) {
                    level_span[t] = hstack(level_span[t], w);
                    w = a * w;
                }
            }
        }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& x, const auto& y) { return x.second > y.second; });
    return out;
}

template <class T>
std::string key_of(const Matrix<T>& m) {
    std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
    for (const auto& x : m.data()) {
        s += Field<T>::str(x);
        s += ',';
    }
    return s;
}

}  // namespace gpa
