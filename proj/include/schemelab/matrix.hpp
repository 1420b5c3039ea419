#pragma once

/*
 * Dense matrix of exact rationals, row-major. Everything in the library that
 * looks like a matrix (eigenmatrices, intersection arrays, Gram matrices,
 * scaled idempotents) is an RMatrix; equality is exact entrywise equality.
 */

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace schemelab {

class RMatrix {
public:
    RMatrix() = default;
    RMatrix(std::size_t rows, std::size_t cols, Rational fill = Rational(0))
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}
    RMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        a_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw DimensionMismatch("ragged initializer");
            for (const auto& v : row) a_.push_back(v);
        }
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool square() const { return rows_ == cols_; }

    Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const RMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const RMatrix& o) const { return !(*this == o); }

    static RMatrix identity(std::size_t n) {
        RMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
        return m;
    }
    static RMatrix ones(std::size_t r, std::size_t c) { return RMatrix(r, c, Rational(1)); }

    RMatrix row(std::size_t i) const {
        RMatrix r(1, cols_);
        for (std::size_t j = 0; j < cols_; ++j) r(0, j) = (*this)(i, j);
        return r;
    }
    RMatrix col(std::size_t j) const {
        RMatrix c(rows_, 1);
        for (std::size_t i = 0; i < rows_; ++i) c(i, 0) = (*this)(i, j);
        return c;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<Rational> a_;
};

inline RMatrix mat_mul(const RMatrix& a, const RMatrix& b) {
    if (a.cols() != b.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
    RMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Rational& aik = a(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c(i, j) += aik * b(k, j);
        }
    return c;
}

inline RMatrix mat_add(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_add: shapes differ");
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) + b(i, j);
    return c;
}

inline RMatrix mat_sub(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("mat_sub: shapes differ");
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) - b(i, j);
    return c;
}

inline RMatrix scalar_mul(const Rational& s, const RMatrix& a) {
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = s * a(i, j);
    return c;
}

/* Schur (entrywise) product. */
inline RMatrix entrywise_mul(const RMatrix& a, const RMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw DimensionMismatch("entrywise_mul: shapes differ");
    RMatrix c(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j) * b(i, j);
    return c;
}

inline RMatrix transpose(const RMatrix& a) {
    RMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

inline RMatrix kronecker(const RMatrix& a, const RMatrix& b) {
    RMatrix k(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a(i, j) == 0) continue;
            for (std::size_t p = 0; p < b.rows(); ++p)
                for (std::size_t q = 0; q < b.cols(); ++q)
                    k(i * b.rows() + p, j * b.cols() + q) = a(i, j) * b(p, q);
        }
    return k;
}

inline Rational trace(const RMatrix& a) {
    if (!a.square()) throw DimensionMismatch("trace: not square");
    Rational t = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) t += a(i, i);
    return t;
}

}  // namespace schemelab
