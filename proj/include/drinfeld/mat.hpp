#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include "drinfeld/ratf.hpp"

namespace drinfeld {

// Dense matrix over F = F_q(t). Row-major; small r only.
class MatF {
public:
    MatF() = default;
    MatF(int rows, int cols, const Fq* F);
    static MatF identity(int n, const Fq* F);
    static MatF diag(std::vector<RatF> d);
    static MatF from_rows(std::vector<std::vector<RatF>> rows);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const Fq* field() const noexcept { return F_; }

    RatF& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const RatF& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    MatF operator*(const MatF& o) const;
    MatF operator+(const MatF& o) const;
    MatF operator-(const MatF& o) const;
    MatF scaled(const RatF& c) const;
    bool operator==(const MatF& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    RatF det() const;
    MatF inverse() const;  // fails with SingularMatrix
    MatF transpose() const;

    // true if every entry lies in A
    bool is_integral() const;
    // clear denominators: returns (d, M) with d monic and M = d * this integral
    std::pair<PolyA, std::vector<PolyA>> cleared() const;

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    const Fq* F_ = nullptr;
    std::vector<RatF> a_;
};

// row vector in F^r
using RowF = std::vector<RatF>;

RowF operator*(const RowF& v, const MatF& m);
RowF operator+(const RowF& a, const RowF& b);
RowF row_scaled(const RowF& v, const RatF& c);

// Dense matrix over A = F_q[t].
class MatA {
public:
    MatA() = default;
    MatA(int rows, int cols, const Fq* F);
    static MatA identity(int n, const Fq* F);

    int rows() const noexcept { return rows_; }
    int cols() const noexcept { return cols_; }
    const Fq* field() const noexcept { return F_; }

    PolyA& at(int i, int j) { return a_[static_cast<std::size_t>(i) * cols_ + j]; }
    const PolyA& at(int i, int j) const { return a_[static_cast<std::size_t>(i) * cols_ + j]; }

    MatA operator*(const MatA& o) const;
    bool operator==(const MatA& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

    PolyA det() const;
    MatF over_F() const;

    std::string str() const;

private:
    int rows_ = 0, cols_ = 0;
    const Fq* F_ = nullptr;
    std::vector<PolyA> a_;
};

// Row-style Hermite normal form over A: H = U * M for U in GL_rows(A).
// H is upper trapezoidal with monic pivots, entries above each pivot reduced
// modulo the pivot, and zero rows (if any) at the bottom. This is the
// canonical form for row spans under left multiplication by GL(A).
struct HnfResult {
    MatA h;
    MatA u;        // unimodular transform, u * m = h
    int rank = 0;  // number of nonzero rows of h
};
HnfResult hnf_rows(const MatA& m);

// Elementary divisors d_1 | d_2 | ... | d_r (monic) via gcds of k-minors.
std::vector<PolyA> elementary_divisors(const MatA& m);

// determinant-only shortcut for MatF built from an integral MatA
PolyA content(const MatA& m);

}  // namespace drinfeld
