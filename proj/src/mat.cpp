#include "drinfeld/mat.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

MatF::MatF(int rows, int cols, const Fq* F)
    : rows_(rows), cols_(cols), F_(F), a_(static_cast<std::size_t>(rows) * cols, RatF::zero(F)) {}

MatF MatF::identity(int n, const Fq* F) {
    MatF m(n, n, F);
    for (int i = 0; i < n; ++i) m.at(i, i) = RatF::one(F);
    return m;
}

MatF MatF::diag(std::vector<RatF> d) {
    MatF m(static_cast<int>(d.size()), static_cast<int>(d.size()), d.at(0).field());
    for (std::size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

MatF MatF::from_rows(std::vector<std::vector<RatF>> rows) {
    MatF m(static_cast<int>(rows.size()), static_cast<int>(rows.at(0).size()), rows[0][0].field());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
    return m;
}

MatF MatF::operator*(const MatF& o) const {
    if (cols_ != o.rows_) fail("BadArgument", "matrix shape mismatch");
    MatF r(rows_, o.cols_, F_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

MatF MatF::operator+(const MatF& o) const {
    MatF r(rows_, cols_, F_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] + o.a_[i];
    return r;
}

MatF MatF::operator-(const MatF& o) const {
    MatF r(rows_, cols_, F_);
    for (std::size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] - o.a_[i];
    return r;
}

MatF MatF::scaled(const RatF& c) const {
    MatF r = *this;
    for (auto& x : r.a_) x *= c;
    return r;
}

RatF MatF::det() const {
    if (rows_ != cols_) fail("BadArgument", "determinant of a non-square matrix");
    MatF m = *this;
    RatF d = RatF::one(F_);
    for (int c = 0; c < cols_; ++c) {
        int piv = -1;
        for (int r = c; r < rows_; ++r)
            if (!m.at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) return RatF::zero(F_);
        if (piv != c) {
            for (int j = 0; j < cols_; ++j) std::swap(m.at(piv, j), m.at(c, j));
            d = -d;
        }
        d *= m.at(c, c);
        RatF inv = m.at(c, c).inv();
        for (int r = c + 1; r < rows_; ++r) {
            if (m.at(r, c).is_zero()) continue;
            RatF f = m.at(r, c) * inv;
            for (int j = c; j < cols_; ++j) m.at(r, j) -= f * m.at(c, j);
        }
    }
    return d;
}

MatF MatF::inverse() const {
    if (rows_ != cols_) fail("BadArgument", "inverse of a non-square matrix");
    MatF m = *this;
    MatF inv = MatF::identity(rows_, F_);
    for (int c = 0; c < cols_; ++c) {
        int piv = -1;
        for (int r = c; r < rows_; ++r)
            if (!m.at(r, c).is_zero()) {
                piv = r;
                break;
            }
        if (piv < 0) fail("SingularMatrix", "matrix is not invertible");
        if (piv != c)
            for (int j = 0; j < cols_; ++j) {
                std::swap(m.at(piv, j), m.at(c, j));
                std::swap(inv.at(piv, j), inv.at(c, j));
            }
        RatF s = m.at(c, c).inv();
        for (int j = 0; j < cols_; ++j) {
            m.at(c, j) *= s;
            inv.at(c, j) *= s;
        }
        for (int r = 0; r < rows_; ++r) {
            if (r == c || m.at(r, c).is_zero()) continue;
            RatF f = m.at(r, c);
            for (int j = 0; j < cols_; ++j) {
                m.at(r, j) -= f * m.at(c, j);
                inv.at(r, j) -= f * inv.at(c, j);
            }
        }
    }
    return inv;
}

MatF MatF::transpose() const {
    MatF r(cols_, rows_, F_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

bool MatF::is_integral() const {
    for (const auto& x : a_)
        if (!x.is_integral()) return false;
    return true;
}

std::pair<PolyA, std::vector<PolyA>> MatF::cleared() const {
    PolyA d = PolyA::one(F_);
    for (const auto& x : a_) d = lcm(d, x.den());
    std::vector<PolyA> out;
    out.reserve(a_.size());
    for (const auto& x : a_) out.push_back(x.num() * (d / x.den()));
    return {d, out};
}

std::string MatF::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << "; ";
            os << at(i, j).str();
        }
        if (i + 1 < rows_) os << " | ";
    }
    return os.str();
}

RowF operator*(const RowF& v, const MatF& m) {
    RowF r(m.cols(), RatF::zero(m.field()));
    for (int j = 0; j < m.cols(); ++j)
        for (int i = 0; i < m.rows(); ++i) r[j] += v[i] * m.at(i, j);
    return r;
}

RowF operator+(const RowF& a, const RowF& b) {
    RowF r = a;
    for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

RowF row_scaled(const RowF& v, const RatF& c) {
    RowF r = v;
    for (auto& x : r) x *= c;
    return r;
}

MatA::MatA(int rows, int cols, const Fq* F)
    : rows_(rows), cols_(cols), F_(F), a_(static_cast<std::size_t>(rows) * cols, PolyA::zero(F)) {}

MatA MatA::identity(int n, const Fq* F) {
    MatA m(n, n, F);
    for (int i = 0; i < n; ++i) m.at(i, i) = PolyA::one(F);
    return m;
}

MatA MatA::operator*(const MatA& o) const {
    if (cols_ != o.rows_) fail("BadArgument", "matrix shape mismatch");
    MatA r(rows_, o.cols_, F_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

PolyA MatA::det() const {
    if (rows_ != cols_) fail("BadArgument", "determinant of a non-square matrix");
    // cofactor expansion; matrices here are tiny (r <= 4)
    if (rows_ == 1) return at(0, 0);
    PolyA d = PolyA::zero(F_);
    for (int j = 0; j < cols_; ++j) {
        if (at(0, j).is_zero()) continue;
        MatA sub(rows_ - 1, cols_ - 1, F_);
        for (int i = 1; i < rows_; ++i) {
            int cc = 0;
            for (int k = 0; k < cols_; ++k) {
                if (k == j) continue;
                sub.at(i - 1, cc++) = at(i, k);
            }
        }
        PolyA term = at(0, j) * sub.det();
        d = (j % 2 == 0) ? d + term : d - term;
    }
    return d;
}

MatF MatA::over_F() const {
    MatF m(rows_, cols_, F_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = RatF(at(i, j));
    return m;
}

std::string MatA::str() const {
    std::ostringstream os;
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) {
            if (j) os << "; ";
            os << at(i, j).str();
        }
        if (i + 1 < rows_) os << " | ";
    }
    return os.str();
}

HnfResult hnf_rows(const MatA& m) {
    const Fq* F = m.field();
    HnfResult res{m, MatA::identity(m.rows(), F), 0};
    MatA& h = res.h;
    MatA& u = res.u;
    int pr = 0;  // pivot row
    auto swap_rows = [&](MatA& x, int a, int b) {
        for (int j = 0; j < x.cols(); ++j) std::swap(x.at(a, j), x.at(b, j));
    };
    auto addmul_row = [&](MatA& x, int dst, int src, const PolyA& f) {
        for (int j = 0; j < x.cols(); ++j) x.at(dst, j) += f * x.at(src, j);
    };
    for (int c = 0; c < h.cols() && pr < h.rows(); ++c) {
        // Euclid on the entries of column c below pr
        for (;;) {
            int best = -1;
            for (int r = pr; r < h.rows(); ++r)
                if (!h.at(r, c).is_zero() && (best < 0 || h.at(r, c).deg() < h.at(best, c).deg())) best = r;
            if (best < 0) break;
            if (best != pr) {
                swap_rows(h, pr, best);
                swap_rows(u, pr, best);
            }
            bool cleared = true;
            for (int r = pr + 1; r < h.rows(); ++r) {
                if (h.at(r, c).is_zero()) continue;
                PolyA q = h.at(r, c) / h.at(pr, c);
                addmul_row(h, r, pr, -q);
                addmul_row(u, r, pr, -q);
                if (!h.at(r, c).is_zero()) cleared = false;
            }
            if (cleared) break;
        }
        if (h.at(pr, c).is_zero()) continue;
        // monic pivot
        FqElem linv = h.at(pr, c).lead().inv();
        for (int j = 0; j < h.cols(); ++j) h.at(pr, j) = h.at(pr, j) * linv;
        for (int j = 0; j < u.cols(); ++j) u.at(pr, j) = u.at(pr, j) * linv;
        // reduce entries above the pivot
        for (int r = 0; r < pr; ++r) {
            if (h.at(r, c).is_zero() || h.at(r, c).deg() < h.at(pr, c).deg()) continue;
            PolyA q = h.at(r, c) / h.at(pr, c);
            addmul_row(h, r, pr, -q);
            addmul_row(u, r, pr, -q);
        }
        ++pr;
    }
    res.rank = pr;
    return res;
}

std::vector<PolyA> elementary_divisors(const MatA& m) {
    if (m.rows() != m.cols()) fail("BadArgument", "elementary divisors of a non-square matrix");
    const int n = m.rows();
    const Fq* F = m.field();
    // d_k = gcd of all k-minors; divisors are g_k = d_k / d_{k-1}
    std::vector<PolyA> g(n + 1, PolyA::one(F));
    PolyA prev = PolyA::one(F);
    for (int k = 1; k <= n; ++k) {
        PolyA dk = PolyA::zero(F);
        // iterate over k-subsets of rows and of columns
        std::vector<int> rowsel(k), colsel(k);
        for (int i = 0; i < k; ++i) rowsel[i] = i;
        auto next_subset = [&](std::vector<int>& s) {
            int i = k - 1;
            while (i >= 0 && s[i] == n - k + i) --i;
            if (i < 0) return false;
            ++s[i];
            for (int j = i + 1; j < k; ++j) s[j] = s[j - 1] + 1;
            return true;
        };
        do {
            for (int i = 0; i < k; ++i) colsel[i] = i;
            do {
                MatA sub(k, k, F);
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) sub.at(i, j) = m.at(rowsel[i], colsel[j]);
                dk = gcd(dk, sub.det());
            } while (next_subset(colsel));
        } while (next_subset(rowsel));
        if (dk.is_zero()) fail("SingularMatrix", "matrix is singular");
        g[k] = (dk / prev).monic();
        prev = dk;
    }
    return std::vector<PolyA>(g.begin() + 1, g.end());
}

PolyA content(const MatA& m) {
    PolyA c = PolyA::zero(m.field());
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) c = gcd(c, m.at(i, j));
    return c;
}

}  // namespace drinfeld
