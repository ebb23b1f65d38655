#pragma once

#include <string>
#include <utility>
#include <vector>

#include "drinfeld/rings.hpp"

namespace drinfeld {

// Twisted polynomial sum b_i tau^i over a coefficient ring R, with the
// commutation rule tau c = c^q tau. Multiplication is composition of the
// F_q-linear maps z -> sum b_i z^(q^i).
//
// Normalization strips only coefficients that are exact zeros; over inexact
// rings (TLaurent) a zero-to-precision leading coefficient is kept, so the
// recorded degree stays an honest structural bound.
template <class R>
class SkewPoly {
public:
    SkewPoly() = default;
    explicit SkewPoly(std::vector<R> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static SkewPoly zero() { return SkewPoly(); }
    static SkewPoly identity(const R& proto) { return SkewPoly({ring_one(proto)}); }  // z -> z
    static SkewPoly tau(const R& proto, int i = 1) {
        std::vector<R> c(i + 1, ring_zero(proto));
        c[i] = ring_one(proto);
        return SkewPoly(std::move(c));
    }
    static SkewPoly constant(R b0) { return SkewPoly({std::move(b0)}); }

    int deg() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    const std::vector<R>& coeffs() const noexcept { return c_; }
    const R& coeff_ref(int i) const { return c_[i]; }
    R coeff(int i, const R& proto) const { return (i >= 0 && i <= deg()) ? c_[i] : ring_zero(proto); }

    // b_0, the derivative of the corresponding additive polynomial.
    R derivative(const R& proto) const { return c_.empty() ? ring_zero(proto) : c_[0]; }

    SkewPoly operator+(const SkewPoly& o) const {
        std::vector<R> r;
        r.reserve(std::max(c_.size(), o.c_.size()));
        for (std::size_t i = 0; i < std::max(c_.size(), o.c_.size()); ++i) {
            if (i < c_.size() && i < o.c_.size())
                r.push_back(c_[i] + o.c_[i]);
            else if (i < c_.size())
                r.push_back(c_[i]);
            else
                r.push_back(o.c_[i]);
        }
        return SkewPoly(std::move(r));
    }

    SkewPoly operator-() const {
        std::vector<R> r = c_;
        for (auto& x : r) x = -x;
        return SkewPoly(std::move(r));
    }

    SkewPoly operator-(const SkewPoly& o) const { return *this + (-o); }

    // (fg)_k = sum_{i+j=k} f_i * (g_j)^(q^i)
    SkewPoly operator*(const SkewPoly& o) const {
        if (is_zero() || o.is_zero()) return SkewPoly();
        std::vector<R> r(c_.size() + o.c_.size() - 1, ring_zero(c_[0]));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (is_exact_zero(c_[i])) continue;
            for (std::size_t j = 0; j < o.c_.size(); ++j) {
                if (is_exact_zero(o.c_[j])) continue;
                r[i + j] = r[i + j] + c_[i] * qpow(o.c_[j], static_cast<int>(i));
            }
        }
        return SkewPoly(std::move(r));
    }

    // left multiplication by a scalar (the tau^0 polynomial c)
    SkewPoly scaled(const R& s) const {
        std::vector<R> r = c_;
        for (auto& x : r) x = s * x;
        return SkewPoly(std::move(r));
    }

    SkewPoly pow(long long n) const {
        if (n < 0) fail("BadArgument", "negative skew power");
        if (is_zero() && n == 0) fail("BadArgument", "0^0 in skew ring");
        SkewPoly b = *this;
        SkewPoly r = SkewPoly::identity(c_.empty() ? b.c_[0] : c_[0]);
        while (n > 0) {
            if (n & 1) r = r * b;
            b = b * b;
            n >>= 1;
        }
        return r;
    }

    // sum b_i z^(q^i)
    R operator()(const R& z) const {
        R acc = ring_zero(z);
        R zq = z;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i > 0) zq = qpow(zq, 1);
            if (!is_exact_zero(c_[i])) acc = acc + c_[i] * zq;
        }
        return acc;
    }

    // truncate to tau-degree < n
    SkewPoly truncated(int n) const {
        if (deg() < n) return *this;
        return SkewPoly(std::vector<R>(c_.begin(), c_.begin() + n));
    }

    bool definitely_equal_zero() const {
        for (const auto& x : c_)
            if (!is_exact_zero(x)) return false;
        return true;
    }

    std::string str() const {
        std::string s = "[";
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (i) s += "; ";
            s += c_[i].str();
        }
        return s + "]";
    }

private:
    std::vector<R> c_;

    void normalize() {
        while (!c_.empty() && is_exact_zero(c_.back())) c_.pop_back();
    }
};

// Right division: f = quot * g + rem with deg rem < deg g. Needs the leading
// coefficient of g to be invertible.
template <class R>
std::pair<SkewPoly<R>, SkewPoly<R>> right_divide(const SkewPoly<R>& f, const SkewPoly<R>& g) {
    if (g.is_zero()) fail("DivisionByZero", "right division by the zero skew polynomial");
    if (!certified_nonzero(g.coeff_ref(g.deg())))
        fail("InsufficientPrecision", "divisor has an uncertified leading coefficient");
    SkewPoly<R> rem = f;
    if (f.deg() < g.deg()) return {SkewPoly<R>(), rem};
    const R& proto = g.coeff_ref(g.deg());
    std::vector<R> quot(f.deg() - g.deg() + 1, ring_zero(proto));
    while (rem.deg() >= g.deg()) {
        int i = rem.deg() - g.deg();
        R top = rem.coeff_ref(rem.deg());
        R c = top * ring_inv(qpow(g.coeff_ref(g.deg()), i));
        quot[i] = quot[i] + c;
        rem = rem - SkewPoly<R>::tau(proto, i).scaled(c) * g;
        // force structural degree drop even when the cancelled coefficient
        // is only zero to precision
        if (rem.deg() >= g.deg() + i) {
            std::vector<R> cc(rem.coeffs().begin(), rem.coeffs().begin() + g.deg() + i);
            rem = SkewPoly<R>(std::move(cc));
        }
    }
    return {SkewPoly<R>(std::move(quot)), rem};
}

// Apply f coefficientwise through fn (e.g. lift RatF coefficients into a
// splitting ring before evaluating).
template <class S, class R, class Fn>
SkewPoly<S> map_coeffs(const SkewPoly<R>& f, Fn&& fn) {
    std::vector<S> c;
    c.reserve(f.coeffs().size());
    for (const auto& x : f.coeffs()) c.push_back(fn(x));
    return SkewPoly<S>(std::move(c));
}

}  // namespace drinfeld
