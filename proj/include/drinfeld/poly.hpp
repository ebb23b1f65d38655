#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "drinfeld/fq.hpp"

namespace drinfeld {

// Element of A = F_q[t], ascending coefficients, no trailing zeros.
// deg(0) is -infinity; deg() returns -1 for the zero polynomial and callers
// that need the dimension interpretation must special-case it.
class PolyA {
public:
    PolyA() = default;
    explicit PolyA(const Fq* F) : F_(F) {}
    PolyA(const Fq* F, std::vector<std::uint16_t> coeffs) : F_(F), c_(std::move(coeffs)) { trim(); }

    static PolyA zero(const Fq* F) { return PolyA(F); }
    static PolyA one(const Fq* F) { return PolyA(F, {1}); }
    static PolyA t(const Fq* F) { return PolyA(F, {0, 1}); }
    static PolyA constant(FqElem c) { return PolyA(c.field, {c.v}); }
    static PolyA monomial(const Fq* F, int deg, FqElem c);

    const Fq* field() const noexcept { return F_; }
    int deg() const noexcept { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const noexcept { return c_.empty(); }
    bool is_one() const noexcept { return c_.size() == 1 && c_[0] == 1; }
    bool is_constant() const noexcept { return c_.size() <= 1; }
    bool is_monic() const noexcept { return !c_.empty() && c_.back() == 1; }

    FqElem coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return F_->zero();
        return {F_, c_[i]};
    }
    FqElem lead() const { return c_.empty() ? F_->zero() : FqElem{F_, c_.back()}; }
    const std::vector<std::uint16_t>& coeffs() const noexcept { return c_; }

    PolyA operator+(const PolyA& o) const;
    PolyA operator-(const PolyA& o) const;
    PolyA operator-() const;
    PolyA operator*(const PolyA& o) const;
    PolyA operator*(FqElem c) const;
    PolyA& operator+=(const PolyA& o) { return *this = *this + o; }
    PolyA& operator-=(const PolyA& o) { return *this = *this - o; }
    PolyA& operator*=(const PolyA& o) { return *this = *this * o; }

    bool operator==(const PolyA& o) const { return c_ == o.c_; }
    bool operator!=(const PolyA& o) const { return c_ != o.c_; }
    // Deterministic total order: by degree, then ascending coefficient index.
    bool operator<(const PolyA& o) const;

    // Euclidean division: *this = q*d + r with deg r < deg d.
    std::pair<PolyA, PolyA> divmod(const PolyA& d) const;
    PolyA operator/(const PolyA& d) const { return divmod(d).first; }
    PolyA operator%(const PolyA& d) const { return divmod(d).second; }
    bool divides(const PolyA& m) const { return m.divmod(*this).second.is_zero(); }

    PolyA monic() const;
    PolyA pow(long long n) const;
    // The q^k-th power: coefficients are fixed by x -> x^q, so this is the
    // coefficient spread t^i -> t^{i q^k}.
    PolyA qpow(int k) const;
    FqElem eval(FqElem x) const;
    PolyA shift(int k) const;  // multiply by t^k, k >= 0

    std::string str() const;

private:
    const Fq* F_ = nullptr;
    std::vector<std::uint16_t> c_;

    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    PolyA mul_schoolbook(const PolyA& o) const;
    PolyA mul_karatsuba(const PolyA& o) const;
};

PolyA gcd(PolyA a, PolyA b);                 // monic gcd; gcd(0,0) = 0
PolyA lcm(const PolyA& a, const PolyA& b);   // monic lcm
// g = gcd(a,b) monic together with u,v such that u*a + v*b = g.
struct XgcdResult {
    PolyA g, u, v;
};
XgcdResult xgcd(const PolyA& a, const PolyA& b);
bool is_irreducible(const PolyA& f);

}  // namespace drinfeld
