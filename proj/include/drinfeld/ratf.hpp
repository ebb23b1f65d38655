#pragma once

#include <string>

#include "drinfeld/poly.hpp"

namespace drinfeld {

// Element of F = F_q(t). Always reduced: gcd(num, den) = 1, den monic,
// zero stored as 0/1.
class RatF {
public:
    RatF() = default;
    explicit RatF(const Fq* F) : num_(PolyA::zero(F)), den_(PolyA::one(F)) {}
    explicit RatF(PolyA num) : num_(std::move(num)), den_(PolyA::one(num_.field())) {}
    RatF(PolyA num, PolyA den);

    static RatF zero(const Fq* F) { return RatF(F); }
    static RatF one(const Fq* F) { return RatF(PolyA::one(F)); }
    static RatF t(const Fq* F) { return RatF(PolyA::t(F)); }
    static RatF from_fq(FqElem c) { return RatF(PolyA::constant(c)); }

    const Fq* field() const noexcept { return num_.field(); }
    const PolyA& num() const noexcept { return num_; }
    const PolyA& den() const noexcept { return den_; }
    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const noexcept { return num_.is_one() && den_.is_one(); }
    bool is_integral() const noexcept { return den_.is_one(); }

    RatF operator+(const RatF& o) const;
    RatF operator-(const RatF& o) const;
    RatF operator-() const;
    RatF operator*(const RatF& o) const;
    RatF operator/(const RatF& o) const;
    RatF& operator+=(const RatF& o) { return *this = *this + o; }
    RatF& operator-=(const RatF& o) { return *this = *this - o; }
    RatF& operator*=(const RatF& o) { return *this = *this * o; }

    bool operator==(const RatF& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatF& o) const { return !(*this == o); }
    bool operator<(const RatF& o) const {
        if (den_ != o.den_) return den_ < o.den_;
        return num_ < o.num_;
    }

    RatF inv() const;
    RatF pow(long long n) const;
    RatF qpow(int k) const { return RatF::already_reduced(num_.qpow(k), den_.qpow(k)); }

    std::string str() const;

private:
    PolyA num_, den_;

    static RatF already_reduced(PolyA n, PolyA d) {
        RatF r;
        r.num_ = std::move(n);
        r.den_ = std::move(d);
        return r;
    }
};

}  // namespace drinfeld
