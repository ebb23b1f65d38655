#include "drinfeld/ratf.hpp"

#include <sstream>

namespace drinfeld {

RatF::RatF(PolyA num, PolyA den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail("DivisionByZero", "rational function with zero denominator");
    if (num_.is_zero()) {
        den_ = PolyA::one(den_.field());
        return;
    }
    PolyA g = gcd(num_, den_);
    if (!g.is_one()) {
        num_ = num_ / g;
        den_ = den_ / g;
    }
    FqElem linv = den_.lead().inv();
    num_ = num_ * linv;
    den_ = den_ * linv;
}

RatF RatF::operator+(const RatF& o) const {
    return RatF(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatF RatF::operator-(const RatF& o) const {
    return RatF(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

RatF RatF::operator-() const { return already_reduced(-num_, den_); }

RatF RatF::operator*(const RatF& o) const {
    if (is_zero() || o.is_zero()) return RatF(field() ? field() : o.field());
    // cross-reduce before multiplying to keep degrees down
    PolyA g1 = gcd(num_, o.den_);
    PolyA g2 = gcd(o.num_, den_);
    return already_reduced((num_ / g1) * (o.num_ / g2), (den_ / g2) * (o.den_ / g1));
}

RatF RatF::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero rational function");
    FqElem linv = num_.lead().inv();
    return already_reduced(den_ * linv, num_ * linv);
}

RatF RatF::operator/(const RatF& o) const { return *this * o.inv(); }

RatF RatF::pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    RatF r = RatF::one(field()), b = *this;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

std::string RatF::str() const {
    if (den_.is_one()) return num_.str();
    std::ostringstream os;
    os << '(' << num_.str() << ")/(" << den_.str() << ')';
    return os.str();
}

}  // namespace drinfeld
