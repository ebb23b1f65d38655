#include "drinfeld/poly.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

PolyA PolyA::monomial(const Fq* F, int deg, FqElem c) {
    if (c.is_zero()) return PolyA(F);
    std::vector<std::uint16_t> v(deg + 1, 0);
    v[deg] = c.v;
    return PolyA(F, std::move(v));
}

PolyA PolyA::operator+(const PolyA& o) const {
    const Fq* F = F_ ? F_ : o.F_;
    std::vector<std::uint16_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) {
        std::uint16_t a = i < c_.size() ? c_[i] : 0;
        std::uint16_t b = i < o.c_.size() ? o.c_[i] : 0;
        r[i] = F->add(a, b);
    }
    return PolyA(F, std::move(r));
}

PolyA PolyA::operator-() const {
    std::vector<std::uint16_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->neg(c_[i]);
    return PolyA(F_, std::move(r));
}

PolyA PolyA::operator-(const PolyA& o) const { return *this + (-o); }

PolyA PolyA::operator*(FqElem c) const {
    if (c.is_zero()) return PolyA(F_);
    std::vector<std::uint16_t> r(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] = F_->mul(c_[i], c.v);
    return PolyA(F_, std::move(r));
}

PolyA PolyA::mul_schoolbook(const PolyA& o) const {
    std::vector<std::uint16_t> r(c_.size() + o.c_.size() - 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) {
            if (o.c_[j] == 0) continue;
            r[i + j] = F_->add(r[i + j], F_->mul(c_[i], o.c_[j]));
        }
    }
    return PolyA(F_, std::move(r));
}

PolyA PolyA::mul_karatsuba(const PolyA& o) const {
    const std::size_t n = std::max(c_.size(), o.c_.size());
    const std::size_t h = n / 2;
    auto split = [&](const std::vector<std::uint16_t>& v) {
        std::vector<std::uint16_t> lo(v.begin(), v.begin() + std::min(h, v.size()));
        std::vector<std::uint16_t> hi(v.begin() + std::min(h, v.size()), v.end());
        return std::make_pair(PolyA(F_, std::move(lo)), PolyA(F_, std::move(hi)));
    };
    auto [a0, a1] = split(c_);
    auto [b0, b1] = split(o.c_);
    PolyA z0 = a0 * b0;
    PolyA z2 = a1 * b1;
    PolyA z1 = (a0 + a1) * (b0 + b1) - z0 - z2;
    PolyA r = z0;
    r += z1.shift(static_cast<int>(h));
    r += z2.shift(static_cast<int>(2 * h));
    return r;
}

PolyA PolyA::operator*(const PolyA& o) const {
    if (is_zero() || o.is_zero()) return PolyA(F_ ? F_ : o.F_);
    if (std::min(c_.size(), o.c_.size()) >= 64) return mul_karatsuba(o);
    return mul_schoolbook(o);
}

bool PolyA::operator<(const PolyA& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;)
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    return false;
}

std::pair<PolyA, PolyA> PolyA::divmod(const PolyA& d) const {
    if (d.is_zero()) fail("DivisionByZero", "polynomial division by zero");
    if (deg() < d.deg()) return {PolyA(F_ ? F_ : d.F_), *this};
    const Fq* F = F_;
    std::vector<std::uint16_t> rem = c_;
    std::vector<std::uint16_t> quo(deg() - d.deg() + 1, 0);
    const std::uint16_t dlinv = F->inv(d.c_.back());
    for (int k = deg(); k >= d.deg(); --k) {
        std::uint16_t top = rem[k];
        if (top == 0) continue;
        std::uint16_t q = F->mul(top, dlinv);
        quo[k - d.deg()] = q;
        for (int i = 0; i <= d.deg(); ++i)
            rem[k - d.deg() + i] = F->sub(rem[k - d.deg() + i], F->mul(q, d.c_[i]));
    }
    return {PolyA(F, std::move(quo)), PolyA(F, std::move(rem))};
}

PolyA PolyA::monic() const {
    if (is_zero()) return *this;
    return *this * lead().inv();
}

PolyA PolyA::pow(long long n) const {
    if (n < 0) fail("BadArgument", "negative polynomial power");
    PolyA r = PolyA::one(F_), b = *this;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

PolyA PolyA::qpow(int k) const {
    if (k == 0 || is_zero()) return *this;
    long long step = 1;
    for (int i = 0; i < k; ++i) step *= F_->q();
    std::vector<std::uint16_t> r(static_cast<std::size_t>(deg()) * step + 1, 0);
    for (std::size_t i = 0; i < c_.size(); ++i) r[i * step] = c_[i];
    return PolyA(F_, std::move(r));
}

FqElem PolyA::eval(FqElem x) const {
    FqElem acc = F_->zero();
    for (std::size_t i = c_.size(); i-- > 0;) acc = acc * x + FqElem{F_, c_[i]};
    return acc;
}

PolyA PolyA::shift(int k) const {
    if (is_zero() || k == 0) return *this;
    std::vector<std::uint16_t> r(c_.size() + k, 0);
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return PolyA(F_, std::move(r));
}

std::string PolyA::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ' ';
        os << c_[i];
    }
    return os.str();
}

PolyA gcd(PolyA a, PolyA b) {
    while (!b.is_zero()) {
        PolyA r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyA lcm(const PolyA& a, const PolyA& b) {
    if (a.is_zero() || b.is_zero()) return PolyA::zero(a.field());
    return ((a * b) / gcd(a, b)).monic();
}

XgcdResult xgcd(const PolyA& a, const PolyA& b) {
    const Fq* F = a.field() ? a.field() : b.field();
    PolyA r0 = a, r1 = b;
    PolyA u0 = PolyA::one(F), u1 = PolyA::zero(F);
    PolyA v0 = PolyA::zero(F), v1 = PolyA::one(F);
    while (!r1.is_zero()) {
        auto [q, r2] = r0.divmod(r1);
        r0 = std::move(r1);
        r1 = std::move(r2);
        PolyA u2 = u0 - q * u1;
        u0 = std::move(u1);
        u1 = std::move(u2);
        PolyA v2 = v0 - q * v1;
        v0 = std::move(v1);
        v1 = std::move(v2);
    }
    if (r0.is_zero()) return {r0, u0, v0};
    FqElem linv = r0.lead().inv();
    return {r0 * linv, u0 * linv, v0 * linv};
}

bool is_irreducible(const PolyA& f) {
    // Rabin test: f of degree n is irreducible over F_q iff t^{q^n} = t mod f
    // and gcd(t^{q^{n/l}} - t mod f, f) = 1 for each prime l | n.
    const Fq* F = f.field();
    int n = f.deg();
    if (n <= 0) return false;
    if (n == 1) return true;
    auto frob_pow = [&](int k) {
        // t^{q^k} mod f by repeated q-th powers
        PolyA x = PolyA::t(F) % f;
        for (int i = 0; i < k; ++i) x = x.qpow(1) % f;
        return x;
    };
    std::vector<int> plist;
    int m = n;
    for (int d = 2; d * d <= m; ++d)
        if (m % d == 0) {
            plist.push_back(d);
            while (m % d == 0) m /= d;
        }
    if (m > 1) plist.push_back(m);
    for (int l : plist) {
        PolyA g = gcd(frob_pow(n / l) - PolyA::t(F), f);
        if (!g.is_one()) return false;
    }
    return (frob_pow(n) - (PolyA::t(F) % f)).is_zero();
}

}  // namespace drinfeld
