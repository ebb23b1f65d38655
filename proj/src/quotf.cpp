#include "drinfeld/rings.hpp"

#include <sstream>

namespace drinfeld {

namespace {

// dense polynomial helpers over RatF (ascending coefficients, trimmed)

void trim(std::vector<RatF>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

std::vector<RatF> padd(const std::vector<RatF>& a, const std::vector<RatF>& b) {
    std::vector<RatF> r(std::max(a.size(), b.size()));
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (i < a.size() && i < b.size())
            r[i] = a[i] + b[i];
        else if (i < a.size())
            r[i] = a[i];
        else
            r[i] = b[i];
    }
    trim(r);
    return r;
}

std::vector<RatF> pneg(std::vector<RatF> a) {
    for (auto& x : a) x = -x;
    return a;
}

std::vector<RatF> pmul(const std::vector<RatF>& a, const std::vector<RatF>& b, const Fq* F) {
    if (a.empty() || b.empty()) return {};
    std::vector<RatF> r(a.size() + b.size() - 1, RatF::zero(F));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

// a mod m, m monic
std::vector<RatF> pmod(std::vector<RatF> a, const std::vector<RatF>& m, const Fq* F) {
    const int dm = static_cast<int>(m.size()) - 1;
    while (static_cast<int>(a.size()) - 1 >= dm) {
        RatF c = a.back();
        int k = static_cast<int>(a.size()) - 1 - dm;
        if (!c.is_zero())
            for (int i = 0; i <= dm; ++i) a[k + i] -= c * m[i];
        a.pop_back();
        trim(a);
    }
    return a;
}

std::pair<std::vector<RatF>, std::vector<RatF>> pdivmod(std::vector<RatF> a, const std::vector<RatF>& d,
                                                        const Fq* F) {
    const int dd = static_cast<int>(d.size()) - 1;
    std::vector<RatF> q;
    if (static_cast<int>(a.size()) - 1 >= dd) q.assign(a.size() - dd, RatF::zero(F));
    RatF dl_inv = d.back().inv();
    while (static_cast<int>(a.size()) - 1 >= dd) {
        RatF c = a.back() * dl_inv;
        int k = static_cast<int>(a.size()) - 1 - dd;
        q[k] = c;
        for (int i = 0; i <= dd; ++i) a[k + i] -= c * d[i];
        while (!a.empty() && a.back().is_zero()) a.pop_back();
        if (static_cast<int>(a.size()) - 1 < dd) break;
    }
    trim(q);
    return {q, a};
}

}  // namespace

QuotF::QuotF(const QuotCtx* ctx, std::vector<RatF> coeffs) : ctx_(ctx), c_(std::move(coeffs)) { reduce(); }

void QuotF::reduce() {
    trim(c_);
    if (static_cast<int>(c_.size()) > ctx_->deg()) c_ = pmod(std::move(c_), ctx_->modulus, ctx_->F);
}

QuotF QuotF::gen(const QuotCtx* ctx) {
    if (ctx->deg() < 1) fail("BadArgument", "quotient modulus must have degree >= 1");
    return QuotF(ctx, {RatF::zero(ctx->F), RatF::one(ctx->F)});
}

QuotF QuotF::embed(const QuotCtx* ctx, const RatF& a) { return QuotF(ctx, {a}); }

QuotF QuotF::operator+(const QuotF& o) const { return QuotF(ctx_, padd(c_, o.c_)); }
QuotF QuotF::operator-() const { return QuotF(ctx_, pneg(c_)); }
QuotF QuotF::operator-(const QuotF& o) const { return QuotF(ctx_, padd(c_, pneg(o.c_))); }
QuotF QuotF::operator*(const QuotF& o) const { return QuotF(ctx_, pmul(c_, o.c_, ctx_->F)); }

bool QuotF::operator<(const QuotF& o) const {
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
}

QuotF QuotF::inv() const {
    if (is_zero()) fail("DivisionByZero", "inverse of zero in quotient ring");
    // extended Euclid in F_q(t)[x]
    const Fq* F = ctx_->F;
    std::vector<RatF> r0 = ctx_->modulus, r1 = c_;
    std::vector<RatF> s0, s1 = {RatF::one(F)};
    while (!r1.empty()) {
        auto [q, r2] = pdivmod(r0, r1, F);
        r0 = std::move(r1);
        r1 = std::move(r2);
        std::vector<RatF> s2 = padd(s0, pneg(pmul(q, s1, F)));
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (static_cast<int>(r0.size()) != 1)
        fail("NotInvertible", "element shares a factor with the quotient modulus");
    RatF scale = r0[0].inv();
    for (auto& x : s0) x *= scale;
    return QuotF(ctx_, std::move(s0));
}

QuotF QuotF::pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    QuotF r = QuotF::one(ctx_), b = *this;
    while (n > 0) {
        if (n & 1) r = r * b;
        b = b * b;
        n >>= 1;
    }
    return r;
}

QuotF qpow(const QuotF& x, int k) {
    QuotF r = x;
    for (int i = 0; i < k; ++i) r = r.pow(ring_q(x));
    return r;
}

std::string QuotF::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ", ";
        os << c_[i].str();
    }
    os << ']';
    return os.str();
}

}  // namespace drinfeld
