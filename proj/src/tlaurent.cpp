#include "drinfeld/tlaurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace drinfeld {

namespace {
long long sat_add(long long a, long long b) {
    if (a >= TLaurent::kInfPrec || b >= TLaurent::kInfPrec) return TLaurent::kInfPrec;
    return std::min(a + b, TLaurent::kInfPrec);
}
long long sat_mul(long long a, long long m) {
    if (a >= TLaurent::kInfPrec / m) return TLaurent::kInfPrec;
    return a * m;
}
}  // namespace

void TLaurent::normalize() {
    if (exact_zero_) {
        c_.clear();
        val_ = prec_ = kInfPrec;
        return;
    }
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + lead);
        val_ += static_cast<long long>(lead);
    }
    if (prec_ > val_ && static_cast<long long>(c_.size()) > prec_ - val_) c_.resize(prec_ - val_);
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (c_.empty()) val_ = prec_;
    if (val_ > prec_) fail("BadSeries", "valuation exceeds precision");
}

void TLaurent::require_same_frame(const TLaurent& o) const {
    if (F_ != o.F_) fail("FieldMismatch", "TLaurent operands over different F_q");
    if (ram_ != o.ram_) fail("RamificationMismatch", "operands have ramification " + std::to_string(ram_) +
                                                         " and " + std::to_string(o.ram_));
}

TLaurent TLaurent::exact_zero(const Fq* F, int ram) {
    TLaurent x;
    x.F_ = F;
    x.ram_ = ram;
    x.exact_zero_ = true;
    x.normalize();
    return x;
}

TLaurent TLaurent::zero_to_prec(const Fq* F, int ram, long long prec) {
    TLaurent x;
    x.F_ = F;
    x.ram_ = ram;
    x.val_ = x.prec_ = prec;
    return x;
}

TLaurent TLaurent::monomial(const Fq* F, int ram, long long k, FqElem c, long long prec) {
    if (c.is_zero()) return zero_to_prec(F, ram, prec);
    TLaurent x;
    x.F_ = F;
    x.ram_ = ram;
    x.val_ = k;
    x.prec_ = prec;
    x.c_ = {c.v};
    x.normalize();
    return x;
}

TLaurent TLaurent::from_digits(const Fq* F, int ram, long long val, std::vector<std::uint16_t> digits,
                               long long prec) {
    TLaurent x;
    x.F_ = F;
    x.ram_ = ram;
    x.val_ = val;
    x.prec_ = prec;
    x.c_ = std::move(digits);
    x.normalize();
    return x;
}

FqElem TLaurent::digit_at(long long exponent) const {
    if (exponent < val_ || exponent - val_ >= static_cast<long long>(c_.size())) return F_->zero();
    return {F_, c_[exponent - val_]};
}

FqElem TLaurent::lead_coeff() const {
    if (c_.empty()) fail("ZeroToPrecision", "leading coefficient of a zero-to-precision series");
    return {F_, c_[0]};
}

Valuation TLaurent::valuation() const {
    Valuation v;
    if (c_.empty()) {
        v.is_infinite = true;
        v.known_exact = exact_zero_;
        return v;
    }
    long long g = std::gcd(std::abs(val_) == 0 ? static_cast<long long>(ram_) : std::abs(val_),
                           static_cast<long long>(ram_));
    v.num = val_ / g;
    v.den = ram_ / g;
    return v;
}

TLaurent TLaurent::operator+(const TLaurent& o) const {
    require_same_frame(o);
    if (exact_zero_) return o;
    if (o.exact_zero_) return *this;
    TLaurent r;
    r.F_ = F_;
    r.ram_ = ram_;
    r.prec_ = std::min(prec_, o.prec_);
    r.val_ = std::min(std::min(val_, o.val_), r.prec_);
    if (r.prec_ > r.val_) {
        r.c_.assign(r.prec_ - r.val_, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            long long e = val_ + static_cast<long long>(i);
            if (e < r.prec_) r.c_[e - r.val_] = c_[i];
        }
        for (std::size_t i = 0; i < o.c_.size(); ++i) {
            long long e = o.val_ + static_cast<long long>(i);
            if (e < r.prec_) r.c_[e - r.val_] = F_->add(r.c_[e - r.val_], o.c_[i]);
        }
    }
    r.normalize();
    return r;
}

TLaurent TLaurent::operator-() const {
    TLaurent r = *this;
    for (auto& d : r.c_) d = F_->neg(d);
    return r;
}

TLaurent TLaurent::operator-(const TLaurent& o) const { return *this + (-o); }

TLaurent TLaurent::operator*(FqElem s) const {
    if (exact_zero_) return *this;
    if (s.is_zero()) return zero_to_prec(F_, ram_, prec_);
    TLaurent r = *this;
    for (auto& d : r.c_) d = F_->mul(d, s.v);
    return r;
}

TLaurent TLaurent::operator*(const TLaurent& o) const {
    require_same_frame(o);
    if (exact_zero_ || o.exact_zero_) return exact_zero(F_, ram_);
    TLaurent r;
    r.F_ = F_;
    r.ram_ = ram_;
    r.prec_ = std::min(sat_add(prec_, o.val_), sat_add(o.prec_, val_));
    r.val_ = std::min(sat_add(val_, o.val_), r.prec_);
    long long len = r.prec_ - r.val_;
    if (len > 0 && !c_.empty() && !o.c_.empty()) {
        r.c_.assign(len, 0);
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i] == 0) continue;
            long long base = val_ + static_cast<long long>(i) + o.val_ - r.val_;
            if (base >= len) break;
            std::size_t jmax = std::min(o.c_.size(), static_cast<std::size_t>(len - base));
            for (std::size_t j = 0; j < jmax; ++j) {
                if (o.c_[j] == 0) continue;
                r.c_[base + j] = F_->add(r.c_[base + j], F_->mul(c_[i], o.c_[j]));
            }
        }
    }
    r.normalize();
    return r;
}

TLaurent TLaurent::inv() const {
    if (c_.empty()) fail("DivisionByZeroToPrecision", "inverse of a series indistinguishable from zero");
    // x = c0 s^v (1 + h); invert the unit part by long division.
    const long long v = val_;
    const long long out_prec = prec_ - 2 * v;
    const long long n = prec_ - v;  // digits of the unit part = digits of the result
    std::vector<std::uint16_t> g(n, 0);
    const std::uint16_t c0inv = F_->inv(c_[0]);
    g[0] = c0inv;
    for (long long k = 1; k < n; ++k) {
        std::uint16_t acc = 0;
        long long jmax = std::min<long long>(k, static_cast<long long>(c_.size()) - 1);
        for (long long j = 1; j <= jmax; ++j)
            acc = F_->add(acc, F_->mul(c_[j], g[k - j]));
        g[k] = F_->neg(F_->mul(c0inv, acc));
    }
    return from_digits(F_, ram_, -v, std::move(g), out_prec);
}

TLaurent TLaurent::pow(long long n) const {
    if (n < 0) return inv().pow(-n);
    if (n == 0) return one(F_, ram_, exact_zero_ ? kInfPrec / 2 : prec_ - val_);
    TLaurent r = *this;
    // left-to-right binary powering keeps the precision rule tight
    int top = 63;
    while (top > 0 && !((n >> top) & 1)) --top;
    for (int b = top - 1; b >= 0; --b) {
        r = r * r;
        if ((n >> b) & 1) r = r * *this;
    }
    return r;
}

TLaurent TLaurent::qpow(int k) const {
    if (k == 0) return *this;
    if (exact_zero_) return *this;
    long long step = 1;
    for (int i = 0; i < k; ++i) step = sat_mul(step, F_->q());
    TLaurent r;
    r.F_ = F_;
    r.ram_ = ram_;
    r.val_ = val_ * step;
    r.prec_ = sat_mul(prec_, step);
    if (!c_.empty()) {
        r.c_.assign(static_cast<std::size_t>((c_.size() - 1) * step + 1), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * step] = c_[i];
    }
    r.normalize();
    return r;
}

TLaurent TLaurent::truncated(long long new_prec) const {
    if (exact_zero_ || new_prec >= prec_) return *this;
    TLaurent r = *this;
    r.prec_ = new_prec;
    r.val_ = std::min(val_, new_prec);
    r.normalize();
    return r;
}

TLaurent TLaurent::with_ram(int new_ram) const {
    if (new_ram == ram_) return *this;
    if (new_ram <= 0 || new_ram % ram_ != 0)
        fail("RamificationMismatch", "can only lift to a multiple of the current ramification");
    const long long m = new_ram / ram_;
    if (exact_zero_) return exact_zero(F_, new_ram);
    TLaurent r;
    r.F_ = F_;
    r.ram_ = new_ram;
    r.val_ = val_ >= kInfPrec ? kInfPrec : val_ * m;
    r.prec_ = sat_mul(prec_, m);
    if (!c_.empty()) {
        r.c_.assign(static_cast<std::size_t>((c_.size() - 1) * m + 1), 0);
        for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i * m] = c_[i];
    }
    r.normalize();
    return r;
}

std::string TLaurent::str() const {
    std::ostringstream os;
    os << ram_ << ':';
    long long v = c_.empty() ? prec_ : val_;
    if (v >= kInfPrec)
        os << "inf";
    else
        os << v;
    os << ':';
    if (prec_ >= kInfPrec)
        os << "inf";
    else
        os << prec_;
    os << ":[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << ' ';
        os << c_[i];
    }
    os << ']';
    return os.str();
}

Cmp cmp3(const TLaurent& x, const TLaurent& y) {
    TLaurent d = x - y;
    if (d.certified_nonzero()) return Cmp::Unequal;
    if (d.is_exact_zero()) return Cmp::Equal;
    return Cmp::Undecidable;
}

bool vanishes_to(const TLaurent& x, long long s_exponent) {
    if (x.is_exact_zero()) return true;
    if (x.certified_nonzero()) return x.val() >= s_exponent;
    return x.prec() >= s_exponent;
}

long long agreement_exponent(const TLaurent& x, const TLaurent& y) {
    TLaurent d = x - y;
    long long cap = std::min(x.prec(), y.prec());
    if (d.is_exact_zero() || d.is_zero_to_prec()) return cap;
    return std::min(d.val(), cap);
}

TLaurent embed_poly(const PolyA& f, int ram, long long prec) {
    const Fq* F = f.field();
    if (f.is_zero()) return TLaurent::zero_to_prec(F, ram, prec);
    const long long v = -static_cast<long long>(ram) * f.deg();
    if (prec <= v) fail("InsufficientPrecision", "embedding truncated away entirely");
    std::vector<std::uint16_t> digits(static_cast<std::size_t>(ram) * f.deg() + 1, 0);
    for (int i = 0; i <= f.deg(); ++i) digits[static_cast<std::size_t>(ram) * (f.deg() - i)] = f.coeff(i).v;
    return TLaurent::from_digits(F, ram, v, std::move(digits), prec);
}

TLaurent embed_ratf(const RatF& f, int ram, long long prec) {
    if (f.is_zero()) return TLaurent::zero_to_prec(f.field(), ram, prec);
    if (f.is_integral()) return embed_poly(f.num(), ram, prec);
    const long long v = static_cast<long long>(ram) * (f.den().deg() - f.num().deg());
    if (prec <= v) fail("InsufficientPrecision", "embedding truncated away entirely");
    const long long slack = prec + static_cast<long long>(ram) * (f.den().deg() + f.num().deg()) + 1;
    TLaurent n = embed_poly(f.num(), ram, slack);
    TLaurent d = embed_poly(f.den(), ram, slack);
    return (n * d.inv()).truncated(prec);
}

}  // namespace drinfeld
