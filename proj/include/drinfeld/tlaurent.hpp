#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/ratf.hpp"

namespace drinfeld {

enum class Cmp { Equal, Unequal, Undecidable };

// Valuation of a TLaurent in units of the place at infinity: v(x) = val/ram,
// so |x| = q^{-num/den}. Zero-to-precision values report infinity with
// known_exact = false.
struct Valuation {
    bool is_infinite = false;
    bool known_exact = false;  // true only for values constructed as exact zero
    long long num = 0;
    long long den = 1;
};

// Truncated Laurent series over F_q in s = t^(-1/ram): the computational
// stand-in for elements of F_oo and C_oo. Digits c_[i] sit at s^(val+i) and
// the series is known modulo s^prec. The leading stored digit is nonzero, so
// a value either certifies its valuation or is zero to its precision.
//
// The only values that are exact are those constructed as exact zero; every
// other value carries finite precision and all arithmetic propagates it
// conservatively (add: min prec; mul: min(p1+v2, p2+v1); inv: p-2v; q-th
// power: p*q by the char-p freshman's dream).
class TLaurent {
public:
    static constexpr long long kInfPrec = (1LL << 56);

    TLaurent() = default;

    static TLaurent exact_zero(const Fq* F, int ram);
    static TLaurent zero_to_prec(const Fq* F, int ram, long long prec);
    static TLaurent monomial(const Fq* F, int ram, long long k, FqElem c, long long prec);
    static TLaurent one(const Fq* F, int ram, long long prec) { return monomial(F, ram, 0, F->one(), prec); }
    static TLaurent from_digits(const Fq* F, int ram, long long val, std::vector<std::uint16_t> digits,
                                long long prec);

    const Fq* field() const noexcept { return F_; }
    int ram() const noexcept { return ram_; }
    long long val() const noexcept { return val_; }
    long long prec() const noexcept { return prec_; }
    const std::vector<std::uint16_t>& digits() const noexcept { return c_; }
    FqElem digit_at(long long exponent) const;

    bool is_exact_zero() const noexcept { return exact_zero_; }
    bool is_zero_to_prec() const noexcept { return c_.empty(); }
    bool certified_nonzero() const noexcept { return !c_.empty(); }
    FqElem lead_coeff() const;

    Valuation valuation() const;

    TLaurent operator+(const TLaurent& o) const;
    TLaurent operator-(const TLaurent& o) const;
    TLaurent operator-() const;
    TLaurent operator*(const TLaurent& o) const;
    TLaurent operator*(FqElem c) const;
    TLaurent operator/(const TLaurent& o) const { return *this * o.inv(); }
    TLaurent& operator+=(const TLaurent& o) { return *this = *this + o; }
    TLaurent& operator-=(const TLaurent& o) { return *this = *this - o; }
    TLaurent& operator*=(const TLaurent& o) { return *this = *this * o; }

    TLaurent inv() const;
    TLaurent pow(long long n) const;
    // x^(q^k): coefficientwise identity on F_q plus index spread; gains
    // precision (p -> p*q^k), which is exact in characteristic p.
    TLaurent qpow(int k) const;

    TLaurent truncated(long long new_prec) const;
    // Lift to a finer ramification (new_ram must be a multiple of ram).
    TLaurent with_ram(int new_ram) const;

    // Digits compare byte-for-byte (same ram, val, prec, digits).
    bool identical(const TLaurent& o) const {
        return ram_ == o.ram_ && val_ == o.val_ && prec_ == o.prec_ && c_ == o.c_ && exact_zero_ == o.exact_zero_;
    }

    std::string str() const;

private:
    const Fq* F_ = nullptr;
    int ram_ = 1;
    long long val_ = kInfPrec;
    long long prec_ = kInfPrec;
    bool exact_zero_ = false;
    std::vector<std::uint16_t> c_;

    void normalize();
    void require_same_frame(const TLaurent& o) const;
};

// Three-valued comparison at precision.
Cmp cmp3(const TLaurent& x, const TLaurent& y);

// Certified |x| <= q^(-s_exponent/ram): x vanishes at least to s^s_exponent.
bool vanishes_to(const TLaurent& x, long long s_exponent);

// Largest s-exponent P such that x and y certifiably agree below s^P
// (capped by both precisions). Used by stabilization certificates.
long long agreement_exponent(const TLaurent& x, const TLaurent& y);

// Laurent expansion at infinity of f in A resp. F, truncated at prec.
TLaurent embed_poly(const PolyA& f, int ram, long long prec);
TLaurent embed_ratf(const RatF& f, int ram, long long prec);

}  // namespace drinfeld
