#pragma once

#include <memory>
#include <string>
#include <vector>

#include "drinfeld/tlaurent.hpp"

namespace drinfeld {

// Coefficient-ring interface used by the skew-polynomial and Drinfeld-module
// templates. Each supported ring provides the free functions below; values
// carry their own context, so "mint an element like this one" is expressed
// through a prototype argument.
//
//   ring_zero(proto), ring_one(proto)   additive / multiplicative identity
//   ring_q(proto)                       the q of the twist tau c = c^q tau
//   qpow(x, k)                          x^(q^k)
//   ring_inv(x)                         multiplicative inverse (may throw)
//   is_exact_zero(x)                    certified zero (strippable)
//   certified_nonzero(x)                safe to use as pivot / leading coeff
//   definitely_unequal(x, y)            three-valued-aware disequality
//   t_image(proto)                      structure image of t
//   from_fq(proto, c)                   structure image of c in F_q

// --- RatF ------------------------------------------------------------------

inline RatF ring_zero(const RatF& p) { return RatF::zero(p.field()); }
inline RatF ring_one(const RatF& p) { return RatF::one(p.field()); }
inline const Fq* ring_field(const RatF& p) { return p.field(); }
inline int ring_q(const RatF& p) { return p.field()->q(); }
inline RatF qpow(const RatF& x, int k) { return x.qpow(k); }
inline RatF ring_inv(const RatF& x) { return x.inv(); }
inline bool is_exact_zero(const RatF& x) { return x.is_zero(); }
inline bool certified_nonzero(const RatF& x) { return !x.is_zero(); }
inline bool definitely_unequal(const RatF& x, const RatF& y) { return x != y; }
inline RatF t_image(const RatF& p) { return RatF::t(p.field()); }
inline RatF from_fq(const RatF& p, FqElem c) { return RatF::from_fq(c); }

// --- TLaurent ---------------------------------------------------------------

inline TLaurent ring_zero(const TLaurent& p) { return TLaurent::exact_zero(p.field(), p.ram()); }
inline TLaurent ring_one(const TLaurent& p) {
    if (p.prec() >= TLaurent::kInfPrec)
        fail("InsufficientPrecision", "cannot mint a unit from an exact-zero prototype");
    return TLaurent::one(p.field(), p.ram(), p.prec());
}
inline const Fq* ring_field(const TLaurent& p) { return p.field(); }
inline int ring_q(const TLaurent& p) { return p.field()->q(); }
inline TLaurent qpow(const TLaurent& x, int k) { return x.qpow(k); }
inline TLaurent ring_inv(const TLaurent& x) { return x.inv(); }
inline bool is_exact_zero(const TLaurent& x) { return x.is_exact_zero(); }
inline bool certified_nonzero(const TLaurent& x) { return x.certified_nonzero(); }
inline bool definitely_unequal(const TLaurent& x, const TLaurent& y) { return cmp3(x, y) == Cmp::Unequal; }
inline TLaurent t_image(const TLaurent& p) {
    if (p.prec() >= TLaurent::kInfPrec)
        fail("InsufficientPrecision", "cannot mint t from an exact-zero prototype");
    return TLaurent::monomial(p.field(), p.ram(), -p.ram(), p.field()->one(), p.prec());
}
inline TLaurent from_fq(const TLaurent& p, FqElem c) {
    if (p.prec() >= TLaurent::kInfPrec)
        fail("InsufficientPrecision", "cannot mint a constant from an exact-zero prototype");
    return TLaurent::monomial(p.field(), p.ram(), 0, c, p.prec());
}

// --- QuotF: F_q(t)[x]/(m) ----------------------------------------------------
//
// User-supplied splitting rings for torsion points. The library never builds
// algebraic closures; callers pick the modulus (Design note: keeps arithmetic
// exact and bounded).

struct QuotCtx {
    const Fq* F = nullptr;
    std::vector<RatF> modulus;  // monic, ascending coefficients, degree >= 1

    int deg() const { return static_cast<int>(modulus.size()) - 1; }
};

class QuotF {
public:
    QuotF() = default;
    QuotF(const QuotCtx* ctx, std::vector<RatF> coeffs);

    static QuotF zero(const QuotCtx* ctx) { return QuotF(ctx, {}); }
    static QuotF one(const QuotCtx* ctx) { return QuotF(ctx, {RatF::one(ctx->F)}); }
    static QuotF gen(const QuotCtx* ctx);                 // the class of x
    static QuotF embed(const QuotCtx* ctx, const RatF& a); // constant

    const QuotCtx* ctx() const noexcept { return ctx_; }
    const std::vector<RatF>& coeffs() const noexcept { return c_; }
    bool is_zero() const noexcept { return c_.empty(); }

    QuotF operator+(const QuotF& o) const;
    QuotF operator-(const QuotF& o) const;
    QuotF operator-() const;
    QuotF operator*(const QuotF& o) const;
    bool operator==(const QuotF& o) const { return c_ == o.c_; }
    bool operator!=(const QuotF& o) const { return !(*this == o); }
    bool operator<(const QuotF& o) const;

    QuotF inv() const;  // fails with NotInvertible if not coprime to modulus
    QuotF pow(long long n) const;

    std::string str() const;

private:
    const QuotCtx* ctx_ = nullptr;
    std::vector<RatF> c_;

    void reduce();
};

inline QuotF ring_zero(const QuotF& p) { return QuotF::zero(p.ctx()); }
inline QuotF ring_one(const QuotF& p) { return QuotF::one(p.ctx()); }
inline const Fq* ring_field(const QuotF& p) { return p.ctx()->F; }
inline int ring_q(const QuotF& p) { return p.ctx()->F->q(); }
QuotF qpow(const QuotF& x, int k);
inline QuotF ring_inv(const QuotF& x) { return x.inv(); }
inline bool is_exact_zero(const QuotF& x) { return x.is_zero(); }
inline bool certified_nonzero(const QuotF& x) { return !x.is_zero(); }
inline bool definitely_unequal(const QuotF& x, const QuotF& y) { return x != y; }
inline QuotF t_image(const QuotF& p) { return QuotF::embed(p.ctx(), RatF::t(p.ctx()->F)); }
inline QuotF from_fq(const QuotF& p, FqElem c) { return QuotF::embed(p.ctx(), RatF::from_fq(c)); }

}  // namespace drinfeld
