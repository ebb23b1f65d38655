#pragma once

#include <optional>
#include <vector>

#include "drinfeld/lattice.hpp"

namespace drinfeld {

// Truncated Laurent series in the parameter at infinity u, with TLaurent
// coefficients. coeffs_[i] sits at u^(ord+i); the series is known modulo
// u^prec_u. Negative orders appear for weak forms and for the torsion
// values e_{L'omega'}(l omega) with their pole of order [L' : l_1 Lambda'].
//
// Leading coefficients that are only zero to (TLaurent) precision are kept;
// only exact zeros are stripped, so ord() is a certified structural bound.
class USeries {
public:
    USeries() = default;

    static USeries zero(const Fq* F, int ram, long long cprec, long long prec_u);
    static USeries constant(const TLaurent& c, long long prec_u);
    static USeries monomial(const TLaurent& c, long long k, long long prec_u);

    const Fq* field() const noexcept { return F_; }
    int ram() const noexcept { return ram_; }
    long long cprec() const noexcept { return cprec_; }
    long long ord() const noexcept { return ord_; }
    long long prec_u() const noexcept { return pu_; }
    const std::vector<TLaurent>& coeffs() const noexcept { return c_; }

    bool is_zero_to_prec() const noexcept { return c_.empty(); }
    bool lead_certified() const noexcept { return !c_.empty() && c_[0].certified_nonzero(); }

    // coefficient of u^k; exact zero for k < ord or beyond the stored range
    // (still below prec_u); fails for k >= prec_u
    TLaurent coeff_at(long long k) const;

    USeries operator+(const USeries& o) const;
    USeries operator-(const USeries& o) const;
    USeries operator-() const;
    USeries operator*(const USeries& o) const;
    USeries& operator+=(const USeries& o) { return *this = *this + o; }
    USeries& operator-=(const USeries& o) { return *this = *this - o; }
    USeries& operator*=(const USeries& o) { return *this = *this * o; }

    USeries scaled(const TLaurent& c) const;
    USeries inv() const;
    USeries qpow(int k) const;
    USeries truncated_u(long long new_prec_u) const;

    // sum c_k u0^k for a sample point with val(u0) > 0; the dropped tail
    // O(u^prec_u) caps the result precision at prec_u * val(u0)
    TLaurent eval(const TLaurent& u0) const;

    std::string str() const;

private:
    const Fq* F_ = nullptr;
    int ram_ = 1;
    long long cprec_ = 0;  // s-precision used to mint constants in this frame
    long long ord_ = 0;
    long long pu_ = 0;
    std::vector<TLaurent> c_;

    void normalize();
    friend USeries useries_from(const Fq* F, int ram, long long cprec, long long ord, long long pu,
                                std::vector<TLaurent> coeffs);
};

USeries useries_from(const Fq* F, int ram, long long cprec, long long ord, long long pu,
                     std::vector<TLaurent> coeffs);

// ring traits so SkewPoly<USeries> works
inline USeries ring_zero(const USeries& p) { return USeries::zero(p.field(), p.ram(), p.cprec(), p.prec_u()); }
inline USeries ring_one(const USeries& p) {
    return USeries::constant(TLaurent::one(p.field(), p.ram(), p.cprec()), p.prec_u());
}
inline const Fq* ring_field(const USeries& p) { return p.field(); }
inline int ring_q(const USeries& p) { return p.field()->q(); }
inline USeries qpow(const USeries& x, int k) { return x.qpow(k); }
inline USeries ring_inv(const USeries& x) { return x.inv(); }
inline bool is_exact_zero(const USeries& x) { return x.is_zero_to_prec() && x.prec_u() >= (1LL << 40); }
inline bool certified_nonzero(const USeries& x) { return x.lead_certified(); }
inline bool definitely_unequal(const USeries& x, const USeries& y) { return (x - y).lead_certified(); }

// certified agreement: coefficientwise truncation to the digits two runs share
USeries merge_stable(const USeries& a, const USeries& b);

// --- the cusp-neighborhood context -------------------------------------------
//
// For a rank-r lattice L with row-HNF basis, the split data of the standard
// boundary component: L' = {v' : (0,v') in L}, L_1 = h11 A, the lifted line
// Ltilde_1 = A lhat (lhat = first basis row), and the translation lattice
// Lambda' (default: the stabilizer h11^{-1} L', the largest choice with
// l_1 Lambda' subset L' for all l_1 in L_1).
class UContext {
public:
    static UContext make(const LatticeFr& L, const OmegaPoint& omega_prime,
                         std::optional<LatticeFr> lambda = std::nullopt);

    int rank() const noexcept { return L_.rank(); }
    const LatticeFr& L() const noexcept { return L_; }
    const LatticeFr& Lprime() const noexcept { return Lp_; }
    const LatticeFr& Lambda() const noexcept { return Lam_; }
    const OmegaPoint& omega_prime() const noexcept { return wp_; }
    const RowF& lhat() const noexcept { return lhat_; }
    const RatF& h11() const noexcept { return h11_; }

private:
    LatticeFr L_, Lp_, Lam_;
    OmegaPoint wp_;
    RowF lhat_;
    RatF h11_;
};

// u = e_{Lambda' omega'}(omega_1)^{-1}
TLaurent u_param(const UContext& ctx, const TLaurent& omega1, int D);

// pole order of e_{L'omega'}(x lhat omega) in u: the index [L' : x h11 Lambda']
long long sigma_pole_order(const UContext& ctx, const PolyA& x);

// u-expansion of the torsion value e_{L'omega'}(x lhat omega), exact in u
// (a Laurent polynomial of valuation -[L' : x h11 Lambda'])
USeries sigma_series(const UContext& ctx, const PolyA& x, long long m_u, int D);

// u-expansion of e_{L omega}(z) at fixed ztilde = e_{L'omega'}(z): the
// truncated product over Ltilde_1 \ {0}, factors with pole order > m_u
// dropping out exactly. Stabilized over two inner degree increments.
USeries exp_u_series(const UContext& ctx, const TLaurent& ztilde, long long m_u, int D);

// z-coefficients of e_{L omega} as u-series (tau-degree <= depth), built from
// the subspace ladder over the sigma values composed with the z-series of
// e_{L'omega'}
SkewPoly<USeries> exp_u_poly(const UContext& ctx, int depth, long long m_u, int D);

// coefficients of psi^{L omega}_a as u-series
SkewPoly<USeries> psi_u_poly(const UContext& ctx, const PolyA& a, long long m_u, int D);
USeries coeff_form_u_series(const UContext& ctx, const PolyA& a, int i, long long m_u, int D);

struct OrderAtInfinity {
    long long ord = 0;                 // first u-power with a certified nonzero coefficient
    long long vanish_sprec_below = 0;  // the coefficients below ord vanish at least to this s-exponent
};
OrderAtInfinity order_at_infinity(const USeries& f);

}  // namespace drinfeld
