#include "drinfeld/useries.hpp"

#include <algorithm>
#include <sstream>

namespace drinfeld {

namespace {
constexpr long long kInfU = (1LL << 44);
long long sat_add_u(long long a, long long b) {
    if (a >= kInfU || b >= kInfU) return kInfU;
    return std::min(a + b, kInfU);
}
}  // namespace

USeries useries_from(const Fq* F, int ram, long long cprec, long long ord, long long pu,
                     std::vector<TLaurent> coeffs) {
    USeries s;
    s.F_ = F;
    s.ram_ = ram;
    s.cprec_ = cprec;
    s.ord_ = ord;
    s.pu_ = pu;
    s.c_ = std::move(coeffs);
    s.normalize();
    return s;
}

void USeries::normalize() {
    std::size_t lead = 0;
    while (lead < c_.size() && c_[lead].is_exact_zero()) ++lead;
    if (lead > 0) {
        c_.erase(c_.begin(), c_.begin() + lead);
        ord_ += static_cast<long long>(lead);
    }
    if (ord_ < pu_ && static_cast<long long>(c_.size()) > pu_ - ord_) c_.resize(pu_ - ord_);
    while (!c_.empty() && c_.back().is_exact_zero()) c_.pop_back();
    if (c_.empty()) ord_ = pu_;
    if (ord_ > pu_) fail("BadSeries", "u-order exceeds u-precision");
}

USeries USeries::zero(const Fq* F, int ram, long long cprec, long long prec_u) {
    return useries_from(F, ram, cprec, prec_u, prec_u, {});
}

USeries USeries::constant(const TLaurent& c, long long prec_u) { return monomial(c, 0, prec_u); }

USeries USeries::monomial(const TLaurent& c, long long k, long long prec_u) {
    return useries_from(c.field(), c.ram(), c.prec() >= TLaurent::kInfPrec ? (1LL << 40) : c.prec(), k,
                        prec_u, {c});
}

TLaurent USeries::coeff_at(long long k) const {
    if (k >= pu_) fail("BadArgument", "u-coefficient beyond the known precision");
    if (k < ord_ || k - ord_ >= static_cast<long long>(c_.size())) return TLaurent::exact_zero(F_, ram_);
    return c_[k - ord_];
}

USeries USeries::operator+(const USeries& o) const {
    if (F_ != o.F_ || ram_ != o.ram_) fail("RamificationMismatch", "u-series frames differ");
    long long pu = std::min(pu_, o.pu_);
    long long ord = std::min(std::min(ord_, o.ord_), pu);
    std::vector<TLaurent> cc;
    for (long long k = ord; k < pu; ++k) {
        TLaurent a = (k >= ord_ && k - ord_ < static_cast<long long>(c_.size())) ? c_[k - ord_]
                                                                                 : TLaurent::exact_zero(F_, ram_);
        TLaurent b = (k >= o.ord_ && k - o.ord_ < static_cast<long long>(o.c_.size()))
                         ? o.c_[k - o.ord_]
                         : TLaurent::exact_zero(F_, ram_);
        cc.push_back(a + b);
    }
    return useries_from(F_, ram_, std::min(cprec_, o.cprec_), ord, pu, std::move(cc));
}

USeries USeries::operator-() const {
    USeries r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

USeries USeries::operator-(const USeries& o) const { return *this + (-o); }

USeries USeries::operator*(const USeries& o) const {
    if (F_ != o.F_ || ram_ != o.ram_) fail("RamificationMismatch", "u-series frames differ");
    long long pu = std::min(sat_add_u(pu_, o.ord_), sat_add_u(o.pu_, ord_));
    long long ord = std::min(ord_ + o.ord_, pu);
    std::vector<TLaurent> cc;
    long long len = pu - ord;
    if (len > 0 && !c_.empty() && !o.c_.empty()) {
        cc.assign(len, TLaurent::exact_zero(F_, ram_));
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_exact_zero()) continue;
            long long base = ord_ + static_cast<long long>(i) + o.ord_ - ord;
            if (base >= len) break;
            std::size_t jmax = std::min(o.c_.size(), static_cast<std::size_t>(len - base));
            for (std::size_t j = 0; j < jmax; ++j) {
                if (o.c_[j].is_exact_zero()) continue;
                cc[base + j] += c_[i] * o.c_[j];
            }
        }
    }
    return useries_from(F_, ram_, std::min(cprec_, o.cprec_), ord, pu, std::move(cc));
}

USeries USeries::scaled(const TLaurent& s) const {
    USeries r = *this;
    for (auto& x : r.c_) x = x * s;
    r.normalize();
    return r;
}

USeries USeries::inv() const {
    if (c_.empty()) fail("DivisionByZeroToPrecision", "inverse of a u-series indistinguishable from zero");
    if (!c_[0].certified_nonzero())
        fail("DivisionByZeroToPrecision", "u-series leading coefficient not certified nonzero");
    const long long o = ord_;
    const long long out_pu = pu_ - 2 * o;
    const long long n = pu_ - o;
    std::vector<TLaurent> g(n, TLaurent::exact_zero(F_, ram_));
    TLaurent c0inv = c_[0].inv();
    g[0] = c0inv;
    for (long long k = 1; k < n; ++k) {
        TLaurent acc = TLaurent::exact_zero(F_, ram_);
        long long jmax = std::min<long long>(k, static_cast<long long>(c_.size()) - 1);
        for (long long j = 1; j <= jmax; ++j) {
            if (c_[j].is_exact_zero()) continue;
            acc += c_[j] * g[k - j];
        }
        g[k] = -(c0inv * acc);
    }
    return useries_from(F_, ram_, cprec_, -o, out_pu, std::move(g));
}

USeries USeries::qpow(int k) const {
    if (k == 0) return *this;
    long long step = 1;
    for (int i = 0; i < k; ++i) step = std::min(step * F_->q(), kInfU);
    if (c_.empty()) return useries_from(F_, ram_, cprec_, pu_ * step, std::min(pu_ * step, kInfU), {});
    std::vector<TLaurent> cc(static_cast<std::size_t>((c_.size() - 1) * step + 1),
                             TLaurent::exact_zero(F_, ram_));
    for (std::size_t i = 0; i < c_.size(); ++i) cc[i * step] = c_[i].qpow(k);
    return useries_from(F_, ram_, cprec_, ord_ * step, std::min(sat_add_u(pu_ * step, 0), kInfU),
                        std::move(cc));
}

USeries USeries::truncated_u(long long new_prec_u) const {
    if (new_prec_u >= pu_) return *this;
    USeries r = *this;
    r.pu_ = new_prec_u;
    r.ord_ = std::min(ord_, new_prec_u);
    r.normalize();
    return r;
}

TLaurent USeries::eval(const TLaurent& u0) const {
    if (!u0.certified_nonzero() || u0.val() <= 0)
        fail("BadArgument", "u-series evaluation needs a sample with positive valuation");
    TLaurent acc = TLaurent::exact_zero(F_, ram_);
    for (std::size_t i = c_.size(); i-- > 0;) {
        if (c_[i].is_exact_zero()) continue;
        acc += c_[i] * u0.pow(ord_ + static_cast<long long>(i));
    }
    // the dropped tail is O(u0^prec_u)
    long long tail = pu_ >= kInfU ? TLaurent::kInfPrec : pu_ * u0.val();
    return acc.truncated(std::min(acc.prec(), tail));
}

std::string USeries::str() const {
    std::ostringstream os;
    os << (c_.empty() ? pu_ : ord_) << ':' << pu_ << ":[";
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (i) os << "; ";
        os << c_[i].str();
    }
    os << ']';
    return os.str();
}

USeries merge_stable(const USeries& a, const USeries& b) {
    long long pu = std::min(a.prec_u(), b.prec_u());
    long long ord = std::min(a.ord(), b.ord());
    std::vector<TLaurent> cc;
    for (long long k = ord; k < pu; ++k) {
        TLaurent x = a.coeff_at(k), y = b.coeff_at(k);
        if (x.is_exact_zero() && y.is_exact_zero()) {
            cc.push_back(x);
            continue;
        }
        if (x.is_exact_zero()) x = TLaurent::zero_to_prec(y.field(), y.ram(), y.prec());
        if (y.is_exact_zero()) y = TLaurent::zero_to_prec(x.field(), x.ram(), x.prec());
        long long agree = agreement_exponent(x, y);
        cc.push_back(y.truncated(std::min(agree, y.prec())));
    }
    return useries_from(a.field(), a.ram(), std::min(a.cprec(), b.cprec()), ord, pu, std::move(cc));
}

// --- UContext ----------------------------------------------------------------

UContext UContext::make(const LatticeFr& L, const OmegaPoint& omega_prime, std::optional<LatticeFr> lambda) {
    if (L.rank() < 2) fail("BadArgument", "cusp split data needs rank >= 2");
    if (omega_prime.rank() != L.rank() - 1) fail("BadArgument", "omega' must have rank r-1");
    UContext ctx;
    ctx.L_ = L;
    ctx.lhat_ = L.row(0);
    ctx.h11_ = ctx.lhat_[0];
    // rows 1..r-1 have first coordinate 0 (HNF); drop it
    std::vector<RowF> rows;
    for (int i = 1; i < L.rank(); ++i) {
        RowF r = L.row(i);
        if (!r[0].is_zero()) fail("BadSeries", "HNF basis is not upper triangular");
        rows.push_back(RowF(r.begin() + 1, r.end()));
    }
    ctx.Lp_ = LatticeFr::from_rows(rows);
    ctx.Lam_ = lambda ? *lambda : ctx.Lp_.scaled(ctx.h11_.inv());
    // l_1 Lambda' subset L' for the generator l_1 = h11 of L_1
    if (!ctx.Lp_.contains_lattice(ctx.Lam_.scaled(ctx.h11_)))
        fail("BadArgument", "h11 * Lambda' is not contained in L'");
    ctx.wp_ = omega_prime;
    return ctx;
}

TLaurent u_param(const UContext& ctx, const TLaurent& omega1, int D) {
    TLaurent v = LatticeExp(ctx.Lambda(), ctx.omega_prime(), D).eval(omega1);
    if (!v.certified_nonzero())
        fail("OnLattice", "e_{Lambda' omega'}(omega_1) vanishes to precision; omega_1 is on the lattice");
    return v.inv();
}

long long sigma_pole_order(const UContext& ctx, const PolyA& x) {
    if (x.is_zero()) fail("BadArgument", "sigma needs x != 0");
    RatF l1 = RatF(x) * ctx.h11();
    long long log_index = ctx.Lambda().scaled(l1).index_log_q_in(ctx.Lprime());
    long long idx = 1;
    for (long long i = 0; i < log_index; ++i) idx *= ctx.L().field()->q();
    return idx;
}

namespace {

// all q^dim F_q-combinations of the quotient basis (the transversal of
// L'/l_1 Lambda'), as rows of L'
std::vector<RowF> transversal(const std::vector<RowF>& basis, const Fq* F, int rank) {
    std::vector<RowF> reps;
    RowF zero(rank, RatF::zero(F));
    reps.push_back(zero);
    for (const RowF& b : basis) {
        std::vector<RowF> next;
        next.reserve(reps.size() * F->q());
        for (int c = 0; c < F->q(); ++c) {
            RowF cb = row_scaled(b, RatF::from_fq(F->elem(c)));
            for (const RowF& r : reps) next.push_back(r + cb);
        }
        reps = std::move(next);
    }
    return reps;
}

USeries sigma_series_at(const UContext& ctx, const PolyA& x, long long m_u, const LatticeExp& lam_exp,
                        long long pu) {
    const Fq* F = ctx.L().field();
    const OmegaPoint& wp = ctx.omega_prime();
    RatF l1 = RatF(x) * ctx.h11();
    RatF l1inv = l1.inv();
    RowF vprime(ctx.lhat().begin() + 1, ctx.lhat().end());
    vprime = row_scaled(vprime, RatF(x));

    LatticeFr lam_x = ctx.Lambda().scaled(l1);
    long long index = sigma_pole_order(ctx, x);
    std::vector<RowF> basis = quotient_fq_basis(lam_x, ctx.Lprime());
    std::vector<RowF> reps = transversal(basis, F, ctx.Lprime().rank());

    long long cprec = TLaurent::kInfPrec;
    for (const auto& c : wp.coords) cprec = std::min(cprec, c.prec());

    TLaurent l1_emb = embed_ratf(l1, wp.ram(), cprec);
    // denominator: product over nonzero classes of e_{Lambda'omega'}(l1^{-1} l' omega')
    TLaurent dprod = TLaurent::one(F, wp.ram(), cprec);
    for (const RowF& rep : reps) {
        bool is_zero = true;
        for (const auto& e : rep)
            if (!e.is_zero()) is_zero = false;
        if (is_zero) continue;
        dprod *= lam_exp.eval(pair_row_omega(row_scaled(rep, l1inv), wp));
    }
    USeries s = USeries::monomial(l1_emb * dprod.inv(), -index, pu);
    // numerator: product over all classes of (1 - e_{Lambda'omega'}(l1^{-1}(l'-v')omega') u)
    for (const RowF& rep : reps) {
        RowF arg = rep;
        for (std::size_t i = 0; i < arg.size(); ++i) arg[i] = (arg[i] - vprime[i]) * l1inv;
        TLaurent c = lam_exp.eval(pair_row_omega(arg, wp));
        USeries factor = USeries::constant(TLaurent::one(F, wp.ram(), cprec), pu) -
                         USeries::monomial(c, 1, pu);
        s *= factor;
    }
    return s;
}

// enumerate the nonzero x in A (deg <= bound) whose sigma pole order is <= m_u
std::vector<PolyA> active_lines(const UContext& ctx, long long m_u) {
    const Fq* F = ctx.L().field();
    std::vector<PolyA> xs;
    for (int d = 0;; ++d) {
        if (sigma_pole_order(ctx, PolyA::monomial(F, d, F->one())) > m_u) break;
        std::vector<std::uint16_t> digits(d + 1, 0);
        digits[d] = 1;
        for (;;) {
            PolyA x(F, digits);
            if (x.deg() == d && sigma_pole_order(ctx, x) <= m_u) xs.push_back(x);
            int k = 0;
            while (k <= d && digits[k] == F->q() - 1) digits[k++] = 0;
            if (k > d) break;
            ++digits[k];
        }
    }
    return xs;
}

}  // namespace

USeries sigma_series(const UContext& ctx, const PolyA& x, long long m_u, int D) {
    LatticeExp lam_exp(ctx.Lambda(), ctx.omega_prime(), D);
    long long pu = m_u + 1 + 2 * sigma_pole_order(ctx, x);
    return sigma_series_at(ctx, x, m_u, lam_exp, pu).truncated_u(m_u + 1 + sigma_pole_order(ctx, x));
}

USeries exp_u_series(const UContext& ctx, const TLaurent& ztilde, long long m_u, int D) {
    auto build = [&](int depth) {
        LatticeExp lam_exp(ctx.Lambda(), ctx.omega_prime(), depth);
        const long long pu = m_u + 1;
        USeries e = USeries::constant(ztilde, pu + 2 * m_u);
        for (const PolyA& x : active_lines(ctx, m_u)) {
            long long index = sigma_pole_order(ctx, x);
            USeries sigma = sigma_series_at(ctx, x, m_u, lam_exp, pu + 2 * index);
            USeries one = USeries::constant(TLaurent::one(ctx.L().field(), ctx.omega_prime().ram(),
                                                          sigma.cprec()),
                                            pu);
            e *= one - USeries::constant(ztilde, pu + 2 * index) * sigma.inv();
        }
        return e.truncated_u(pu);
    };
    return merge_stable(build(D - 1), build(D));
}

SkewPoly<USeries> exp_u_poly(const UContext& ctx, int depth, long long m_u, int D) {
    const Fq* F = ctx.L().field();
    const long long pu = m_u + 1;
    auto make_poly = [&](int dd) {
        LatticeExp lam_exp(ctx.Lambda(), ctx.omega_prime(), dd);
        LatticeExp lp_exp(ctx.Lprime(), ctx.omega_prime(), dd);
        long long cprec = TLaurent::kInfPrec;
        for (const auto& c : ctx.omega_prime().coords) cprec = std::min(cprec, c.prec());
        USeries one_u = USeries::constant(TLaurent::one(F, ctx.omega_prime().ram(), cprec), pu + 4 * m_u);
        SubspaceExp<USeries> se(one_u);
        for (int j = 0;; ++j) {
            PolyA tj = PolyA::monomial(F, j, F->one());
            if (sigma_pole_order(ctx, tj) > m_u) break;
            long long index = sigma_pole_order(ctx, tj);
            se.push(sigma_series_at(ctx, tj, m_u, lam_exp, pu + 4 * index));
        }
        SkewPoly<USeries> etilde = se.poly().truncated(depth + 1);
        // compose with the z-series of e_{L'omega'}
        SkewPoly<TLaurent> ep = lp_exp.poly_stabilized().truncated(depth + 1);
        SkewPoly<USeries> ep_u = map_coeffs<USeries>(ep, [&](const TLaurent& c) {
            return USeries::constant(c, pu + 4 * m_u);
        });
        return (etilde * ep_u).truncated(depth + 1);
    };
    SkewPoly<USeries> p0 = make_poly(D);
    SkewPoly<USeries> p1 = make_poly(D - 1);
    std::vector<USeries> merged;
    for (int i = 0; i <= std::max(p0.deg(), p1.deg()); ++i) {
        USeries a = i <= p1.deg() ? p1.coeff_ref(i) : ring_zero(p0.coeff_ref(0));
        USeries b = i <= p0.deg() ? p0.coeff_ref(i) : ring_zero(p0.coeff_ref(0));
        merged.push_back(merge_stable(a, b).truncated_u(pu));
    }
    return SkewPoly<USeries>(std::move(merged));
}

SkewPoly<USeries> psi_u_poly(const UContext& ctx, const PolyA& a, long long m_u, int D) {
    if (a.is_zero()) fail("BadArgument", "psi_a needs a != 0");
    const int r = ctx.rank();
    const int depth = r * std::max(a.deg(), 0);
    const long long pu = m_u + 1;
    if (a.is_constant()) {
        long long cprec = TLaurent::kInfPrec;
        for (const auto& c : ctx.omega_prime().coords) cprec = std::min(cprec, c.prec());
        return SkewPoly<USeries>::constant(
            USeries::constant(embed_poly(a, ctx.omega_prime().ram(), cprec), pu));
    }
    SkewPoly<USeries> beta = exp_u_poly(ctx, depth, m_u, D);
    const USeries& proto = beta.coeff_ref(0);
    long long cprec = proto.cprec();
    TLaurent a_emb = embed_poly(a, ctx.omega_prime().ram(), cprec);
    // psi_{a,k} = beta_k a^(q^k) - sum_{j<k} psi_{a,j} (beta_{k-j})^(q^j)
    std::vector<USeries> psi;
    for (int k = 0; k <= depth; ++k) {
        USeries acc = beta.coeff(k, proto).scaled(a_emb.qpow(k));
        for (int j = 0; j < k; ++j) acc -= psi[j] * beta.coeff(k - j, proto).qpow(j);
        psi.push_back(acc.truncated_u(pu));
    }
    return SkewPoly<USeries>(std::move(psi));
}

USeries coeff_form_u_series(const UContext& ctx, const PolyA& a, int i, long long m_u, int D) {
    if (i < 0 || i > ctx.rank() * std::max(a.deg(), 0))
        fail("BadArgument", "coefficient index out of range");
    SkewPoly<USeries> psi = psi_u_poly(ctx, a, m_u, D);
    return psi.coeff(i, psi.coeff_ref(0));
}

OrderAtInfinity order_at_infinity(const USeries& f) {
    OrderAtInfinity out;
    out.vanish_sprec_below = TLaurent::kInfPrec;
    for (long long k = f.ord(); k < f.prec_u(); ++k) {
        if (k - f.ord() >= static_cast<long long>(f.coeffs().size())) break;
        const TLaurent& c = f.coeffs()[k - f.ord()];
        if (c.certified_nonzero()) {
            out.ord = k;
            return out;
        }
        if (!c.is_exact_zero()) out.vanish_sprec_below = std::min(out.vanish_sprec_below, c.prec());
    }
    fail("ZeroToPrecision", "no u-coefficient is certified nonzero; order undecidable");
}

}  // namespace drinfeld
