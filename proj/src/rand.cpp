#include "drinfeld/rand.hpp"

namespace drinfeld {

PolyA Rng::poly(const Fq* F, int max_deg) {
    std::vector<std::uint16_t> c(max_deg + 1);
    for (auto& d : c) d = static_cast<std::uint16_t>(below(F->q()));
    return PolyA(F, std::move(c));
}

PolyA Rng::poly_nonzero(const Fq* F, int max_deg) {
    for (;;) {
        PolyA p = poly(F, max_deg);
        if (!p.is_zero()) return p;
    }
}

PolyA Rng::poly_monic(const Fq* F, int deg) {
    PolyA p = poly(F, deg - 1 < 0 ? 0 : deg - 1);
    if (deg == 0) return PolyA::one(F);
    return PolyA::monomial(F, deg, F->one()) + (deg >= 1 ? p : PolyA::zero(F));
}

RatF Rng::ratf(const Fq* F, int max_deg) { return RatF(poly(F, max_deg), poly_monic(F, static_cast<int>(below(max_deg + 1)))); }

RatF Rng::ratf_nonzero(const Fq* F, int max_deg) {
    for (;;) {
        RatF r = ratf(F, max_deg);
        if (!r.is_zero()) return r;
    }
}

MatF Rng::gl_matrix(const Fq* F, int r, int steps, int max_deg) {
    MatF m = MatF::identity(r, F);
    for (int s = 0; s < steps; ++s) {
        int kind = static_cast<int>(below(3));
        if (kind == 0 && r >= 2) {
            int i = static_cast<int>(below(r)), j = static_cast<int>(below(r));
            if (i == j) j = (j + 1) % r;
            MatF e = MatF::identity(r, F);
            e.at(i, j) = RatF(poly(F, max_deg));
            m = m * e;
        } else if (kind == 1) {
            MatF d = MatF::identity(r, F);
            for (int i = 0; i < r; ++i) d.at(i, i) = RatF::from_fq(fq_nonzero(F));
            m = m * d;
        } else if (r >= 2) {
            int i = static_cast<int>(below(r - 1));
            MatF p = MatF::identity(r, F);
            p.at(i, i) = RatF::zero(F);
            p.at(i + 1, i + 1) = RatF::zero(F);
            p.at(i, i + 1) = RatF::one(F);
            p.at(i + 1, i) = RatF::one(F);
            m = m * p;
        }
    }
    return m;
}

MatF Rng::principal_matrix(const Fq* F, int r, const PolyA& N, int steps, int max_deg) {
    MatF m = MatF::identity(r, F);
    for (int s = 0; s < steps; ++s) {
        int i = static_cast<int>(below(r)), j = static_cast<int>(below(r));
        if (i == j) j = (j + 1) % r;
        MatF e = MatF::identity(r, F);
        e.at(i, j) = RatF(N * poly(F, max_deg));
        m = m * e;
    }
    return m;
}

TLaurent Rng::tlaurent_unit(const Fq* F, int ram, long long val, long long prec, int tail_digits) {
    std::vector<std::uint16_t> digits(1 + tail_digits);
    digits[0] = fq_nonzero(F).v;
    for (int i = 1; i <= tail_digits; ++i) digits[i] = static_cast<std::uint16_t>(below(F->q()));
    return TLaurent::from_digits(F, ram, val, std::move(digits), prec);
}

OmegaPoint Rng::omega(const Fq* F, int r, int ram, long long prec, int tail_digits) {
    if (ram < r) fail("BadArgument", "need ram >= r for a certified omega");
    std::vector<TLaurent> coords;
    for (int i = 0; i + 1 < r; ++i) {
        // valuation -(ram + r - 1 - i): distinct nonzero residues mod ram
        coords.push_back(tlaurent_unit(F, ram, -(ram + r - 1 - i), prec, tail_digits));
    }
    coords.push_back(TLaurent::one(F, ram, prec));
    OmegaPoint w = make_omega(std::move(coords));
    if (!w.certified) fail("BadSeries", "random omega failed its own certificate");
    return w;
}

LatticeFr Rng::lattice(const Fq* F, int r, int max_deg) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        MatF m(r, r, F);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j)
                m.at(i, j) = RatF(poly(F, max_deg), below(2) ? poly_monic(F, 1) : PolyA::one(F));
        if (!m.det().is_zero()) return LatticeFr::from_rows(m);
    }
    fail("BadSeries", "could not sample an invertible lattice basis");
}

}  // namespace drinfeld
