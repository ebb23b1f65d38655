#pragma once

#include <functional>
#include <string>
#include <vector>

#include "drinfeld/poly.hpp"
#include "drinfeld/skew.hpp"

namespace drinfeld {

// Drinfeld A-module over the coefficient ring R, A = F_q[t]. Since t
// generates A, the module is determined by phi_t. The generalised variant
// relaxes the top-degree condition and admits rank drop.
template <class R>
struct DrinfeldModule {
    int rank = 0;  // rank bound r
    SkewPoly<R> phi_t;
    bool generalised = false;
};

// Validates conditions (a)/(b) resp. (a)/(c) and returns the module.
//   DerivativeMismatch  derivative of phi_t differs from the image of t
//   RankViolation       non-generalised and deg phi_t != r, or leading
//                       coefficient not certified invertible
//   Degenerate          generalised and phi_t has no tau^i term with i > 0
template <class R>
DrinfeldModule<R> make_module(SkewPoly<R> phi_t, int r, bool generalised) {
    if (phi_t.is_zero()) fail("Degenerate", "phi_t is zero");
    const R& proto = phi_t.coeff_ref(0);
    if (definitely_unequal(phi_t.derivative(proto), t_image(proto)))
        fail("DerivativeMismatch", "derivative of phi_t is not the structure image of t");
    if (!generalised) {
        if (r < 1 || phi_t.deg() != r)
            fail("RankViolation", "deg_tau phi_t = " + std::to_string(phi_t.deg()) +
                                      " but rank " + std::to_string(r) + " was requested");
        if (!certified_nonzero(phi_t.coeff_ref(r)))
            fail("RankViolation", "leading coefficient of phi_t is not certified invertible");
    } else {
        if (r < 1 || phi_t.deg() > r)
            fail("RankViolation", "deg_tau phi_t exceeds the rank bound");
        bool has_pos = false;
        for (int i = 1; i <= phi_t.deg(); ++i)
            if (!is_exact_zero(phi_t.coeff_ref(i))) has_pos = true;
        if (!has_pos) fail("Degenerate", "phi_t has no tau^i term with i > 0");
    }
    return DrinfeldModule<R>{r, std::move(phi_t), generalised};
}

// phi_a for a in A, by Horner in the skew ring: the unique F_q-algebra
// homomorphism extending t -> phi_t.
template <class R>
SkewPoly<R> act(const DrinfeldModule<R>& m, const PolyA& a) {
    const R& proto = m.phi_t.coeff_ref(0);
    SkewPoly<R> acc;  // zero
    for (int i = a.deg(); i >= 0; --i) {
        acc = acc * m.phi_t;
        FqElem c = a.coeff(i);
        if (!c.is_zero()) acc = acc + SkewPoly<R>::constant(from_fq(proto, c));
    }
    return acc;
}

// The exponential of the module as a truncated F_q-linear power series
// e(z) = sum e_i z^(q^i), e_0 = 1, solved degree by degree from
// phi_t(e(z)) = e(tz):   (t^(q^i) - t) e_i = sum_{j>=1} phi_{t,j} (e_{i-j})^(q^j).
template <class R>
struct ExpSeries {
    std::vector<R> e;  // e[0..depth]
    int depth() const { return static_cast<int>(e.size()) - 1; }
};

template <class R>
ExpSeries<R> exp_series(const DrinfeldModule<R>& m, int depth) {
    const R& proto = m.phi_t.coeff_ref(0);
    const R t = t_image(proto);
    ExpSeries<R> s;
    s.e.push_back(ring_one(proto));
    for (int i = 1; i <= depth; ++i) {
        R rhs = ring_zero(proto);
        for (int j = 1; j <= std::min(i, m.phi_t.deg()); ++j)
            if (!is_exact_zero(m.phi_t.coeff_ref(j))) rhs = rhs + m.phi_t.coeff_ref(j) * qpow(s.e[i - j], j);
        R denom = qpow(t, i) - t;
        if (!certified_nonzero(denom)) fail("InsufficientPrecision", "t^(q^i) - t lost all digits");
        s.e.push_back(rhs * ring_inv(denom));
    }
    return s;
}

// Compositional inverse of the exponential: log(e(z)) = z termwise.
template <class R>
ExpSeries<R> log_series(const DrinfeldModule<R>& m, int depth) {
    ExpSeries<R> e = exp_series(m, depth);
    const R& proto = m.phi_t.coeff_ref(0);
    ExpSeries<R> l;
    l.e.push_back(ring_one(proto));
    for (int k = 1; k <= depth; ++k) {
        R acc = ring_zero(proto);
        for (int i = 0; i < k; ++i) acc = acc + l.e[i] * qpow(e.e[k - i], i);
        l.e.push_back(-acc);
    }
    return l;
}

// Compose two F_q-linear series truncated at the given depth:
// (f o g)_k = sum_{i+j=k} f_i (g_j)^(q^i).
template <class R>
std::vector<R> compose_series(const std::vector<R>& f, const std::vector<R>& g, int depth, const R& proto) {
    std::vector<R> r(depth + 1, ring_zero(proto));
    for (int i = 0; i < static_cast<int>(f.size()) && i <= depth; ++i)
        for (int j = 0; j + i <= depth && j < static_cast<int>(g.size()); ++j)
            r[i + j] = r[i + j] + f[i] * qpow(g[j], i);
    return r;
}

// --- F_q-subspace exponentials ----------------------------------------------
//
// e_H(z) = z prod_{h in H \ 0} (1 - z/h) for a finite F_q-subspace H given by
// a basis of values. Built by the ladder
//     e_{V + F_q h} = e_V - a^(1-q) (e_V)^q,   a = e_V(h),
// which keeps derivative 1 at every step. The ladder values a_k are kept so
// single evaluations cost O(dim) ring operations.
template <class R>
class SubspaceExp {
public:
    explicit SubspaceExp(const R& proto) : proto_(proto) {}

    int dim() const { return static_cast<int>(lad_.size()); }

    // extend the subspace by one basis value
    void push(const R& h) {
        R a = eval(h);
        if (!certified_nonzero(a))
            fail("NotASubspace", "basis value already lies in the subspace (to precision)");
        lad_.push_back({a, ring_inv(qpow(a, 1)) * a});  // a^(1-q) = a / a^q
    }

    // e_V(z) through the first `steps` ladder rungs (default: all)
    R eval(const R& z, int steps = -1) const {
        if (steps < 0) steps = dim();
        R v = z;
        for (int k = 0; k < steps; ++k) v = v - lad_[k].a1mq * qpow(v, 1);
        return v;
    }

    // the skew polynomial of the subspace spanned by the first `steps`
    // basis values (default: all); tau-degree = steps
    SkewPoly<R> poly(int steps = -1) const {
        if (steps < 0) steps = dim();
        SkewPoly<R> e = SkewPoly<R>::identity(proto_);
        for (int k = 0; k < steps; ++k) e = e - (SkewPoly<R>::tau(proto_) * e).scaled(lad_[k].a1mq);
        return e;
    }

    const R& ladder_value(int k) const { return lad_[k].a; }

private:
    struct Rung {
        R a;      // e_{V_k}(h_{k+1})
        R a1mq;   // a^(1-q)
    };
    R proto_;
    std::vector<Rung> lad_;
};

// --- Isogenies from kernels ---------------------------------------------------
//
// H must be a phi_t-stable F_q-subspace containing 0, listed exhaustively.
// Returns e_H (derivative 1, kernel exactly H) and the target module with
// psi_t e_H = e_H phi_t.
template <class R>
struct Isogeny {
    SkewPoly<R> e;                 // the isogeny polynomial
    DrinfeldModule<R> target;
};

template <class R>
Isogeny<R> isogeny_from_kernel(const DrinfeldModule<R>& m, const std::vector<R>& H) {
    const R& proto = m.phi_t.coeff_ref(0);
    // subspace checks: 0 in H, closed under + and F_q scaling, |H| = q^k.
    // Exhaustive; kernels live in exact rings (RatF or a splitting QuotF).
    const Fq* F = ring_field(proto);
    auto index_of = [&](const R& x) -> int {
        for (std::size_t i = 0; i < H.size(); ++i)
            if (H[i] == x) return static_cast<int>(i);
        return -1;
    };
    bool has_zero = false;
    for (const auto& h : H)
        if (is_exact_zero(h)) has_zero = true;
    if (!has_zero) fail("NotASubspace", "kernel does not contain 0");
    std::size_t size = H.size();
    std::size_t qs = 1;
    int dim = 0;
    while (qs < size) {
        qs *= F->q();
        ++dim;
    }
    if (qs != size) fail("NotASubspace", "kernel size is not a power of q");
    for (const auto& a : H)
        for (const auto& b : H)
            if (index_of(a + b) < 0) fail("NotASubspace", "kernel not closed under addition");
    for (const auto& a : H)
        for (int c = 0; c < F->q(); ++c)
            if (index_of(a * from_fq(proto, F->elem(c))) < 0)
                fail("NotASubspace", "kernel not closed under F_q scaling");
    for (const auto& h : H)
        if (index_of(m.phi_t(h)) < 0) fail("NotStable", "kernel is not phi_t-stable");

    // greedy basis extraction
    SubspaceExp<R> se(proto);
    for (const auto& h : H) {
        if (is_exact_zero(h)) continue;
        R v = se.eval(h);
        if (certified_nonzero(v)) se.push(h);
    }
    if (se.dim() != dim) fail("NotASubspace", "kernel basis extraction failed");
    SkewPoly<R> eH = se.poly();

    auto [quot, rem] = right_divide(eH * m.phi_t, eH);
    if (!rem.definitely_equal_zero()) fail("NotStable", "psi_t e_H = e_H phi_t has a nonzero remainder");
    DrinfeldModule<R> target = make_module(quot, m.rank, m.generalised);
    return {std::move(eH), std::move(target)};
}

// --- Level structures -----------------------------------------------------------
//
// A full level-N structure on a rank-r module: generators ell_i of
// N^{-1}A^r / A^r together with image points in an extension ring S. The
// check validates that images are N-torsion and that the induced A/N-module
// map is injective; over an integral domain injectivity forces surjectivity
// onto phi[N] since phi_N has at most q^(r deg N) roots.
template <class S>
struct LevelStructure {
    PolyA N;
    std::vector<std::vector<RatF>> domain;  // rows in F^r, generators of N^{-1}A^r/A^r
    std::vector<S> images;
};

struct LevelCheck {
    bool ok = false;
    std::string reason;  // "ok" or a reason code
};

template <class S, class Lift>
LevelCheck check_level_structure(const DrinfeldModule<RatF>& m, const LevelStructure<S>& ls, Lift&& lift) {
    const Fq* F = ls.N.field();
    const int r = m.rank;
    if (ls.N.is_zero()) return {false, "ZeroLevel"};
    if (ls.N.is_constant()) return {true, "ok"};  // unit ideal: trivial structure
    if (static_cast<int>(ls.domain.size()) != r || ls.images.size() != ls.domain.size())
        return {false, "DomainSizeMismatch"};
    // domain rows must generate: N * ell_i integral and det(N ell) a unit mod N
    MatA dm(r, r, F);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            RatF x = ls.domain[i][j] * RatF(ls.N);
            if (!x.is_integral()) return {false, "DomainNotNTorsion"};
            dm.at(i, j) = x.num();
        }
    if (!gcd(dm.det() % ls.N, ls.N).is_one()) return {false, "DomainNotGenerating"};

    // images killed by phi_N
    SkewPoly<S> phiN = map_coeffs<S>(act(m, ls.N), lift);
    for (const auto& P : ls.images)
        if (!is_exact_zero(phiN(P))) return {false, "ImageNotNTorsion"};

    // injectivity of (A/N)^r -> phi[N], (a_i) -> sum phi_{a_i}(P_i)
    const long long count = [&] {
        long long c = 1;
        for (int i = 0; i < r * ls.N.deg(); ++i) c *= F->q();
        return c;
    }();
    std::vector<PolyA> tuple(r, PolyA::zero(F));
    std::vector<S> values;
    values.reserve(count);
    std::function<bool(int)> walk = [&](int pos) -> bool {
        if (pos == r) {
            S acc = ring_zero(ls.images[0]);
            for (int i = 0; i < r; ++i) acc = acc + map_coeffs<S>(act(m, tuple[i]), lift)(ls.images[i]);
            bool triv = true;
            for (int i = 0; i < r; ++i)
                if (!tuple[i].is_zero()) triv = false;
            if (!triv && is_exact_zero(acc)) return false;
            values.push_back(acc);
            return true;
        }
        // iterate tuple[pos] over representatives mod N
        std::vector<std::uint16_t> digits(ls.N.deg(), 0);
        for (;;) {
            tuple[pos] = PolyA(F, digits);
            if (!walk(pos + 1)) return false;
            int k = 0;
            while (k < ls.N.deg() && digits[k] == F->q() - 1) digits[k++] = 0;
            if (k == ls.N.deg()) break;
            ++digits[k];
        }
        return true;
    };
    if (!walk(0)) return {false, "NotInjective"};
    for (std::size_t i = 0; i < values.size(); ++i)
        for (std::size_t j = i + 1; j < values.size(); ++j)
            if (values[i] == values[j]) return {false, "NotInjective"};
    return {true, "ok"};
}

}  // namespace drinfeld
