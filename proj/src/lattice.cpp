#include "drinfeld/lattice.hpp"

#include <algorithm>
#include <set>

namespace drinfeld {

LatticeFr LatticeFr::standard(const Fq* F, int r) {
    LatticeFr L;
    L.den_ = PolyA::one(F);
    L.basis_ = MatA::identity(r, F);
    return L;
}

LatticeFr LatticeFr::from_rows(const MatF& rows) {
    std::vector<RowF> rr;
    for (int i = 0; i < rows.rows(); ++i) {
        RowF r;
        for (int j = 0; j < rows.cols(); ++j) r.push_back(rows.at(i, j));
        rr.push_back(std::move(r));
    }
    return from_rows(std::move(rr));
}

LatticeFr LatticeFr::from_rows(std::vector<RowF> rows) {
    if (rows.empty()) fail("BadArgument", "lattice needs at least one row");
    const int r = static_cast<int>(rows[0].size());
    const Fq* F = rows[0][0].field();
    MatF m(static_cast<int>(rows.size()), r, F);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < r; ++j) m.at(static_cast<int>(i), j) = rows[i][j];
    auto [d, entries] = m.cleared();
    MatA mi(m.rows(), r, F);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < r; ++j) mi.at(i, j) = entries[static_cast<std::size_t>(i) * r + j];
    HnfResult h = hnf_rows(mi);
    if (h.rank != r) fail("SingularMatrix", "rows do not span a rank-r lattice");
    LatticeFr L;
    L.basis_ = MatA(r, r, F);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) L.basis_.at(i, j) = h.h.at(i, j);
    // strip common content of (basis, den)
    PolyA g = gcd(content(L.basis_), d);
    if (!g.is_one()) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) L.basis_.at(i, j) = L.basis_.at(i, j) / g;
        L.den_ = (d / g).monic();
    } else {
        L.den_ = d.monic();
    }
    return L;
}

MatF LatticeFr::basisF() const {
    MatF m(rank(), rank(), field());
    for (int i = 0; i < rank(); ++i)
        for (int j = 0; j < rank(); ++j) m.at(i, j) = RatF(basis_.at(i, j), den_);
    return m;
}

RowF LatticeFr::row(int i) const {
    RowF r;
    for (int j = 0; j < rank(); ++j) r.push_back(RatF(basis_.at(i, j), den_));
    return r;
}

bool LatticeFr::contains(const RowF& v) const {
    // solve x * B = den * v over A by back substitution on the HNF basis
    const int r = rank();
    RowF w(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) w[j] = v[j] * RatF(den_);
    std::vector<RatF> x(r, RatF::zero(field()));
    for (int i = 0; i < r; ++i) {
        // pivot of row i sits at column i (full-rank HNF is upper triangular)
        RatF rem = w[i];
        for (int k = 0; k < i; ++k) rem -= x[k] * RatF(basis_.at(k, i));
        RatF xi = rem / RatF(basis_.at(i, i));
        if (!xi.is_integral()) return false;
        x[i] = xi;
    }
    for (int j = 0; j < r; ++j) {
        RatF acc = RatF::zero(field());
        for (int k = 0; k < r; ++k) acc += x[k] * RatF(basis_.at(k, j));
        if (acc != w[j]) return false;
    }
    return true;
}

bool LatticeFr::contains_lattice(const LatticeFr& sub) const {
    for (int i = 0; i < sub.rank(); ++i)
        if (!contains(sub.row(i))) return false;
    return true;
}

long long LatticeFr::index_log_q_in(const LatticeFr& sup) const {
    if (!sup.contains_lattice(*this)) fail("NotASublattice", "index of a non-sublattice");
    MatF x = basisF() * sup.basisF().inverse();
    RatF d = x.det();
    if (!d.is_integral()) fail("NotASublattice", "non-integral transition determinant");
    return d.num().deg();
}

LatticeFr LatticeFr::scaled(const RatF& c) const {
    if (c.is_zero()) fail("BadArgument", "scaling a lattice by zero");
    std::vector<RowF> rows;
    for (int i = 0; i < rank(); ++i) rows.push_back(row_scaled(row(i), c));
    return from_rows(std::move(rows));
}

LatticeFr LatticeFr::transformed(const MatF& g) const {
    std::vector<RowF> rows;
    for (int i = 0; i < rank(); ++i) rows.push_back(row(i) * g);
    return from_rows(std::move(rows));
}

LatticeFr LatticeFr::sum(const LatticeFr& o) const {
    std::vector<RowF> rows;
    for (int i = 0; i < rank(); ++i) rows.push_back(row(i));
    for (int i = 0; i < o.rank(); ++i) rows.push_back(o.row(i));
    return from_rows(std::move(rows));
}

std::vector<RowF> quotient_fq_basis(const LatticeFr& sub, const LatticeFr& sup) {
    const Fq* F = sup.field();
    MatF bsub = sub.basisF(), bsup = sup.basisF();
    MatF x = bsub * bsup.inverse();
    if (!x.is_integral()) fail("NotASublattice", "first lattice is not contained in the second");
    MatA xi(x.rows(), x.cols(), F);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) xi.at(i, j) = x.at(i, j).num();
    HnfResult h = hnf_rows(xi);
    std::vector<RowF> basis;
    for (int i = 0; i < h.h.rows(); ++i) {
        int d = h.h.at(i, i).deg();
        for (int k = 0; k < d; ++k) {
            // t^k e_i in sup coordinates
            RowF v = row_scaled(sup.row(i), RatF(PolyA::monomial(F, k, F->one())));
            basis.push_back(std::move(v));
        }
    }
    return basis;
}

OmegaPoint make_omega(std::vector<TLaurent> coords) {
    if (coords.empty()) fail("BadArgument", "empty omega point");
    OmegaPoint w;
    w.coords = std::move(coords);
    const TLaurent& last = w.coords.back();
    if (!last.certified_nonzero() || last.val() != 0 || last.lead_coeff().v != 1)
        fail("BadArgument", "omega points must have last coordinate normalized to 1");
    for (std::size_t i = 0; i + 1 < last.digits().size(); ++i)
        if (last.digits()[i + 1] != 0) fail("BadArgument", "omega points must have last coordinate normalized to 1");
    // separation certificate: certified valuations, pairwise distinct mod ram
    const int ram = w.ram();
    bool ok = true;
    std::set<long long> residues;
    for (const auto& c : w.coords) {
        if (c.ram() != ram) fail("RamificationMismatch", "omega coordinates at mixed ramification");
        if (!c.certified_nonzero()) {
            ok = false;
            break;
        }
        long long res = ((c.val() % ram) + ram) % ram;
        if (!residues.insert(res).second) {
            ok = false;
            break;
        }
    }
    w.certified = ok;
    return w;
}

TLaurent pair_row_omega(const RowF& row, const OmegaPoint& omega) {
    if (static_cast<int>(row.size()) != omega.rank()) fail("BadArgument", "row/omega rank mismatch");
    long long prec = TLaurent::kInfPrec;
    for (const auto& c : omega.coords) prec = std::min(prec, c.prec());
    TLaurent acc = TLaurent::exact_zero(omega.field(), omega.ram());
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (row[i].is_zero()) continue;
        acc += embed_ratf(row[i], omega.ram(), prec) * omega.coords[i];
    }
    return acc;
}

GammaAction gamma_action(const MatF& gamma, const OmegaPoint& omega) {
    const int r = omega.rank();
    if (gamma.rows() != r || gamma.cols() != r) fail("BadArgument", "gamma/omega rank mismatch");
    std::vector<TLaurent> w(r, TLaurent::exact_zero(omega.field(), omega.ram()));
    long long prec = TLaurent::kInfPrec;
    for (const auto& c : omega.coords) prec = std::min(prec, c.prec());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (gamma.at(i, j).is_zero()) continue;
            w[i] += embed_ratf(gamma.at(i, j), omega.ram(), prec) * omega.coords[j];
        }
    TLaurent j = w[r - 1];
    if (!j.certified_nonzero())
        fail("BoundaryPoint", "last coordinate of gamma.omega vanishes to precision");
    TLaurent jinv = j.inv();
    std::vector<TLaurent> coords;
    coords.reserve(r);
    for (int i = 0; i + 1 < r; ++i) coords.push_back(w[i] * jinv);
    coords.push_back(TLaurent::one(omega.field(), omega.ram(), (w[r - 1] * jinv).prec()));
    GammaAction act;
    act.omega = make_omega(std::move(coords));
    act.j = j;
    return act;
}

AdelicApprox make_adelic(MatF g_glob, MatA k_modN, PolyA N) {
    if (g_glob.det().is_zero()) fail("SingularMatrix", "adelic global part is singular");
    if (N.is_zero()) fail("BadArgument", "level must be a nonzero ideal");
    for (int i = 0; i < k_modN.rows(); ++i)
        for (int j = 0; j < k_modN.cols(); ++j) k_modN.at(i, j) = k_modN.at(i, j) % N;
    if (!N.is_constant() && !gcd(k_modN.det() % N, N.monic()).is_one())
        fail("SingularMatrix", "adelic class is not invertible mod N");
    return AdelicApprox{std::move(g_glob), std::move(k_modN), N.monic()};
}

AdelicApprox adelic_identity(const Fq* F, int r, const PolyA& N) {
    return make_adelic(MatF::identity(r, F), MatA::identity(r, F), N);
}

LatticeFr lattice_Lg(const AdelicApprox& g) { return LatticeFr::standard(g.g_glob.field(), g.g_glob.rows()).transformed(g.g_glob.inverse()); }

bool gamma_g_member(const MatF& gamma, const AdelicApprox& g) {
    const Fq* F = gamma.field();
    if (gamma.det().is_zero()) return false;
    MatF m = g.g_glob.inverse() * gamma * g.g_glob;
    if (!m.is_integral()) return false;
    RatF d = m.det();
    if (!d.is_integral() || d.num().deg() != 0) return false;  // det in F_q^x
    if (g.N.is_constant()) return true;
    // twist by the integral class and compare with Id mod N
    MatA mi(m.rows(), m.cols(), F);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) mi.at(i, j) = m.at(i, j).num() % g.N;
    // k^{-1} m k  ==  Id mod N, i.e. m k == k mod N
    MatA lhs = mi * g.k_modN;
    for (int i = 0; i < lhs.rows(); ++i)
        for (int j = 0; j < lhs.cols(); ++j)
            if (!((lhs.at(i, j) - g.k_modN.at(i, j)) % g.N).is_zero()) return false;
    return true;
}

// --- LatticeExp ------------------------------------------------------------------

LatticeExp::LatticeExp(const LatticeFr& L, const OmegaPoint& omega, int D, bool allow_unverified)
    : r_(L.rank()), D_(D), se_([&] {
          long long prec = TLaurent::kInfPrec;
          for (const auto& c : omega.coords) prec = std::min(prec, c.prec());
          return TLaurent::one(omega.field(), omega.ram(), prec);
      }()) {
    if (L.rank() != 0 && L.rank() != omega.rank())
        fail("BadArgument", "lattice rank and omega rank differ");
    if (!omega.certified && !allow_unverified)
        fail("BadArgument", "omega point carries no separation certificate");
    if (D < 1) fail("BadArgument", "degree bound must be >= 1");
    const Fq* F = omega.field();
    for (int d = 0; d <= D; ++d) {
        for (int i = 0; i < r_; ++i) {
            RowF v = row_scaled(L.row(i), RatF(PolyA::monomial(F, d, F->one())));
            try {
                se_.push(pair_row_omega(v, omega));
            } catch (const Error& e) {
                fail("InsufficientPrecision", "lattice shell value lost all digits at degree " +
                                                  std::to_string(d) + " (" + std::string(e.what()) + ")");
            }
        }
        shell_dims_.push_back(se_.dim());
    }
}

int LatticeExp::steps_at(int depth) const {
    if (depth < 0) return 0;
    return shell_dims_[std::min<std::size_t>(depth, shell_dims_.size() - 1)];
}

TLaurent LatticeExp::eval_raw(const TLaurent& z, int depth) const { return se_.eval(z, steps_at(depth)); }

TLaurent LatticeExp::eval(const TLaurent& z) const {
    if (se_.dim() == 0) return z;  // empty product
    TLaurent v2 = eval_raw(z, D_ - 2), v1 = eval_raw(z, D_ - 1), v0 = eval_raw(z, D_);
    long long stable = std::min(agreement_exponent(v2, v1), agreement_exponent(v1, v0));
    if (v0.certified_nonzero() && stable <= v0.val())
        fail("Unstable", "lattice exponential did not stabilize at D = " + std::to_string(D_) +
                             "; raise the degree bound");
    return v0.truncated(std::min(stable, v0.prec()));
}

SkewPoly<TLaurent> LatticeExp::poly_stabilized() const {
    SkewPoly<TLaurent> p0 = se_.poly();
    SkewPoly<TLaurent> p1 = se_.poly(steps_at(D_ - 1));
    SkewPoly<TLaurent> p2 = se_.poly(steps_at(D_ - 2));
    std::vector<TLaurent> out;
    for (int i = 0; i <= p0.deg(); ++i) {
        TLaurent c0 = p0.coeff_ref(i);
        TLaurent c1 = i <= p1.deg() ? p1.coeff_ref(i) : TLaurent::zero_to_prec(c0.field(), c0.ram(), c0.val());
        TLaurent c2 = i <= p2.deg() ? p2.coeff_ref(i) : TLaurent::zero_to_prec(c0.field(), c0.ram(), c0.val());
        long long stable = std::min(agreement_exponent(c2, c1), agreement_exponent(c1, c0));
        out.push_back(c0.truncated(std::min(stable, c0.prec())));
    }
    return SkewPoly<TLaurent>(std::move(out));
}

TLaurent lattice_exp(const LatticeFr& L, const OmegaPoint& omega, const TLaurent& z, int D) {
    return LatticeExp(L, omega, D).eval(z);
}

// F_q-basis of a^{-1}L / L: the rows (t^j / a) b_i, j < deg a.
static std::vector<RowF> torsion_basis(const LatticeFr& L, const PolyA& a) {
    const Fq* F = L.field();
    std::vector<RowF> basis;
    RatF ainv = RatF(a).inv();
    for (int j = 0; j < a.deg(); ++j)
        for (int i = 0; i < L.rank(); ++i)
            basis.push_back(row_scaled(L.row(i), RatF(PolyA::monomial(F, j, F->one())) * ainv));
    return basis;
}

SkewPoly<TLaurent> module_from_lattice(const LatticeFr& L, const OmegaPoint& omega, const PolyA& a, int D) {
    if (a.is_zero()) fail("BadArgument", "psi_a needs a != 0");
    const Fq* F = L.field();
    long long prec = TLaurent::kInfPrec;
    for (const auto& c : omega.coords) prec = std::min(prec, c.prec());
    TLaurent a_emb = embed_poly(a, omega.ram(), prec);
    if (a.is_constant()) return SkewPoly<TLaurent>::constant(a_emb);
    LatticeExp ee(L, omega, D);
    SubspaceExp<TLaurent> se(TLaurent::one(F, omega.ram(), prec));
    for (const RowF& v : torsion_basis(L, a)) se.push(ee.eval(pair_row_omega(v, omega)));
    return se.poly().scaled(a_emb);
}

TLaurent torsion_section(const LatticeFr& L, const OmegaPoint& omega, const RowF& ell, int D) {
    return LatticeExp(L, omega, D).eval(pair_row_omega(ell, omega));
}

SkewPoly<TLaurent> inclusion_isogeny(const LatticeFr& L1, const LatticeFr& L2, const OmegaPoint& omega, int D) {
    if (!L2.contains_lattice(L1)) fail("NotASublattice", "inclusion isogeny needs L1 subset L2");
    const Fq* F = L1.field();
    long long prec = TLaurent::kInfPrec;
    for (const auto& c : omega.coords) prec = std::min(prec, c.prec());
    LatticeExp e1(L1, omega, D);
    SubspaceExp<TLaurent> se(TLaurent::one(F, omega.ram(), prec));
    for (const RowF& v : quotient_fq_basis(L1, L2)) se.push(e1.eval(pair_row_omega(v, omega)));
    return se.poly();
}

}  // namespace drinfeld
