#pragma once

#include <optional>
#include <vector>

#include "drinfeld/mat.hpp"
#include "drinfeld/module.hpp"
#include "drinfeld/tlaurent.hpp"

namespace drinfeld {

// Finitely generated projective (= free, class number one) A-submodule
// L subset F^r of rank r, rows spanning L over A. Canonical storage: monic
// denominator d and row-HNF integral basis B with gcd(content B, d) = 1;
// the lattice is rowspan_A(B) / d. Two lattices are equal iff their stored
// forms are equal.
class LatticeFr {
public:
    LatticeFr() = default;

    static LatticeFr standard(const Fq* F, int r);
    static LatticeFr from_rows(const MatF& rows);           // rows span L
    static LatticeFr from_rows(std::vector<RowF> rows);     // any count >= r of spanning rows

    int rank() const noexcept { return basis_.rows(); }
    const Fq* field() const noexcept { return basis_.field(); }
    const PolyA& den() const noexcept { return den_; }
    const MatA& basis_int() const noexcept { return basis_; }
    MatF basisF() const;
    RowF row(int i) const;

    bool operator==(const LatticeFr& o) const { return den_ == o.den_ && basis_ == o.basis_; }
    bool operator!=(const LatticeFr& o) const { return !(*this == o); }

    bool contains(const RowF& v) const;
    bool contains_lattice(const LatticeFr& sub) const;
    // log_q [sup : *this]; requires *this subset sup
    long long index_log_q_in(const LatticeFr& sup) const;

    LatticeFr scaled(const RatF& c) const;
    // right action v -> v g on row vectors
    LatticeFr transformed(const MatF& g) const;
    LatticeFr sum(const LatticeFr& o) const;

private:
    PolyA den_;
    MatA basis_;
};

// F_q-basis of sub\sup quotient: rows of sup representing a basis of
// sup/sub as an F_q-vector space (dimension log_q of the index).
std::vector<RowF> quotient_fq_basis(const LatticeFr& sub, const LatticeFr& sup);

// Point of Omega^r: column vector of TLaurent with last coordinate 1.
// The separation certificate witnesses F_oo-linear independence at working
// precision: all coordinate valuations are certified and pairwise distinct
// modulo 1 (in units of the place at infinity), which forces any nontrivial
// F_oo-combination to have a unique minimal term.
struct OmegaPoint {
    std::vector<TLaurent> coords;
    bool certified = false;

    int rank() const noexcept { return static_cast<int>(coords.size()); }
    int ram() const noexcept { return coords.empty() ? 1 : coords[0].ram(); }
    const Fq* field() const noexcept { return coords.empty() ? nullptr : coords[0].field(); }
};

// Builds a point, normalizing nothing: the last coordinate must already be
// the unit series. The certificate is computed; failing it only flags the
// point unverified.
OmegaPoint make_omega(std::vector<TLaurent> coords);

// last coordinate of gamma.omega and the renormalized point
struct GammaAction {
    OmegaPoint omega;  // gamma(omega), last coordinate 1
    TLaurent j;        // j(gamma, omega)
};
GammaAction gamma_action(const MatF& gamma, const OmegaPoint& omega);

// row * omega as a TLaurent (entries of the row embedded at omega's frame)
TLaurent pair_row_omega(const RowF& row, const OmegaPoint& omega);

// Adelic matrix at finite level: global part times an integral class
// k mod N. Invariants: det g_glob != 0 and k invertible mod N.
struct AdelicApprox {
    MatF g_glob;
    MatA k_modN;
    PolyA N;
};
AdelicApprox make_adelic(MatF g_glob, MatA k_modN, PolyA N);
AdelicApprox adelic_identity(const Fq* F, int r, const PolyA& N);

// L_g = A^r g_glob^{-1} in canonical form (the k part is integral and does
// not move the lattice).
LatticeFr lattice_Lg(const AdelicApprox& g);

// gamma in Gamma_g = GL_r(F) cap g K(N) g^{-1}
bool gamma_g_member(const MatF& gamma, const AdelicApprox& g);

// --- lattice exponential -----------------------------------------------------
//
// e_{L omega}(z) = z prod_{l in L, deg <= D} (1 - z / (l omega)), realized as
// the F_q-subspace exponential of the degree-truncated shells. Evaluations
// compare the last three shell depths and truncate the result to the
// precision certified stable (two successive increments unchanged).
class LatticeExp {
public:
    // requires omega certified unless allow_unverified
    LatticeExp(const LatticeFr& L, const OmegaPoint& omega, int D, bool allow_unverified = false);

    int D() const noexcept { return D_; }
    int rank() const noexcept { return r_; }

    // stabilized value of e_{L omega}(z); throws Unstable when not even the
    // leading digit survives the certificate
    TLaurent eval(const TLaurent& z) const;
    // raw value at a given shell depth, no certificate
    TLaurent eval_raw(const TLaurent& z, int depth) const;

    // skew polynomial of the depth-D truncation, coefficientwise stabilized
    SkewPoly<TLaurent> poly_stabilized() const;

    const SubspaceExp<TLaurent>& ladder() const noexcept { return se_; }

private:
    int r_ = 0;
    int D_ = 0;
    SubspaceExp<TLaurent> se_;
    std::vector<int> shell_dims_;  // cumulative ladder size per shell depth

    int steps_at(int depth) const;
};

// e_{L omega}(z) with stabilization certificate (one-shot convenience)
TLaurent lattice_exp(const LatticeFr& L, const OmegaPoint& omega, const TLaurent& z, int D);

// psi^{L omega}_a = a * e_{e_{L omega}(a^{-1} L / L)}; deg_tau = r deg a
SkewPoly<TLaurent> module_from_lattice(const LatticeFr& L, const OmegaPoint& omega, const PolyA& a, int D);

// mu^L_l(omega) = e_{L omega}(l omega)
TLaurent torsion_section(const LatticeFr& L, const OmegaPoint& omega, const RowF& ell, int D);

// e_{e_{L1 omega}(L2 omega)} for L1 subset L2: intertwines psi^{L1} -> psi^{L2},
// derivative 1, deg_tau = log_q [L2 : L1]
SkewPoly<TLaurent> inclusion_isogeny(const LatticeFr& L1, const LatticeFr& L2, const OmegaPoint& omega, int D);

}  // namespace drinfeld
