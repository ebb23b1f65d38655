#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "drinfeld/lattice.hpp"

namespace drinfeld {

// Arithmetic subgroups of GL_r(F) with decidable membership: the full
// GL_r(A), the principal congruence subgroup Gamma(N), and the conjugates
// Gamma_g = GL_r(F) cap g K(N) g^{-1}.
class ArithSubgroup {
public:
    enum class Kind { FullGL, Principal, Conjugate };

    static ArithSubgroup full_gl(const Fq* F, int r);
    static ArithSubgroup principal(const Fq* F, int r, PolyA N);
    static ArithSubgroup conjugate(AdelicApprox g);

    Kind kind() const noexcept { return kind_; }
    int rank() const noexcept { return r_; }
    const Fq* field() const noexcept { return F_; }
    const PolyA& level() const noexcept { return N_; }  // one() for FullGL
    const AdelicApprox& adelic() const noexcept { return g_; }

    bool contains(const MatF& gamma) const;

private:
    Kind kind_ = Kind::FullGL;
    int r_ = 0;
    const Fq* F_ = nullptr;
    PolyA N_;
    AdelicApprox g_;
};

// x integral with det in F_q^x (i.e. x in GL_r(A) viewed in GL_r(Ahat)),
// optionally x == Id mod N: membership of an F-matrix in the adelic K(N).
bool in_K(const MatF& x, const PolyA& N);

struct CosetSet {
    std::vector<MatF> reps;      // representatives of Gamma' \ Gamma' delta Gamma
    bool complete_certified = false;
};

// Representatives of Gamma' \ Gamma' delta Gamma. For full-GL pairs the HNF
// enumerator is complete by elementary divisor theory; for principal levels
// a closure search is certified against the index [Gamma : Gamma cap
// delta^{-1} Gamma' delta] computed in a finite quotient.
CosetSet coset_reps(const ArithSubgroup& gamma_prime, const MatF& delta, const ArithSubgroup& gamma,
                    long long budget = 1 << 21);

// sampled modular forms: evaluators over Omega^r
using FormEvaluator = std::function<TLaurent(const OmegaPoint&)>;

// (f |_k gamma)(omega) = j(gamma, omega)^{-k} f(gamma(omega))
FormEvaluator slash(FormEvaluator f, MatF gamma, int k);

// T_delta f = sum over coset reps of f|_k gamma
FormEvaluator hecke_apply(FormEvaluator f, const MatF& delta, const ArithSubgroup& gamma_prime,
                          const ArithSubgroup& gamma, int k);

// number of connected components: |F^x \ (A^f)^x / det K(N)| = |(A/N)^x| / (q-1)
// for nonconstant N, and 1 at full level. Computed by explicit enumeration of
// determinant classes and cross-checked against the counting formula.
long long component_count(const PolyA& N, int r);

// canonical label of the class of d in (A/N)^x / F_q^x
PolyA det_class_label(const PolyA& d, const PolyA& N);

// --- composition of Hecke operators ---------------------------------------------

struct ComposeTerm {
    MatF rep;                       // a representative h''
    std::vector<PolyA> divisors;    // its elementary divisors (class invariant at full level)
    long long multiplicity = 0;     // index formula [K cap h''^-1 K h'' : triple intersection]
    long long convolution = 0;      // independent collision count #{(u,v): alpha_u beta_v K = h'' K}
    long long coset_count = 0;      // |K h'' K / K|
};

struct ComposeResult {
    std::vector<ComposeTerm> terms;
    long long mass_lhs = 0;  // |KhK/K| * |Kh'K/K|
    long long mass_rhs = 0;  // sum multiplicity * coset_count
};

// Decomposition of T_h' o T_h at level K(N) (N constant: full GL_r(Ahat)).
// h and h' are integral global matrices. Exhaustive in finite quotients,
// guarded by `budget` (QuotientTooLarge beyond it).
ComposeResult hecke_compose_check(const MatF& h, const MatF& hp, const PolyA& N, long long budget = 1 << 21);

// right cosets K h K / K as F-matrices (column-HNF at full level; unimodular
// lifts of a finite quotient at principal level, r = 2)
std::vector<MatF> right_coset_reps_KhK(const MatF& h, const PolyA& N, long long budget = 1 << 21);

// --- block decomposition of algebraic Hecke operators -----------------------------

struct HeckeBlock {
    int source = 0;                 // index i
    int target = 0;                 // the unique i'
    std::vector<MatF> deltas;       // double-coset representatives, when enumerated
    bool deltas_enumerated = false;
};

// reps must represent the component double quotient (validated against
// component_count and pairwise-distinct determinant classes).
std::vector<HeckeBlock> hecke_blocks(const AdelicApprox& h, const PolyA& N,
                                     const std::vector<AdelicApprox>& reps, long long budget = 1 << 21);

// unimodular congruence lift: X in GL_2(A) with X == xbar mod M and
// det X = detc in F_q^x; used to turn finite-quotient cosets into matrices
MatF lift_unimodular_2x2(const MatA& xbar, const PolyA& M, FqElem detc);

}  // namespace drinfeld
