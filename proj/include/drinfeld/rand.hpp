#pragma once

#include <random>

#include "drinfeld/lattice.hpp"

namespace drinfeld {

// Seeded generators for the randomized property suites. Everything routed
// through one engine so verify runs are reproducible from the seed alone.
class Rng {
public:
    explicit Rng(unsigned long long seed) : eng_(seed) {}

    long long below(long long n) { return static_cast<long long>(eng_() % static_cast<unsigned long long>(n)); }
    FqElem fq(const Fq* F) { return F->elem(static_cast<int>(below(F->q()))); }
    FqElem fq_nonzero(const Fq* F) { return F->elem(1 + static_cast<int>(below(F->q() - 1))); }

    PolyA poly(const Fq* F, int max_deg);
    PolyA poly_nonzero(const Fq* F, int max_deg);
    PolyA poly_monic(const Fq* F, int deg);
    RatF ratf(const Fq* F, int max_deg);          // possibly zero
    RatF ratf_nonzero(const Fq* F, int max_deg);

    // random element of GL_r(A): a short product of elementary matrices,
    // diagonal units and a transposition
    MatF gl_matrix(const Fq* F, int r, int steps = 4, int max_deg = 1);
    // random element of Gamma(N)
    MatF principal_matrix(const Fq* F, int r, const PolyA& N, int steps = 3, int max_deg = 1);

    // certified point of Omega^r at ramification ram >= r
    OmegaPoint omega(const Fq* F, int r, int ram, long long prec, int tail_digits = 4);

    // random full lattice in F^r with small entries
    LatticeFr lattice(const Fq* F, int r, int max_deg = 1);

    TLaurent tlaurent_unit(const Fq* F, int ram, long long val, long long prec, int tail_digits = 4);

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

}  // namespace drinfeld
