#include "drinfeld/hecke.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace drinfeld {

namespace {

// --- small helpers over A and A/M ------------------------------------------------

bool is_unit_constant(const RatF& d) { return d.is_integral() && !d.is_zero() && d.num().deg() == 0; }

PolyA mod(const PolyA& a, const PolyA& M) { return a % M; }

MatA mat_mod(const MatA& x, const PolyA& M) {
    MatA r = x;
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j) r.at(i, j) = mod(r.at(i, j), M);
    return r;
}

MatA mat_mulmod(const MatA& a, const MatA& b, const PolyA& M) { return mat_mod(a * b, M); }

PolyA inv_mod(const PolyA& a, const PolyA& M) {
    XgcdResult x = xgcd(mod(a, M), M);
    if (!x.g.is_one()) fail("SingularMatrix", "polynomial not invertible mod M");
    return mod(x.u, M);
}

MatA adjugate(const MatA& x) {
    const int n = x.rows();
    const Fq* F = x.field();
    MatA adj(n, n, F);
    if (n == 1) {
        adj.at(0, 0) = PolyA::one(F);
        return adj;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            MatA sub(n - 1, n - 1, F);
            for (int a = 0, ai = 0; a < n; ++a) {
                if (a == i) continue;
                for (int b = 0, bj = 0; b < n; ++b) {
                    if (b == j) continue;
                    sub.at(ai, bj) = x.at(a, b);
                    ++bj;
                }
                ++ai;
            }
            PolyA c = sub.det();
            adj.at(j, i) = ((i + j) % 2 == 0) ? c : -c;
        }
    return adj;
}

MatA mat_inv_mod(const MatA& x, const PolyA& M) {
    PolyA d = mod(x.det(), M);
    PolyA di = inv_mod(d, M);
    MatA adj = adjugate(x);
    MatA r(x.rows(), x.cols(), x.field());
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) r.at(i, j) = mod(adj.at(i, j) * di, M);
    return r;
}

std::string encode_mat(const MatA& x) {
    std::ostringstream os;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) os << x.at(i, j).str() << '|';
    return os.str();
}

// iterate all polynomials of degree < d (ascending digit counter); fn returns
// false to abort
template <class Fn>
bool for_each_poly_below(const Fq* F, int d, Fn&& fn) {
    std::vector<std::uint16_t> digits(std::max(d, 0), 0);
    for (;;) {
        if (!fn(PolyA(F, digits))) return false;
        int k = 0;
        while (k < d && digits[k] == F->q() - 1) digits[k++] = 0;
        if (k >= d) return true;
        ++digits[k];
    }
}

// iterate all r x r matrices over A with entries of degree < d
template <class Fn>
void for_each_matrix_below(const Fq* F, int r, int d, long long budget, Fn&& fn) {
    const long long q = F->q();
    long long total = 1;
    for (int i = 0; i < r * r * d; ++i) {
        total *= q;
        if (total > budget) fail("QuotientTooLarge", "finite quotient enumeration exceeds the budget");
    }
    std::vector<PolyA> entries(static_cast<std::size_t>(r) * r, PolyA::zero(F));
    std::function<void(int)> walk = [&](int pos) {
        if (pos == r * r) {
            MatA m(r, r, F);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) m.at(i, j) = entries[static_cast<std::size_t>(i) * r + j];
            fn(m);
            return;
        }
        for_each_poly_below(F, d, [&](const PolyA& p) {
            entries[pos] = p;
            walk(pos + 1);
            return true;
        });
    };
    walk(0);
}

// det(x) mod M is a nonzero constant
bool det_unit_mod(const MatA& x, const PolyA& M) {
    PolyA d = mod(x.det(), M);
    return !d.is_zero() && d.deg() == 0;
}

// h^{-1} x h integral and == Id mod N (the det condition is omitted: on
// residues of actual K-elements it is automatic, and this keeps the test
// independent of the choice of lift)
bool conj_lands_in_K(const MatF& hinv, const MatF& h, const MatF& x, const PolyA& N) {
    MatF w = hinv * x * h;
    if (!w.is_integral()) return false;
    if (N.is_constant()) return true;
    for (int i = 0; i < w.rows(); ++i)
        for (int j = 0; j < w.cols(); ++j) {
            PolyA e = w.at(i, j).num();
            if (i == j) e = e - PolyA::one(N.field());
            if (!mod(e, N).is_zero()) return false;
        }
    return true;
}

// clear an F-matrix to sigma * (integral primitive): delta = sigma * M0
std::pair<RatF, MatA> clear_primitive(const MatF& delta) {
    auto [den, entries] = delta.cleared();
    MatA m(delta.rows(), delta.cols(), delta.field());
    for (int i = 0; i < delta.rows(); ++i)
        for (int j = 0; j < delta.cols(); ++j) m.at(i, j) = entries[static_cast<std::size_t>(i) * delta.cols() + j];
    PolyA g = content(m);
    if (!g.is_one()) {
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) = m.at(i, j) / g;
    }
    return {RatF(g, den), m};
}

std::vector<PolyA> monic_divisors(const PolyA& d) {
    const Fq* F = d.field();
    std::vector<PolyA> out;
    for (int k = 0; k <= d.deg(); ++k) {
        for_each_poly_below(F, k, [&](const PolyA& low) {
            PolyA cand = low + PolyA::monomial(F, k, F->one());
            if (cand.divides(d)) out.push_back(cand);
            return true;
        });
    }
    return out;
}

// all upper-triangular HNF matrices with the given monic diagonal product
void enumerate_hnf(const Fq* F, int r, const PolyA& det, std::vector<MatA>& out) {
    std::vector<PolyA> divisors = monic_divisors(det);
    std::vector<PolyA> diag(r, PolyA::one(F));
    std::function<void(int, PolyA)> pick = [&](int i, PolyA rest) {
        if (i == r - 1) {
            diag[i] = rest;
            // fill above-diagonal entries (i<j), reduced mod diag[j]
            MatA m(r, r, F);
            for (int k = 0; k < r; ++k) m.at(k, k) = diag[k];
            std::vector<std::pair<int, int>> slots;
            for (int a = 0; a < r; ++a)
                for (int b = a + 1; b < r; ++b) slots.push_back({a, b});
            std::function<void(std::size_t)> fill = [&](std::size_t s) {
                if (s == slots.size()) {
                    out.push_back(m);
                    return;
                }
                const int a = slots[s].first;
                const int b = slots[s].second;
                for_each_poly_below(F, diag[b].deg(), [&](const PolyA& p) {
                    m.at(a, b) = p;
                    fill(s + 1);
                    return true;
                });
            };
            fill(0);
            return;
        }
        for (const PolyA& dv : divisors) {
            if (!dv.divides(rest)) continue;
            diag[i] = dv;
            pick(i + 1, rest / dv);
        }
    };
    pick(0, det.monic());
    std::sort(out.begin(), out.end(), [](const MatA& a, const MatA& b) { return encode_mat(a) < encode_mat(b); });
}

}  // namespace

// --- ArithSubgroup -----------------------------------------------------------------

ArithSubgroup ArithSubgroup::full_gl(const Fq* F, int r) {
    ArithSubgroup g;
    g.kind_ = Kind::FullGL;
    g.F_ = F;
    g.r_ = r;
    g.N_ = PolyA::one(F);
    return g;
}

ArithSubgroup ArithSubgroup::principal(const Fq* F, int r, PolyA N) {
    if (N.is_zero()) fail("BadArgument", "principal level must be nonzero");
    ArithSubgroup g;
    g.kind_ = N.is_constant() ? Kind::FullGL : Kind::Principal;
    g.F_ = F;
    g.r_ = r;
    g.N_ = N.is_constant() ? PolyA::one(F) : N.monic();
    return g;
}

ArithSubgroup ArithSubgroup::conjugate(AdelicApprox g0) {
    ArithSubgroup g;
    g.kind_ = Kind::Conjugate;
    g.F_ = g0.g_glob.field();
    g.r_ = g0.g_glob.rows();
    g.N_ = g0.N;
    g.g_ = std::move(g0);
    return g;
}

bool in_K(const MatF& x, const PolyA& N) {
    if (!x.is_integral()) return false;
    if (!is_unit_constant(x.det())) return false;
    if (N.is_constant()) return true;
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j) {
            PolyA e = x.at(i, j).num();
            if (i == j) e = e - PolyA::one(N.field());
            if (!mod(e, N).is_zero()) return false;
        }
    return true;
}

bool ArithSubgroup::contains(const MatF& gamma) const {
    switch (kind_) {
        case Kind::FullGL:
            return in_K(gamma, PolyA::one(F_));
        case Kind::Principal:
            return in_K(gamma, N_);
        case Kind::Conjugate:
            return gamma_g_member(gamma, g_);
    }
    return false;
}

// --- coset enumeration ---------------------------------------------------------------

namespace {

// canonical label of Gamma' M for the BFS dedup; M given as sigma * integral
struct CosetLabel {
    std::string key;
};

CosetLabel label_of(const ArithSubgroup& gp, const MatF& m) {
    auto [sigma, m0] = clear_primitive(m);
    HnfResult h = hnf_rows(m0);
    std::ostringstream os;
    os << sigma.str() << '#' << encode_mat(h.h);
    if (gp.kind() == ArithSubgroup::Kind::Principal) {
        // U^{-1} = M0 H^{-1} in GL_r(A), taken mod N
        MatF uinv = m0.over_F() * h.h.over_F().inverse();
        MatA ui(m.rows(), m.cols(), m.field());
        for (int i = 0; i < m.rows(); ++i)
            for (int j = 0; j < m.cols(); ++j) ui.at(i, j) = mod(uinv.at(i, j).num(), gp.level());
        os << '#' << encode_mat(ui);
    }
    return {os.str()};
}

std::vector<MatF> group_generators(const ArithSubgroup& g, int max_tdeg) {
    const Fq* F = g.field();
    const int r = g.rank();
    std::vector<MatF> gens;
    auto elem = [&](int i, int j, const PolyA& a) {
        MatF m = MatF::identity(r, F);
        m.at(i, j) = RatF(a);
        return m;
    };
    if (g.kind() == ArithSubgroup::Kind::FullGL) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;
                for (int k = 0; k <= max_tdeg; ++k)
                    for (int c = 1; c < F->q(); ++c)
                        gens.push_back(elem(i, j, PolyA::monomial(F, k, F->elem(c))));
            }
        if (F->q() > 2) {
            MatF d = MatF::identity(r, F);
            d.at(0, 0) = RatF::from_fq(F->gen());
            gens.push_back(d);
        }
        if (r >= 2) {
            MatF p(r, r, F);
            for (int i = 2; i < r; ++i) p.at(i, i) = RatF::one(F);
            p.at(0, 1) = RatF::one(F);
            p.at(1, 0) = RatF::one(F);
            gens.push_back(p);
        }
    } else if (g.kind() == ArithSubgroup::Kind::Principal) {
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;
                for (int k = 0; k <= max_tdeg; ++k)
                    for (int c = 1; c < F->q(); ++c)
                        gens.push_back(elem(i, j, g.level() * PolyA::monomial(F, k, F->elem(c))));
            }
    } else {
        fail("EnumeratorUnsupported", "no generator set for conjugate subgroups");
    }
    return gens;
}

// [Gamma : Gamma cap delta^{-1} Gamma' delta] by exhaustive counting in a
// finite quotient; nullopt when the quotient would exceed the budget
std::optional<long long> expected_coset_count(const ArithSubgroup& gp, const MatF& delta,
                                              const ArithSubgroup& g, long long budget) {
    if (g.kind() == ArithSubgroup::Kind::Conjugate || gp.kind() == ArithSubgroup::Kind::Conjugate)
        return std::nullopt;
    const Fq* F = g.field();
    const int r = g.rank();
    auto [sigma, m0] = clear_primitive(delta);
    PolyA dd = m0.det().monic();
    PolyA M = (g.level() * gp.level() * dd * dd).monic();
    MatF d_F = delta;
    MatF d_inv = delta.inverse();
    long long total = 0, pass = 0;
    const PolyA& Ng = g.level();
    int free_deg = M.deg() - (g.kind() == ArithSubgroup::Kind::Principal ? Ng.deg() : 0);
    long long card = 1;
    for (int i = 0; i < r * r * free_deg; ++i) {
        card *= F->q();
        if (card > budget) return std::nullopt;
    }
    auto consider = [&](const MatA& x) {
        if (!det_unit_mod(x, M)) return;
        if (g.kind() == ArithSubgroup::Kind::Principal) {
            PolyA dconst = mod(x.det(), M);
            if (!(dconst - PolyA::one(F)).is_zero()) return;
        }
        ++total;
        if (conj_lands_in_K(d_F, d_inv, x.over_F(), gp.level())) ++pass;  // delta x delta^{-1} in Gamma'
    };
    if (g.kind() == ArithSubgroup::Kind::Principal) {
        for_each_matrix_below(F, r, free_deg, budget, [&](const MatA& y) {
            MatA x = MatA::identity(r, F);
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j) x.at(i, j) = mod(x.at(i, j) + Ng * y.at(i, j), M);
            consider(x);
        });
    } else {
        for_each_matrix_below(F, r, M.deg(), budget, [&](const MatA& x) { consider(x); });
    }
    if (pass == 0 || total % pass != 0) fail("EnumeratorUnsupported", "index certificate failed");
    return total / pass;
}

}  // namespace

CosetSet coset_reps(const ArithSubgroup& gp, const MatF& delta, const ArithSubgroup& g, long long budget) {
    const Fq* F = g.field();
    const int r = g.rank();
    if (delta.det().is_zero()) fail("SingularMatrix", "delta must be invertible");

    // scalar delta with Gamma' == Gamma: a single coset
    bool is_scalar = true;
    for (int i = 0; i < r && is_scalar; ++i)
        for (int j = 0; j < r && is_scalar; ++j) {
            if (i == j && delta.at(i, j) != delta.at(0, 0)) is_scalar = false;
            if (i != j && !delta.at(i, j).is_zero()) is_scalar = false;
        }
    bool same = gp.kind() == g.kind() && gp.level() == g.level();
    if (same && gp.kind() == ArithSubgroup::Kind::Conjugate)
        same = gp.adelic().g_glob == g.adelic().g_glob &&
               mat_mod(gp.adelic().k_modN, gp.level()) == mat_mod(g.adelic().k_modN, g.level());
    if (is_scalar && same) return {{delta}, true};

    if (gp.kind() == ArithSubgroup::Kind::FullGL && g.kind() == ArithSubgroup::Kind::FullGL) {
        // complete by the theory of elementary divisors over A
        auto [sigma, m0] = clear_primitive(delta);
        std::vector<PolyA> target = elementary_divisors(m0);
        std::vector<MatA> hnfs;
        enumerate_hnf(F, r, m0.det().monic(), hnfs);
        CosetSet out;
        out.complete_certified = true;
        for (const MatA& hmat : hnfs) {
            if (elementary_divisors(hmat) != target) continue;
            out.reps.push_back(hmat.over_F().scaled(sigma));
        }
        return out;
    }

    if (gp.kind() == ArithSubgroup::Kind::Conjugate || g.kind() == ArithSubgroup::Kind::Conjugate)
        fail("EnumeratorUnsupported", "conjugate-subgroup cosets only for scalar delta");

    // closure search with an index certificate
    std::optional<long long> expected = expected_coset_count(gp, delta, g, budget);
    for (int max_tdeg = std::max(2, delta.rows()); max_tdeg <= 6; ++max_tdeg) {
        std::vector<MatF> gens = group_generators(g, max_tdeg);
        std::map<std::string, int> seen;
        std::vector<MatF> reps;
        std::vector<MatF> queue{delta};
        seen[label_of(gp, delta).key] = 0;
        reps.push_back(delta);
        while (!queue.empty()) {
            MatF m = queue.back();
            queue.pop_back();
            for (const MatF& gen : gens) {
                MatF next = m * gen;
                std::string key = label_of(gp, next).key;
                if (seen.count(key)) continue;
                seen[key] = static_cast<int>(reps.size());
                reps.push_back(next);
                queue.push_back(next);
                if (static_cast<long long>(reps.size()) > budget)
                    fail("QuotientTooLarge", "coset search exceeded the budget");
            }
        }
        if (!expected || *expected == static_cast<long long>(reps.size()))
            return {std::move(reps), expected.has_value()};
    }
    fail("EnumeratorUnsupported", "coset search did not close at the certified index");
}

// --- slash action and T_delta ----------------------------------------------------------

FormEvaluator slash(FormEvaluator f, MatF gamma, int k) {
    return [f = std::move(f), gamma = std::move(gamma), k](const OmegaPoint& w) {
        GammaAction act = gamma_action(gamma, w);
        return act.j.pow(-k) * f(act.omega);
    };
}

FormEvaluator hecke_apply(FormEvaluator f, const MatF& delta, const ArithSubgroup& gp,
                          const ArithSubgroup& g, int k) {
    CosetSet cs = coset_reps(gp, delta, g);
    return [f = std::move(f), cs = std::move(cs), k](const OmegaPoint& w) {
        TLaurent acc = TLaurent::exact_zero(w.field(), w.ram());
        for (const MatF& gamma : cs.reps) {
            GammaAction act = gamma_action(gamma, w);
            acc += act.j.pow(-k) * f(act.omega);
        }
        return acc;
    };
}

// --- component counting ------------------------------------------------------------------

PolyA det_class_label(const PolyA& d, const PolyA& N) {
    const Fq* F = d.field();
    if (N.is_constant()) return PolyA::one(F);
    PolyA best = mod(d, N);
    for (int c = 1; c < F->q(); ++c) {
        PolyA cand = mod(d * F->elem(c), N);
        if (cand < best) best = cand;
    }
    return best;
}

long long component_count(const PolyA& N, int r) {
    (void)r;  // determinant classes do not depend on r (det is surjective)
    const Fq* F = N.field();
    if (N.is_constant()) return 1;
    long long units = 0;
    std::set<std::string> classes;
    for_each_poly_below(F, N.deg(), [&](const PolyA& x) {
        if (gcd(x, N).is_one()) {
            ++units;
            classes.insert(det_class_label(x, N).str());
        }
        return true;
    });
    long long by_formula = units / (F->q() - 1);
    if (units % (F->q() - 1) != 0 || by_formula != static_cast<long long>(classes.size()))
        fail("BadSeries", "component count enumeration disagrees with |(A/N)^x|/(q-1)");
    return by_formula;
}

// --- unimodular lifts ----------------------------------------------------------------------

MatF lift_unimodular_2x2(const MatA& xbar, const PolyA& M, FqElem detc) {
    const Fq* F = M.field();
    if (xbar.rows() != 2 || xbar.cols() != 2) fail("BadArgument", "2x2 lift only");
    PolyA a = mod(xbar.at(0, 0), M), b = mod(xbar.at(0, 1), M);
    PolyA c = mod(xbar.at(1, 0), M), d = mod(xbar.at(1, 1), M);
    // choose a' == a, c' == c (mod M) with gcd(a', c') = 1
    PolyA ap = a, cp = c;
    bool found = false;
    for (int dega = 0; dega <= M.deg() + 2 && !found; ++dega) {
        for_each_poly_below(F, dega + 1, [&](const PolyA& s) {
            PolyA cand_a = a + M * s;
            if (cand_a.is_zero()) return true;
            if (gcd(cand_a, c).is_one()) {
                ap = cand_a;
                cp = c;
                found = true;
                return false;
            }
            if (gcd(cand_a, c + M).is_one()) {
                ap = cand_a;
                cp = c + M;
                found = true;
                return false;
            }
            return true;
        });
    }
    if (!found) fail("EnumeratorUnsupported", "no coprime congruence lift found");
    // solve a' dd - b' cp = detc with b' == b, dd == d (mod M):
    // detc - (a' d - b cp) = M * g, then a' y - cp x = g gives
    // dd = d + M y, b' = b + M x.
    PolyA lhs0 = ap * d - b * cp;
    PolyA diff = PolyA::constant(detc) - lhs0;
    auto [quo, rem] = diff.divmod(M);
    if (!rem.is_zero()) fail("BadArgument", "lift target determinant incompatible with the residue");
    XgcdResult xg = xgcd(ap, cp);  // u a' + v cp = 1
    PolyA y = xg.u * quo;
    PolyA x = -(xg.v * quo);
    // reduce y mod cp to keep degrees small; adjust x accordingly
    if (!cp.is_zero() && cp.deg() >= 0 && !y.is_zero() && y.deg() >= cp.deg()) {
        auto [k, y2] = y.divmod(cp);
        y = y2;
        x = x - k * ap;
    }
    PolyA dd = d + M * y;
    PolyA bp = b + M * x;
    MatF out(2, 2, F);
    out.at(0, 0) = RatF(ap);
    out.at(0, 1) = RatF(bp);
    out.at(1, 0) = RatF(cp);
    out.at(1, 1) = RatF(dd);
    RatF dt = out.det();
    if (!(dt == RatF::from_fq(detc))) fail("BadSeries", "unimodular lift determinant check failed");
    return out;
}

// --- Hecke composition ------------------------------------------------------------------------

namespace {

// residues mod M of K(N)-elements: x == Id mod N, det(x) a unit constant
// mod M (and == 1 mod N automatically); enumerates their fixed lifts
template <class Fn>
void for_each_K_residue(const Fq* F, int r, const PolyA& N, const PolyA& M, long long budget, Fn&& fn) {
    if (N.is_constant()) {
        for_each_matrix_below(F, r, M.deg(), budget, [&](const MatA& x) {
            if (det_unit_mod(x, M)) fn(x);
        });
        return;
    }
    int free_deg = M.deg() - N.deg();
    for_each_matrix_below(F, r, free_deg, budget, [&](const MatA& y) {
        MatA x = MatA::identity(r, F);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) x.at(i, j) = mod(x.at(i, j) + N * y.at(i, j), M);
        if (det_unit_mod(x, M)) fn(x);
    });
}

// [K : K cap h K h^{-1}] (= |KhK/K|) by residue counting mod N * det(h)^2
long long coset_count_KhK(const MatF& h, const PolyA& N, long long budget) {
    const Fq* F = h.field();
    const int r = h.rows();
    auto [sigma, m0] = clear_primitive(h);
    PolyA dd = m0.det().monic();
    PolyA M = (N * dd * dd).monic();
    if (M.deg() == 0) return 1;  // h is unimodular at full level
    MatF h0 = m0.over_F(), h0inv = h0.inverse();
    long long total = 0, pass = 0;
    for_each_K_residue(F, r, N, M, budget, [&](const MatA& x) {
        ++total;
        if (conj_lands_in_K(h0inv, h0, x.over_F(), N)) ++pass;  // h^{-1} x h in K
    });
    if (pass == 0 || total % pass != 0) fail("BadSeries", "coset count certificate failed");
    return total / pass;
}

}  // namespace

std::vector<MatF> right_coset_reps_KhK(const MatF& h, const PolyA& N, long long budget) {
    const Fq* F = h.field();
    const int r = h.rows();
    auto [sigma, m0] = clear_primitive(h);
    if (N.is_constant()) {
        // column-style HNF transversal: transpose, enumerate row HNFs, transpose back
        std::vector<PolyA> target = elementary_divisors(m0);
        std::vector<MatA> hnfs;
        enumerate_hnf(F, r, m0.det().monic(), hnfs);
        std::vector<MatF> out;
        for (const MatA& hm : hnfs) {
            if (elementary_divisors(hm) != target) continue;
            out.push_back(hm.over_F().transpose().scaled(sigma));
        }
        return out;
    }
    if (r != 2) fail("EnumeratorUnsupported", "principal-level right cosets implemented for r = 2");
    // representatives kappa h with kappa over K/(K cap h K h^{-1})
    PolyA dd = m0.det().monic();
    PolyA M = (N * dd * dd).monic();
    MatF h0 = m0.over_F(), h0inv = h0.inverse();
    std::vector<MatA> kappas;
    for_each_K_residue(F, r, N, M, budget, [&](const MatA& x) {
        for (const MatA& seen : kappas) {
            MatA u = mat_mulmod(x, mat_inv_mod(seen, M), M);
            if (conj_lands_in_K(h0inv, h0, u.over_F(), N)) return;  // same coset
        }
        kappas.push_back(x);
    });
    std::vector<MatF> out;
    for (const MatA& k : kappas) {
        MatF klift = lift_unimodular_2x2(k, M, F->one());
        out.push_back((klift * h0).scaled(sigma));
    }
    return out;
}

ComposeResult hecke_compose_check(const MatF& h, const MatF& hp, const PolyA& N, long long budget) {
    const Fq* F = h.field();
    const int r = h.rows();
    if (!h.is_integral() || !hp.is_integral())
        fail("BadArgument", "composition expects integral global parts");
    std::vector<MatF> alphas = right_coset_reps_KhK(h, N, budget);
    std::vector<MatF> betas = right_coset_reps_KhK(hp, N, budget);

    // classify the products alpha beta into K h'' K classes
    auto same_double_coset = [&](const MatF& x, const MatF& y) {
        auto [sx, mx] = clear_primitive(x);
        auto [sy, my] = clear_primitive(y);
        if (!(sx == sy)) return false;
        if (elementary_divisors(mx) != elementary_divisors(my)) return false;
        if (N.is_constant()) return true;  // divisors classify GL(Ahat) double cosets
        // y in K x K  <=>  alpha^{-1} y in K for some right coset alpha of KxK
        for (const MatF& a : right_coset_reps_KhK(x, N, budget))
            if (in_K(a.inverse() * y, N)) return true;
        return false;
    };

    ComposeResult out;
    out.mass_lhs = static_cast<long long>(alphas.size()) * static_cast<long long>(betas.size());
    std::vector<MatF> class_reps;
    std::vector<long long> conv;
    for (const MatF& a : alphas)
        for (const MatF& b : betas) {
            MatF prod = a * b;
            bool hit = false;
            for (std::size_t c = 0; c < class_reps.size(); ++c)
                if (same_double_coset(class_reps[c], prod)) {
                    hit = true;
                    break;
                }
            if (!hit) {
                class_reps.push_back(prod);
                conv.push_back(0);
            }
        }
    // convolution multiplicities: collisions on the distinguished coset h''K
    for (std::size_t c = 0; c < class_reps.size(); ++c) {
        const MatF& hpp = class_reps[c];
        MatF hpp_inv = hpp.inverse();
        for (const MatF& a : alphas)
            for (const MatF& b : betas)
                if (in_K(hpp_inv * (a * b), N)) ++conv[c];
    }
    // index-formula multiplicities
    for (std::size_t c = 0; c < class_reps.size(); ++c) {
        const MatF& hpp = class_reps[c];
        auto [sh, mh] = clear_primitive(h);
        auto [shp, mhpp] = clear_primitive(hpp);
        // the two conjugation conditions are determined mod N det(h)^2 and
        // mod N det(h'')^2 respectively; enumerate modulo the coarser common
        // modulus
        PolyA dh = mh.det().monic(), dpp = mhpp.det().monic();
        PolyA M = lcm((N * dh * dh).monic(), (N * dpp * dpp).monic());
        MatF h0 = mh.over_F(), h0i = h0.inverse();
        MatF g0 = mhpp.over_F(), g0i = g0.inverse();
        long long big = 1, small = 1;
        if (M.deg() > 0) {
            big = small = 0;
            for_each_K_residue(F, r, N, M, budget, [&](const MatA& x) {
                MatF xf = x.over_F();
                bool in_hpp = conj_lands_in_K(g0i, g0, xf, N);  // h''^{-1} x h'' in K
                if (!in_hpp) return;
                ++big;
                if (conj_lands_in_K(h0i, h0, xf, N)) ++small;  // also h^{-1} x h in K
            });
        }
        if (small == 0 || big % small != 0) fail("BadSeries", "multiplicity index is not integral");
        ComposeTerm term;
        term.rep = hpp;
        // divisors of the full matrix, content included
        MatA hpp_int(hpp.rows(), hpp.cols(), F);
        for (int i = 0; i < hpp.rows(); ++i)
            for (int j = 0; j < hpp.cols(); ++j) hpp_int.at(i, j) = hpp.at(i, j).num();
        term.divisors = elementary_divisors(hpp_int);
        term.multiplicity = big / small;
        term.convolution = conv[c];
        term.coset_count = coset_count_KhK(hpp, N, budget);
        out.terms.push_back(std::move(term));
    }
    out.mass_rhs = 0;
    for (const auto& t : out.terms) out.mass_rhs += t.multiplicity * t.coset_count;
    return out;
}

// --- block decomposition -----------------------------------------------------------------------

std::vector<HeckeBlock> hecke_blocks(const AdelicApprox& h, const PolyA& N,
                                     const std::vector<AdelicApprox>& reps, long long budget) {
    const Fq* F = h.g_glob.field();
    const int r = h.g_glob.rows();
    long long n = component_count(N, r);
    if (static_cast<long long>(reps.size()) != n)
        fail("InvalidRepresentatives", "expected " + std::to_string(n) + " component representatives");
    std::vector<PolyA> labels;
    for (const auto& g : reps) {
        PolyA lab = det_class_label(g.k_modN.det(), N);
        for (const PolyA& seen : labels)
            if (seen == lab) fail("InvalidRepresentatives", "determinant classes collide");
        labels.push_back(lab);
    }
    PolyA dh_class = N.is_constant() ? PolyA::one(F) : mod(h.k_modN.det(), N);
    std::vector<HeckeBlock> blocks;
    for (std::size_t i = 0; i < reps.size(); ++i) {
        // det(g_i) and det(g_{i'} h) in the same class: det k_{i'} = det k_i / det k_h
        PolyA want = N.is_constant()
                         ? PolyA::one(F)
                         : det_class_label(mod(reps[i].k_modN.det() * inv_mod(dh_class, N), N), N);
        int target = -1;
        for (std::size_t j = 0; j < labels.size(); ++j)
            if (labels[j] == want) target = static_cast<int>(j);
        if (target < 0) fail("InvalidRepresentatives", "determinant classes do not close under h");
        HeckeBlock blk;
        blk.source = static_cast<int>(i);
        blk.target = target;
        // double cosets, where the shape allows exact enumeration
        bool h_glob_trivial = h.g_glob == MatF::identity(r, F);
        if (N.is_constant()) {
            auto [sigma, m0] = clear_primitive(h.g_glob);
            std::vector<PolyA> divs = elementary_divisors(m0);
            std::vector<RatF> d;
            for (const auto& dv : divs) d.push_back(RatF(dv) * sigma);
            blk.deltas.push_back(MatF::diag(d));
            blk.deltas_enumerated = true;
        } else if (h_glob_trivial && mod(h.k_modN.det() - PolyA::one(F), N).is_zero() &&
                   [&] {
                       // h in K(N): the trivial double coset
                       MatA e = mat_mod(h.k_modN, N);
                       return e == mat_mod(MatA::identity(r, F), N);
                   }()) {
            blk.deltas.push_back(MatF::identity(r, F));
            blk.deltas_enumerated = true;
        } else {
            blk.deltas_enumerated = false;  // permutation data only at this level
        }
        blocks.push_back(std::move(blk));
    }
    return blocks;
}

}  // namespace drinfeld
