#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/encode.hpp"
#include "drinfeld/rand.hpp"
#include "drinfeld/skew.hpp"

using namespace drinfeld;

namespace {
SkewPoly<RatF> carlitz_phi_t(const Fq* F) { return SkewPoly<RatF>({RatF::t(F), RatF::one(F)}); }
}

TEST_CASE("(t + tau)^2 expands by the twisted rule") {
    // hand oracle: (t+tau)(t+tau) = t^2 + t tau + tau t + tau^2
    //                             = t^2 + (t + t^q) tau + tau^2
    for (int q : {2, 3}) {
        Fq F(q, 1);
        SkewPoly<RatF> phi = carlitz_phi_t(&F);
        SkewPoly<RatF> sq = phi * phi;
        CHECK(sq.deg() == 2);
        CHECK(sq.coeff_ref(0) == RatF::t(&F) * RatF::t(&F));
        CHECK(sq.coeff_ref(1) == RatF::t(&F) + RatF::t(&F).qpow(1));
        CHECK(sq.coeff_ref(2) == RatF::one(&F));
    }
}

TEST_CASE("tau c = c^q tau and the identity") {
    Fq F(3, 1);
    RatF c = parse_ratf(&F, "(1 1)/(0 1)");
    SkewPoly<RatF> tau = SkewPoly<RatF>::tau(RatF::one(&F));
    SkewPoly<RatF> prod = tau * SkewPoly<RatF>::constant(c);
    CHECK(prod.deg() == 1);
    CHECK(prod.coeff_ref(0).is_zero());
    CHECK(prod.coeff_ref(1) == c.qpow(1));
    SkewPoly<RatF> f = carlitz_phi_t(&F);
    CHECK((f * SkewPoly<RatF>::identity(RatF::one(&F))).str() == f.str());
}

TEST_CASE("evaluation: tau, t + tau, and composition") {
    Fq F(2, 1);
    Rng rng(3);
    SkewPoly<RatF> tau = SkewPoly<RatF>::tau(RatF::one(&F));
    RatF z = parse_ratf(&F, "(1 1)/(0 0 1)");
    CHECK(tau(z) == z.qpow(1));
    SkewPoly<RatF> f = carlitz_phi_t(&F);
    CHECK(f(z) == RatF::t(&F) * z + z.qpow(1));
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<RatF> fc, gc;
        for (int i = 0; i <= 2; ++i) fc.push_back(rng.ratf(&F, 1));
        for (int i = 0; i <= 2; ++i) gc.push_back(rng.ratf(&F, 1));
        SkewPoly<RatF> a(fc), b(gc);
        RatF w = rng.ratf(&F, 1);
        CHECK((a * b)(w) == a(b(w)));
    }
}

TEST_CASE("derivative") {
    Fq F(2, 1);
    RatF one = RatF::one(&F);
    CHECK(carlitz_phi_t(&F).derivative(one) == RatF::t(&F));
    CHECK(SkewPoly<RatF>::tau(one, 2).derivative(one).is_zero());
    CHECK(SkewPoly<RatF>().derivative(one).is_zero());
}

TEST_CASE("right division: trivial shapes and reconstruction") {
    Fq F(3, 1);
    Rng rng(17);
    SkewPoly<RatF> g = carlitz_phi_t(&F);
    auto [q1, r1] = right_divide(g, g);
    CHECK(q1.str() == SkewPoly<RatF>::identity(RatF::one(&F)).str());
    CHECK(r1.is_zero());
    SkewPoly<RatF> small = SkewPoly<RatF>::constant(RatF::t(&F));
    auto [q2, r2] = right_divide(small, g);
    CHECK(q2.is_zero());
    CHECK(r2.str() == small.str());
    for (int trial = 0; trial < 12; ++trial) {
        std::vector<RatF> fc, gc;
        int df = 1 + static_cast<int>(rng.below(4)), dg = 1 + static_cast<int>(rng.below(3));
        for (int i = 0; i <= df; ++i) fc.push_back(rng.ratf(&F, 1));
        for (int i = 0; i <= dg; ++i) gc.push_back(rng.ratf(&F, 1));
        if (fc.back().is_zero()) fc.back() = RatF::one(&F);
        if (gc.back().is_zero()) gc.back() = RatF::one(&F);
        SkewPoly<RatF> f(fc), gg(gc);
        auto [quot, rem] = right_divide(f, gg);
        CHECK((quot * gg + rem).str() == f.str());
        CHECK(rem.deg() < gg.deg());
    }
    CHECK_THROWS_AS(right_divide(g, SkewPoly<RatF>()), Error);
}

TEST_CASE("associativity on random triples") {
    for (int q : {2, 3}) {
        Fq F(q, 1);
        Rng rng(23 + q);
        for (int trial = 0; trial < 8; ++trial) {
            std::vector<RatF> ac, bc, cc;
            for (int i = 0; i <= static_cast<int>(rng.below(4)) + 1; ++i) ac.push_back(rng.ratf(&F, 1));
            for (int i = 0; i <= static_cast<int>(rng.below(4)) + 1; ++i) bc.push_back(rng.ratf(&F, 1));
            for (int i = 0; i <= static_cast<int>(rng.below(4)) + 1; ++i) cc.push_back(rng.ratf(&F, 1));
            SkewPoly<RatF> a(ac), b(bc), c(cc);
            CHECK(((a * b) * c).str() == (a * (b * c)).str());
        }
    }
}

TEST_CASE("skew polynomials over quotient splitting rings") {
    Fq F(2, 1);
    QuotCtx ctx;
    ctx.F = &F;
    ctx.modulus = {RatF::t(&F), RatF::one(&F)};  // x + t: the ring is F itself, x = -t = t
    QuotF x = QuotF::gen(&ctx);
    CHECK(x * x.inv() == QuotF::one(&ctx));
    CHECK(qpow(x, 1) == x * x);
    SkewPoly<QuotF> f({t_image(x), QuotF::one(&ctx)});
    CHECK(f(x) == t_image(x) * x + x * x);
}
