#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "drinfeld/encode.hpp"
#include "drinfeld/rand.hpp"

using namespace drinfeld;

TEST_CASE("F_q tables: prime and extension fields") {
    Fq F2(2, 1), F3(3, 1), F4(2, 2), F9(3, 2);
    CHECK(F4.q() == 4);
    // lexicographically first primitive polynomial over F_2 of degree 2 is
    // x^2 + x + 1; then x * x = x + 1, i.e. index 2 * 2 = 3
    CHECK(F4.modulus_string() == "1 1 1");
    CHECK(F4.mul(2, 2) == 3);
    CHECK(F3.add(2, 2) == 1);
    CHECK(F9.mul(F9.inv(5), 5) == 1);
    // Frobenius fixes F_q elementwise: a^q = a
    for (int a = 0; a < F9.q(); ++a) CHECK(F9.pow(a, 9) == a);
}

TEST_CASE("large extension fields build and sample-check") {
    Fq F(2, 10);  // q = 1024
    CHECK(F.q() == 1024);
    F.check_axioms_sampled(99, 5000);
    FqElem g = F.gen();
    CHECK((g.pow(1023)).v == 1);  // order divides q - 1
    CHECK(g.pow(341).v != 1);     // and is exactly q - 1 (341 = 1023/3)
    CHECK(g.pow(93).v != 1);      // 93 = 1023/11
    CHECK(g.pow(33).v != 1);      // 33 = 1023/31
}

TEST_CASE("PolyA arithmetic and Euclid") {
    Fq F(3, 1);
    PolyA a = parse_poly(&F, "2 0 1");   // t^2 + 2
    PolyA b = parse_poly(&F, "1 1");     // t + 1
    auto [q, r] = a.divmod(b);
    CHECK((q * b + r) == a);
    CHECK(r.deg() < b.deg());
    CHECK(gcd(a * b, b) == b.monic());
    // q-power spread: (t+1)^3 = t^3 + 1 over F_3
    CHECK(b.qpow(1) == parse_poly(&F, "1 0 0 1"));
    CHECK(PolyA::zero(&F).deg() == -1);
    XgcdResult x = xgcd(a, b);
    CHECK(x.u * a + x.v * b == x.g);
}

TEST_CASE("RatF stays reduced") {
    Fq F(2, 1);
    RatF r(parse_poly(&F, "1 0 1"), parse_poly(&F, "1 1"));  // (t^2+1)/(t+1) = t+1 in char 2
    CHECK(r == RatF(parse_poly(&F, "1 1")));
    CHECK((r * r.inv()).is_one());
    RatF f(parse_poly(&F, "0 1"), parse_poly(&F, "1 1"));
    CHECK(f.qpow(1) == RatF(parse_poly(&F, "0 0 1"), parse_poly(&F, "1 0 1")));
}

TEST_CASE("tl_arith: pinned worked examples") {
    Fq F2(2, 1);
    // s * s -> s^2 at valuation 2
    TLaurent s = TLaurent::monomial(&F2, 1, 1, F2.one(), 10);
    TLaurent s2 = s * s;
    CHECK(s2.val() == 2);
    CHECK(s2.lead_coeff().v == 1);

    // inv(1 + s) over F_2 at precision 4 is 1 + s + s^2 + s^3
    TLaurent one_plus_s = TLaurent::from_digits(&F2, 1, 0, {1, 1}, 4);
    TLaurent inv = one_plus_s.inv();
    CHECK(inv.identical(TLaurent::from_digits(&F2, 1, 0, {1, 1, 1, 1}, 4)));
    CHECK((one_plus_s * inv).identical(TLaurent::from_digits(&F2, 1, 0, {1}, 4)));

    // precision propagation: prec-5 unit times prec-7 unit at val 0 -> prec 5
    TLaurent a = TLaurent::from_digits(&F2, 1, 0, {1, 1}, 5);
    TLaurent b = TLaurent::from_digits(&F2, 1, 0, {1, 0, 1}, 7);
    CHECK((a * b).prec() == 5);

    CHECK_THROWS_WITH_AS((void)(TLaurent::zero_to_prec(&F2, 1, 4)).inv(), doctest::Contains("DivisionByZeroToPrecision"),
                         Error);
    TLaurent c = TLaurent::one(&F2, 2, 6);
    CHECK_THROWS_AS((void)(c + s), Error);  // ramification mismatch
}

TEST_CASE("embeddings at infinity: pinned worked examples") {
    Fq F2(2, 1);
    // t at ram 1 -> s^{-1}
    TLaurent t = embed_poly(PolyA::t(&F2), 1, 6);
    CHECK(t.val() == -1);
    CHECK(t.digits() == std::vector<std::uint16_t>{1});
    // 1/(t-1) at ram 1, prec 4 -> s + s^2 + s^3
    RatF f(PolyA::one(&F2), parse_poly(&F2, "1 1"));
    TLaurent e = embed_ratf(f, 1, 4);
    CHECK(e.identical(TLaurent::from_digits(&F2, 1, 1, {1, 1, 1}, 4)));
    // 0 -> zero series
    CHECK(embed_ratf(RatF::zero(&F2), 1, 4).is_zero_to_prec());
    // precondition: the truncation must reach past the valuation
    CHECK_THROWS_WITH_AS(embed_ratf(RatF(PolyA::one(&F2), parse_poly(&F2, "0 0 1")), 1, 2),
                         doctest::Contains("InsufficientPrecision"), Error);
}

TEST_CASE("valuation: pinned examples and the exactness flag") {
    Fq F2(2, 1);
    TLaurent x = TLaurent::monomial(&F2, 2, 3, F2.one(), 9);
    Valuation v = x.valuation();
    CHECK((!v.is_infinite && v.num == 3 && v.den == 2));
    Valuation vt = embed_poly(PolyA::t(&F2), 1, 6).valuation();
    CHECK((vt.num == -1 && vt.den == 1));
    Valuation vz = TLaurent::zero_to_prec(&F2, 1, 5).valuation();
    CHECK((vz.is_infinite && !vz.known_exact));
    Valuation ve = TLaurent::exact_zero(&F2, 1).valuation();
    CHECK((ve.is_infinite && ve.known_exact));
}

TEST_CASE("three-valued comparison") {
    Fq F2(2, 1);
    TLaurent a = TLaurent::from_digits(&F2, 1, 0, {1, 1}, 4);
    TLaurent b = TLaurent::from_digits(&F2, 1, 0, {1, 0, 1}, 4);
    CHECK(cmp3(a, b) == Cmp::Unequal);
    CHECK(cmp3(a, a) == Cmp::Undecidable);  // equal digits, but only to precision
    TLaurent z = TLaurent::exact_zero(&F2, 1);
    CHECK(cmp3(z, z) == Cmp::Equal);
    CHECK(cmp3(a + z, a) == Cmp::Undecidable);
}

TEST_CASE("q-power gains precision exactly in char p") {
    Fq F2(2, 1);
    TLaurent a = TLaurent::from_digits(&F2, 1, 0, {1, 1}, 3);
    TLaurent sq = a.qpow(1);
    CHECK(sq.prec() == 6);
    CHECK(sq.identical(TLaurent::from_digits(&F2, 1, 0, {1, 0, 1}, 6)));
    CHECK((a * a).prec() == 3);  // generic multiplication stays conservative
}

TEST_CASE("embed is multiplicative to propagated precision") {
    for (int q : {2, 3}) {
        Fq F(q, 1);
        Rng rng(7 + q);
        for (int trial = 0; trial < 30; ++trial) {
            RatF f = rng.ratf(&F, 2), g = rng.ratf(&F, 2);
            TLaurent lhs = embed_ratf(f * g, 2, 48);
            TLaurent rhs = embed_ratf(f, 2, 48) * embed_ratf(g, 2, 48);
            CHECK(!(lhs.truncated(rhs.prec()) - rhs).certified_nonzero());
        }
    }
}

TEST_CASE("recomputation at higher precision never contradicts") {
    Fq F(3, 1);
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        RatF f = rng.ratf(&F, 2);
        TLaurent lo = embed_ratf(f, 2, 24);
        TLaurent hi = embed_ratf(f, 2, 96);
        CHECK(hi.truncated(lo.prec()).identical(lo));
    }
}

TEST_CASE("ramification lifts are explicit and exact") {
    Fq F(2, 1);
    TLaurent x = TLaurent::from_digits(&F, 1, -1, {1, 0, 1}, 5);
    TLaurent y = x.with_ram(3);
    CHECK(y.ram() == 3);
    CHECK(y.val() == -3);
    CHECK(y.prec() == 15);
    CHECK(y.digit_at(3).v == 1);  // the old s^1 digit sits at s^3
    CHECK_THROWS_AS(y.with_ram(2), Error);  // 2 is not a multiple of 3
    // lifted values multiply consistently with unlifted ones
    TLaurent a = TLaurent::from_digits(&F, 1, 0, {1, 1}, 6);
    CHECK((a * x).with_ram(2).identical(a.with_ram(2) * x.with_ram(2)));
}

TEST_CASE("extension field F_4: q-power spreads remain valid") {
    Fq F(2, 2);
    // every element of F_4 satisfies a^4 = a, so t-coefficients spread cleanly
    PolyA p(&F, {2, 3, 1});  // x + (x+1) t + t^2 with x the table generator
    CHECK(p.qpow(1) == PolyA(&F, {2, 0, 0, 0, 3, 0, 0, 0, 1}));
    RatF e1 = (RatF::t(&F).qpow(1) - RatF::t(&F)).inv();
    // Carlitz over F_4(t): recursion against the closed form at depth 3
    auto m = make_module(SkewPoly<RatF>({RatF::t(&F), RatF::one(&F)}), 1, false);
    ExpSeries<RatF> e = exp_series(m, 3);
    CHECK(e.e[1] == e1);
    RatF D = RatF::one(&F);
    for (int i = 1; i <= 3; ++i) {
        D = (RatF::t(&F).qpow(i) - RatF::t(&F)) * D.qpow(1);
        CHECK(e.e[i] * D == RatF::one(&F));
    }
    // a small rank-1 lattice exponential over F_4 is F_4-linear
    LatticeFr A1 = LatticeFr::standard(&F, 1);
    OmegaPoint w = make_omega({TLaurent::one(&F, 1, 48)});
    LatticeExp le(A1, w, 6);
    Rng rng(9);
    TLaurent z1 = rng.tlaurent_unit(&F, 1, 2, 48, 2);
    TLaurent z2 = rng.tlaurent_unit(&F, 1, 3, 48, 2);
    CHECK(vanishes_to(le.eval(z1 + z2) - le.eval(z1) - le.eval(z2), 8));
    FqElem c = F.gen();
    CHECK(vanishes_to(le.eval(z1 * c) - le.eval(z1) * c, 8));
}

TEST_CASE("text encodings round-trip") {
    Fq F(3, 1);
    PolyA p = parse_poly(&F, "1 0 2");
    CHECK(parse_poly(&F, p.str()) == p);
    RatF r(parse_poly(&F, "1 2"), parse_poly(&F, "0 0 1"));
    CHECK(parse_ratf(&F, r.str()) == r);
    TLaurent x = TLaurent::from_digits(&F, 2, -3, {2, 0, 1}, 9);
    CHECK(parse_tlaurent(&F, x.str()).identical(x));
}
