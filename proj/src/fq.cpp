#include "drinfeld/fq.hpp"

#include <algorithm>
#include <random>
#include <sstream>

namespace drinfeld {

namespace {

// Digit view of an index: index = sum digits[i] * p^i.
std::vector<int> to_digits(int idx, int p, int len) {
    std::vector<int> d(len, 0);
    for (int i = 0; i < len && idx > 0; ++i) {
        d[i] = idx % p;
        idx /= p;
    }
    return d;
}

int from_digits(const std::vector<int>& d, int p) {
    int idx = 0;
    for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) idx = idx * p + d[i];
    return idx;
}

// Multiply two residues mod the degree-e polynomial f over F_p.
int mulmod_poly(int a, int b, const std::vector<int>& f, int p, int e) {
    std::vector<int> da = to_digits(a, p, e), db = to_digits(b, p, e);
    std::vector<int> prod(2 * e - 1, 0);
    for (int i = 0; i < e; ++i) {
        if (da[i] == 0) continue;
        for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
    }
    for (int k = 2 * e - 2; k >= e; --k) {
        int c = prod[k];
        if (c == 0) continue;
        prod[k] = 0;
        // x^k = -sum_{i<e} f_i x^{k-e+i}  (f monic)
        for (int i = 0; i < e; ++i) prod[k - e + i] = ((prod[k - e + i] - c * f[i]) % p + p) % p;
    }
    prod.resize(e);
    return from_digits(prod, p);
}

}  // namespace

Fq::Fq(int p, int e) : p_(p), e_(e) {
    if (p < 2 || e < 1) fail("BadField", "q = p^e needs p >= 2, e >= 1");
    for (long long d = 2; d * d <= p; ++d)
        if (p % d == 0) fail("BadField", "p is not prime");
    long long q = 1;
    for (int i = 0; i < e; ++i) {
        q *= p;
        if (q > 65536) fail("BadField", "q exceeds 2^16");
    }
    q_ = static_cast<int>(q);
    build_tables();
    if (q_ <= 64) check_axioms_exhaustive();
}

void Fq::build_tables() {
    // Search monic degree-e polynomials over F_p in lexicographic order of
    // their low coefficients; accept the first one whose residue x has
    // multiplicative order exactly q-1. Order q-1 certifies both that the
    // quotient ring is a field and that x generates its unit group.
    const long long qm1 = q_ - 1;
    const int x_index = (e_ == 1) ? -1 : p_;  // e = 1 handled below
    int lowcount = 1;
    for (int i = 0; i < e_; ++i) lowcount *= p_;

    auto try_modpoly = [&](const std::vector<int>& f) -> bool {
        if (f[0] == 0) return false;  // x must be invertible
        int gen;
        if (e_ == 1)
            gen = ((-f[0]) % p_ + p_) % p_;  // root of x + f0
        else
            gen = x_index;
        std::vector<std::uint16_t> exps;
        exps.reserve(qm1);
        int y = 1;
        for (long long k = 0; k < qm1; ++k) {
            exps.push_back(static_cast<std::uint16_t>(y));
            if (k > 0 && y == 1) return false;  // order < q-1
            y = (e_ == 1) ? static_cast<int>((1LL * y * gen) % p_) : mulmod_poly(y, gen, f, p_, e_);
        }
        if (y != 1) return false;
        exp_ = std::move(exps);
        return true;
    };

    for (int low = 0; low < lowcount; ++low) {
        std::vector<int> f = to_digits(low, p_, e_);
        f.push_back(1);  // monic
        if (try_modpoly(f)) {
            modpoly_ = f;
            break;
        }
    }
    if (modpoly_.empty()) fail("BadField", "no primitive polynomial found");

    log_.assign(q_, -1);
    for (long long k = 0; k < q_ - 1; ++k) log_[exp_[k]] = static_cast<int>(k);

    if (q_ <= 256) {
        addtab_.assign(static_cast<std::size_t>(q_) * q_, 0);
        for (int a = 0; a < q_; ++a)
            for (int b = 0; b < q_; ++b)
                addtab_[static_cast<std::size_t>(a) * q_ + b] = add_digits(static_cast<std::uint16_t>(a), static_cast<std::uint16_t>(b));
    }
}

std::uint16_t Fq::add_digits(std::uint16_t a, std::uint16_t b) const {
    if (p_ == 2) return a ^ b;
    int r = 0, mult = 1;
    int ia = a, ib = b;
    for (int i = 0; i < e_; ++i) {
        r += ((ia % p_ + ib % p_) % p_) * mult;
        ia /= p_;
        ib /= p_;
        mult *= p_;
    }
    return static_cast<std::uint16_t>(r);
}

std::uint16_t Fq::add(std::uint16_t a, std::uint16_t b) const {
    if (!addtab_.empty()) return addtab_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
}

std::uint16_t Fq::neg(std::uint16_t a) const {
    if (p_ == 2) return a;
    int r = 0, mult = 1;
    int ia = a;
    for (int i = 0; i < e_; ++i) {
        r += ((p_ - ia % p_) % p_) * mult;
        ia /= p_;
        mult *= p_;
    }
    return static_cast<std::uint16_t>(r);
}

std::uint16_t Fq::sub(std::uint16_t a, std::uint16_t b) const { return add(a, neg(b)); }

std::uint16_t Fq::mul(std::uint16_t a, std::uint16_t b) const {
    if (a == 0 || b == 0) return 0;
    long long k = log_[a] + log_[b];
    if (k >= q_ - 1) k -= q_ - 1;
    return exp_[k];
}

std::uint16_t Fq::inv(std::uint16_t a) const {
    if (a == 0) fail("DivisionByZero", "inverse of 0 in F_q");
    long long k = (q_ - 1 - log_[a]) % (q_ - 1);
    return exp_[k];
}

std::uint16_t Fq::pow(std::uint16_t a, long long n) const {
    if (a == 0) {
        if (n < 0) fail("DivisionByZero", "0 to a negative power");
        return n == 0 ? 1 : 0;
    }
    long long k = (log_[a] * (n % (q_ - 1))) % (q_ - 1);
    if (k < 0) k += q_ - 1;
    return exp_[k];
}

FqElem Fq::elem(int index) const {
    if (index < 0 || index >= q_) fail("BadField", "element index out of range");
    return {this, static_cast<std::uint16_t>(index)};
}

FqElem Fq::from_int(long long n) const {
    long long r = n % p_;
    if (r < 0) r += p_;
    // residues of integers land in the set {0, 1, ..., p-1} = F_p subfield
    std::uint16_t v = 0;
    for (long long i = 0; i < r; ++i) v = add(v, 1);
    return {this, v};
}

std::string Fq::modulus_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < modpoly_.size(); ++i) {
        if (i) os << ' ';
        os << modpoly_[i];
    }
    return os.str();
}

void Fq::check_axioms_exhaustive() const {
    for (int a = 0; a < q_; ++a) {
        if (add(a, 0) != a || mul(a, 1) != a) fail("FieldAxiom", "identity failed");
        if (add(a, neg(a)) != 0) fail("FieldAxiom", "additive inverse failed");
        if (a != 0 && mul(a, inv(a)) != 1) fail("FieldAxiom", "multiplicative inverse failed");
        for (int b = 0; b < q_; ++b) {
            if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a)) fail("FieldAxiom", "commutativity failed");
            for (int c = 0; c < q_; ++c) {
                if (add(add(a, b), c) != add(a, add(b, c))) fail("FieldAxiom", "+ associativity failed");
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("FieldAxiom", "* associativity failed");
                if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("FieldAxiom", "distributivity failed");
            }
        }
    }
}

void Fq::check_axioms_sampled(unsigned long long seed, int trials) const {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> pick(0, q_ - 1);
    for (int i = 0; i < trials; ++i) {
        int a = pick(rng), b = pick(rng), c = pick(rng);
        if (add(add(a, b), c) != add(a, add(b, c))) fail("FieldAxiom", "+ associativity failed");
        if (mul(mul(a, b), c) != mul(a, mul(b, c))) fail("FieldAxiom", "* associativity failed");
        if (mul(a, add(b, c)) != add(mul(a, b), mul(a, c))) fail("FieldAxiom", "distributivity failed");
        if (a != 0 && mul(a, inv(a)) != 1) fail("FieldAxiom", "multiplicative inverse failed");
    }
}

}  // namespace drinfeld
