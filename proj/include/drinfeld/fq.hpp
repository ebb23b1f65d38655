#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "drinfeld/error.hpp"

namespace drinfeld {

class Fq;

// Element of F_q, stored as an index into the field table of its context.
// Index encoding: an element sum c_i x^i (c_i in F_p, x the fixed primitive
// root) has index sum c_i p^i. For prime q this is the usual residue.
struct FqElem {
    const Fq* field = nullptr;
    std::uint16_t v = 0;

    bool is_zero() const noexcept { return v == 0; }

    FqElem operator+(FqElem o) const;
    FqElem operator-(FqElem o) const;
    FqElem operator*(FqElem o) const;
    FqElem operator-() const;
    FqElem inv() const;
    FqElem pow(long long n) const;

    bool operator==(FqElem o) const { return v == o.v; }
    bool operator!=(FqElem o) const { return v != o.v; }
};

// Table-driven arithmetic for F_q, q = p^e <= 2^16. The field is generated
// by the lexicographically first monic degree-e polynomial over F_p whose
// residue class x has multiplicative order q-1; that polynomial is part of
// the reproducibility contract and is echoed by the CLI config header.
class Fq {
public:
    Fq(int p, int e);

    int p() const noexcept { return p_; }
    int e() const noexcept { return e_; }
    int q() const noexcept { return q_; }

    FqElem zero() const noexcept { return {this, 0}; }
    FqElem one() const noexcept { return {this, 1}; }
    FqElem elem(int index) const;
    // Canonical image of a prime-field integer.
    FqElem from_int(long long n) const;
    FqElem gen() const noexcept { return {this, exp_[1]}; }  // the fixed primitive root

    std::uint16_t add(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t sub(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t neg(std::uint16_t a) const;
    std::uint16_t mul(std::uint16_t a, std::uint16_t b) const;
    std::uint16_t inv(std::uint16_t a) const;
    std::uint16_t pow(std::uint16_t a, long long n) const;

    // Ascending coefficients of the defining primitive polynomial over F_p.
    const std::vector<int>& modulus() const noexcept { return modpoly_; }
    std::string modulus_string() const;

    // Exhaustive field-axiom check (associativity, distributivity,
    // inverses); runs over the whole field. Called from the constructor for
    // q <= 64 and available to the verify suite for any q.
    void check_axioms_exhaustive() const;
    void check_axioms_sampled(unsigned long long seed, int trials) const;

private:
    int p_, e_, q_;
    std::vector<int> modpoly_;          // ascending, degree e, over F_p
    std::vector<std::uint16_t> exp_;    // exp_[k] = index of x^k, 0 <= k < q-1
    std::vector<int> log_;              // log_[idx] for idx != 0
    std::vector<std::uint16_t> addtab_; // q*q table when q <= 256, else empty

    std::uint16_t add_digits(std::uint16_t a, std::uint16_t b) const;
    void build_tables();
};

inline FqElem FqElem::operator+(FqElem o) const { return {field, field->add(v, o.v)}; }
inline FqElem FqElem::operator-(FqElem o) const { return {field, field->sub(v, o.v)}; }
inline FqElem FqElem::operator*(FqElem o) const { return {field, field->mul(v, o.v)}; }
inline FqElem FqElem::operator-() const { return {field, field->neg(v)}; }
inline FqElem FqElem::inv() const { return {field, field->inv(v)}; }
inline FqElem FqElem::pow(long long n) const { return {field, field->pow(v, n)}; }

}  // namespace drinfeld
