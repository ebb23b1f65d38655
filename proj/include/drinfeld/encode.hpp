#pragma once

#include <string>

#include "drinfeld/hecke.hpp"
#include "drinfeld/useries.hpp"

namespace drinfeld {

// Canonical text encodings (the CLI output contract):
//   FqElem    decimal index
//   PolyA     ascending space-separated indices ("0" for the zero polynomial)
//   RatF      "<polyA>" or "(<polyA>)/(<polyA>)"
//   TLaurent  "ram:val:prec:[c0 c1 ...]"
//   SkewPoly  "[b0; b1; ...; bd]"
//   USeries   "ord:prec_u:[<TLaurent>; ...]"
//   MatF      rows joined by " | ", entries by "; "
// The str() members emit these; the parsers below accept them.

PolyA parse_poly(const Fq* F, const std::string& s);
RatF parse_ratf(const Fq* F, const std::string& s);
MatF parse_matf(const Fq* F, const std::string& s);  // rows '|', entries ';'
MatA parse_mata(const Fq* F, const std::string& s);
TLaurent parse_tlaurent(const Fq* F, const std::string& s);
USeries parse_useries(const Fq* F, const std::string& s);

template <class R>
std::string skew_str(const SkewPoly<R>& f) {
    return f.str();
}

}  // namespace drinfeld
