#include "drinfeld/encode.hpp"

#include <sstream>

namespace drinfeld {

namespace {
std::string trimmed(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}
}  // namespace

PolyA parse_poly(const Fq* F, const std::string& s) {
    std::istringstream is(trimmed(s));
    std::vector<std::uint16_t> c;
    long long v;
    while (is >> v) {
        if (v < 0 || v >= F->q()) fail("ParseError", "coefficient index out of range in '" + s + "'");
        c.push_back(static_cast<std::uint16_t>(v));
    }
    if (c.empty()) fail("ParseError", "empty polynomial '" + s + "'");
    return PolyA(F, std::move(c));
}

RatF parse_ratf(const Fq* F, const std::string& s) {
    std::string t = trimmed(s);
    std::size_t slash = t.find(")/(");
    if (t.size() >= 2 && t.front() == '(' && slash != std::string::npos && t.back() == ')') {
        std::string num = t.substr(1, slash - 1);
        std::string den = t.substr(slash + 3, t.size() - slash - 4);
        return RatF(parse_poly(F, num), parse_poly(F, den));
    }
    return RatF(parse_poly(F, t));
}

MatF parse_matf(const Fq* F, const std::string& s) {
    std::vector<std::vector<RatF>> rows;
    for (const std::string& rowstr : split(s, '|')) {
        std::vector<RatF> row;
        for (const std::string& e : split(rowstr, ';')) row.push_back(parse_ratf(F, e));
        rows.push_back(std::move(row));
    }
    for (const auto& r : rows)
        if (r.size() != rows[0].size()) fail("ParseError", "ragged matrix '" + s + "'");
    return MatF::from_rows(std::move(rows));
}

MatA parse_mata(const Fq* F, const std::string& s) {
    MatF m = parse_matf(F, s);
    MatA out(m.rows(), m.cols(), F);
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (!m.at(i, j).is_integral()) fail("ParseError", "matrix entry not in A: '" + s + "'");
            out.at(i, j) = m.at(i, j).num();
        }
    return out;
}

USeries parse_useries(const Fq* F, const std::string& s) {
    std::string t = trimmed(s);
    std::size_t c1 = t.find(':');
    std::size_t c2 = t.find(':', c1 + 1);
    if (c1 == std::string::npos || c2 == std::string::npos)
        fail("ParseError", "USeries wants ord:prec_u:[entries], got '" + s + "'");
    long long ord = std::stoll(t.substr(0, c1));
    long long pu = std::stoll(t.substr(c1 + 1, c2 - c1 - 1));
    std::string body = trimmed(t.substr(c2 + 1));
    if (body.size() < 2 || body.front() != '[' || body.back() != ']')
        fail("ParseError", "USeries entries must be bracketed");
    body = body.substr(1, body.size() - 2);
    std::vector<TLaurent> coeffs;
    int ram = 1;
    long long cprec = 1;
    for (const std::string& entry : split(body, ';')) {
        std::string e = trimmed(entry);
        if (e.empty()) continue;
        TLaurent c = parse_tlaurent(F, e);
        ram = c.ram();
        cprec = std::max(cprec, c.prec() >= TLaurent::kInfPrec ? 1 : c.prec());
        coeffs.push_back(c);
    }
    return useries_from(F, ram, cprec, ord, pu, std::move(coeffs));
}

TLaurent parse_tlaurent(const Fq* F, const std::string& s) {
    std::string t = trimmed(s);
    std::vector<std::string> parts = split(t, ':');
    if (parts.size() != 4) fail("ParseError", "TLaurent wants ram:val:prec:[digits], got '" + s + "'");
    int ram = std::stoi(parts[0]);
    long long val = std::stoll(parts[1]);
    long long prec = parts[2] == "inf" ? TLaurent::kInfPrec : std::stoll(parts[2]);
    std::string digits = trimmed(parts[3]);
    if (digits.size() < 2 || digits.front() != '[' || digits.back() != ']')
        fail("ParseError", "TLaurent digit block must be bracketed");
    digits = digits.substr(1, digits.size() - 2);
    std::vector<std::uint16_t> c;
    std::istringstream is(digits);
    long long v;
    while (is >> v) c.push_back(static_cast<std::uint16_t>(v));
    if (c.empty()) return TLaurent::zero_to_prec(F, ram, prec);
    return TLaurent::from_digits(F, ram, val, std::move(c), prec);
}

}  // namespace drinfeld
