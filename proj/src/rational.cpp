#include "msca/rational.hpp"

#include "msca/errors.hpp"

#include <algorithm>
#include <cstdlib>

namespace msca {

namespace {

Int parse_int(std::string_view text) {
    if (text.empty())
        throw UsageError("empty integer literal");
    std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
    if (start == text.size())
        throw UsageError("sign without digits in integer literal");
    for (std::size_t i = start; i < text.size(); ++i)
        if (text[i] < '0' || text[i] > '9')
            throw UsageError("invalid integer literal: '" + std::string(text) + "'");
    return Int(std::string(text));
}

}  // namespace

std::string render_rat(const Rat& r) {
    if (denominator(r) == 1)
        return numerator(r).str();
    return numerator(r).str() + "/" + denominator(r).str();
}

Rat parse_rat(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rat(parse_int(text));
    }
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den == 0)
        throw UsageError("zero denominator in rational literal: '" + std::string(text) + "'");
    return Rat(num) / Rat(den);
}

Rat parse_rat_or_decimal(std::string_view text) {
    auto dot = text.find('.');
    if (dot == std::string_view::npos)
        return parse_rat(text);
    if (text.find('/') != std::string_view::npos)
        throw UsageError("mixed decimal and fraction notation: '" + std::string(text) + "'");
    std::string_view int_part = text.substr(0, dot);
    std::string_view frac_part = text.substr(dot + 1);
    if (frac_part.empty())
        throw UsageError("decimal point without digits: '" + std::string(text) + "'");
    bool negative = !int_part.empty() && int_part[0] == '-';
    Int whole = int_part.empty() || int_part == "-" || int_part == "+"
                    ? Int(0)
                    : parse_int(int_part);
    Int frac = parse_int(frac_part);
    if (frac < 0)
        throw UsageError("sign in fractional digits: '" + std::string(text) + "'");
    Int scale = boost::multiprecision::pow(Int(10), static_cast<unsigned>(frac_part.size()));
    Rat magnitude = Rat(abs(whole)) + Rat(frac) / Rat(scale);
    return negative ? -magnitude : magnitude;
}

std::string render_decimal(const Rat& r, int significant) {
    if (significant < 1)
        throw ContractViolation("render_decimal needs at least one significant digit");
    if (r == 0)
        return "0";

    Int a = abs(numerator(r));
    Int b = denominator(r);

    // Explicit return type: without it the lambda would hand back a boost
    // expression template referencing the dead Int(10) temporary.
    auto pow10 = [](long x) -> Int {
        return boost::multiprecision::pow(Int(10), static_cast<unsigned>(x));
    };
    // Exponent e with 10^e <= a/b < 10^(e+1); digit-count estimate, then adjust.
    long e = static_cast<long>(a.str().size()) - static_cast<long>(b.str().size());
    while (true) {
        // compare a/b against 10^(e+1): a >= b*10^(e+1) (for e+1 >= 0) means too small e
        bool ge_next = (e + 1 >= 0) ? (a >= b * pow10(e + 1)) : (a * pow10(-(e + 1)) >= b);
        if (ge_next) { ++e; continue; }
        bool ge_this = (e >= 0) ? (a >= b * pow10(e)) : (a * pow10(-e) >= b);
        if (!ge_this) { --e; continue; }
        break;
    }

    // Scaled integer with `significant` digits, rounded half to even.
    long shift = significant - 1 - e;
    Int num = shift >= 0 ? a * pow10(shift) : a;
    Int den = shift >= 0 ? b : b * pow10(-shift);
    Int q = num / den;
    Int rem = num - q * den;
    Int twice = rem * 2;
    if (twice > den || (twice == den && (q & 1) == 1))
        ++q;
    std::string digits = q.str();
    if (static_cast<long>(digits.size()) > significant) {
        // Rounding carried (e.g. 999.96 -> 1000): drop the extra zero.
        digits.pop_back();
        ++e;
    }

    std::string out;
    if (e >= 0 && e < significant) {
        out = digits.substr(0, static_cast<std::size_t>(e) + 1);
        std::string frac = digits.substr(static_cast<std::size_t>(e) + 1);
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
        if (!frac.empty())
            out += "." + frac;
    } else if (e < 0 && e >= -4) {
        while (!digits.empty() && digits.back() == '0')
            digits.pop_back();
        out = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + digits;
    } else {
        std::string frac = digits.substr(1);
        while (!frac.empty() && frac.back() == '0')
            frac.pop_back();
        out = digits.substr(0, 1);
        if (!frac.empty())
            out += "." + frac;
        out += "e" + std::to_string(e);
    }
    if (numerator(r) < 0)
        out = "-" + out;
    return out;
}

Int lcm_denominators(const std::vector<Rat>& values) {
    Int l = 1;
    for (const Rat& v : values)
        l = boost::multiprecision::lcm(l, denominator(v));
    return l;
}

}  // namespace msca
