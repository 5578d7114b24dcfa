#include "bing/rational.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <sstream>

namespace bing {

using boost::multiprecision::cpp_int;

std::string rat_to_pq(const Rat& r) {
    const cpp_int num = numerator(r);
    const cpp_int den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string rat_to_decimal(const Rat& r, int digits) {
    // Exact when the expansion terminates within `digits`, rounded otherwise.
    cpp_int num = numerator(r);
    const cpp_int den = denominator(r);
    const bool neg = num < 0;
    if (neg) num = -num;
    cpp_int ip = num / den;
    cpp_int rem = num % den;
    std::string out = (neg ? "-" : "") + ip.str();
    if (rem == 0) return out;
    out += '.';
    for (int i = 0; i < digits && rem != 0; ++i) {
        rem *= 10;
        out += char('0' + int(rem / den));
        rem %= den;
    }
    return out;
}

std::optional<Rat> rat_parse(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s.empty()) return std::nullopt;
    try {
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            const cpp_int num(s.substr(0, slash));
            const cpp_int den(s.substr(slash + 1));
            if (den == 0) return std::nullopt;
            return Rat(num, den);
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string digits = s.substr(0, dot) + s.substr(dot + 1);
            const std::size_t frac_len = s.size() - dot - 1;
            if (frac_len == 0 || digits.empty()) return std::nullopt;
            cpp_int den = 1;
            for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
            return Rat(cpp_int(digits), den);
        }
        return Rat(cpp_int(s));
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

} // namespace bing
