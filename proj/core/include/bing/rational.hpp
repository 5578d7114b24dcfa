#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <optional>
#include <string>

namespace bing {

// Exact rational scalar for fold-point coordinates. Folds and clasps only
// ever add, subtract and double coordinates, so values stay closed under
// this type; no roots appear outside the (binary64) plane geometry.
// Expression templates are off: every operation yields a concrete value, so
// auto-typed intermediates can never dangle.
using Rat = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
    boost::multiprecision::et_off>;

inline double to_double(const Rat& r) { return r.template convert_to<double>(); }

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double x) { return Rat(x); }

inline Rat rat_abs(const Rat& r) { return r < 0 ? Rat(-r) : r; }

// Cross-multiplied comparison. The library operator< runs a continued
// fraction with repeated bignum divisions (an overflow guard that costs
// nothing but time here); denominators are canonical-positive, so two
// multiplications decide the order.
inline bool rat_less(const Rat& a, const Rat& b) {
    return numerator(a) * denominator(b) < numerator(b) * denominator(a);
}

struct RatLess {
    bool operator()(const Rat& a, const Rat& b) const { return rat_less(a, b); }
};

inline Rat rat_min(const Rat& a, const Rat& b) { return rat_less(a, b) ? a : b; }
inline Rat rat_max(const Rat& a, const Rat& b) { return rat_less(b, a) ? a : b; }

// "p/q" when the denominator is non-trivial, plain integer otherwise.
std::string rat_to_pq(const Rat& r);

// Shortest decimal that still identifies the value within `digits` places.
std::string rat_to_decimal(const Rat& r, int digits = 17);

// Parses "p/q", integers and plain decimals ("0.25", "-3", "1/3").
std::optional<Rat> rat_parse(const std::string& text);

} // namespace bing
