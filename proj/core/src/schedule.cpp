#include "bing/schedule.hpp"

#include <sstream>

namespace bing {

EpsSchedule::EpsSchedule(Kind kind, double a, double b, std::vector<double> values)
    : kind_(kind), a_(a), b_(b), values_(std::move(values)) {}

EpsSchedule EpsSchedule::constant(double eps0) {
    if (!(eps0 > 0)) throw ConfigError("EpsSchedule: constant term must be positive");
    return EpsSchedule(Kind::Constant, eps0, 0, {});
}

EpsSchedule EpsSchedule::power(double K, double p) {
    if (!(K > 0)) throw ConfigError("EpsSchedule: power coefficient K must be positive");
    if (!(p >= 0)) throw ConfigError("EpsSchedule: power exponent p must be >= 0");
    return EpsSchedule(Kind::Power, K, p, {});
}

EpsSchedule EpsSchedule::explicit_list(std::vector<double> values) {
    if (values.empty()) throw ConfigError("EpsSchedule: explicit list is empty");
    for (double v : values)
        if (!(v > 0)) throw ConfigError("EpsSchedule: explicit terms must be positive");
    return EpsSchedule(Kind::Explicit, 0, 0, std::move(values));
}

double EpsSchedule::eps(std::uint64_t i) const {
    switch (kind_) {
    case Kind::Constant: return a_;
    case Kind::Power: return a_ * std::pow(double(i), -b_);
    case Kind::Explicit: {
        if (i == 0) throw ConfigError("EpsSchedule: index is 1-based");
        // Past the end, the last budget keeps applying.
        const std::size_t idx = std::min<std::size_t>(i - 1, values_.size() - 1);
        return values_[idx];
    }
    }
    throw ConfigError("EpsSchedule: bad kind");
}

bool EpsSchedule::divergent_square_sum() const {
    switch (kind_) {
    case Kind::Constant: return true;
    case Kind::Power: return b_ <= 0.5;
    case Kind::Explicit: return false; // finite lists cannot diverge
    }
    return false;
}

std::string EpsSchedule::describe() const {
    std::ostringstream out;
    switch (kind_) {
    case Kind::Constant: out << "constant(" << a_ << ")"; break;
    case Kind::Power: out << "power(K=" << a_ << ", p=" << b_ << ")"; break;
    case Kind::Explicit: out << "explicit[" << values_.size() << "]"; break;
    }
    return out.str();
}

} // namespace bing
