#pragma once

#include "bing/errors.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace bing {

// The per-depth wiggle budgets {eps_i}. The shrink guarantee needs a
// divergent square sum, which is decidable per kind: constants always
// diverge, powers K * i^-p diverge iff p <= 1/2, finite lists never do.
class EpsSchedule {
public:
    enum class Kind { Constant, Power, Explicit };

    static EpsSchedule constant(double eps0);
    static EpsSchedule power(double K, double p);
    static EpsSchedule explicit_list(std::vector<double> values);

    // 1-based: eps(1) is the budget of the first step.
    double eps(std::uint64_t i) const;

    bool divergent_square_sum() const;

    Kind kind() const { return kind_; }
    double constant_value() const { return a_; }
    double power_K() const { return a_; }
    double power_p() const { return b_; }
    const std::vector<double>& values() const { return values_; }

    std::string describe() const;

private:
    EpsSchedule(Kind kind, double a, double b, std::vector<double> values);
    Kind kind_;
    double a_ = 0;
    double b_ = 0;
    std::vector<double> values_;
};

} // namespace bing
