#pragma once

#include <span>
#include <stdexcept>

namespace gateimpact {

class StatsError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double incomplete_beta(double a, double b, double x);

/// Two-sided tail probability P(|T| >= |t|) for Student's t with `dof` degrees of freedom.
double student_t_two_sided(double t, double dof);

struct Correlation {
    double r = 0.0;
    double p = 1.0;
};

/// Sample Pearson r with a two-sided p-value from t = r sqrt((n-2)/(1-r^2)).
/// Needs n >= 3 and non-zero variance in both inputs.
Correlation pearson(std::span<const double> x, std::span<const double> y);

}  // namespace gateimpact
