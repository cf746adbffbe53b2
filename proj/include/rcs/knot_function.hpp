#pragma once

#include <iosfwd>
#include <string>
#include <vector>

// Center and radius functions of a recentered confidence sphere: nondecreasing
// continuous functions on [0, inf) given by knot ordinates on [0, k] joined by
// monotone piecewise cubic Hermite interpolation (Fritsch-Carlson slopes, the
// "pchip" scheme), with a prescribed analytic tail for x >= k.

namespace rcs {

// Tail of a knot function beyond the threshold k.
struct TailRule {
    enum class Kind {
        JamesSteinPlus,         // max{0, 1 - (1 - 2/p) / x^2}
        JamesSteinPlusUnknown,  // max{0, 1 - (1 - 2/p)(m/(m+2)) / x^2}
        ConstantD,              // the constant d (or d-tilde)
    };

    Kind kind;
    double value = 0.0;  // constant for ConstantD, shrinkage coefficient otherwise
    int p = 0;
    int m = 0;

    static TailRule james_stein_plus(int p);
    static TailRule james_stein_plus_unknown(int p, int m);
    static TailRule constant(double d);

    double operator()(double x) const;

    // Tail of the w-rescaled function x -> tail(x / w); shrinkage coefficients
    // pick up a factor w^2, constants are unchanged.
    TailRule rescaled(double w) const;
};

class KnotFunction {
  public:
    // knots must be strictly increasing with knots.front() == 0 and
    // knots.back() == k; values nondecreasing with values.back() == tail(k).
    KnotFunction(std::vector<double> knots, std::vector<double> values, TailRule tail);

    double operator()(double x) const;

    double k() const { return knots_.back(); }
    const std::vector<double>& knots() const { return knots_; }
    const std::vector<double>& values() const { return values_; }
    const TailRule& tail() const { return tail_; }

    // Plain-text record, 17 significant digits; round-trips exactly.
    void save(std::ostream& os) const;
    static KnotFunction load(std::istream& is);

  private:
    std::vector<double> knots_;
    std::vector<double> values_;
    std::vector<double> slopes_;  // Fritsch-Carlson derivative values at the knots
    TailRule tail_;
};

// Knot recipes. k = 10 in all of the paper-scale runs.
std::vector<double> default_knots_a(int p, double k);
std::vector<double> default_knots_b(int p, double alpha, double k);
std::vector<double> default_knots_a_tilde(int p, int m, double k);
std::vector<double> default_knots_b_tilde();

// d and d-tilde: radius constants of the standard confidence spheres.
double radius_constant(int p, double alpha);
double radius_constant_unknown(int p, int m, double alpha);

// The empirical-Bayes radius b*: constant on [0, d/sqrt(p)], then
// sqrt({1 - (p-2)/(p x^2)} [d^2 - p log{1 - (p-2)/(p x^2)}]).
class BaselineRadiusStar {
  public:
    BaselineRadiusStar(int p, double alpha);
    double operator()(double x) const;
    double d() const { return d_; }

  private:
    int p_;
    double d_;
    double knee_;  // d / sqrt(p)
};

}  // namespace rcs
