#pragma once

#include <functional>
#include <vector>

namespace rcs {

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
// Results are cached per n; thread-safe.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

// Adaptive Simpson on [a, b] to absolute tolerance tol.
// Throws std::runtime_error on a non-finite integrand value.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol);

// Progressive composite Simpson: start with `initial_segments` equal
// segments and double until |Q_{2s} - Q_s| / |Q_{2s}| <= rel_stop.
// Previously evaluated nodes are reused on each doubling.  Throws if the
// stopping rule is not met within max_doublings.
double progressive_simpson(const std::function<double(double)>& f, double a, double b,
                           double rel_stop, int initial_segments, int max_doublings);

}  // namespace rcs
