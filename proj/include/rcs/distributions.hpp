#pragma once

#include <stdexcept>

// Special functions and distributions used by the coverage/volume formulas:
// central and noncentral chi-square, the F distribution (for the radius
// constant with estimated variance), the direction-cosine density, and the
// distribution of W = S/sigma. Everything is self-contained double-precision
// code built on regularized incomplete gamma/beta functions; all functions
// are pure and reentrant.

namespace rcs {

// Regularized lower incomplete gamma P(a, x).  Series for x < a + 1,
// continued fraction otherwise.  Absolute accuracy ~1e-14.
double gamma_p(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double gamma_q(double a, double x);

// Regularized incomplete beta I_x(a, b).
double incomplete_beta(double a, double b, double x);

// Beta function B(a, b).
double beta_function(double a, double b);

// chi^2_df CDF at x.  Throws std::invalid_argument for x < 0 or df < 1.
double chi2_cdf(double x, int df);

// chi^2_df density at x.
double chi2_pdf(double x, int df);

// Inverse of chi2_cdf: chi2_cdf(chi2_quantile(q, df), df) = q to ~1e-12.
// Throws for q outside (0, 1).
double chi2_quantile(double q, int df);

// Noncentral chi^2 density f(v; p, lambda), lambda >= 0.  Poisson-mixture
// series accumulated forward and backward from the modal mixture index,
// terminating when a term falls below 1e-16 of the running sum.
double nc_chi2_pdf(double v, int p, double lambda);

// Noncentral chi^2 CDF F(v; p, lambda); same evaluation scheme.
double nc_chi2_cdf(double v, int p, double lambda);

// F_{df1,df2} CDF and quantile.
double f_cdf(double x, int df1, int df2);
double f_quantile(double q, int df1, int df2);

// Density of the direction cosine L = (theta/|theta|)'(Z/|Z|) for dimension
// p >= 3: f_L(l) = (1 - l^2)^{(p-3)/2} / B(1/2, (p-1)/2) on [-1, 1].
double direction_density(double l, int p);

// Distribution of W = S/sigma where m S^2/sigma^2 ~ chi^2_m, i.e.
// W =d sqrt(Q/m) with Q ~ chi^2_m.
struct ScaledChiDist {
    int m;

    explicit ScaledChiDist(int m_) : m(m_) {
        if (m < 1) throw std::invalid_argument("ScaledChiDist: m must be >= 1");
    }

    double cdf(double w) const;
    double pdf(double w) const;
    double quantile(double q) const;

    // E(W^p) = (2/m)^{p/2} Gamma((p+m)/2) / Gamma(m/2).
    double moment(int p) const;
};

}  // namespace rcs
