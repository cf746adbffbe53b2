#include "rcs/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rcs {

namespace {

constexpr int kMaxIter = 1000;
constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

// Lower incomplete gamma by its power series, regularized.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper incomplete gamma by modified Lentz continued fraction, regularized.
double gamma_q_cf(double a, double x) {
    double b = x + 1.0 - a;
    double c = 1.0 / kTiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        double an = -static_cast<double>(i) * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = b + an / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the incomplete beta (Lentz form).
double beta_cf(double a, double b, double x) {
    double qab = a + b;
    double qap = a + 1.0;
    double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h;
}

// Generic monotone-CDF inversion: safeguarded bisection with Newton polish.
template <typename Cdf, typename Pdf>
double invert_cdf(double q, Cdf cdf, Pdf pdf, double lo, double hi) {
    // Expand the bracket until it straddles q.
    while (cdf(hi) < q) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) throw std::runtime_error("invert_cdf: bracket expansion failed");
    }
    for (int i = 0; i < 200; ++i) {
        double mid = 0.5 * (lo + hi);
        if (cdf(mid) < q)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-13 * (1.0 + hi)) break;
    }
    double x = 0.5 * (lo + hi);
    for (int i = 0; i < 4; ++i) {
        double f = cdf(x) - q;
        double df = pdf(x);
        if (df <= 0.0) break;
        double step = f / df;
        double xn = x - step;
        if (xn <= lo || xn >= hi) break;  // keep the safeguard
        x = xn;
        if (std::fabs(step) < 1e-14 * (1.0 + x)) break;
    }
    return x;
}

}  // namespace

double gamma_p(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double gamma_q(double a, double x) {
    if (x < 0.0 || a <= 0.0) throw std::invalid_argument("gamma_q: bad arguments");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double beta_function(double a, double b) {
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw std::invalid_argument("incomplete_beta: bad shape");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x));
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double chi2_cdf(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi2_cdf: df must be >= 1");
    if (x < 0.0) throw std::invalid_argument("chi2_cdf: x must be >= 0");
    return gamma_p(0.5 * df, 0.5 * x);
}

double chi2_pdf(double x, int df) {
    if (df < 1) throw std::invalid_argument("chi2_pdf: df must be >= 1");
    if (x < 0.0) throw std::invalid_argument("chi2_pdf: x must be >= 0");
    if (x == 0.0) {
        if (df == 1) return std::numeric_limits<double>::infinity();
        if (df == 2) return 0.5;
        return 0.0;
    }
    double a = 0.5 * df;
    return std::exp((a - 1.0) * std::log(0.5 * x) - 0.5 * x - std::lgamma(a)) * 0.5;
}

double chi2_quantile(double q, int df) {
    if (df < 1) throw std::invalid_argument("chi2_quantile: df must be >= 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("chi2_quantile: q must be in (0,1)");
    return invert_cdf(
        q, [df](double x) { return chi2_cdf(x, df); }, [df](double x) { return chi2_pdf(x, df); },
        0.0, static_cast<double>(df) + 1.0);
}

double nc_chi2_pdf(double v, int p, double lambda) {
    if (p < 1) throw std::invalid_argument("nc_chi2_pdf: p must be >= 1");
    if (v < 0.0 || lambda < 0.0) throw std::invalid_argument("nc_chi2_pdf: bad arguments");
    if (lambda == 0.0) return chi2_pdf(v, p);
    if (v == 0.0) return (p < 2) ? std::numeric_limits<double>::infinity()
                                 : (p == 2 ? 0.5 * std::exp(-0.5 * lambda) : 0.0);

    double half_lambda = 0.5 * lambda;
    double half_v = 0.5 * v;
    double half_p = 0.5 * p;
    long i0 = std::lround(std::floor(half_lambda));

    // Poisson weight and central chi^2_{p+2i} density at the modal index,
    // both computed in log space to dodge underflow for large lambda or v.
    double log_pois0 = i0 * std::log(half_lambda) - half_lambda - std::lgamma(i0 + 1.0);
    auto log_central = [&](long i) {
        return (half_p + i - 1.0) * std::log(half_v) - half_v - std::lgamma(half_p + i) -
               std::log(2.0);
    };

    double pois = std::exp(log_pois0);
    double dens = std::exp(log_central(i0));
    double sum = pois * dens;

    // Forward in the mixture index.
    double pf = pois, cf = dens;
    for (long i = i0 + 1; i <= i0 + kMaxIter * 10; ++i) {
        pf *= half_lambda / i;
        cf *= half_v / (half_p + i - 1.0);
        double term = pf * cf;
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    // Backward.
    double pb = pois, cb = dens;
    for (long i = i0 - 1; i >= 0; --i) {
        pb *= (i + 1.0) / half_lambda;
        cb *= (half_p + i) / half_v;
        double term = pb * cb;
        sum += term;
        if (term < 1e-16 * sum) break;
    }
    return sum;
}

double nc_chi2_cdf(double v, int p, double lambda) {
    if (p < 1) throw std::invalid_argument("nc_chi2_cdf: p must be >= 1");
    if (v < 0.0 || lambda < 0.0) throw std::invalid_argument("nc_chi2_cdf: bad arguments");
    if (lambda == 0.0) return chi2_cdf(v, p);
    if (v == 0.0) return 0.0;

    double half_lambda = 0.5 * lambda;
    double half_v = 0.5 * v;
    double half_p = 0.5 * p;
    long i0 = std::lround(std::floor(half_lambda));

    double pois = std::exp(i0 * std::log(half_lambda) - half_lambda - std::lgamma(i0 + 1.0));
    // Central CDF term G_i = P(half_p + i, half_v) and the increment
    // g_i = P(a, y) - P(a+1, y) = y^a e^{-y} / Gamma(a+1) at a = half_p + i.
    double central = gamma_p(half_p + i0, half_v);
    double inc = std::exp((half_p + i0) * std::log(half_v) - half_v - std::lgamma(half_p + i0 + 1.0));

    double sum = pois * central;

    double pf = pois, gf = central, incf = inc;
    for (long i = i0 + 1; i <= i0 + kMaxIter * 10; ++i) {
        pf *= half_lambda / i;
        gf = std::max(0.0, gf - incf);
        incf *= half_v / (half_p + i);
        double term = pf * gf;
        sum += term;
        // gf decays toward 0 as i grows; both factors are eventually tiny.
        if (term < 1e-16 * sum && pf < 1e-16) break;
        if (term < 1e-18 * sum) break;
    }
    double pb = pois, gb = central, incb = inc;
    for (long i = i0 - 1; i >= 0; --i) {
        pb *= (i + 1.0) / half_lambda;
        incb *= (half_p + i + 1.0) / half_v;
        gb = std::min(1.0, gb + incb);
        double term = pb * gb;
        sum += term;
        if (term < 1e-16 * sum && pb < 1e-16 * pois) break;
    }
    return std::min(1.0, sum);
}

double f_cdf(double x, int df1, int df2) {
    if (df1 < 1 || df2 < 1) throw std::invalid_argument("f_cdf: df must be >= 1");
    if (x <= 0.0) return 0.0;
    double t = df1 * x / (df1 * x + df2);
    return incomplete_beta(0.5 * df1, 0.5 * df2, t);
}

double f_quantile(double q, int df1, int df2) {
    if (df1 < 1 || df2 < 1) throw std::invalid_argument("f_quantile: df must be >= 1");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("f_quantile: q must be in (0,1)");
    auto cdf = [df1, df2](double x) { return f_cdf(x, df1, df2); };
    auto pdf = [df1, df2](double x) {
        if (x <= 0.0) return 0.0;
        double a = 0.5 * df1, b = 0.5 * df2;
        double r = static_cast<double>(df1) / df2;
        double lf = a * std::log(r) + (a - 1.0) * std::log(x) -
                    (a + b) * std::log1p(r * x) - std::log(beta_function(a, b));
        return std::exp(lf);
    };
    return invert_cdf(q, cdf, pdf, 0.0, 2.0);
}

double direction_density(double l, int p) {
    if (p < 3) throw std::invalid_argument("direction_density: p must be >= 3");
    if (l < -1.0 || l > 1.0) return 0.0;
    double base = std::sqrt(std::max(0.0, 1.0 - l * l));
    return std::pow(base, p - 3) / beta_function(0.5, 0.5 * (p - 1));
}

double ScaledChiDist::cdf(double w) const {
    if (w <= 0.0) return 0.0;
    return chi2_cdf(m * w * w, m);
}

double ScaledChiDist::pdf(double w) const {
    if (w <= 0.0) return 0.0;
    return 2.0 * m * w * chi2_pdf(m * w * w, m);
}

double ScaledChiDist::quantile(double q) const {
    return std::sqrt(chi2_quantile(q, m) / m);
}

double ScaledChiDist::moment(int p) const {
    return std::pow(2.0 / m, 0.5 * p) *
           std::exp(std::lgamma(0.5 * (p + m)) - std::lgamma(0.5 * m));
}

}  // namespace rcs
