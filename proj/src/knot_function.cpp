#include "rcs/knot_function.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "rcs/distributions.hpp"

namespace rcs {

TailRule TailRule::james_stein_plus(int p) {
    if (p < 3) throw std::invalid_argument("TailRule: JamesSteinPlus needs p >= 3");
    return {Kind::JamesSteinPlus, 1.0 - 2.0 / p, p, 0};
}

TailRule TailRule::james_stein_plus_unknown(int p, int m) {
    if (p < 3 || m < 1) throw std::invalid_argument("TailRule: bad (p, m)");
    return {Kind::JamesSteinPlusUnknown, (1.0 - 2.0 / p) * (static_cast<double>(m) / (m + 2)), p, m};
}

TailRule TailRule::constant(double d) {
    if (!(d > 0.0)) throw std::invalid_argument("TailRule: constant must be positive");
    return {Kind::ConstantD, d, 0, 0};
}

double TailRule::operator()(double x) const {
    if (kind == Kind::ConstantD) return value;
    if (x <= 0.0) return 0.0;
    return std::max(0.0, 1.0 - value / (x * x));
}

TailRule TailRule::rescaled(double w) const {
    TailRule r = *this;
    if (kind != Kind::ConstantD) r.value = value * w * w;
    return r;
}

namespace {

// Fritsch-Carlson slopes: monotone data yields a monotone interpolant.
std::vector<double> pchip_slopes(const std::vector<double>& x, const std::vector<double>& y) {
    size_t n = x.size();
    std::vector<double> h(n - 1), delta(n - 1), m(n, 0.0);
    for (size_t i = 0; i + 1 < n; ++i) {
        h[i] = x[i + 1] - x[i];
        delta[i] = (y[i + 1] - y[i]) / h[i];
    }
    if (n == 2) {
        m[0] = m[1] = delta[0];
        return m;
    }
    for (size_t i = 1; i + 1 < n; ++i) {
        if (delta[i - 1] * delta[i] <= 0.0) {
            m[i] = 0.0;
        } else {
            double w1 = 2.0 * h[i] + h[i - 1];
            double w2 = h[i] + 2.0 * h[i - 1];
            m[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
        }
    }
    // One-sided three-point endpoint slopes with the usual shape limits.
    auto endpoint = [](double h0, double h1, double d0, double d1) {
        double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (s * d0 <= 0.0) return 0.0;
        if (d0 * d1 < 0.0 && std::fabs(s) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return s;
    };
    m[0] = endpoint(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = endpoint(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    return m;
}

}  // namespace

KnotFunction::KnotFunction(std::vector<double> knots, std::vector<double> values, TailRule tail)
    : knots_(std::move(knots)), values_(std::move(values)), tail_(tail) {
    if (knots_.size() < 2 || knots_.size() != values_.size())
        throw std::invalid_argument("KnotFunction: need matching knots/values, at least 2");
    if (knots_.front() != 0.0) throw std::invalid_argument("KnotFunction: first knot must be 0");
    for (size_t i = 0; i + 1 < knots_.size(); ++i) {
        if (!(knots_[i] < knots_[i + 1]))
            throw std::invalid_argument("KnotFunction: knots must be strictly increasing");
        if (values_[i + 1] < values_[i] - 1e-12)
            throw std::invalid_argument("KnotFunction: values must be nondecreasing");
    }
    // Tolerate representation-level noise in the monotonicity check above,
    // but interpolate exactly nondecreasing data.
    for (size_t i = 0; i + 1 < values_.size(); ++i)
        values_[i + 1] = std::max(values_[i + 1], values_[i]);
    double vk = tail_(knots_.back());
    if (std::fabs(values_.back() - vk) > 1e-8 * std::max(1.0, std::fabs(vk)))
        throw std::invalid_argument("KnotFunction: value at k must equal the tail at k");
    values_.back() = vk;  // continuity at k, exactly
    slopes_ = pchip_slopes(knots_, values_);
}

double KnotFunction::operator()(double x) const {
    if (x < 0.0) throw std::invalid_argument("KnotFunction: negative argument");
    if (x >= knots_.back()) return tail_(x);
    // Locate the knot interval; knot counts are single digits, scan wins.
    size_t i = 0;
    while (i + 2 < knots_.size() && x >= knots_[i + 1]) ++i;
    double h = knots_[i + 1] - knots_[i];
    double t = (x - knots_[i]) / h;
    double t2 = t * t, t3 = t2 * t;
    double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
    double h10 = t3 - 2.0 * t2 + t;
    double h01 = -2.0 * t3 + 3.0 * t2;
    double h11 = t3 - t2;
    return h00 * values_[i] + h * h10 * slopes_[i] + h01 * values_[i + 1] + h * h11 * slopes_[i + 1];
}

void KnotFunction::save(std::ostream& os) const {
    os.precision(17);
    switch (tail_.kind) {
        case TailRule::Kind::JamesSteinPlus:
            os << "tail js_plus " << tail_.p << "\n";
            break;
        case TailRule::Kind::JamesSteinPlusUnknown:
            os << "tail js_plus_unknown " << tail_.p << " " << tail_.m << "\n";
            break;
        case TailRule::Kind::ConstantD:
            os << "tail const " << tail_.value << "\n";
            break;
    }
    os << "knots " << knots_.size() << "\n";
    for (size_t i = 0; i < knots_.size(); ++i) os << knots_[i] << (i + 1 < knots_.size() ? ' ' : '\n');
    os << "values " << values_.size() << "\n";
    for (size_t i = 0; i < values_.size(); ++i)
        os << values_[i] << (i + 1 < values_.size() ? ' ' : '\n');
}

KnotFunction KnotFunction::load(std::istream& is) {
    std::string key;
    if (!(is >> key) || key != "tail") throw std::runtime_error("KnotFunction: expected 'tail'");
    std::string kind;
    is >> kind;
    TailRule tail = TailRule::constant(1.0);
    if (kind == "js_plus") {
        int p;
        if (!(is >> p)) throw std::runtime_error("KnotFunction: bad js_plus tail");
        tail = TailRule::james_stein_plus(p);
    } else if (kind == "js_plus_unknown") {
        int p, m;
        if (!(is >> p >> m)) throw std::runtime_error("KnotFunction: bad js_plus_unknown tail");
        tail = TailRule::james_stein_plus_unknown(p, m);
    } else if (kind == "const") {
        double d;
        if (!(is >> d)) throw std::runtime_error("KnotFunction: bad const tail");
        tail = TailRule::constant(d);
    } else {
        throw std::runtime_error("KnotFunction: unknown tail kind '" + kind + "'");
    }
    size_t n = 0;
    if (!(is >> key >> n) || key != "knots" || n < 2 || n > 1000)
        throw std::runtime_error("KnotFunction: bad knot count");
    std::vector<double> knots(n), values;
    for (auto& v : knots)
        if (!(is >> v)) throw std::runtime_error("KnotFunction: truncated knots");
    size_t nv = 0;
    if (!(is >> key >> nv) || key != "values" || nv != n)
        throw std::runtime_error("KnotFunction: bad value count");
    values.resize(nv);
    for (auto& v : values)
        if (!(is >> v)) throw std::runtime_error("KnotFunction: truncated values");
    return KnotFunction(std::move(knots), std::move(values), tail);
}

double radius_constant(int p, double alpha) {
    if (p < 1) throw std::invalid_argument("radius_constant: p must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("radius_constant: bad alpha");
    return std::sqrt(chi2_quantile(1.0 - alpha, p));
}

double radius_constant_unknown(int p, int m, double alpha) {
    if (p < 1 || m < 1) throw std::invalid_argument("radius_constant_unknown: bad df");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("radius_constant_unknown: bad alpha");
    return std::sqrt(p * f_quantile(1.0 - alpha, p, m));
}

namespace {

void check_increasing(const std::vector<double>& v, const char* what) {
    for (size_t i = 0; i + 1 < v.size(); ++i)
        if (!(v[i] < v[i + 1])) throw std::invalid_argument(std::string(what) + ": knots not increasing");
}

}  // namespace

std::vector<double> default_knots_a(int p, double k) {
    if (p < 3) throw std::invalid_argument("default_knots_a: p must be >= 3");
    double r0 = std::sqrt(1.0 - 2.0 / p);
    if (!(k > 2.0 * r0)) throw std::invalid_argument("default_knots_a: k too small");
    double tau = 0.5 * k - r0;
    std::vector<double> knots = {0.0,          r0,        r0 + tau / 10.0, r0 + 2.0 * tau / 10.0,
                                 r0 + 4.0 * tau / 10.0, 0.5 * k,  0.75 * k,        k};
    check_increasing(knots, "default_knots_a");
    return knots;
}

std::vector<double> default_knots_b(int p, double alpha, double k) {
    double d = radius_constant(p, alpha);
    double r0 = d / std::sqrt(static_cast<double>(p));
    if (!(r0 < 0.5 * k)) throw std::invalid_argument("default_knots_b: d/sqrt(p) must be < k/2");
    double xi = 0.5 * k - r0;
    std::vector<double> knots = {0.0, r0, r0 + xi / 3.0, r0 + 2.0 * xi / 3.0, 0.5 * k, 0.75 * k, k};
    check_increasing(knots, "default_knots_b");
    return knots;
}

std::vector<double> default_knots_a_tilde(int p, int m, double k) {
    if (p < 3 || m < 1) throw std::invalid_argument("default_knots_a_tilde: bad (p, m)");
    // Zero boundary of the shrinkage tail: sqrt((1 - 2/p) m/(m + 2)).
    double r0 = std::sqrt((1.0 - 2.0 / p) * (static_cast<double>(m) / (m + 2)));
    if (!(r0 < 0.5 * k)) throw std::invalid_argument("default_knots_a_tilde: k too small");
    double eta = 0.5 * k - r0;
    std::vector<double> knots = {0.0,
                                 r0,
                                 r0 + eta / 4.0,
                                 r0 + 2.0 * eta / 4.0,
                                 r0 + 3.0 * eta / 4.0,
                                 0.5 * k,
                                 k};
    check_increasing(knots, "default_knots_a_tilde");
    return knots;
}

std::vector<double> default_knots_b_tilde() { return {0.0, 2.0, 4.0, 6.0, 8.0, 10.0}; }

BaselineRadiusStar::BaselineRadiusStar(int p, double alpha) : p_(p) {
    if (p < 3) throw std::invalid_argument("BaselineRadiusStar: p must be >= 3");
    d_ = radius_constant(p, alpha);
    knee_ = d_ / std::sqrt(static_cast<double>(p));
    if (!(1.0 - (p - 2) / (d_ * d_) > 0.0))
        throw std::invalid_argument("BaselineRadiusStar: level too low for this p");
}

double BaselineRadiusStar::operator()(double x) const {
    double c;
    if (x <= knee_) {
        c = 1.0 - (p_ - 2) / (d_ * d_);
    } else {
        c = 1.0 - (p_ - 2) / (p_ * x * x);
    }
    return std::sqrt(c * (d_ * d_ - p_ * std::log(c)));
}

}  // namespace rcs
