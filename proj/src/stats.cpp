#include "idiobot/stats.hpp"

#include <cmath>
#include <limits>

#include "idiobot/errors.hpp"

namespace idiobot {

namespace {

double log_beta(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

// Continued fraction for the incomplete beta function, evaluated with the
// modified Lentz algorithm. Converges quickly for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double x, double a, double b) {
    constexpr double kTiny = 1e-300;
    constexpr double kEps = 1e-15;
    constexpr int kMaxIterations = 200000;

    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double result = d;

    for (int m = 1; m <= kMaxIterations; ++m) {
        const double dm = static_cast<double>(m);
        // even term
        double numerator = dm * (b - dm) * x / ((a + 2.0 * dm - 1.0) * (a + 2.0 * dm));
        d = 1.0 + numerator * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + numerator / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        result *= d * c;
        // odd term
        numerator = -(a + dm) * (a + b + dm) * x / ((a + 2.0 * dm) * (a + 2.0 * dm + 1.0));
        d = 1.0 + numerator * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + numerator / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double delta = d * c;
        result *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return result;
}

struct SampleMoments {
    double mean = 0.0;
    double variance = 0.0; // unbiased
    std::size_t n = 0;
};

SampleMoments moments(std::span<const double> xs) {
    SampleMoments m;
    m.n = xs.size();
    for (double x : xs) m.mean += x;
    m.mean /= static_cast<double>(m.n);
    for (double x : xs) m.variance += (x - m.mean) * (x - m.mean);
    m.variance /= static_cast<double>(m.n - 1);
    return m;
}

double two_tailed_p(double t, double df) { return 2.0 * student_t_cdf(-std::fabs(t), df); }

} // namespace

double regularized_incomplete_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0) || std::isnan(x))
        return std::numeric_limits<double>::quiet_NaN();
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(x, a, b) / a;
    return 1.0 - std::exp(b * std::log1p(-x) + a * std::log(x) - log_beta(a, b)) *
                     beta_continued_fraction(1.0 - x, b, a) / b;
}

double student_t_cdf(double x, double df) {
    if (!(df > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    if (x == 0.0) return 0.5;
    const double tail = 0.5 * regularized_incomplete_beta(df / (df + x * x), df / 2.0, 0.5);
    return x > 0.0 ? 1.0 - tail : tail;
}

TTestResult welch_t_test(std::span<const double> a, std::span<const double> b) {
    if (a.size() < 2 || b.size() < 2)
        throw ValidationError("welch t-test needs at least two values per sample");
    const SampleMoments ma = moments(a);
    const SampleMoments mb = moments(b);
    const double va = ma.variance / static_cast<double>(ma.n);
    const double vb = mb.variance / static_cast<double>(mb.n);
    const double se2 = va + vb;

    TTestResult result;
    if (se2 <= 0.0) {
        // no variance anywhere: equal means are indistinguishable, distinct
        // means are infinitely separated
        result.df = static_cast<double>(ma.n + mb.n - 2);
        if (ma.mean == mb.mean) return result; // t = 0, p = 1
        result.t = ma.mean > mb.mean ? std::numeric_limits<double>::infinity()
                                     : -std::numeric_limits<double>::infinity();
        result.p = 0.0;
        return result;
    }
    result.t = (ma.mean - mb.mean) / std::sqrt(se2);
    result.df = se2 * se2 /
                (va * va / static_cast<double>(ma.n - 1) + vb * vb / static_cast<double>(mb.n - 1));
    result.p = two_tailed_p(result.t, result.df);
    return result;
}

TTestResult paired_t_test(std::span<const double> differences) {
    if (differences.size() < 2) throw ValidationError("paired t-test needs at least two differences");
    const SampleMoments m = moments(differences);
    if (m.variance <= 0.0) throw ValidationError("paired t-test on zero-variance differences");
    TTestResult result;
    result.df = static_cast<double>(m.n - 1);
    result.t = m.mean / std::sqrt(m.variance / static_cast<double>(m.n));
    result.p = two_tailed_p(result.t, result.df);
    return result;
}

} // namespace idiobot
