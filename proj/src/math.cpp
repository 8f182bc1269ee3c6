#include "spotvol/math.hpp"

#include <cmath>
#include <limits>

#include "spotvol/errors.hpp"

namespace spotvol::math {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kSqrt2 = 1.414213562373095048801688724209698079;

// Series expansion of P(a, x), valid for x < a + 1.
double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    double ap = a;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a, x), valid for x >= a + 1 (modified Lentz).
double gamma_q_contfrac(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for the incomplete beta (modified Lentz).
double betacf(double a, double b, double x) {
    const double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 500; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double norm_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi); }

double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw DomainError("norm_quantile: p outside [0, 1]");
    }
    // Acklam's rational approximation, then one Halley refinement.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    const double e = norm_cdf(x) - p;
    const double u = e / norm_pdf(x);
    x -= u / (1.0 + 0.5 * x * u);
    return x;
}

double reg_lower_gamma(double a, double x) {
    if (a <= 0.0 || x < 0.0) throw DomainError("reg_lower_gamma: invalid arguments");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_contfrac(a, x);
}

double chi2_sf(double x, double df) {
    if (df <= 0.0) throw DomainError("chi2_sf: df must be positive");
    if (x <= 0.0) return 1.0;
    if (x < 0.5 * df + 1.0) return 1.0 - gamma_p_series(0.5 * df, 0.5 * x);
    return gamma_q_contfrac(0.5 * df, 0.5 * x);
}

double reg_inc_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0) throw DomainError("reg_inc_beta: a, b must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * betacf(a, b, x) / a;
    return 1.0 - front * betacf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double nu) {
    if (nu <= 0.0) throw DomainError("student_t_cdf: nu must be positive");
    if (t == 0.0) return 0.5;
    const double x = nu / (nu + t * t);
    const double half_tail = 0.5 * reg_inc_beta(0.5 * nu, 0.5, x);
    return t > 0.0 ? 1.0 - half_tail : half_tail;
}

double student_t_quantile(double p, double nu) {
    if (nu <= 0.0) throw DomainError("student_t_quantile: nu must be positive");
    if (!(p > 0.0 && p < 1.0)) {
        if (p == 0.0) return -std::numeric_limits<double>::infinity();
        if (p == 1.0) return std::numeric_limits<double>::infinity();
        throw DomainError("student_t_quantile: p outside [0, 1]");
    }
    if (p == 0.5) return 0.0;
    // Newton from the normal quantile, with a bisection safety bracket.
    double lo = -1e10, hi = 1e10;
    double x = norm_quantile(p);
    for (int it = 0; it < 100; ++it) {
        const double f = student_t_cdf(x, nu) - p;
        if (f > 0.0) hi = std::min(hi, x);
        else lo = std::max(lo, x);
        const double pdf = std::exp(std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
                                    0.5 * std::log(nu * kPi) -
                                    0.5 * (nu + 1.0) * std::log1p(x * x / nu));
        double step = pdf > 0.0 ? f / pdf : 0.0;
        double next = x - step;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) < 1e-14 * (1.0 + std::fabs(x))) return next;
        x = next;
    }
    return x;
}

OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y) {
    if (X.rows() != y.size()) throw SpecMismatch("ols: X and y row counts differ");
    if (X.rows() <= X.cols()) throw InsufficientData("ols: need more rows than columns");
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    if (qr.rank() < X.cols()) throw SingularDesign("ols: rank-deficient design matrix");
    OlsFit fit;
    fit.n = static_cast<int>(X.rows());
    fit.k = static_cast<int>(X.cols());
    fit.coef = qr.solve(y);
    Eigen::VectorXd resid = y - X * fit.coef;
    fit.ssr = resid.squaredNorm();
    fit.sigma2 = fit.ssr / (fit.n - fit.k);
    const Eigen::MatrixXd xtx_inv = (X.transpose() * X).inverse();
    fit.std_err = (fit.sigma2 * xtx_inv.diagonal()).cwiseMax(0.0).cwiseSqrt();
    fit.residuals.assign(resid.data(), resid.data() + resid.size());
    return fit;
}

double Rng::normal() {
    // Box-Muller on the specified mt19937_64 stream; spare value discarded so
    // draw order is independent of call history.
    const double u1 = uniform();
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

double Rng::gamma(double shape) {
    if (!(shape > 0.0)) throw DomainError("Rng::gamma: shape must be positive");
    if (shape < 1.0) {
        // Boost via G(a) = G(a+1) * U^{1/a}.
        const double g = gamma(shape + 1.0);
        return g * std::pow(uniform(), 1.0 / shape);
    }
    // Marsaglia-Tsang squeeze method.
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x, v;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
        if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
    }
}

double Rng::student_t_unit(double nu) {
    if (!(nu > 2.0)) throw DomainError("Rng::student_t_unit: nu must exceed 2");
    const double z = normal();
    const double w = chi_square(nu) / nu;
    return z / std::sqrt(w) * std::sqrt((nu - 2.0) / nu);
}

}  // namespace spotvol::math
