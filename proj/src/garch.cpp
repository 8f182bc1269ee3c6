#include "spotvol/garch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "spotvol/math.hpp"

namespace spotvol {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kBadValue = std::numeric_limits<double>::infinity();

double mean_square(const double* v, std::size_t n) {
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += v[i] * v[i];
    return sum / static_cast<double>(n);
}

void check_regressor_lengths(const std::vector<Regressor>& regs, std::size_t n, const char* where) {
    for (const auto& r : regs) {
        if (r.values.size() < n) {
            throw SpecMismatch(std::string(where) + ": regressor '" + r.name + "' has " +
                               std::to_string(r.values.size()) + " values, needs " +
                               std::to_string(n));
        }
    }
}

void expect_count(std::size_t got, int want, const char* what) {
    if (got != static_cast<std::size_t>(want)) {
        throw SpecMismatch(std::string("param count mismatch for ") + what + ": got " +
                           std::to_string(got) + ", spec wants " + std::to_string(want));
    }
}

void validate_mean_shapes(const ParamVector& params, const MeanSpec& mean) {
    if (mean.ar < 0 || mean.ma < 0) throw SpecMismatch("mean orders must be nonnegative");
    expect_count(params.ar.size(), mean.ar, "AR");
    expect_count(params.ma.size(), mean.ma, "MA");
    expect_count(params.beta.size(), static_cast<int>(mean.regressors.size()), "mean regressors");
}

void validate_variance_shapes(const ParamVector& params, const VarianceSpec& var) {
    if (var.p < 1 || var.q < 1) throw SpecMismatch("variance orders P, Q must be >= 1");
    expect_count(params.garch.size(), var.p, "GARCH");
    expect_count(params.arch.size(), var.q, "ARCH");
    expect_count(params.leverage.size(), var.has_leverage() ? var.q : 0, "leverage");
    expect_count(params.vreg.size(), static_cast<int>(var.regressors.size()),
                 "variance regressors");
}

double log_density(double eps, double h, bool student, double nu) {
    if (student) {
        const double s = std::sqrt(h * (nu - 2.0) / nu);
        const double x = eps / s;
        return std::lgamma(0.5 * (nu + 1.0)) - std::lgamma(0.5 * nu) -
               0.5 * std::log(nu * kPi) - std::log(s) -
               0.5 * (nu + 1.0) * std::log1p(x * x / nu);
    }
    return -0.5 * (std::log(2.0 * kPi) + std::log(h) + eps * eps / h);
}

// ARMAX residual recursion; eps must be sized like y. The first max(R, M)
// entries stay zero (conditioning sample).
void residuals_into(const ParamVector& params, const std::vector<double>& y, const MeanSpec& spec,
                    std::vector<double>& eps) {
    const std::size_t n = y.size();
    std::fill(eps.begin(), eps.end(), 0.0);
    for (std::size_t t = static_cast<std::size_t>(spec.presample()); t < n; ++t) {
        double fitted = spec.constant ? params.c : 0.0;
        for (int i = 1; i <= spec.ar; ++i) fitted += params.ar[i - 1] * y[t - i];
        for (int j = 1; j <= spec.ma; ++j) {
            fitted += params.ma[j - 1] * (t >= static_cast<std::size_t>(j) ? eps[t - j] : 0.0);
        }
        for (std::size_t x = 0; x < spec.regressors.size(); ++x) {
            fitted += params.beta[x] * spec.regressors[x].values[t];
        }
        eps[t] = y[t] - fitted;
    }
}

// Conditional-variance recursion over eps[0..n). Variance regressors are read
// at values[t + reg_offset]. Returns false if any sigma_t^2 fails to be a
// positive finite number. Presample: sigma^2 = eps^2 = v0, gjr indicator 1/2,
// egarch z-terms 0.
bool variance_into(const ParamVector& params, const double* e, std::size_t n,
                   const VarianceSpec& spec, std::size_t reg_offset, double nu,
                   const InnovationDist& dist, double v0, std::vector<double>& h) {
    h.assign(n, 0.0);
    if (spec.family == VarianceFamily::Egarch) {
        if (!(v0 > 0.0)) return false;
        const double ez = expected_abs_z(dist, nu);
        const double log_v0 = std::log(v0);
        std::vector<double> z(n, 0.0);
        for (std::size_t t = 0; t < n; ++t) {
            double lh = params.k;
            for (int i = 1; i <= spec.p; ++i) {
                lh += params.garch[i - 1] *
                      (t >= static_cast<std::size_t>(i) ? std::log(h[t - i]) : log_v0);
            }
            for (int j = 1; j <= spec.q; ++j) {
                if (t >= static_cast<std::size_t>(j)) {
                    const double zl = z[t - j];
                    lh += params.arch[j - 1] * (std::fabs(zl) - ez) + params.leverage[j - 1] * zl;
                }
            }
            for (std::size_t m = 0; m < spec.regressors.size(); ++m) {
                lh += params.vreg[m] * spec.regressors[m].values[t + reg_offset];
            }
            const double ht = std::exp(lh);
            if (!(ht > 0.0) || !std::isfinite(ht)) return false;
            h[t] = ht;
            z[t] = e[t] / std::sqrt(ht);
        }
        return true;
    }
    const bool gjr = spec.family == VarianceFamily::Gjr;
    for (std::size_t t = 0; t < n; ++t) {
        double ht = params.k;
        for (int i = 1; i <= spec.p; ++i) {
            ht += params.garch[i - 1] * (t >= static_cast<std::size_t>(i) ? h[t - i] : v0);
        }
        for (int j = 1; j <= spec.q; ++j) {
            if (t >= static_cast<std::size_t>(j)) {
                const double el = e[t - j];
                ht += params.arch[j - 1] * el * el;
                if (gjr && el < 0.0) ht += params.leverage[j - 1] * el * el;
            } else {
                ht += params.arch[j - 1] * v0;
                if (gjr) ht += 0.5 * params.leverage[j - 1] * v0;
            }
        }
        for (std::size_t m = 0; m < spec.regressors.size(); ++m) {
            ht += params.vreg[m] * spec.regressors[m].values[t + reg_offset];
        }
        if (!(ht > 0.0) || !std::isfinite(ht)) return false;
        h[t] = ht;
    }
    return true;
}

}  // namespace

std::string family_name(VarianceFamily f) {
    switch (f) {
        case VarianceFamily::Garch: return "garch";
        case VarianceFamily::Egarch: return "egarch";
        case VarianceFamily::Gjr: return "gjr";
    }
    return "?";
}

VarianceFamily family_from_name(const std::string& name) {
    if (name == "garch") return VarianceFamily::Garch;
    if (name == "egarch") return VarianceFamily::Egarch;
    if (name == "gjr") return VarianceFamily::Gjr;
    throw DomainError("unknown variance family '" + name + "'");
}

double expected_abs_z(const InnovationDist& dist, double nu) {
    if (dist.kind == InnovationDist::Normal) return std::sqrt(2.0 / kPi);
    if (!(nu > 2.0)) throw DomainError("expected_abs_z: nu must exceed 2");
    return std::sqrt((nu - 2.0) / kPi) *
           std::exp(std::lgamma(0.5 * (nu - 1.0)) - std::lgamma(0.5 * nu));
}

double ParamVector::persistence(const VarianceSpec& spec) const {
    double sum = 0.0;
    for (double a : arch) sum += a;
    for (double g : garch) sum += g;
    if (spec.family == VarianceFamily::Gjr) {
        for (double l : leverage) sum += 0.5 * l;
    }
    return sum;
}

double resolve_nu(const ParamVector& params, const InnovationDist& dist) {
    if (dist.kind != InnovationDist::StudentT) return 0.0;
    return params.nu.value_or(dist.nu);
}

void validate_variance(const ParamVector& params, const VarianceSpec& var,
                       const InnovationDist& dist) {
    validate_variance_shapes(params, var);
    if (var.family != VarianceFamily::Egarch) {
        if (!(params.k > 0.0)) throw DomainError("variance intercept k must be positive");
        for (double g : params.garch) {
            if (g < 0.0) throw DomainError("GARCH coefficients must be nonnegative");
        }
        for (double a : params.arch) {
            if (a < 0.0) throw DomainError("ARCH coefficients must be nonnegative");
        }
        if (var.family == VarianceFamily::Gjr) {
            for (int j = 0; j < var.q; ++j) {
                if (params.arch[j] + params.leverage[j] < 0.0) {
                    throw DomainError("gjr requires A_j + L_j >= 0");
                }
            }
        }
    }
    if (dist.kind == InnovationDist::StudentT && !(resolve_nu(params, dist) > 2.0)) {
        throw DomainError("student_t innovations require nu > 2");
    }
}

void validate(const ParamVector& params, const MeanSpec& mean, const VarianceSpec& var,
              const InnovationDist& dist) {
    validate_mean_shapes(params, mean);
    validate_variance(params, var, dist);
}

ResidualPath mean_residuals(const ParamVector& params, const TimeSeries& y, const MeanSpec& spec) {
    if (y.has_missing()) throw DomainError("mean_residuals requires a complete series");
    validate_mean_shapes(params, spec);
    const std::size_t n = y.size();
    check_regressor_lengths(spec.regressors, n, "mean_residuals");
    const int pre = spec.presample();
    if (n <= static_cast<std::size_t>(pre)) {
        throw InsufficientData("mean_residuals: series shorter than conditioning sample");
    }
    std::vector<double> eps(n);
    residuals_into(params, y.values(), spec, eps);
    return {TimeSeries(y.dates(), std::move(eps), "resid(" + y.name() + ")"), pre};
}

VolPath variance_path(const ParamVector& params, const TimeSeries& eps, const VarianceSpec& spec,
                      const InnovationDist& dist, std::optional<double> presample_variance) {
    if (eps.has_missing()) throw DomainError("variance_path requires a complete series");
    validate_variance(params, spec, dist);
    const auto& e = eps.values();
    const std::size_t n = e.size();
    check_regressor_lengths(spec.regressors, n, "variance_path");

    const double v0 = presample_variance.value_or(mean_square(e.data(), n));
    if (!(v0 >= 0.0)) throw DomainError("presample variance must be nonnegative");

    std::vector<double> h;
    if (!variance_into(params, e.data(), n, spec, 0, resolve_nu(params, dist), dist, v0, h)) {
        throw VarianceNonPositive("conditional variance failed to stay positive and finite");
    }
    VolPath path;
    path.estimator = family_name(spec.family) + "(" + std::to_string(spec.p) + "," +
                     std::to_string(spec.q) + ")";
    path.dates = eps.dates();
    path.sigma.resize(n);
    for (std::size_t t = 0; t < n; ++t) path.sigma[t] = std::sqrt(h[t]);
    return path;
}

double log_likelihood(const ParamVector& params, const TimeSeries& y, const MeanSpec& mean,
                      const VarianceSpec& var, const InnovationDist& dist) {
    validate(params, mean, var, dist);
    check_regressor_lengths(mean.regressors, y.size(), "log_likelihood");
    check_regressor_lengths(var.regressors, y.size(), "log_likelihood");
    const double ll = detail::penalized_neg_loglik(params, y.values(), mean, var, dist);
    if (!std::isfinite(ll)) throw NonFinite("log likelihood is not finite");
    return -ll;
}

namespace detail {

double penalized_neg_loglik(const ParamVector& params, const std::vector<double>& y,
                            const MeanSpec& mean, const VarianceSpec& var,
                            const InnovationDist& dist) {
    const std::size_t n = y.size();
    const std::size_t pre = static_cast<std::size_t>(mean.presample());
    if (n < pre + 2) return kBadValue;

    std::vector<double> eps(n);
    residuals_into(params, y, mean, eps);
    const double* e = eps.data() + pre;
    const std::size_t n_eff = n - pre;

    const double nu = resolve_nu(params, dist);
    const bool student = dist.kind == InnovationDist::StudentT;
    if (student && !(nu > 2.0)) return kBadValue;

    const double v0 = mean_square(e, n_eff);
    std::vector<double> h;
    if (!variance_into(params, e, n_eff, var, pre, nu, dist, v0, h)) return kBadValue;

    double ll = 0.0;
    for (std::size_t t = 0; t < n_eff; ++t) ll += log_density(e[t], h[t], student, nu);
    if (!std::isfinite(ll)) return kBadValue;
    return -ll;
}

}  // namespace detail

TimeSeries simulate(const ParamVector& params, const MeanSpec& mean, const VarianceSpec& var,
                    const InnovationDist& dist, std::size_t n, std::uint64_t seed) {
    validate(params, mean, var, dist);
    const int pre = mean.presample();
    const std::size_t min_n =
        static_cast<std::size_t>(std::max({mean.ar, mean.ma, var.p, var.q}) + 1);
    if (n < min_n) throw InsufficientData("simulate: n must exceed the largest lag order");
    check_regressor_lengths(mean.regressors, n, "simulate");
    check_regressor_lengths(var.regressors, n, "simulate");

    const bool student = dist.kind == InnovationDist::StudentT;
    const double nu = resolve_nu(params, dist);
    const bool egarch = var.family == VarianceFamily::Egarch;
    const bool gjr = var.family == VarianceFamily::Gjr;
    const double ez = egarch ? expected_abs_z(dist, nu) : 0.0;

    // Starting variance level: the unconditional value, with the denominator
    // clamped so integrated and explosive parameter draws still start finite.
    double v0;
    if (egarch) {
        double gsum = 0.0;
        for (double g : params.garch) gsum += g;
        v0 = std::exp(params.k / std::max(1.0 - gsum, 0.05));
    } else {
        v0 = params.k / std::max(1.0 - params.persistence(var), 0.01);
    }
    const double log_v0 = std::log(std::max(v0, 1e-300));

    math::Rng rng(seed);
    std::vector<double> y(n, 0.0), eps(n, 0.0), h(n, 0.0), z(n, 0.0);
    for (std::size_t t = 0; t < n; ++t) {
        double ht;
        if (egarch) {
            double lh = params.k;
            for (int i = 1; i <= var.p; ++i) {
                lh += params.garch[i - 1] *
                      (t >= static_cast<std::size_t>(i) ? std::log(h[t - i]) : log_v0);
            }
            for (int j = 1; j <= var.q; ++j) {
                if (t >= static_cast<std::size_t>(j)) {
                    lh += params.arch[j - 1] * (std::fabs(z[t - j]) - ez) +
                          params.leverage[j - 1] * z[t - j];
                }
            }
            for (std::size_t m = 0; m < var.regressors.size(); ++m) {
                lh += params.vreg[m] * var.regressors[m].values[t];
            }
            ht = std::exp(lh);
        } else {
            ht = params.k;
            for (int i = 1; i <= var.p; ++i) {
                ht += params.garch[i - 1] * (t >= static_cast<std::size_t>(i) ? h[t - i] : v0);
            }
            for (int j = 1; j <= var.q; ++j) {
                if (t >= static_cast<std::size_t>(j)) {
                    const double el = eps[t - j];
                    ht += params.arch[j - 1] * el * el;
                    if (gjr && el < 0.0) ht += params.leverage[j - 1] * el * el;
                } else {
                    ht += params.arch[j - 1] * v0;
                    if (gjr) ht += 0.5 * params.leverage[j - 1] * v0;
                }
            }
            for (std::size_t m = 0; m < var.regressors.size(); ++m) {
                ht += params.vreg[m] * var.regressors[m].values[t];
            }
            if (!(ht > 0.0)) throw VarianceNonPositive("simulate: nonpositive variance");
        }
        if (!std::isfinite(ht)) throw NonFinite("simulate: variance overflow");
        h[t] = ht;

        if (t >= static_cast<std::size_t>(pre)) {
            z[t] = student ? rng.student_t_unit(nu) : rng.normal();
            eps[t] = std::sqrt(ht) * z[t];
        }

        double yt = mean.constant ? params.c : 0.0;
        for (int i = 1; i <= mean.ar; ++i) {
            if (t >= static_cast<std::size_t>(i)) yt += params.ar[i - 1] * y[t - i];
        }
        for (int j = 1; j <= mean.ma; ++j) {
            if (t >= static_cast<std::size_t>(j)) yt += params.ma[j - 1] * eps[t - j];
        }
        for (std::size_t x = 0; x < mean.regressors.size(); ++x) {
            yt += params.beta[x] * mean.regressors[x].values[t];
        }
        y[t] = yt + eps[t];
    }
    return TimeSeries::with_daily_index(std::move(y), "sim");
}

}  // namespace spotvol
