#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace spotvol::math {

// --- distribution functions -------------------------------------------------

double norm_cdf(double x);
double norm_pdf(double x);
// Inverse standard normal CDF, accurate to ~1e-15 after refinement.
double norm_quantile(double p);

// Regularized lower incomplete gamma P(a, x).
double reg_lower_gamma(double a, double x);
// Upper-tail probability of a chi-square(df) variate.
double chi2_sf(double x, double df);

// Regularized incomplete beta I_x(a, b).
double reg_inc_beta(double a, double b, double x);

// Student-t with nu degrees of freedom (the textbook, unit-scale form).
double student_t_cdf(double t, double nu);
double student_t_quantile(double p, double nu);

// --- ordinary least squares --------------------------------------------------

struct OlsFit {
    Eigen::VectorXd coef;
    Eigen::VectorXd std_err;
    std::vector<double> residuals;
    double ssr = 0.0;     // sum of squared residuals
    double sigma2 = 0.0;  // ssr / (n - k)
    int n = 0;
    int k = 0;
};

// Throws SingularDesign when X is rank-deficient.
OlsFit ols(const Eigen::MatrixXd& X, const Eigen::VectorXd& y);

// --- random number generation -------------------------------------------------

// Deterministic across platforms: draws are derived from the fully specified
// mt19937_64 stream, not from implementation-defined <random> distributions.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    // Uniform on (0, 1).
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
    }

    double normal();
    double gamma(double shape);           // unit scale, shape > 0
    double chi_square(double df) { return 2.0 * gamma(0.5 * df); }
    // Student-t draw scaled to unit variance (requires nu > 2).
    double student_t_unit(double nu);

private:
    std::mt19937_64 eng_;
};

}  // namespace spotvol::math
