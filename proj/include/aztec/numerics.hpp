#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace aztec {

// Regularized lower incomplete gamma P(s,x); series for x < s+1, continued
// fraction otherwise (Lentz).
double gamma_p(double s, double x);
inline double gamma_q(double s, double x) { return 1.0 - gamma_p(s, x); }

// Survival function of the chi-squared distribution with df degrees of
// freedom, i.e. P[X >= x].
inline double chi2_sf(double x, double df) { return gamma_q(0.5 * df, 0.5 * x); }

// Regularized incomplete beta I_x(a,b).
double beta_inc(double a, double b, double x);

// One-sided Clopper-Pearson upper confidence bound for a binomial
// proportion: smallest p with P[Bin(n,p) <= k] <= 1-conf.
double clopper_pearson_upper(long k, long n, double conf);

struct Chi2Result {
    double statistic = 0.0;
    double df = 0.0;
    double p_value = 1.0;
};

// Pearson chi-squared goodness-of-fit of observed counts against expected
// probabilities (which must sum to ~1).
Chi2Result chi2_gof(const std::vector<long>& counts, const std::vector<double>& probs);

// Same test with categories of expected count below min_expected pooled
// into one bin, which keeps the chi-squared approximation valid for very
// skewed distributions.
Chi2Result chi2_gof_binned(const std::vector<long>& counts, const std::vector<double>& probs,
                           double min_expected = 5.0);

// Gauss-Legendre nodes/weights on [-1,1].
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights);

// Least-squares slope of y against x.
double ls_slope(const std::vector<double>& x, const std::vector<double>& y);

struct RunningStats {
    long n = 0;
    double sum = 0.0, sumsq = 0.0;
    void add(double v) {
        ++n;
        sum += v;
        sumsq += v * v;
    }
    void merge(const RunningStats& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
    }
    double mean() const { return n ? sum / n : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        double m = mean();
        return (sumsq - n * m * m) / (n - 1);
    }
    double stderr_mean() const { return n ? std::sqrt(variance() / n) : 0.0; }
};

class NonConvergence : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

}  // namespace aztec
