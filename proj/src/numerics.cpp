#include "aztec/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace aztec {

namespace {

double gamma_p_series(double s, double x) {
    double term = 1.0 / s;
    double sum = term;
    for (int k = 1; k < 10000; ++k) {
        term *= x / (s + k);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double gamma_q_cf(double s, double x) {
    // Lentz continued fraction for Q(s,x).
    const double tiny = 1e-300;
    double b = x + 1.0 - s;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        double an = -double(i) * (double(i) - s);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x + s * std::log(x) - std::lgamma(s));
}

double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double qab = a + b, qap = a + 1.0, qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m < 10000; ++m) {
        int m2 = 2 * m;
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
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-16) break;
    }
    return h;
}

}  // namespace

double gamma_p(double s, double x) {
    if (x < 0 || s <= 0) throw std::invalid_argument("gamma_p: bad arguments");
    if (x == 0) return 0.0;
    if (x < s + 1.0) return gamma_p_series(s, x);
    return 1.0 - gamma_q_cf(s, x);
}

double beta_inc(double a, double b, double x) {
    if (x <= 0) return 0.0;
    if (x >= 1) return 1.0;
    double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log(1.0 - x));
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                          b * std::log(1.0 - x) + a * std::log(x)) *
                     beta_cf(b, a, 1.0 - x) / b;
}

double clopper_pearson_upper(long k, long n, double conf) {
    if (k >= n) return 1.0;
    // Upper bound solves I_p(k+1, n-k) = conf, i.e. P[Bin(n,p) <= k] = 1-conf.
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (beta_inc(double(k + 1), double(n - k), mid) < conf)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

Chi2Result chi2_gof(const std::vector<long>& counts, const std::vector<double>& probs) {
    if (counts.size() != probs.size()) throw std::invalid_argument("chi2_gof: size mismatch");
    long n = 0;
    for (long c : counts) n += c;
    double stat = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        double e = probs[i] * double(n);
        if (e <= 0) {
            if (counts[i] != 0) stat = std::numeric_limits<double>::infinity();
            continue;
        }
        double d = double(counts[i]) - e;
        stat += d * d / e;
    }
    Chi2Result r;
    r.statistic = stat;
    r.df = double(counts.size() - 1);
    r.p_value = std::isfinite(stat) ? chi2_sf(stat, r.df) : 0.0;
    return r;
}

Chi2Result chi2_gof_binned(const std::vector<long>& counts, const std::vector<double>& probs,
                           double min_expected) {
    if (counts.size() != probs.size()) throw std::invalid_argument("chi2_gof_binned: size mismatch");
    long n = 0;
    for (long c : counts) n += c;
    std::vector<long> bc;
    std::vector<double> bp;
    long pool_count = 0;
    double pool_prob = 0.0;
    for (size_t i = 0; i < counts.size(); ++i) {
        if (probs[i] * double(n) < min_expected) {
            pool_count += counts[i];
            pool_prob += probs[i];
        } else {
            bc.push_back(counts[i]);
            bp.push_back(probs[i]);
        }
    }
    if (pool_prob > 0.0) {
        bc.push_back(pool_count);
        bp.push_back(pool_prob);
    }
    return chi2_gof(bc, bp);
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    nodes.resize(n);
    weights.resize(n);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::fabs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * pp * pp);
    }
}

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("ls_slope: bad input");
    double mx = 0, my = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(x.size());
    my /= double(x.size());
    double num = 0, den = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace aztec
