#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace furst {

// Mergeable (sum, sum of squares, count) accumulator.
struct Accumulator {
    double sum = 0.0;
    double sum_sq = 0.0;
    long long n = 0;

    void add(double x) {
        sum += x;
        sum_sq += x * x;
        ++n;
    }
    void merge(const Accumulator& o) {
        sum += o.sum;
        sum_sq += o.sum_sq;
        n += o.n;
    }
    double mean() const { return n > 0 ? sum / double(n) : 0.0; }
    double variance() const {
        if (n < 2) return 0.0;
        double m = mean();
        double v = (sum_sq - double(n) * m * m) / double(n - 1);
        return v > 0.0 ? v : 0.0;
    }
    double stderr_mean() const { return n > 0 ? std::sqrt(variance() / double(n)) : 0.0; }
};

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_stderr = 0.0;
};

inline LineFit least_squares(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 2)
        throw std::invalid_argument("least_squares: need two aligned points");
    std::size_t n = xs.size();
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    double mx = sx / double(n), my = sy / double(n);
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (xs[i] - mx) * (xs[i] - mx);
        sxy += (xs[i] - mx) * (ys[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("least_squares: degenerate abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    if (n > 2) {
        double rss = 0;
        for (std::size_t i = 0; i < n; ++i) {
            double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
            rss += r * r;
        }
        fit.slope_stderr = std::sqrt(rss / double(n - 2) / sxx);
    }
    return fit;
}

// Wilson score interval for a binomial proportion.
inline std::pair<double, double> wilson_interval(long long k, long long n, double z = 1.959963984540054) {
    if (n <= 0) return {0.0, 1.0};
    double p = double(k) / double(n);
    double z2 = z * z;
    double denom = 1.0 + z2 / double(n);
    double center = (p + z2 / (2.0 * double(n))) / denom;
    double half = z * std::sqrt(p * (1.0 - p) / double(n) + z2 / (4.0 * double(n) * double(n))) / denom;
    double lo = center - half, hi = center + half;
    if (lo < 0) lo = 0;
    if (hi > 1) hi = 1;
    return {lo, hi};
}

inline double median_of(std::vector<double> v) {
    if (v.empty()) throw std::invalid_argument("median_of: empty");
    std::size_t n = v.size();
    std::nth_element(v.begin(), v.begin() + n / 2, v.end());
    double hi = v[n / 2];
    if (n % 2 == 1) return hi;
    std::nth_element(v.begin(), v.begin() + n / 2 - 1, v.end());
    return 0.5 * (hi + v[n / 2 - 1]);
}

} // namespace furst
