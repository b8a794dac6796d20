#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace respro::detail {

/// Neumaier-compensated accumulator. One running sum plus a correction term;
/// `value()` folds the correction back in.
class CompensatedSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            comp_ += (sum_ - t) + x;
        } else {
            comp_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const noexcept { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

inline double compensated_sum(std::span<const double> xs) noexcept {
    CompensatedSum s;
    for (double x : xs) s.add(x);
    return s.value();
}

inline double mean(std::span<const double> xs) noexcept {
    return compensated_sum(xs) / static_cast<double>(xs.size());
}

/// Population standard deviation (divisor N), two-pass.
inline double population_std(std::span<const double> xs) noexcept {
    const double m = mean(xs);
    CompensatedSum ss;
    for (double x : xs) {
        const double d = x - m;
        ss.add(d * d);
    }
    return std::sqrt(ss.value() / static_cast<double>(xs.size()));
}

/// Median of absolute values; midpoint of the two central order statistics
/// for even counts.
inline double median_abs(std::span<const double> xs) {
    std::vector<double> a(xs.size());
    std::transform(xs.begin(), xs.end(), a.begin(), [](double x) { return std::abs(x); });
    const std::size_t n = a.size();
    const std::size_t mid = n / 2;
    std::nth_element(a.begin(), a.begin() + mid, a.end());
    const double hi = a[mid];
    if (n % 2 == 1) return hi;
    const double lo = *std::max_element(a.begin(), a.begin() + mid);
    return 0.5 * (lo + hi);
}

/// Pearson product-moment correlation. Symmetric in its arguments by
/// construction: every term commutes.
inline double pearson(std::span<const double> a, std::span<const double> b) noexcept {
    const double ma = mean(a);
    const double mb = mean(b);
    CompensatedSum sab, saa, sbb;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double da = a[i] - ma;
        const double db = b[i] - mb;
        sab.add(da * db);
        saa.add(da * da);
        sbb.add(db * db);
    }
    return sab.value() / std::sqrt(saa.value() * sbb.value());
}

constexpr double square(double x) noexcept { return x * x; }
constexpr double cube(double x) noexcept { return x * x * x; }

}  // namespace respro::detail
