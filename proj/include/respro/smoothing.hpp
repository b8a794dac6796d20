#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "respro/detail/numeric.hpp"
#include "respro/errors.hpp"
#include "respro/series.hpp"

namespace respro {

/// Parameters of the robust local-linear smoother. The window covers
/// min(span_years / N, 1) of the points unless an explicit fraction is given.
struct SmoothingConfig {
    double span_years = 20.0;
    std::optional<double> fraction_override;  // in (0, 1]
    int robustness_iterations = 3;

    void validate() const {
        if (!(span_years > 0.0)) throw std::invalid_argument("span_years must be > 0");
        if (fraction_override &&
            !(*fraction_override > 0.0 && *fraction_override <= 1.0))
            throw std::invalid_argument("fraction_override must be in (0, 1]");
        if (robustness_iterations < 0)
            throw std::invalid_argument("robustness_iterations must be >= 0");
    }

    /// Points per local window for a series of n points: ceil(f*n) clamped to
    /// [2, n]. Without an override f*n reduces to min(span_years, n), which is
    /// evaluated directly to keep the count exact.
    std::size_t window_size(std::size_t n) const {
        validate();
        const double nn = static_cast<double>(n);
        const double target = fraction_override
                                  ? std::ceil(*fraction_override * nn)
                                  : std::ceil(std::min(span_years, nn));
        return static_cast<std::size_t>(std::clamp(target, 2.0, nn));
    }
};

/// Smoothed counterpart of an AnnualSeries: one finite baseline value per
/// input year. Baseline values are not required to be positive.
class BaselineSeries {
public:
    BaselineSeries(std::string name, std::vector<int> years, std::vector<double> values)
        : name_(std::move(name)), years_(std::move(years)), values_(std::move(values)) {
        if (years_.size() != values_.size() || years_.empty())
            throw InvalidSeriesError("baseline series '" + name_ + "' is malformed");
        for (double v : values_)
            if (!std::isfinite(v))
                throw InvalidSeriesError("baseline series '" + name_ + "' has a non-finite value");
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return years_.size(); }
    std::span<const int> years() const noexcept { return years_; }
    std::span<const double> values() const noexcept { return values_; }
    int year(std::size_t i) const noexcept { return years_[i]; }
    double value(std::size_t i) const noexcept { return values_[i]; }

private:
    std::string name_;
    std::vector<int> years_;
    std::vector<double> values_;
};

namespace detail {

/// Contiguous index window of the k nearest neighbors of x[i], widened to
/// include every point at exactly the k-th neighbor distance. Candidates at
/// equal distance are taken from the left first.
struct Window {
    std::size_t lo;
    std::size_t hi;    // inclusive
    double radius;     // distance to the farthest included neighbor
};

inline Window nearest_window(std::span<const double> x, std::size_t i, std::size_t k) {
    const std::size_t n = x.size();
    std::size_t lo = i, hi = i;
    while (hi - lo + 1 < k) {
        const double dl = lo > 0 ? x[i] - x[lo - 1] : std::numeric_limits<double>::infinity();
        const double dr = hi + 1 < n ? x[hi + 1] - x[i] : std::numeric_limits<double>::infinity();
        if (dl <= dr) {
            --lo;
        } else {
            ++hi;
        }
    }
    const double radius = std::max(x[i] - x[lo], x[hi] - x[i]);
    while (lo > 0 && x[i] - x[lo - 1] <= radius) --lo;
    while (hi + 1 < n && x[hi + 1] - x[i] <= radius) ++hi;
    return {lo, hi, radius};
}

inline double tricube(double d, double dmax) noexcept {
    if (dmax <= 0.0) return 1.0;
    const double u = d / dmax;
    if (u >= 1.0) return 0.0;
    return cube(1.0 - cube(u));
}

/// Local linear fit at x[i] with weights u over [w.lo, w.hi], computed on
/// values relative to y[i] so a constant window reproduces y[i] exactly.
/// Returns the fitted value, or nothing when the weighted design is singular.
inline std::optional<double> weighted_linear_fit(std::span<const double> x,
                                                 std::span<const double> y,
                                                 std::span<const double> u,
                                                 const Window& w, std::size_t i) {
    CompensatedSum sw, st, sy;
    for (std::size_t j = w.lo; j <= w.hi; ++j) {
        sw.add(u[j]);
        st.add(u[j] * (x[j] - x[i]));
        sy.add(u[j] * (y[j] - y[i]));
    }
    const double wsum = sw.value();
    if (!(wsum > 0.0)) return std::nullopt;
    const double tbar = st.value() / wsum;
    const double ybar = sy.value() / wsum;
    CompensatedSum stt, sty;
    for (std::size_t j = w.lo; j <= w.hi; ++j) {
        const double dt = (x[j] - x[i]) - tbar;
        stt.add(u[j] * dt * dt);
        sty.add(u[j] * dt * ((y[j] - y[i]) - ybar));
    }
    const double vtt = stt.value();
    if (!(vtt > 0.0)) return std::nullopt;
    const double slope = sty.value() / vtt;
    return y[i] + (ybar - slope * tbar);
}

}  // namespace detail

/// Robust locally weighted linear regression (tricube distance weights,
/// bisquare robustness reweighting), fitted at every input year.
inline BaselineSeries smooth(const AnnualSeries& s, const SmoothingConfig& cfg = {}) {
    const std::size_t n = s.size();
    if (n < 2)
        throw TooShortError("series '" + s.name() + "': need at least 2 points to smooth, got " +
                            std::to_string(n));
    const std::size_t k = cfg.window_size(n);

    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = static_cast<double>(s.year(i));
    const std::span<const double> y = s.values();

    std::vector<double> robust(n, 1.0);
    std::vector<double> tri(n, 0.0);
    std::vector<double> u(n, 0.0);
    std::vector<double> fitted(n, 0.0);
    std::vector<double> residual(n, 0.0);

    for (int pass = 0; pass <= cfg.robustness_iterations; ++pass) {
        for (std::size_t i = 0; i < n; ++i) {
            const detail::Window w = detail::nearest_window(x, i, k);
            for (std::size_t j = w.lo; j <= w.hi; ++j) {
                tri[j] = detail::tricube(std::abs(x[j] - x[i]), w.radius);
                u[j] = tri[j] * robust[j];
            }
            auto fit = detail::weighted_linear_fit(x, y, u, w, i);
            if (!fit) {
                // Singular design or all robust weights zero: fall back to the
                // tricube-only weighted mean of the window.
                detail::CompensatedSum sw, sy;
                for (std::size_t j = w.lo; j <= w.hi; ++j) {
                    sw.add(tri[j]);
                    sy.add(tri[j] * (y[j] - y[i]));
                }
                if (!(sw.value() > 0.0))
                    throw DegenerateWindowError("series '" + s.name() + "': window at year " +
                                                std::to_string(s.year(i)) + " carries no weight");
                fit = y[i] + sy.value() / sw.value();
            }
            fitted[i] = *fit;
        }
        if (pass == cfg.robustness_iterations) break;
        for (std::size_t i = 0; i < n; ++i) residual[i] = y[i] - fitted[i];
        const double med = detail::median_abs(residual);
        if (med == 0.0) break;  // perfect fit; further reweighting is a no-op
        const double scale = 6.0 * med;
        for (std::size_t i = 0; i < n; ++i) {
            const double q = std::abs(residual[i]) / scale;
            robust[i] = q >= 1.0 ? 0.0 : detail::square(1.0 - detail::square(q));
        }
    }

    return BaselineSeries(s.name(), {s.years().begin(), s.years().end()}, std::move(fitted));
}

}  // namespace respro
