#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "respro/detail/numeric.hpp"
#include "respro/errors.hpp"
#include "respro/series.hpp"
#include "respro/smoothing.hpp"

namespace respro {

/// Dimensionless production anomalies: observed value over smoothed baseline,
/// year by year. Ratios are finite and positive by construction.
class NormalizedSeries {
public:
    NormalizedSeries(std::string name, std::vector<int> years, std::vector<double> ratios)
        : name_(std::move(name)), years_(std::move(years)), ratios_(std::move(ratios)) {
        if (years_.size() != ratios_.size() || years_.empty())
            throw InvalidSeriesError("normalized series '" + name_ + "' is malformed");
        for (double r : ratios_)
            if (!std::isfinite(r) || !(r > 0.0))
                throw InvalidSeriesError("normalized series '" + name_ +
                                         "' has a non-positive or non-finite ratio");
    }

    const std::string& name() const noexcept { return name_; }
    std::size_t size() const noexcept { return years_.size(); }
    std::span<const int> years() const noexcept { return years_; }
    std::span<const double> ratios() const noexcept { return ratios_; }

private:
    std::string name_;
    std::vector<int> years_;
    std::vector<double> ratios_;
};

/// Resilience statistics of one series. `resilience` is the indicator for
/// detrended data (inverse squared std of the normalized anomalies);
/// `resilience_stationary` is the plain inverse squared coefficient of
/// variation, meaningful when the series has no trend.
struct ResilienceReport {
    std::string name;
    int n_years = 0;
    double mean_production = 0.0;
    double sigma_raw = 0.0;
    double sigma_normalized = 0.0;
    double resilience = 0.0;
    double resilience_stationary = 0.0;
};

/// Pointwise ratio of a series to its smoothed baseline.
inline NormalizedSeries normalize(const AnnualSeries& s, const SmoothingConfig& cfg = {}) {
    const BaselineSeries base = smooth(s, cfg);
    std::vector<double> ratios(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(base.value(i) > 0.0))
            throw NonPositiveBaselineError("series '" + s.name() + "': baseline at year " +
                                           std::to_string(s.year(i)) +
                                           " is not positive; anomalies are undefined");
        ratios[i] = s.value(i) / base.value(i);
    }
    return NormalizedSeries(s.name(), {s.years().begin(), s.years().end()}, std::move(ratios));
}

/// Resilience statistics from an already-normalized series and its source.
inline ResilienceReport resilience_report(const AnnualSeries& s, const NormalizedSeries& normalized) {
    if (normalized.size() != s.size())
        throw InvalidSeriesError("normalized series does not match '" + s.name() + "'");
    const double sigma_n = detail::population_std(normalized.ratios());
    if (sigma_n == 0.0)
        throw ZeroVarianceError("series '" + s.name() +
                                "': normalized anomalies have zero variance; resilience is unbounded");
    const double sigma_raw = detail::population_std(s.values());
    if (sigma_raw == 0.0)
        throw ZeroVarianceError("series '" + s.name() + "': values are constant");
    ResilienceReport r;
    r.name = s.name();
    r.n_years = static_cast<int>(s.size());
    r.mean_production = s.mean();
    r.sigma_raw = sigma_raw;
    r.sigma_normalized = sigma_n;
    r.resilience = 1.0 / (sigma_n * sigma_n);
    r.resilience_stationary = (r.mean_production * r.mean_production) / (sigma_raw * sigma_raw);
    return r;
}

/// Annual production resilience of a series: detrend, normalize, and take the
/// inverse squared standard deviation of the anomalies.
inline ResilienceReport production_resilience(const AnnualSeries& s, const SmoothingConfig& cfg = {}) {
    return resilience_report(s, normalize(s, cfg));
}

/// Pearson correlation of two series' normalized anomalies over their common
/// years. Each series is normalized over its own full extent first, then the
/// overlap is taken.
inline double anomaly_correlation(const AnnualSeries& a, const AnnualSeries& b,
                                  const SmoothingConfig& cfg = {}) {
    const NormalizedSeries na = normalize(a, cfg);
    const NormalizedSeries nb = normalize(b, cfg);

    std::vector<double> ra, rb;
    std::size_t i = 0, j = 0;
    while (i < na.size() && j < nb.size()) {
        if (na.years()[i] < nb.years()[j]) {
            ++i;
        } else if (na.years()[i] > nb.years()[j]) {
            ++j;
        } else {
            ra.push_back(na.ratios()[i]);
            rb.push_back(nb.ratios()[j]);
            ++i;
            ++j;
        }
    }
    if (ra.size() < 3)
        throw InsufficientOverlapError("series '" + a.name() + "' and '" + b.name() + "' share only " +
                                       std::to_string(ra.size()) + " years; need at least 3");
    const double r = detail::pearson(ra, rb);
    if (!std::isfinite(r))
        throw ZeroVarianceError("anomalies of '" + a.name() + "' or '" + b.name() +
                                "' are constant over the overlap");
    return r;
}

}  // namespace respro
