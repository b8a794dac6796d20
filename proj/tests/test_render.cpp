#include <catch2/catch_amalgamated.hpp>

#include <string>
#include <vector>

#include "respro/render.hpp"
#include "respro/resilience.hpp"
#include "support/synthetic.hpp"
#include "support/xmlcheck.hpp"

using respro::AnnualSeries;
using respro::BaselineSeries;
using respro::PlotSpec;
using respro::PortfolioReport;

namespace {

std::vector<std::pair<AnnualSeries, BaselineSeries>> sample_pairs(std::size_t count,
                                                                  std::size_t n_points) {
    synthetic::Rng rng(77);
    std::vector<std::pair<AnnualSeries, BaselineSeries>> out;
    for (std::size_t i = 0; i < count; ++i) {
        AnnualSeries s =
            synthetic::random_series(rng, "series " + std::to_string(i), n_points, n_points, false);
        BaselineSeries b = respro::smooth(s);
        out.emplace_back(std::move(s), std::move(b));
    }
    return out;
}

PortfolioReport sample_report(std::size_t n) {
    PortfolioReport rep;
    for (std::size_t i = 0; i < n; ++i) {
        rep.labels.push_back("entry " + std::to_string(i));
        rep.individual_means.push_back(1000.0 - 80.0 * static_cast<double>(i));
        rep.individual_resilience.push_back(120.0 + 10.0 * static_cast<double>(i % 4));
        rep.aggregated_resilience.push_back(120.0 + 35.0 * static_cast<double>(i));
        rep.pairwise_correlation.emplace_back(i == 0 ? 0.0 : -1.0 + 2.0 * static_cast<double>(i) /
                                                                        static_cast<double>(n));
        rep.individual_lengths.push_back(56);
        rep.aggregated_lengths.push_back(56 - static_cast<int>(i));
    }
    return rep;
}

}  // namespace

TEST_CASE("colormap control points and correlation mapping", "[render]") {
    CHECK(respro::correlation_to_unit(0.0) == 0.5);
    CHECK(respro::correlation_to_unit(-1.0) == 0.0);
    CHECK(respro::correlation_to_unit(1.0) == 1.0);

    CHECK(respro::rainbow_color(0.0).hex() == "#0000ff");
    CHECK(respro::rainbow_color(0.375).hex() == "#00ffff");
    CHECK(respro::rainbow_color(0.625).hex() == "#ffff00");
    CHECK(respro::rainbow_color(1.0).hex() == "#ff0000");

    // monotone hue ordering: red never decreases, blue never increases
    respro::Rgb prev = respro::rainbow_color(0.0);
    for (int i = 1; i <= 100; ++i) {
        const respro::Rgb c = respro::rainbow_color(i / 100.0);
        CHECK(c.r >= prev.r);
        CHECK(c.b <= prev.b);
        prev = c;
    }
}

TEST_CASE("series plot structure", "[render]") {
    const auto pairs = sample_pairs(1, 56);
    const std::string svg = respro::plot_series(pairs);

    const auto wf = xmlcheck::well_formed(svg);
    INFO(wf.error);
    CHECK(wf.ok);
    CHECK(svg.starts_with("<?xml version=\"1.0\" encoding=\"UTF-8\"?>"));
    CHECK(xmlcheck::count_occurrences(svg, "<polyline") == 2);
    CHECK(xmlcheck::polyline_point_count(*xmlcheck::nth_attribute(svg, "polyline", "points", 0)) ==
          56);
    CHECK(xmlcheck::polyline_point_count(*xmlcheck::nth_attribute(svg, "polyline", "points", 1)) ==
          56);

    SECTION("raw line and baseline share a color; legend lists raw names only") {
        const auto raw_color = *xmlcheck::nth_attribute(svg, "polyline", "stroke", 0, "series");
        const auto base_color = *xmlcheck::nth_attribute(svg, "polyline", "stroke", 0, "baseline");
        CHECK(raw_color == base_color);
        CHECK(xmlcheck::count_occurrences(svg, "series 0") == 1);
    }
    SECTION("five series give ten polylines and five legend entries") {
        const auto five = sample_pairs(5, 30);
        const std::string multi = respro::plot_series(five);
        CHECK(xmlcheck::count_occurrences(multi, "<polyline") == 10);
        for (int i = 0; i < 5; ++i)
            CHECK(xmlcheck::count_occurrences(multi, "series " + std::to_string(i)) == 1);
    }
}

TEST_CASE("series plot rejects bad input", "[render]") {
    CHECK_THROWS_AS(respro::plot_series({}), respro::InvalidSeriesError);

    auto pairs = sample_pairs(1, 20);
    const AnnualSeries other("other", {{1800, 1.0}, {1801, 2.0}});
    pairs[0].second = respro::smooth(other);
    CHECK_THROWS_AS(respro::plot_series(pairs), respro::InvalidSeriesError);

    PlotSpec bad;
    bad.width = 0;
    CHECK_THROWS_AS(respro::plot_series(sample_pairs(1, 20), bad), std::invalid_argument);
}

TEST_CASE("resilience-diversity plot structure", "[render]") {
    const PortfolioReport rep = sample_report(6);
    PlotSpec spec;
    spec.y_axis_label = "2004-2006 million US$";
    const std::string svg = respro::plot_resilience_diversity(rep, spec);

    const auto wf = xmlcheck::well_formed(svg);
    INFO(wf.error);
    CHECK(wf.ok);
    CHECK(xmlcheck::count_occurrences(svg, "class=\"bar\"") == 6);
    CHECK(xmlcheck::count_occurrences(svg, "class=\"dot\"") == 6);
    CHECK(xmlcheck::count_occurrences(svg, "class=\"aggregated\"") == 1);
    CHECK(xmlcheck::polyline_point_count(
              *xmlcheck::nth_attribute(svg, "polyline", "points", 0, "aggregated")) == 6);
    CHECK(xmlcheck::count_occurrences(svg, "annual production resilience") == 1);
    CHECK(xmlcheck::count_occurrences(svg, "2004-2006 million US$") == 1);
    CHECK(xmlcheck::count_occurrences(svg, "colorbar") == 0);  // more_info off
    CHECK(svg.find("rotate(-90") != std::string::npos);       // x labels rotated

    SECTION("bars without more_info are all green") {
        for (std::size_t i = 0; i < 6; ++i)
            CHECK(*xmlcheck::nth_attribute(svg, "rect", "fill", i, "bar") == "#00ff00");
    }
    SECTION("bar heights follow the means") {
        double prev = 1e300;
        for (std::size_t i = 0; i < 6; ++i) {
            const double h = std::stod(*xmlcheck::nth_attribute(svg, "rect", "height", i, "bar"));
            CHECK(h < prev);  // sample_report means strictly decrease
            prev = h;
        }
    }
}

TEST_CASE("more_info adds correlation colors, lengths and a colorbar", "[render]") {
    const PortfolioReport rep = sample_report(5);
    PlotSpec spec;
    spec.more_info = true;
    const std::string svg = respro::plot_resilience_diversity(rep, spec);

    const auto wf = xmlcheck::well_formed(svg);
    INFO(wf.error);
    CHECK(wf.ok);
    CHECK(*xmlcheck::nth_attribute(svg, "rect", "fill", 0, "bar") == "#00ff00");  // first fixed
    for (std::size_t i = 1; i < 5; ++i) {
        const double rho = *rep.pairwise_correlation[i];
        CHECK(*xmlcheck::nth_attribute(svg, "rect", "fill", i, "bar") ==
              respro::rainbow_color(respro::correlation_to_unit(rho)).hex());
    }
    CHECK(xmlcheck::count_occurrences(svg, "class=\"colorbar\"") == 64);
    CHECK(xmlcheck::count_occurrences(svg, "pairwise anomaly correlation") == 1);
    CHECK(xmlcheck::count_occurrences(svg, "entry 2(56;54)") == 1);

    SECTION("missing correlations get a neutral bar") {
        PortfolioReport holes = rep;
        holes.pairwise_correlation[2] = std::nullopt;
        const std::string with_hole = respro::plot_resilience_diversity(holes, spec);
        CHECK(*xmlcheck::nth_attribute(with_hole, "rect", "fill", 2, "bar") == "#999999");
    }
}

TEST_CASE("singleton report renders one of everything", "[render]") {
    const PortfolioReport rep = sample_report(1);
    const std::string svg = respro::plot_resilience_diversity(rep);
    const auto wf = xmlcheck::well_formed(svg);
    INFO(wf.error);
    CHECK(wf.ok);
    CHECK(xmlcheck::count_occurrences(svg, "class=\"bar\"") == 1);
    CHECK(xmlcheck::count_occurrences(svg, "class=\"dot\"") == 1);
    CHECK(xmlcheck::polyline_point_count(
              *xmlcheck::nth_attribute(svg, "polyline", "points", 0, "aggregated")) == 1);
    CHECK(*xmlcheck::nth_attribute(svg, "rect", "fill", 0, "bar") == "#00ff00");
}

TEST_CASE("identical inputs render byte-identical documents", "[render]") {
    const auto pairs = sample_pairs(3, 25);
    CHECK(respro::plot_series(pairs) == respro::plot_series(pairs));
    const PortfolioReport rep = sample_report(4);
    PlotSpec spec;
    spec.more_info = true;
    CHECK(respro::plot_resilience_diversity(rep, spec) ==
          respro::plot_resilience_diversity(rep, spec));
}

TEST_CASE("labels with XML-special characters are escaped", "[render]") {
    PortfolioReport rep = sample_report(2);
    rep.labels[0] = "Bosnia & Herzegovina <crops>";
    const std::string svg = respro::plot_resilience_diversity(rep);
    const auto wf = xmlcheck::well_formed(svg);
    INFO(wf.error);
    CHECK(wf.ok);
    CHECK(svg.find("Bosnia &amp; Herzegovina &lt;crops&gt;") != std::string::npos);
}
