#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hawkes/errors.hpp"
#include "hawkes/gof.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulate.hpp"
#include "support/test_oracles.hpp"

#include <cmath>
#include <vector>

using namespace hawkes;

namespace {

HawkesModel scalar_model(LinkKernel kernel, double nu) {
    Eigen::VectorXd baseline(1);
    baseline << nu;
    return HawkesModel(baseline, {{std::move(kernel)}});
}

ResidualStream residuals_from_gaps(const std::vector<double>& gaps) {
    ResidualStream out;
    out.times.resize(1);
    out.clamped_fraction = {0.0};
    double t = 0.0;
    for (double g : gaps) out.times[0].push_back(t += g);
    return out;
}

} // namespace

TEST_CASE("compensator of a constant-rate model is nu * t") {
    const HawkesModel model = scalar_model(make_zero(), 2.0);
    const EventStream stream(10.0, {{1.0, 4.0}});
    CHECK(compensator(model, stream, 0, 3.0) == doctest::Approx(6.0).epsilon(1e-13));
    CHECK(compensator(model, stream, 0, 0.0) == 0.0);
}

TEST_CASE("compensator closed form for one exponential event") {
    const HawkesModel model = scalar_model(make_exponential(0.5, 1.0), 1.0);
    const EventStream stream(10.0, {{1.0}});
    const double expected = 2.0 + 0.5 * (1.0 - std::exp(-1.0));
    CHECK(compensator(model, stream, 0, 2.0) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("compensator validates its arguments") {
    const HawkesModel model = scalar_model(make_zero(), 1.0);
    const EventStream stream(10.0, {{1.0}});
    CHECK_THROWS_AS(compensator(model, stream, 0, 11.0), TimeOutOfRangeError);
    CHECK_THROWS_AS(compensator(model, stream, 0, -1.0), TimeOutOfRangeError);
    CHECK_THROWS_AS(compensator(model, stream, 1, 5.0), ComponentOutOfRangeError);
}

TEST_CASE("compensator matches adaptive quadrature of the intensity") {
    Rng rng(501);
    for (int rep = 0; rep < 25; ++rep) {
        const int d = 1 + static_cast<int>(rng.uniform() * 2.0);
        Eigen::VectorXd nu(d);
        KernelMatrix kernels(static_cast<std::size_t>(d),
                             std::vector<LinkKernel>(static_cast<std::size_t>(d), make_zero()));
        for (int i = 0; i < d; ++i) {
            nu[i] = 0.4 + rng.uniform();
            for (int j = 0; j < d; ++j) {
                const double pick = rng.uniform();
                if (pick < 0.4) {
                    kernels[i][j] = make_exponential(0.2 + 0.4 * rng.uniform(),
                                                     0.8 + 2.0 * rng.uniform());
                } else if (pick < 0.7) {
                    kernels[i][j] = make_step(0.1 + 0.2 * rng.uniform(),
                                              {0.6 * rng.uniform(), 0.4 * rng.uniform(),
                                               0.2 * rng.uniform()});
                }
            }
        }
        const HawkesModel model(nu, kernels);
        Rng sim = rng.split(static_cast<std::uint64_t>(rep));
        std::vector<std::vector<double>> times(static_cast<std::size_t>(d));
        const double horizon = 8.0;
        for (int j = 0; j < d; ++j) {
            double t = 0.01 * (j + 1);
            while ((t += sim.exponential(1.2)) <= horizon) times[j].push_back(t);
        }
        const EventStream stream(horizon, times);

        const int i = rep % d;
        const double t_query = 0.5 + rng.uniform() * 7.0;

        std::vector<double> breaks;
        for (int j = 0; j < d; ++j) {
            for (double tau : stream.times(j)) {
                breaks.push_back(tau);
                if (const auto* s = std::get_if<StepKernel>(&model.kernel(i, j))) {
                    for (std::size_t l = 1; l <= s->levels.size(); ++l) {
                        breaks.push_back(tau + s->bin_width * static_cast<double>(l));
                    }
                }
            }
        }
        const double reference = oracle::integrate_piecewise(
            [&](double s) { return conditional_intensity(model, stream, i, s); }, 0.0, t_query,
            breaks, 1e-12);
        CHECK(compensator(model, stream, i, t_query) ==
              doctest::Approx(reference).epsilon(1e-8));
    }
}

TEST_CASE("negative step levels are clamped inside the compensator") {
    // Intensity is 1 on [0,1), -1 on [1,2) relative to each event; with one
    // event at 1 the raw rate is 0.5 everywhere after it except where the
    // kernel's negative bin pushes it to -0.5, which clamps to 0.
    LinkEstimate est;
    est.bin_width = 1.0;
    est.lag_order = 2;
    est.dim = 1;
    est.coefficients = Eigen::MatrixXd(1, 2);
    est.coefficients << 1.0, -1.0;
    est.baseline_scaled = Eigen::VectorXd(1);
    est.baseline_scaled << 0.5;
    est.step_kernels = {{make_step(1.0, {1.0, -1.0})}};

    const EventStream stream(10.0, {{1.0, 4.0}});
    // Lambda: 0.5 on [0,1), 1.5 on [1,2), -0.5 -> 0 on [2,3), 0.5 after.
    CHECK(compensator(est, stream, 0, 1.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(compensator(est, stream, 0, 2.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(compensator(est, stream, 0, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(compensator(est, stream, 0, 4.0) == doctest::Approx(2.5).epsilon(1e-12));

    const ResidualStream res = residual_transform(est, stream);
    CHECK(res.clamped_fraction[0] > 0.0);
}

TEST_CASE("compensator grows at least linearly for nonnegative kernels") {
    const HawkesModel model = scalar_model(make_exponential(0.4, 1.0), 0.8);
    const EventStream stream = simulate(model, {.horizon = 50.0, .seed = 5});
    Rng rng(6);
    for (int rep = 0; rep < 100; ++rep) {
        const double t1 = rng.uniform() * 50.0;
        const double t2 = t1 + rng.uniform() * (50.0 - t1);
        const double lo = compensator(model, stream, 0, t1);
        const double hi = compensator(model, stream, 0, t2);
        CHECK(hi - lo >= 0.8 * (t2 - t1) - 1e-9);
    }
}

TEST_CASE("residual transform of a poisson stream rescales interarrivals linearly") {
    const double mu = 2.5;
    const HawkesModel model = scalar_model(make_zero(), mu);
    Rng rng(8);
    const EventStream stream = oracle::poisson_stream(mu, 200.0, rng);
    const ResidualStream res = residual_transform(model, stream);
    REQUIRE(res.times[0].size() == stream.times(0).size());
    for (std::size_t j = 0; j < res.times[0].size(); ++j) {
        CHECK(res.times[0][j] == doctest::Approx(mu * stream.times(0)[j]).epsilon(1e-12));
    }
    const std::vector<double> gaps = residual_interarrivals(res, 0);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    CHECK(std::abs(mean - 1.0) <= 4.0 / std::sqrt(static_cast<double>(gaps.size())));
}

TEST_CASE("residual transform under the true model has unit-mean interarrivals") {
    const HawkesModel model = scalar_model(make_exponential(0.5, 1.0), 1.0);
    const EventStream stream = simulate(model, {.horizon = 5000.0, .seed = 17});
    const ResidualStream res = residual_transform(model, stream);
    const std::vector<double> gaps = residual_interarrivals(res, 0);
    REQUIRE(gaps.size() > 1000);
    double mean = 0.0;
    for (double g : gaps) mean += g;
    mean /= static_cast<double>(gaps.size());
    CHECK(std::abs(mean - 1.0) <= 4.0 / std::sqrt(static_cast<double>(gaps.size())));
    CHECK(res.times[0].size() == stream.times(0).size());
}

TEST_CASE("residual transform keeps empty components empty") {
    Eigen::VectorXd nu(2);
    nu << 1.0, 1.0;
    const HawkesModel model(nu, {{make_zero(), make_zero()}, {make_zero(), make_zero()}});
    const EventStream stream(10.0, {{1.0, 2.0}, {}});
    const ResidualStream res = residual_transform(model, stream);
    CHECK(res.times[1].empty());
    CHECK(res.times[0].size() == 2);
}

TEST_CASE("quantile grid and theoretical values") {
    std::vector<double> gaps;
    Rng rng(9);
    for (int i = 0; i < 101; ++i) gaps.push_back(rng.exponential(1.0));
    const ResidualStream res = residuals_from_gaps(gaps);
    const auto points = component_quantiles(res, 0, 10);
    REQUIRE(points.size() == 10);
    CHECK(points[0].p == doctest::Approx(0.05));
    CHECK(points[9].p == doctest::Approx(0.95));
    // Median grid point of an odd grid sits at p = 0.5.
    const auto mid = component_quantiles(res, 0, 9)[4];
    CHECK(mid.p == doctest::Approx(0.5));
    CHECK(mid.theoretical == doctest::Approx(std::log(2.0)).epsilon(1e-12));
    for (const auto& pt : points) {
        CHECK(pt.band_lo < pt.theoretical);
        CHECK(pt.band_hi > pt.theoretical);
    }
}

TEST_CASE("empirical quantiles track the exponential at scale") {
    Rng rng(10);
    std::vector<double> gaps;
    for (int i = 0; i < 10000; ++i) gaps.push_back(rng.exponential(1.0));
    const ResidualStream res = residuals_from_gaps(gaps);
    const auto points = component_quantiles(res, 0, 19); // p from 0.025 to 0.975
    double worst = 0.0;
    for (const auto& pt : points) {
        if (pt.p < 0.05 || pt.p > 0.95) continue;
        worst = std::max(worst, std::abs(pt.empirical - pt.theoretical));
    }
    CHECK(worst < 0.1);
}

TEST_CASE("pointwise bands cover the truth at roughly the nominal rate") {
    // 40 independent unit-exponential samples; count how often the band at
    // each grid point contains the theoretical quantile.
    Rng rng(11);
    int covered = 0, total = 0;
    for (int rep = 0; rep < 40; ++rep) {
        std::vector<double> gaps;
        for (int i = 0; i < 400; ++i) gaps.push_back(rng.exponential(1.0));
        const ResidualStream res = residuals_from_gaps(gaps);
        for (const auto& pt : component_quantiles(res, 0, 20)) {
            ++total;
            if (pt.empirical >= pt.band_lo && pt.empirical <= pt.band_hi) ++covered;
        }
    }
    CHECK(static_cast<double>(covered) / static_cast<double>(total) >= 0.93);
}

TEST_CASE("quantile report skips undersized components") {
    ResidualStream res;
    res.times = {{0.5, 1.2, 3.0}, {0.7}};
    res.clamped_fraction = {0.0, 0.0};
    const QuantileReport report = quantile_report(res, 5);
    CHECK(report.per_component[0].size() == 5);
    CHECK(report.per_component[1].empty());
    CHECK(report.skipped_components == std::vector<int>{1});
    CHECK_THROWS_AS(component_quantiles(res, 1, 5), TooFewEventsError);
}

TEST_CASE("ks statistic of quantile-aligned interarrivals is 1/(2n)") {
    const int n = 40;
    std::vector<double> gaps;
    std::vector<double> sigma;
    double prev = 0.0;
    for (int j = 1; j <= n; ++j) {
        const double target = -std::log1p(-(static_cast<double>(j) - 0.5) / n);
        sigma.push_back(target);
    }
    std::sort(sigma.begin(), sigma.end());
    for (double s : sigma) {
        gaps.push_back(s - prev);
        prev = s;
    }
    // Feed the cumulative times directly: interarrivals are the quantiles in
    // sorted order only after the statistic re-sorts them.
    ResidualStream res;
    res.times = {sigma};
    res.clamped_fraction = {0.0};
    // residual_interarrivals gives successive differences; rebuild so the
    // SET of interarrivals equals the quantile values.
    double t = 0.0;
    res.times[0].clear();
    for (double q : sigma) res.times[0].push_back(t += q);
    CHECK(ks_statistic(res, 0) == doctest::Approx(1.0 / (2.0 * n)).epsilon(1e-12));
}

TEST_CASE("ks statistic of unit exponential samples stays under the critical value") {
    int passes = 0;
    const int runs = 100;
    for (int rep = 0; rep < runs; ++rep) {
        Rng rng(2000 + static_cast<std::uint64_t>(rep));
        std::vector<double> gaps;
        for (int i = 0; i < 1000; ++i) gaps.push_back(rng.exponential(1.0));
        const ResidualStream res = residuals_from_gaps(gaps);
        if (ks_statistic(res, 0) < 1.36 / std::sqrt(1000.0)) ++passes;
    }
    CHECK(passes >= 95);
}

TEST_CASE("ks statistic flags degenerate interarrivals") {
    std::vector<double> gaps(50, std::log(2.0));
    const ResidualStream res = residuals_from_gaps(gaps);
    CHECK(ks_statistic(res, 0) > 0.3);
}

TEST_CASE("ks statistic needs at least two events") {
    ResidualStream res;
    res.times = {{0.4}};
    res.clamped_fraction = {0.0};
    CHECK_THROWS_AS(ks_statistic(res, 0), TooFewEventsError);
}
