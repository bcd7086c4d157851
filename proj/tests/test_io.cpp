#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hawkes/discretize.hpp"
#include "hawkes/errors.hpp"
#include "hawkes/estimate.hpp"
#include "hawkes/io.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulate.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

using namespace hawkes;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("hawkes_io_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

} // namespace

TEST_CASE("format_double keeps full precision") {
    const double value = 0.12345678901234567;
    CHECK(std::stod(format_double(value)) == value);
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("event file round trip preserves the stream exactly") {
    TempDir tmp;
    Eigen::VectorXd nu(2);
    nu << 1.0, 0.7;
    const HawkesModel model(nu, {{make_exponential(0.4, 2.0), make_zero()},
                                 {make_exponential(0.3, 1.0), make_zero()}});
    const EventStream stream = simulate(model, {.horizon = 100.0, .seed = 5});
    const std::string path = tmp.file("events.csv");
    write_event_file(path, stream);
    const EventStream back = read_event_file(path, stream.dim(), stream.horizon());
    for (int i = 0; i < 2; ++i) CHECK(back.times(i) == stream.times(i));
}

TEST_CASE("event file parser validates its input") {
    TempDir tmp;
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(tmp.file(name));
        out << content;
        return tmp.file(name);
    };
    CHECK_THROWS_AS(read_event_file(write("a.csv", "time,component\n1,0.5\n")), ParseError);
    CHECK_THROWS_AS(read_event_file(write("b.csv", "component,time\n1,0.5\n1,0.5\n")),
                    ParseError);
    CHECK_THROWS_AS(read_event_file(write("c.csv", "component,time\n1,-0.5\n")), ParseError);
    CHECK_THROWS_AS(read_event_file(write("d.csv", "component,time\n0,0.5\n")), ParseError);
    CHECK_THROWS_AS(read_event_file(write("e.csv", "component,time\n1,abc\n")), ParseError);
    CHECK_THROWS_AS(read_event_file(write("f.csv", "component,time\n")), ParseError);

    // Unsorted rows are fine; cross-component duplicate timestamps are not.
    const EventStream ok = read_event_file(write("g.csv", "component,time\n2,0.7\n1,0.3\n1,0.1\n"));
    CHECK(ok.dim() == 2);
    CHECK(ok.times(0) == std::vector<double>{0.1, 0.3});
    CHECK_THROWS_AS(read_event_file(write("h.csv", "component,time\n1,0.5\n2,0.5\n")),
                    ParseError);
}

TEST_CASE("model json round trip") {
    TempDir tmp;
    Eigen::VectorXd nu(2);
    nu << 0.4, 1.3;
    const HawkesModel model(nu, {{make_exponential(0.625, 2.5), make_zero()},
                                 {make_step(0.25, {0.8, 0.3, 0.1}), make_exponential(0.5, 2.0)}});
    const std::string path = tmp.file("model.json");
    write_model_json(path, model);
    const HawkesModel back = read_model_json(path);
    CHECK(back.dim() == 2);
    CHECK(back.baseline() == model.baseline());
    CHECK(back.integral_matrix() == model.integral_matrix());
    CHECK(kernel_value(back.kernel(1, 0), 0.3) == kernel_value(model.kernel(1, 0), 0.3));
}

TEST_CASE("model json validates schema and kernels") {
    TempDir tmp;
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream out(tmp.file(name));
        out << content;
        return tmp.file(name);
    };
    CHECK_THROWS_AS(read_model_json(write("m1.json", "{\"nu\": [1.0]}")), ParseError);
    CHECK_THROWS_AS(
        read_model_json(write("m2.json", "{\"schema\": 1, \"nu\": [1.0], \"phi\": []}")),
        ParseError);
    CHECK_THROWS_AS(
        read_model_json(write(
            "m3.json",
            "{\"schema\": 1, \"nu\": [1.0], \"phi\": [[{\"type\": \"mystery\"}]]}")),
        ParseError);
    CHECK_THROWS_AS(
        read_model_json(write(
            "m4.json",
            "{\"schema\": 1, \"nu\": [1.0], \"phi\": [[{\"type\": \"exponential\", "
            "\"alpha\": -1, \"beta\": 1}]]}")),
        ParseError);
}

TEST_CASE("estimate artifact round trips through json") {
    TempDir tmp;
    Rng rng(3);
    BinnedSeries series;
    series.bin_width = 0.2;
    series.counts.resize(2, 500);
    for (int i = 0; i < 2; ++i) {
        for (int t = 0; t < 500; ++t) {
            series.counts(i, t) = static_cast<std::int64_t>(rng.uniform() * 3.0);
        }
    }
    const LinkEstimate est = fit(series, {.lag_order = 5, .ridge = 0.01});
    const std::string path = tmp.file("estimate.json");
    write_estimate_json(path, est);
    const LinkEstimate back = read_estimate_json(path);
    CHECK(back.bin_width == est.bin_width);
    CHECK(back.lag_order == est.lag_order);
    CHECK(back.dim == est.dim);
    CHECK(back.coefficients == est.coefficients);
    CHECK(back.baseline_scaled == est.baseline_scaled);
    CHECK(back.ridge == est.ridge);
    CHECK(back.gram_condition == est.gram_condition);
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            CHECK(evaluate_step(back, i, j, 0.55) == evaluate_step(est, i, j, 0.55));
        }
    }
}

TEST_CASE("step csv lists one row per entry and lag") {
    TempDir tmp;
    Rng rng(4);
    BinnedSeries series;
    series.bin_width = 0.5;
    series.counts.resize(1, 200);
    for (int t = 0; t < 200; ++t) {
        series.counts(0, t) = static_cast<std::int64_t>(rng.uniform() * 2.0);
    }
    const LinkEstimate est = fit(series, {.lag_order = 4});
    const std::string path = tmp.file("steps.csv");
    write_step_csv(path, est);
    const std::string text = read_text_file(path);
    CHECK(text.rfind("i,j,u_midpoint,phi_hat\n", 0) == 0);
    int rows = -1; // discount header
    for (char c : text) {
        if (c == '\n') ++rows;
    }
    CHECK(rows == 4);
}
