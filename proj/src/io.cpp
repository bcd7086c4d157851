#include "hawkes/io.hpp"

#include "hawkes/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace hawkes {

using nlohmann::json;

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ParseError("cannot write " + path);
    out << content;
}

namespace {

double parse_decimal(const std::string& token, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
        throw ParseError(context + ": bad decimal '" + token + "'");
    }
    return value;
}

long parse_integer(const std::string& token, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    const long value = std::strtol(token.c_str(), &end, 10);
    if (end == token.c_str() || *end != '\0' || errno == ERANGE) {
        throw ParseError(context + ": bad integer '" + token + "'");
    }
    return value;
}

} // namespace

EventRecords read_event_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    std::string line;
    if (!std::getline(in, line)) throw ParseError(path + ": empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "component,time") {
        throw ParseError(path + ": expected header 'component,time'");
    }

    EventRecords out;
    std::set<std::pair<int, double>> seen;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto comma = line.find(',');
        const std::string where = path + ":" + std::to_string(line_no);
        if (comma == std::string::npos) throw ParseError(where + ": expected 'component,time'");
        const long component = parse_integer(line.substr(0, comma), where);
        const double time = parse_decimal(line.substr(comma + 1), where);
        if (component < 1) throw ParseError(where + ": component ids are 1-based");
        if (!(time > 0.0)) throw ParseError(where + ": timestamps must be positive");
        const int id0 = static_cast<int>(component - 1);
        if (!seen.insert({id0, time}).second) {
            throw ParseError(where + ": duplicate (component, timestamp) pair");
        }
        out.records.emplace_back(id0, time);
        out.max_component = std::max(out.max_component, static_cast<int>(component));
    }
    if (out.records.empty()) throw ParseError(path + ": no events");
    return out;
}

EventStream read_event_file(const std::string& path, int dim, double horizon) {
    EventRecords records = read_event_records(path);
    if (dim == 0) dim = records.max_component;
    if (records.max_component > dim) {
        throw ParseError(path + ": component id exceeds the requested dimension");
    }
    if (horizon == 0.0) {
        for (const auto& [component, time] : records.records) {
            horizon = std::max(horizon, time);
        }
    }
    try {
        return EventStream::from_records(dim, horizon, std::move(records.records));
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_event_file(const std::string& path, const EventStream& stream) {
    // One row per event, merged in time order (deterministic and convenient
    // for eyeballing; readers accept any order).
    std::vector<std::pair<double, int>> rows;
    rows.reserve(static_cast<std::size_t>(stream.total_events()));
    for (int i = 0; i < stream.dim(); ++i) {
        for (double t : stream.times(i)) rows.emplace_back(t, i + 1);
    }
    std::sort(rows.begin(), rows.end());
    std::ostringstream out;
    out << "component,time\n";
    for (const auto& [time, component] : rows) {
        out << component << ',' << format_double(time) << '\n';
    }
    write_text_file(path, out.str());
}

namespace {

json kernel_to_json(const LinkKernel& kernel) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ZeroKernel>) {
                return json{{"type", "zero"}};
            } else if constexpr (std::is_same_v<K, ExponentialKernel>) {
                return json{{"type", "exponential"}, {"alpha", k.alpha}, {"beta", k.beta}};
            } else {
                return json{{"type", "step"}, {"bin_width", k.bin_width}, {"levels", k.levels}};
            }
        },
        kernel);
}

LinkKernel kernel_from_json(const json& j, const std::string& context) {
    if (!j.is_object() || !j.contains("type")) {
        throw ParseError(context + ": kernel entries need a 'type' field");
    }
    const std::string type = j.at("type").get<std::string>();
    try {
        if (type == "zero") return make_zero();
        if (type == "exponential") {
            return make_exponential(j.at("alpha").get<double>(), j.at("beta").get<double>());
        }
        if (type == "step") {
            return make_step(j.at("bin_width").get<double>(),
                             j.at("levels").get<std::vector<double>>());
        }
    } catch (const json::exception& e) {
        throw ParseError(context + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(context + ": " + e.what());
    }
    throw ParseError(context + ": unknown kernel type '" + type + "'");
}

json load_json(const std::string& path) {
    try {
        return json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void check_schema(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("schema") || j.at("schema").get<int>() != 1) {
        throw ParseError(path + ": expected an object with \"schema\": 1");
    }
}

void dump_json(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

} // namespace

HawkesModel read_model_json(const std::string& path) {
    const json j = load_json(path);
    check_schema(j, path);
    try {
        const auto nu = j.at("nu").get<std::vector<double>>();
        const auto& phi = j.at("phi");
        const std::size_t d = nu.size();
        if (!phi.is_array() || phi.size() != d) {
            throw ParseError(path + ": 'phi' must be a d x d array of kernels");
        }
        KernelMatrix kernels(d);
        for (std::size_t i = 0; i < d; ++i) {
            if (!phi[i].is_array() || phi[i].size() != d) {
                throw ParseError(path + ": 'phi' must be a d x d array of kernels");
            }
            for (std::size_t jj = 0; jj < d; ++jj) {
                kernels[i].push_back(kernel_from_json(
                    phi[i][jj], path + ": phi[" + std::to_string(i) + "][" +
                                    std::to_string(jj) + "]"));
            }
        }
        Eigen::VectorXd baseline(static_cast<Eigen::Index>(d));
        for (std::size_t i = 0; i < d; ++i) baseline[static_cast<Eigen::Index>(i)] = nu[i];
        return HawkesModel(std::move(baseline), std::move(kernels));
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_model_json(const std::string& path, const HawkesModel& model) {
    json phi = json::array();
    for (int i = 0; i < model.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < model.dim(); ++j) row.push_back(kernel_to_json(model.kernel(i, j)));
        phi.push_back(std::move(row));
    }
    std::vector<double> nu(model.baseline().data(),
                           model.baseline().data() + model.baseline().size());
    dump_json(path, json{{"schema", 1}, {"nu", nu}, {"phi", phi}});
}

void write_estimate_json(const std::string& path, const LinkEstimate& estimate) {
    json g = json::array();
    for (int i = 0; i < estimate.dim; ++i) {
        json row = json::array();
        for (Eigen::Index c = 0; c < estimate.coefficients.cols(); ++c) {
            row.push_back(estimate.coefficients(i, c));
        }
        g.push_back(std::move(row));
    }
    std::vector<double> nu_scaled(estimate.baseline_scaled.data(),
                                  estimate.baseline_scaled.data() + estimate.dim);
    const Eigen::VectorXd per_time = estimate.baseline_per_time();
    std::vector<double> nu_per_time(per_time.data(), per_time.data() + estimate.dim);
    dump_json(path, json{{"schema", 1},
                         {"h", estimate.bin_width},
                         {"k", estimate.lag_order},
                         {"d", estimate.dim},
                         {"nu_hat_scaled", nu_scaled},
                         {"nu_hat_per_time", nu_per_time},
                         {"g", g},
                         {"ridge", estimate.ridge},
                         {"nonneg_projection", estimate.nonneg_projected},
                         {"diagnostics",
                          {{"dropped_tail_events", estimate.dropped_tail_events},
                           {"gram_condition", estimate.gram_condition},
                           {"effective_samples", estimate.effective_samples}}}});
}

LinkEstimate read_estimate_json(const std::string& path) {
    const json j = load_json(path);
    check_schema(j, path);
    try {
        LinkEstimate est;
        est.bin_width = j.at("h").get<double>();
        est.lag_order = j.at("k").get<int>();
        est.dim = j.at("d").get<int>();
        if (est.bin_width <= 0.0 || est.lag_order < 1 || est.dim < 1) {
            throw ParseError(path + ": invalid h/k/d");
        }
        const auto g = j.at("g").get<std::vector<std::vector<double>>>();
        const auto cols = static_cast<Eigen::Index>(est.lag_order) * est.dim;
        if (static_cast<int>(g.size()) != est.dim) {
            throw ParseError(path + ": 'g' must have d rows");
        }
        est.coefficients.resize(est.dim, cols);
        for (int i = 0; i < est.dim; ++i) {
            if (static_cast<Eigen::Index>(g[static_cast<std::size_t>(i)].size()) != cols) {
                throw ParseError(path + ": 'g' rows must have k*d entries");
            }
            for (Eigen::Index c = 0; c < cols; ++c) {
                est.coefficients(i, c) = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
            }
        }
        const auto nu = j.at("nu_hat_scaled").get<std::vector<double>>();
        if (static_cast<int>(nu.size()) != est.dim) {
            throw ParseError(path + ": 'nu_hat_scaled' must have d entries");
        }
        est.baseline_scaled.resize(est.dim);
        for (int i = 0; i < est.dim; ++i) est.baseline_scaled[i] = nu[static_cast<std::size_t>(i)];
        est.ridge = j.value("ridge", 0.0);
        est.nonneg_projected = j.value("nonneg_projection", false);
        if (j.contains("diagnostics")) {
            const auto& diag = j.at("diagnostics");
            est.dropped_tail_events = diag.value("dropped_tail_events", std::int64_t{0});
            est.gram_condition = diag.value("gram_condition", 0.0);
            est.effective_samples = diag.value("effective_samples", std::int64_t{0});
        }
        est.step_kernels.assign(
            static_cast<std::size_t>(est.dim),
            std::vector<LinkKernel>(static_cast<std::size_t>(est.dim), make_zero()));
        for (int i = 0; i < est.dim; ++i) {
            for (int jj = 0; jj < est.dim; ++jj) {
                std::vector<double> levels(static_cast<std::size_t>(est.lag_order));
                for (int u = 0; u < est.lag_order; ++u) {
                    double level =
                        est.coefficients(i, static_cast<Eigen::Index>(u) * est.dim + jj) /
                        est.bin_width;
                    if (est.nonneg_projected && level < 0.0) level = 0.0;
                    levels[static_cast<std::size_t>(u)] = level;
                }
                est.step_kernels[static_cast<std::size_t>(i)][static_cast<std::size_t>(jj)] =
                    make_step(est.bin_width, std::move(levels));
            }
        }
        return est;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_step_csv(const std::string& path, const LinkEstimate& estimate) {
    std::ostringstream out;
    out << "i,j,u_midpoint,phi_hat\n";
    for (int i = 0; i < estimate.dim; ++i) {
        for (int j = 0; j < estimate.dim; ++j) {
            for (int u = 0; u < estimate.lag_order; ++u) {
                const double midpoint = (static_cast<double>(u) + 0.5) * estimate.bin_width;
                out << (i + 1) << ',' << (j + 1) << ',' << format_double(midpoint) << ','
                    << format_double(evaluate_step(estimate, i, j, midpoint)) << '\n';
            }
        }
    }
    write_text_file(path, out.str());
}

void write_quantile_csv(const std::string& path, const QuantileReport& report) {
    std::ostringstream out;
    out << "component,p,empirical,theoretical,band_lo,band_hi\n";
    for (std::size_t i = 0; i < report.per_component.size(); ++i) {
        for (const QuantilePoint& pt : report.per_component[i]) {
            out << (i + 1) << ',' << format_double(pt.p) << ',' << format_double(pt.empirical)
                << ',' << format_double(pt.theoretical) << ',' << format_double(pt.band_lo)
                << ',' << format_double(pt.band_hi) << '\n';
        }
    }
    write_text_file(path, out.str());
}

} // namespace hawkes
