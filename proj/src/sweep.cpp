// sweep.cpp - grid evaluation, worker pool, and serialization

#include "jcdress/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <thread>

namespace jcdress::sweep {

namespace {

const char* const kAxisNames[] = {"lambda", "delta", "g", "hop_j", "hop_j_over_g"};

bool known_axis(const std::string& name) {
    for (const char* candidate : kAxisNames) {
        if (name == candidate) return true;
    }
    return false;
}

// "coeffs:<k>" -> k, or -1 when the group is not a coefficient request
int parse_coeff_group(const std::string& group) {
    const std::string prefix = "coeffs:";
    if (group.rfind(prefix, 0) != 0) return -1;
    const std::string tail = group.substr(prefix.size());
    char* end = nullptr;
    const long k = std::strtol(tail.c_str(), &end, 10);
    if (tail.empty() || *end != '\0' || k < 0 || k > 1000) {
        throw std::invalid_argument("GridSpec: bad coefficient group '" + group + "'");
    }
    return static_cast<int>(k);
}

void append_group_columns(const std::string& group, std::vector<std::string>& cols) {
    if (group == "jeff") {
        cols.insert(cols.end(), {"j_eff_1", "j_eff_2"});
    } else if (group == "ueff") {
        cols.push_back("u_eff");
    } else if (group == "ratio") {
        cols.push_back("effective_ratio");
    } else if (group == "outcoupling") {
        cols.insert(cols.end(), {"m1", "m2", "m3", "k1", "k2"});
    } else if (group == "var") {
        cols.push_back("var_n");
    } else if (group == "overlaps") {
        cols.insert(cols.end(), {"overlap_dressed_mi", "overlap_photonic_mi",
                                 "overlap_dressed_sf", "overlap_photonic_sf"});
    } else if (group == "energy") {
        cols.push_back("ground_energy");
    } else if (const int k = parse_coeff_group(group); k >= 0) {
        for (int i = 0; i <= k; ++i) {
            cols.push_back("c" + std::to_string(i) + "_minus");
        }
        cols.push_back("precision_bits");
    } else {
        throw std::invalid_argument("GridSpec: unknown output group '" + group + "'");
    }
}

void apply_axis(jch2::TwoSiteParams& point, const std::string& name, double value) {
    if (name == "lambda") {
        if (value == 0.0) throw std::domain_error("axis lambda: zero has no finite detuning");
        if (!(point.site.g > 0.0)) throw std::domain_error("axis lambda: requires g > 0");
        point.site.delta = point.site.g / value;
    } else if (name == "delta") {
        point.site.delta = value;
    } else if (name == "g") {
        point.site.g = value;
    } else if (name == "hop_j") {
        point.hop_j = value;
    } else if (name == "hop_j_over_g") {
        point.hop_j = value * point.site.g;
    } else {
        throw std::invalid_argument("apply_axis: unknown axis '" + name + "'");
    }
}

double ratio_value(double j2, double u_eff) {
    if (u_eff == 0.0) {
        return j2 == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                         : std::numeric_limits<double>::infinity();
    }
    return j2 / u_eff;
}

SweepRow evaluate_point(const GridSpec& spec, double v1, std::optional<double> v2,
                        std::size_t numeric_columns) {
    SweepRow row;
    row.values.reserve(numeric_columns);
    row.values.push_back(v1);
    if (v2) row.values.push_back(*v2);

    try {
        jch2::TwoSiteParams point{spec.base, spec.hop_j};
        apply_axis(point, spec.axis1.name, v1);
        if (v2) apply_axis(point, spec.axis2.name, *v2);
        point.validate();

        std::optional<jch2::GroundStateReport> gs; // shared across groups needing it
        auto ground = [&]() -> const jch2::GroundStateReport& {
            if (!gs) gs = jch2::ground_state(point);
            return *gs;
        };

        for (const std::string& group : spec.outputs) {
            if (group == "jeff") {
                row.values.push_back(jch2::j_eff(point, 1));
                row.values.push_back(jch2::j_eff(point, 2));
            } else if (group == "ueff") {
                row.values.push_back(kbody::coeff_exact(point.site, 2, Branch::Minus));
            } else if (group == "ratio") {
                row.values.push_back(ratio_value(jch2::j_eff(point, 2),
                                                 kbody::coeff_exact(point.site, 2, Branch::Minus)));
            } else if (group == "outcoupling") {
                const auto oc = jch2::outcoupling(point);
                row.values.insert(row.values.end(), {oc.m1, oc.m2, oc.m3, oc.k1, oc.k2});
            } else if (group == "var") {
                row.values.push_back(ground().variance);
            } else if (group == "overlaps") {
                const auto& g = ground();
                row.values.insert(row.values.end(),
                                  {g.overlap_dressed_mi, g.overlap_photonic_mi,
                                   g.overlap_dressed_sf, g.overlap_photonic_sf});
            } else if (group == "energy") {
                row.values.push_back(ground().energy);
            } else {
                const int k = parse_coeff_group(group);
                const auto table = kbody::coefficient_table(point.site, k, Branch::Minus);
                row.values.insert(row.values.end(), table.values.begin(), table.values.end());
                row.values.push_back(static_cast<double>(table.precision_bits));
            }
        }
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    row.values.resize(numeric_columns, std::numeric_limits<double>::quiet_NaN());
    return row;
}

void append_csv_field(std::string& out, const std::string& field) {
    if (field.find_first_of(",\"\n") == std::string::npos) {
        out += field;
        return;
    }
    out += '"';
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
}

void append_header(std::string& out, const std::vector<std::string>& columns) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (i) out += ',';
        append_csv_field(out, columns[i]);
    }
    out += '\n';
}

} // namespace

std::vector<double> AxisSpec::values() const {
    validate();
    std::vector<double> out(static_cast<std::size_t>(count));
    out.front() = min;
    out.back() = max;
    if (scale == "log") {
        const double step = (std::log(max) - std::log(min)) / (count - 1);
        const double base = std::log(min);
        for (int i = 1; i + 1 < count; ++i) out[i] = std::exp(base + i * step);
    } else {
        const double step = (max - min) / (count - 1);
        for (int i = 1; i + 1 < count; ++i) out[i] = min + i * step;
    }
    return out;
}

void AxisSpec::validate() const {
    if (!known_axis(name)) throw std::invalid_argument("AxisSpec: unknown axis '" + name + "'");
    if (scale != "log" && scale != "linear") {
        throw std::invalid_argument("AxisSpec: scale must be 'log' or 'linear'");
    }
    if (count < 2) throw std::invalid_argument("AxisSpec: count must be >= 2");
    if (!(min < max)) throw std::invalid_argument("AxisSpec: min must be < max");
    if (scale == "log" && !(min > 0.0)) {
        throw std::invalid_argument("AxisSpec: log scale requires min > 0");
    }
    if (!std::isfinite(min) || !std::isfinite(max)) {
        throw std::invalid_argument("AxisSpec: bounds must be finite");
    }
}

void GridSpec::validate() const {
    axis1.validate();
    if (axis2.active()) {
        axis2.validate();
        if (axis1.name == axis2.name) {
            throw std::invalid_argument("GridSpec: axes must drive different parameters");
        }
    }
    if (outputs.empty()) throw std::invalid_argument("GridSpec: outputs must not be empty");
    std::vector<std::string> probe; // reuses the group-name validation
    for (const auto& group : outputs) append_group_columns(group, probe);
    base.validate();
    if (!(hop_j >= 0.0)) throw std::invalid_argument("GridSpec: hop_j must be >= 0");
}

std::vector<std::string> output_columns(const GridSpec& spec) {
    std::vector<std::string> cols{spec.axis1.name};
    if (spec.axis2.active()) cols.push_back(spec.axis2.name);
    for (const auto& group : spec.outputs) append_group_columns(group, cols);
    cols.push_back("error");
    return cols;
}

SweepResult run_sweep(const GridSpec& spec, int workers) {
    spec.validate();

    SweepResult result;
    result.columns = output_columns(spec);
    const std::size_t numeric_columns = result.columns.size() - 1;

    const std::vector<double> vals1 = spec.axis1.values();
    const std::vector<double> vals2 =
        spec.axis2.active() ? spec.axis2.values() : std::vector<double>{};
    const std::size_t n2 = spec.axis2.active() ? vals2.size() : 1;
    const std::size_t total = vals1.size() * n2;
    result.rows.resize(total);

    std::atomic<std::size_t> cursor{0};
    auto work = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= total) return;
            const std::size_t i1 = i / n2;
            const std::size_t i2 = i % n2;
            std::optional<double> v2;
            if (spec.axis2.active()) v2 = vals2[i2];
            result.rows[i] = evaluate_point(spec, vals1[i1], v2, numeric_columns);
        }
    };

    const std::size_t thread_count =
        std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(total, 1));
    if (thread_count <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (std::size_t t = 0; t < thread_count; ++t) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    return result;
}

CoeffScanResult run_coefficient_scan(const SystemParams& params, int k_max, ScanRegime regime) {
    params.validate();
    if (k_max < 1) throw std::invalid_argument("run_coefficient_scan: k_max must be >= 1");

    double lambda = 0.0;
    if (regime == ScanRegime::Dispersive) lambda = params.lambda(); // rejects delta == 0

    CoeffScanResult result;
    result.columns = {"k", "c_k_minus", "sign", "precision_bits", "error"};
    result.rows.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        CoeffScanRow row;
        row.k = k;
        try {
            switch (regime) {
                case ScanRegime::Exact: {
                    const auto info = kbody::coeff_exact_info(params, k, Branch::Minus);
                    row.value = info.value;
                    row.precision_bits = info.precision_bits;
                    break;
                }
                case ScanRegime::Resonant: {
                    const auto info = kbody::coeff_resonant_info(params.g, k, params.zero_detuning_sign);
                    row.value = info.value;
                    row.precision_bits = info.precision_bits;
                    break;
                }
                case ScanRegime::Dispersive:
                    row.value = kbody::coeff_dispersive(params.g, lambda, k);
                    break;
            }
            row.sign = row.value > 0.0 ? 1 : (row.value < 0.0 ? -1 : 0);
        } catch (const std::exception& e) {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.sign = 0;
            row.error = e.what();
        }
        result.rows.push_back(std::move(row));
    }
    return result;
}

std::string format_value(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string to_csv(const SweepResult& result) {
    std::string out;
    append_header(out, result.columns);
    for (const auto& row : result.rows) {
        for (const double v : row.values) {
            out += format_value(v);
            out += ',';
        }
        append_csv_field(out, row.error);
        out += '\n';
    }
    return out;
}

std::string to_csv(const CoeffScanResult& result) {
    std::string out;
    append_header(out, result.columns);
    for (const auto& row : result.rows) {
        out += std::to_string(row.k);
        out += ',';
        out += format_value(row.value);
        out += ',';
        out += std::to_string(row.sign);
        out += ',';
        out += std::to_string(row.precision_bits);
        out += ',';
        append_csv_field(out, row.error);
        out += '\n';
    }
    return out;
}

nlohmann::ordered_json to_json(const SweepResult& result) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json entry;
        for (std::size_t i = 0; i < row.values.size(); ++i) {
            entry[result.columns[i]] = row.values[i];
        }
        entry["error"] = row.error;
        rows.push_back(std::move(entry));
    }
    return nlohmann::ordered_json{{"columns", result.columns}, {"rows", rows}};
}

nlohmann::ordered_json to_json(const CoeffScanResult& result) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : result.rows) {
        nlohmann::ordered_json entry;
        entry["k"] = row.k;
        entry["c_k_minus"] = row.value;
        entry["sign"] = row.sign;
        entry["precision_bits"] = row.precision_bits;
        entry["error"] = row.error;
        rows.push_back(std::move(entry));
    }
    return nlohmann::ordered_json{{"columns", result.columns}, {"rows", rows}};
}

} // namespace jcdress::sweep
