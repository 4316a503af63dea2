// jcdress_main.cpp - command-line front end: coeffs, spectrum, verify, twosite, sweep

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "jcdress/config.hpp"
#include "jcdress/dressed.hpp"
#include "jcdress/kbody.hpp"
#include "jcdress/oracle.hpp"
#include "jcdress/sweep.hpp"
#include "jcdress/twosite.hpp"

namespace {

using jcdress::Branch;
using jcdress::SystemParams;
using jcdress::ZeroDetuningSign;
using jcdress::sweep::format_value;

// Flag misuse detected after parsing; mapped to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParamFlags {
    std::optional<double> omega_c;
    std::optional<double> g;
    std::optional<double> delta;
    std::optional<double> lambda;
    std::optional<double> gamma_scale;
    std::optional<std::string> approach;
    std::string config_path;
};

// Adds the shared physics flags to a subcommand. `with_hop` also allows the
// hop_j key in --config files.
void add_param_flags(CLI::App* cmd, ParamFlags& flags) {
    cmd->add_option("--omega-c", flags.omega_c, "cavity frequency omega_c (default 1)");
    cmd->add_option("--g", flags.g, "coupling strength g (default 1)");
    auto* delta = cmd->add_option("--delta", flags.delta, "detuning omega_a - omega_c");
    auto* lambda =
        cmd->add_option("--lambda", flags.lambda, "sets the detuning via delta = g / lambda");
    delta->excludes(lambda);
    cmd->add_option("--approach", flags.approach,
                    "side from which delta = 0 is approached")
        ->check(CLI::IsMember({"above", "below"}));
    cmd->add_option("--gamma-scale", flags.gamma_scale, "reference rate for --units gamma");
    cmd->add_option("--config", flags.config_path,
                    "key=value file with parameter defaults (flags override)");
}

SystemParams resolve_params(const ParamFlags& flags, bool config_allows_hop,
                            double* config_hop_j = nullptr) {
    SystemParams p;
    bool delta_explicit = false;
    bool approach_explicit = false;

    if (!flags.config_path.empty()) {
        const auto kv = jcdress::config::parse_file(flags.config_path);
        auto allowed = jcdress::config::kSystemParamKeys;
        if (config_allows_hop) allowed.push_back("hop_j");
        jcdress::config::require_known_keys(kv, allowed);
        p = jcdress::config::system_params_from(kv, p);
        delta_explicit = kv.count("delta") > 0;
        approach_explicit = kv.count("zero_detuning_sign") > 0;
        if (config_hop_j && kv.count("hop_j")) {
            *config_hop_j = std::strtod(kv.at("hop_j").c_str(), nullptr);
        }
    }

    if (flags.omega_c) p.omega_c = *flags.omega_c;
    if (flags.g) p.g = *flags.g;
    if (flags.gamma_scale) p.gamma_scale = *flags.gamma_scale;
    if (flags.approach) {
        p.zero_detuning_sign =
            *flags.approach == "above" ? ZeroDetuningSign::FromAbove : ZeroDetuningSign::FromBelow;
        approach_explicit = true;
    }
    if (flags.delta) {
        p.delta = *flags.delta;
        delta_explicit = true;
    }
    if (flags.lambda) {
        if (*flags.lambda == 0.0) throw std::domain_error("--lambda must be nonzero");
        if (!(p.g > 0.0)) throw std::domain_error("--lambda requires g > 0");
        p.delta = p.g / *flags.lambda;
        delta_explicit = true;
    }
    p.validate();

    if (p.delta == 0.0 && p.g > 0.0 && !approach_explicit) {
        if (delta_explicit) {
            throw UsageError("--delta 0 requires --approach above|below");
        }
        std::cerr << "note: detuning defaults to 0, approached from above "
                     "(pass --approach to choose the side)\n";
    }
    return p;
}

void write_output(const std::string& data, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << data;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + out_path + "'");
    out << data;
}

double unit_scale(const SystemParams& p, const std::string& units) {
    if (units == "g") {
        if (!(p.g > 0.0)) throw std::domain_error("--units g requires g > 0");
        return p.g;
    }
    return p.gamma_scale.value_or(1.0);
}

// ---- coeffs ----

struct CoeffsOptions {
    ParamFlags params;
    int k_max{8};
    bool resonant{false};
    std::string units{"gamma"};
    std::string scan; // empty = table mode
    bool json{false};
    std::string out;
};

int run_coeffs(const CoeffsOptions& opt) {
    SystemParams p = resolve_params(opt.params, false);
    const double scale = unit_scale(p, opt.units);

    if (!opt.scan.empty()) {
        jcdress::sweep::ScanRegime regime = jcdress::sweep::ScanRegime::Exact;
        if (opt.scan == "resonant") regime = jcdress::sweep::ScanRegime::Resonant;
        if (opt.scan == "dispersive") regime = jcdress::sweep::ScanRegime::Dispersive;
        auto result = jcdress::sweep::run_coefficient_scan(p, opt.k_max, regime);
        for (auto& row : result.rows) row.value /= scale;
        write_output(opt.json ? jcdress::sweep::to_json(result).dump(2) + "\n"
                              : jcdress::sweep::to_csv(result),
                     opt.out);
        return 0;
    }

    if (opt.resonant && p.delta != 0.0) {
        std::cerr << "note: --resonant evaluates at detuning 0; ignoring the given detuning\n";
        p.delta = 0.0;
    }

    struct Row {
        int k;
        double minus, plus;
        long bits;
    };
    std::vector<Row> rows;
    for (int k = opt.resonant ? 1 : 0; k <= opt.k_max; ++k) {
        jcdress::kbody::CoeffValue minus =
            opt.resonant ? jcdress::kbody::coeff_resonant_info(p.g, k, p.zero_detuning_sign)
                         : jcdress::kbody::coeff_exact_info(p, k, Branch::Minus);
        jcdress::kbody::CoeffValue plus = jcdress::kbody::coeff_exact_info(p, k, Branch::Plus);
        rows.push_back({k, minus.value / scale, plus.value / scale,
                        std::max(minus.precision_bits, plus.precision_bits)});
    }

    std::string data;
    if (opt.json) {
        nlohmann::ordered_json out_rows = nlohmann::ordered_json::array();
        for (const auto& r : rows) {
            out_rows.push_back({{"k", r.k},
                                {"C_k_minus", r.minus},
                                {"C_k_plus", r.plus},
                                {"precision_bits", r.bits}});
        }
        nlohmann::ordered_json doc{
            {"columns", {"k", "C_k_minus", "C_k_plus", "precision_bits"}},
            {"rows", out_rows}};
        data = doc.dump(2) + "\n";
    } else {
        data = "k,C_k_minus,C_k_plus,precision_bits\n";
        for (const auto& r : rows) {
            data += std::to_string(r.k) + ',' + format_value(r.minus) + ',' +
                    format_value(r.plus) + ',' + std::to_string(r.bits) + '\n';
        }
    }
    write_output(data, opt.out);
    return 0;
}

// ---- spectrum ----

struct SpectrumOptions {
    ParamFlags params;
    int n_max{10};
    std::string method{"block"};
    bool json{false};
    std::string out;
};

int run_spectrum(const SpectrumOptions& opt) {
    const SystemParams p = resolve_params(opt.params, false);
    const auto method = opt.method == "dense" ? jcdress::oracle::SpectrumMethod::Dense
                                              : jcdress::oracle::SpectrumMethod::Block;
    const auto levels = jcdress::oracle::spectrum(p, opt.n_max, method);

    std::string data;
    nlohmann::ordered_json out_rows = nlohmann::ordered_json::array();
    if (!opt.json) data = "n,branch,e_oracle,e_closed,rel_err\n";
    for (const auto& level : levels) {
        const double closed =
            level.n == 0 ? -0.5 * p.omega_a()
                         : jcdress::eigenvalue(p, jcdress::DressedLabel{level.n, level.branch});
        const double rel =
            std::abs(level.energy - closed) / std::max(std::abs(closed), 1e-300);
        const char* branch =
            level.n == 0 ? "ground" : (level.branch == Branch::Minus ? "minus" : "plus");
        if (opt.json) {
            out_rows.push_back({{"n", level.n},
                                {"branch", branch},
                                {"e_oracle", level.energy},
                                {"e_closed", closed},
                                {"rel_err", rel}});
        } else {
            data += std::to_string(level.n) + ',' + branch + ',' + format_value(level.energy) +
                    ',' + format_value(closed) + ',' + format_value(rel) + '\n';
        }
    }
    if (opt.json) {
        nlohmann::ordered_json doc{
            {"columns", {"n", "branch", "e_oracle", "e_closed", "rel_err"}}, {"rows", out_rows}};
        data = doc.dump(2) + "\n";
    }
    write_output(data, opt.out);
    return 0;
}

// ---- verify ----

struct VerifyOptions {
    ParamFlags params;
    int n_max{20};
    bool json{false};
    std::string out;
};

int run_verify(const VerifyOptions& opt) {
    const SystemParams p = resolve_params(opt.params, false);
    const auto report = jcdress::oracle::verify(p, opt.n_max);

    std::string data;
    if (opt.json) {
        nlohmann::ordered_json doc{{"n_max", report.n_max},
                                   {"hermiticity_residual", report.hermiticity_residual},
                                   {"unitarity_residual", report.unitarity_residual},
                                   {"offdiag_residual", report.offdiag_residual},
                                   {"offdiag_bound", report.offdiag_bound},
                                   {"max_abs_energy", report.max_abs_energy},
                                   {"spectrum_rel_err_block", report.spectrum_rel_err_block},
                                   {"spectrum_rel_err_dense", report.spectrum_rel_err_dense},
                                   {"pass", report.pass}};
        data = doc.dump(2) + "\n";
    } else {
        data += "n_max: " + std::to_string(report.n_max) + '\n';
        data += "hermiticity_residual: " + format_value(report.hermiticity_residual) + '\n';
        data += "unitarity_residual: " + format_value(report.unitarity_residual) + '\n';
        data += "offdiag_residual: " + format_value(report.offdiag_residual) + '\n';
        data += "offdiag_bound: " + format_value(report.offdiag_bound) + '\n';
        data += "max_abs_energy: " + format_value(report.max_abs_energy) + '\n';
        data += "spectrum_rel_err_block: " + format_value(report.spectrum_rel_err_block) + '\n';
        data += "spectrum_rel_err_dense: " + format_value(report.spectrum_rel_err_dense) + '\n';
        data += std::string("pass: ") + (report.pass ? "true" : "false") + '\n';
    }
    write_output(data, opt.out);
    return report.pass ? 0 : 1;
}

// ---- twosite ----

struct TwoSiteOptions {
    ParamFlags params;
    double hop_j{0.0};
    bool hop_j_given{false};
    std::string report{"json"};
    std::string out;
};

int run_twosite(const TwoSiteOptions& opt) {
    double config_hop = 0.0;
    jcdress::jch2::TwoSiteParams tp;
    tp.site = resolve_params(opt.params, true, &config_hop);
    tp.hop_j = opt.hop_j_given ? opt.hop_j : config_hop;
    tp.validate();

    const auto gs = jcdress::jch2::ground_state(tp);
    const double j1 = jcdress::jch2::j_eff(tp, 1);
    const double j2 = jcdress::jch2::j_eff(tp, 2);
    const double u_eff = jcdress::kbody::coeff_exact(tp.site, 2, Branch::Minus);
    const auto oc = jcdress::jch2::outcoupling(tp);

    std::string data;
    if (opt.report == "csv") {
        std::string header = "energy,variance,overlap_dressed_mi,overlap_photonic_mi,"
                             "overlap_dressed_sf,overlap_photonic_sf,effective_ratio,"
                             "near_degenerate,j_eff_1,j_eff_2,u_eff,m1,m2,m3,k1,k2";
        std::string row = format_value(gs.energy) + ',' + format_value(gs.variance) + ',' +
                          format_value(gs.overlap_dressed_mi) + ',' +
                          format_value(gs.overlap_photonic_mi) + ',' +
                          format_value(gs.overlap_dressed_sf) + ',' +
                          format_value(gs.overlap_photonic_sf) + ',' +
                          format_value(gs.effective_ratio) + ',' +
                          (gs.near_degenerate ? "true" : "false");
        for (double v : {j1, j2, u_eff, oc.m1, oc.m2, oc.m3, oc.k1, oc.k2}) {
            row += ',';
            row += format_value(v);
        }
        for (std::size_t i = 0; i < gs.amplitudes.size(); ++i) {
            header += ",amp_" + std::to_string(i);
            row += ',' + format_value(gs.amplitudes[i]);
        }
        data = header + '\n' + row + '\n';
    } else {
        nlohmann::ordered_json doc{
            {"energy", gs.energy},
            {"variance", gs.variance},
            {"overlap_dressed_mi", gs.overlap_dressed_mi},
            {"overlap_photonic_mi", gs.overlap_photonic_mi},
            {"overlap_dressed_sf", gs.overlap_dressed_sf},
            {"overlap_photonic_sf", gs.overlap_photonic_sf},
            {"effective_ratio", gs.effective_ratio},
            {"near_degenerate", gs.near_degenerate},
            {"j_eff_1", j1},
            {"j_eff_2", j2},
            {"u_eff", u_eff},
            {"outcoupling",
             {{"m1", oc.m1}, {"m2", oc.m2}, {"m3", oc.m3}, {"k1", oc.k1}, {"k2", oc.k2}}},
            {"amplitudes", gs.amplitudes}};
        data = doc.dump(2) + "\n";
    }
    write_output(data, opt.out);
    return 0;
}

// ---- sweep ----

struct SweepOptions {
    std::string preset;
    std::string config_path;
    int workers{1};
    bool json{false};
    std::string out;
};

int run_sweep_cmd(const SweepOptions& opt) {
    if (opt.preset.empty() == opt.config_path.empty()) {
        throw UsageError("sweep needs exactly one of --preset or --config");
    }
    const jcdress::sweep::GridSpec spec =
        opt.preset.empty() ? jcdress::config::grid_spec_from(jcdress::config::parse_file(opt.config_path))
                           : jcdress::config::preset(opt.preset);
    const auto result = jcdress::sweep::run_sweep(spec, opt.workers);
    write_output(opt.json ? jcdress::sweep::to_json(result).dump(2) + "\n"
                          : jcdress::sweep::to_csv(result),
                 opt.out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"jcdress: dressed-basis k-body representation of the Jaynes-Cummings "
                 "ladder and its two-site Hubbard extension. "
                 "JCDRESS_PRECISION_BITS floors the extended-precision arithmetic."};
    app.require_subcommand(1);

    CoeffsOptions coeffs_opt;
    auto* coeffs = app.add_subcommand("coeffs", "k-body coefficient tables and scans");
    add_param_flags(coeffs, coeffs_opt.params);
    coeffs->add_option("--k-max", coeffs_opt.k_max, "highest k to emit (default 8)")
        ->check(CLI::Range(0, 100000));
    auto* resonant_flag =
        coeffs->add_flag("--resonant", coeffs_opt.resonant, "closed resonant forms, k >= 1");
    coeffs->add_option("--scan", coeffs_opt.scan, "C_k^- series for one regime")
        ->check(CLI::IsMember({"exact", "resonant", "dispersive"}))
        ->excludes(resonant_flag);
    coeffs->add_option("--units", coeffs_opt.units, "report values per gamma or per g")
        ->check(CLI::IsMember({"gamma", "g"}));
    coeffs->add_flag("--json", coeffs_opt.json, "emit JSON instead of CSV");
    coeffs->add_option("--out", coeffs_opt.out, "write to a file instead of stdout");

    SpectrumOptions spectrum_opt;
    auto* spectrum = app.add_subcommand("spectrum", "oracle spectrum vs closed form");
    add_param_flags(spectrum, spectrum_opt.params);
    spectrum->add_option("--n-max", spectrum_opt.n_max, "highest manifold (default 10)")
        ->check(CLI::Range(1, 100000));
    spectrum->add_option("--method", spectrum_opt.method, "oracle path (default block)")
        ->check(CLI::IsMember({"block", "dense"}));
    spectrum->add_flag("--json", spectrum_opt.json, "emit JSON instead of CSV");
    spectrum->add_option("--out", spectrum_opt.out, "write to a file instead of stdout");

    VerifyOptions verify_opt;
    auto* verify = app.add_subcommand("verify", "residual report for the oracle checks");
    add_param_flags(verify, verify_opt.params);
    verify->add_option("--n-max", verify_opt.n_max, "highest manifold (default 20)")
        ->check(CLI::Range(1, 100000));
    verify->add_flag("--json", verify_opt.json, "emit JSON instead of text");
    verify->add_option("--out", verify_opt.out, "write to a file instead of stdout");

    TwoSiteOptions twosite_opt;
    auto* twosite = app.add_subcommand("twosite", "two-site ground-state report");
    add_param_flags(twosite, twosite_opt.params);
    auto* hop = twosite->add_option("--hop-j", twosite_opt.hop_j, "photon hopping J (default 0)");
    twosite->add_option("--report", twosite_opt.report, "output format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
    twosite->add_option("--out", twosite_opt.out, "write to a file instead of stdout");

    SweepOptions sweep_opt;
    auto* sweep = app.add_subcommand("sweep", "parameter-grid datasets (CSV/JSON)");
    auto* preset = sweep->add_option("--preset", sweep_opt.preset, "built-in grid: fig3|fig5|fig6");
    auto* sweep_config =
        sweep->add_option("--config", sweep_opt.config_path, "grid spec from a key=value file");
    preset->excludes(sweep_config);
    sweep->add_option("--workers", sweep_opt.workers, "worker threads (default 1)")
        ->check(CLI::Range(1, 256));
    sweep->add_flag("--json", sweep_opt.json, "emit JSON instead of CSV");
    sweep->add_option("--out", sweep_opt.out, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2; --help exits 0
    }
    twosite_opt.hop_j_given = hop->count() > 0;

    try {
        if (*coeffs) return run_coeffs(coeffs_opt);
        if (*spectrum) return run_spectrum(spectrum_opt);
        if (*verify) return run_verify(verify_opt);
        if (*twosite) return run_twosite(twosite_opt);
        if (*sweep) return run_sweep_cmd(sweep_opt);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
