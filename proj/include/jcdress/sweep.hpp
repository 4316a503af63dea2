// sweep.hpp - deterministic parameter-grid engine with CSV/JSON serialization

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "jcdress/kbody.hpp"
#include "jcdress/twosite.hpp"

namespace jcdress::sweep {

// One grid axis. Valid names: lambda, delta, g, hop_j, hop_j_over_g.
// An axis with count 0 is absent (allowed for axis2 only).
struct AxisSpec {
    std::string name;
    std::string scale{"log"}; // log | linear
    double min{0.0};
    double max{0.0};
    int count{0};

    bool active() const { return count != 0; }
    std::vector<double> values() const;
    void validate() const; // count >= 2, min < max, log needs min > 0
};

struct GridSpec {
    AxisSpec axis1;
    AxisSpec axis2;                   // optional inner axis
    SystemParams base;                // held site parameters; axes override
    double hop_j{0.0};                // held hopping unless an axis drives it
    std::vector<std::string> outputs; // column groups, see output_columns()

    void validate() const;
};

// Column groups understood in GridSpec::outputs:
//   jeff        -> j_eff_1, j_eff_2
//   ueff        -> u_eff
//   ratio       -> effective_ratio
//   outcoupling -> m1, m2, m3, k1, k2
//   var         -> var_n
//   overlaps    -> overlap_dressed_mi, overlap_photonic_mi,
//                  overlap_dressed_sf, overlap_photonic_sf
//   energy      -> ground_energy
//   coeffs:<k>  -> c0_minus .. c<k>_minus, precision_bits
// The full header is axis names, then the groups in request order, then "error".
std::vector<std::string> output_columns(const GridSpec& spec);

struct SweepRow {
    std::vector<double> values; // one per numeric column; nan on failure
    std::string error;          // empty when the point evaluated cleanly
};

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<SweepRow> rows; // axis1 outer, axis2 inner
};

// Evaluates every grid point. Rows land in a preallocated buffer indexed by
// grid position, so the output is byte-identical for any worker count.
// Per-point failures are recorded in the row's error column.
SweepResult run_sweep(const GridSpec& spec, int workers = 1);

enum class ScanRegime { Exact, Resonant, Dispersive };

struct CoeffScanRow {
    int k{0};
    double value{0.0};
    int sign{0}; // -1, 0, +1
    long precision_bits{53};
    std::string error;
};

struct CoeffScanResult {
    std::vector<std::string> columns; // k, c_k_minus, sign, precision_bits, error
    std::vector<CoeffScanRow> rows;
};

// C_k^- for k = 1..k_max in the chosen regime. Resonant uses the closed
// resonant form with params.zero_detuning_sign as the approach side;
// Dispersive evaluates the small-lambda closed form and records its validity
// violations per row instead of aborting the scan.
CoeffScanResult run_coefficient_scan(const SystemParams& params, int k_max, ScanRegime regime);

// Round-trip decimal formatting (17 significant digits) used by every writer.
std::string format_value(double v);

std::string to_csv(const SweepResult& result);
std::string to_csv(const CoeffScanResult& result);
nlohmann::ordered_json to_json(const SweepResult& result);
nlohmann::ordered_json to_json(const CoeffScanResult& result);

} // namespace jcdress::sweep
