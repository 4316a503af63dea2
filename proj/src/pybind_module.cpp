// pybind_module.cpp - python bindings for the main operations

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "jcdress/config.hpp"
#include "jcdress/dressed.hpp"
#include "jcdress/kbody.hpp"
#include "jcdress/oracle.hpp"
#include "jcdress/sweep.hpp"
#include "jcdress/twosite.hpp"

namespace py = pybind11;
using namespace jcdress;
using namespace jcdress::kbody;
using namespace jcdress::oracle;
using namespace jcdress::jch2;

namespace {

std::vector<std::vector<double>> to_rows(const Eigen::MatrixXd& m) {
    std::vector<std::vector<double>> rows(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        rows[i].assign(m.row(i).begin(), m.row(i).end());
    }
    return rows;
}

py::dict report_to_dict(const jch2::GroundStateReport& r) {
    py::dict d;
    d["energy"] = r.energy;
    d["amplitudes"] = r.amplitudes;
    d["variance"] = r.variance;
    d["overlap_dressed_mi"] = r.overlap_dressed_mi;
    d["overlap_photonic_mi"] = r.overlap_photonic_mi;
    d["overlap_dressed_sf"] = r.overlap_dressed_sf;
    d["overlap_photonic_sf"] = r.overlap_photonic_sf;
    d["effective_ratio"] = r.effective_ratio;
    d["near_degenerate"] = r.near_degenerate;
    return d;
}

py::dict verify_to_dict(const oracle::VerifyReport& r) {
    py::dict d;
    d["n_max"] = r.n_max;
    d["hermiticity_residual"] = r.hermiticity_residual;
    d["unitarity_residual"] = r.unitarity_residual;
    d["offdiag_residual"] = r.offdiag_residual;
    d["offdiag_bound"] = r.offdiag_bound;
    d["max_abs_energy"] = r.max_abs_energy;
    d["spectrum_rel_err_block"] = r.spectrum_rel_err_block;
    d["spectrum_rel_err_dense"] = r.spectrum_rel_err_dense;
    d["pass"] = r.pass;
    return d;
}

} // namespace

PYBIND11_MODULE(_jcdress, m) {
    m.doc() = "dressed-basis k-body representation of the Jaynes-Cummings ladder (C++ core)";

    py::enum_<Branch>(m, "Branch")
        .value("MINUS", Branch::Minus)
        .value("PLUS", Branch::Plus);

    py::enum_<ZeroDetuningSign>(m, "ZeroDetuningSign")
        .value("FROM_ABOVE", ZeroDetuningSign::FromAbove)
        .value("FROM_BELOW", ZeroDetuningSign::FromBelow);

    py::class_<SystemParams>(m, "SystemParams")
        .def(py::init<>())
        .def_readwrite("omega_c", &SystemParams::omega_c)
        .def_readwrite("delta", &SystemParams::delta)
        .def_readwrite("g", &SystemParams::g)
        .def_readwrite("gamma_scale", &SystemParams::gamma_scale)
        .def_readwrite("zero_detuning_sign", &SystemParams::zero_detuning_sign)
        .def("omega_a", &SystemParams::omega_a)
        .def("sign_eff", &SystemParams::sign_eff)
        .def("lambda_", &SystemParams::lambda)
        .def("validate", &SystemParams::validate)
        .def("__repr__", [](const SystemParams& p) {
            return "SystemParams(omega_c=" + std::to_string(p.omega_c) +
                   ", delta=" + std::to_string(p.delta) + ", g=" + std::to_string(p.g) + ")";
        });

    m.def("params_from_lambda", &params_from_lambda, py::arg("omega_c"), py::arg("g"),
          py::arg("lambda"), py::arg("approach") = ZeroDetuningSign::FromAbove);

    py::class_<DressedLabel>(m, "DressedLabel")
        .def(py::init([](int n, Branch branch) { return DressedLabel{n, branch}; }),
             py::arg("n"), py::arg("branch"))
        .def_readwrite("n", &DressedLabel::n)
        .def_readwrite("branch", &DressedLabel::branch);

    py::enum_<OperatorLabel>(m, "OperatorLabel")
        .value("A", OperatorLabel::A)
        .value("A_DAG", OperatorLabel::ADag)
        .value("A_DAG_A", OperatorLabel::ADagA)
        .value("SIGMA_MINUS", OperatorLabel::SigmaMinus)
        .value("SIGMA_PLUS", OperatorLabel::SigmaPlus)
        .value("SIGMA_Z", OperatorLabel::SigmaZ)
        .value("SIGMA_PLUS_MINUS", OperatorLabel::SigmaPlusMinus)
        .value("SIGMA_MINUS_PLUS", OperatorLabel::SigmaMinusPlus)
        .value("N_TOTAL", OperatorLabel::NTotal);

    m.def("mixing_angle", &mixing_angle, py::arg("params"), py::arg("n"));
    m.def("eigenvalue", &eigenvalue, py::arg("params"), py::arg("label"));
    m.def(
        "eigenvector_coeffs",
        [](const SystemParams& p, int n) {
            const auto cs = eigenvector_coeffs(p, n);
            return py::make_tuple(cs.c, cs.s);
        },
        py::arg("params"), py::arg("n"));
    m.def(
        "dressed_apply",
        [](OperatorLabel op, const DressedLabel& label) {
            const auto result = dressed_apply(op, label);
            return py::make_tuple(result.coefficient, result.state);
        },
        py::arg("op"), py::arg("label"),
        "Returns (coefficient, result_label_or_None).");

    m.def("coeff_exact", &coeff_exact, py::arg("params"), py::arg("k"), py::arg("branch"));
    m.def("coeff_forward_difference", &coeff_forward_difference, py::arg("params"), py::arg("k"),
          py::arg("branch"));
    m.def(
        "coefficient_table",
        [](const SystemParams& p, int k_max, Branch branch) {
            const auto table = coefficient_table(p, k_max, branch);
            py::dict d;
            d["values"] = table.values;
            d["precision_bits"] = table.precision_bits;
            return d;
        },
        py::arg("params"), py::arg("k_max"), py::arg("branch"));
    m.def("coeff_resonant", &coeff_resonant, py::arg("g"), py::arg("k"),
          py::arg("approach") = ZeroDetuningSign::FromAbove);
    m.def("coeff_dispersive", &coeff_dispersive, py::arg("g"), py::arg("lambda"), py::arg("k"));
    m.def("asymptotic_resonant_magnitude", &asymptotic_resonant_magnitude, py::arg("g"),
          py::arg("k"));
    m.def("ladder_energy_from_kbody", &ladder_energy_from_kbody, py::arg("params"), py::arg("n"),
          py::arg("branch"), py::arg("k_max"));
    m.def(
        "effective_onsite",
        [](const SystemParams& p, Branch branch) {
            const auto eff = effective_onsite_n2(p, branch);
            py::dict d;
            d["omega_eff"] = eff.omega_eff;
            d["u_eff"] = eff.u_eff;
            d["e0"] = eff.e0;
            return d;
        },
        py::arg("params"), py::arg("branch"));

    m.def(
        "spectrum",
        [](const SystemParams& p, int n_max, const std::string& method) {
            const auto m_enum = method == "dense" ? oracle::SpectrumMethod::Dense
                                                  : oracle::SpectrumMethod::Block;
            py::list out;
            for (const auto& level : oracle::spectrum(p, n_max, m_enum)) {
                out.append(py::make_tuple(level.n, level.branch, level.energy));
            }
            return out;
        },
        py::arg("params"), py::arg("n_max"), py::arg("method") = "block",
        "List of (n, branch, energy) sorted by energy.");
    m.def(
        "verify",
        [](const SystemParams& p, int n_max) { return verify_to_dict(oracle::verify(p, n_max)); },
        py::arg("params"), py::arg("n_max") = 20);

    py::class_<jch2::TwoSiteParams>(m, "TwoSiteParams")
        .def(py::init<>())
        .def(py::init([](const SystemParams& site, double hop_j) {
                 return jch2::TwoSiteParams{site, hop_j};
             }),
             py::arg("site"), py::arg("hop_j"))
        .def_readwrite("site", &jch2::TwoSiteParams::site)
        .def_readwrite("hop_j", &jch2::TwoSiteParams::hop_j);

    m.def("j_eff", &jch2::j_eff, py::arg("params"), py::arg("manifold"));
    m.def(
        "outcoupling",
        [](const jch2::TwoSiteParams& p) {
            const auto oc = jch2::outcoupling(p);
            py::dict d;
            d["m1"] = oc.m1;
            d["m2"] = oc.m2;
            d["m3"] = oc.m3;
            d["k1"] = oc.k1;
            d["k2"] = oc.k2;
            return d;
        },
        py::arg("params"));
    m.def(
        "ground_state",
        [](const jch2::TwoSiteParams& p) { return report_to_dict(jch2::ground_state(p)); },
        py::arg("params"));
    m.def(
        "hbar_blocks",
        [](const jch2::TwoSiteParams& p) {
            const auto [one, two] = jch2::hbar_blocks(p);
            return py::make_tuple(to_rows(one), to_rows(two));
        },
        py::arg("params"), "(n=1 block, n=2 block) as nested lists.");
    m.def(
        "dressed_hamiltonian",
        [](const jch2::TwoSiteParams& p, int n_tot) {
            return to_rows(jch2::dressed_transform_two_site(p, n_tot).mat);
        },
        py::arg("params"), py::arg("n_tot"));
    m.def(
        "dispersive_hamiltonian",
        [](const jch2::TwoSiteParams& p, int n_tot) {
            bool warned = false;
            auto rows = to_rows(jch2::dispersive_hamiltonian(p, n_tot, &warned).mat);
            return py::make_tuple(rows, warned);
        },
        py::arg("params"), py::arg("n_tot"),
        "(matrix, outside_dispersive_regime_flag).");

    m.def(
        "sweep_preset_csv",
        [](const std::string& name, int workers) {
            return sweep::to_csv(sweep::run_sweep(config::preset(name), workers));
        },
        py::arg("name"), py::arg("workers") = 1,
        "Runs a built-in grid (fig3, fig5, fig6) and returns the CSV text.");
    m.def(
        "sweep_config_csv",
        [](const std::string& path, int workers) {
            return sweep::to_csv(
                sweep::run_sweep(config::grid_spec_from(config::parse_file(path)), workers));
        },
        py::arg("path"), py::arg("workers") = 1,
        "Runs a grid described by a key=value config file and returns the CSV text.");
}
