#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dw/bogoliubov.hpp"
#include "dw/config.hpp"
#include "dw/hartree.hpp"
#include "dw/kernel.hpp"
#include "dw/modes.hpp"
#include "dw/oracle.hpp"
#include "dw/potential.hpp"
#include "dw/scan.hpp"
#include "dw/twomode.hpp"

namespace py = pybind11;

namespace {

dw::SigmaRule sigma_rule_from(const std::string& name) {
    if (name == "sqrt_gap_N") return dw::SigmaRule::sqrt_gap_N;
    if (name == "sqrt_N") return dw::SigmaRule::sqrt_N;
    if (name == "fixed") return dw::SigmaRule::fixed;
    throw std::invalid_argument("unknown sigma rule \"" + name + "\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "double-well bosonic ground-state pipeline";

    py::class_<dw::Grid>(m, "Grid")
        .def_readonly("x_min", &dw::Grid::x_min)
        .def_readonly("x_max", &dw::Grid::x_max)
        .def_readonly("n", &dw::Grid::n)
        .def_readonly("h", &dw::Grid::h)
        .def_readonly("x", &dw::Grid::x)
        .def("center", &dw::Grid::center)
        .def("weight", &dw::Grid::weight);
    m.def("build_grid", &dw::build_grid, py::arg("x_min"), py::arg("x_max"), py::arg("n"));
    m.def("integrate", &dw::integrate);
    m.def("inner", &dw::inner);
    m.def("l2_norm", &dw::l2_norm);

    m.def(
        "double_well_potential",
        [](const dw::Grid& g, double s, double L) {
            return dw::double_well_potential(g, {s, L});
        },
        py::arg("grid"), py::arg("s"), py::arg("L"));
    m.def(
        "default_x_max",
        [](double s, double L, double kernel_range) {
            return dw::default_x_max({s, L}, kernel_range);
        },
        py::arg("s"), py::arg("L"), py::arg("kernel_range"));
    m.def(
        "interaction_kernel",
        [](const dw::Grid& g, const std::string& family, double amplitude, double range) {
            return dw::interaction_kernel(g, {family, amplitude, range});
        },
        py::arg("grid"), py::arg("family") = "triangle", py::arg("amplitude") = 1.0,
        py::arg("range") = 1.0);
    m.def("convolve_density", &dw::convolve_density, py::arg("grid"), py::arg("kernel"),
          py::arg("rho"));

    py::class_<dw::HartreeResult>(m, "HartreeResult")
        .def_readonly("u", &dw::HartreeResult::u)
        .def_readonly("mu", &dw::HartreeResult::mu)
        .def_readonly("energy", &dw::HartreeResult::energy)
        .def_readonly("lambda_", &dw::HartreeResult::lambda)
        .def_readonly("iterations", &dw::HartreeResult::iterations)
        .def_readonly("residual", &dw::HartreeResult::residual);
    m.def(
        "minimize_hartree",
        [](const dw::Grid& g, const std::vector<double>& V, const std::vector<double>& w,
           double lam, double tol, int max_iter) {
            return dw::minimize_hartree(g, V, w, lam, {tol, max_iter});
        },
        py::arg("grid"), py::arg("V"), py::arg("kernel"), py::arg("lambda_"),
        py::arg("tol") = 1e-8, py::arg("max_iter") = 50000);
    m.def("hartree_energy", &dw::hartree_energy, py::arg("grid"), py::arg("V"),
          py::arg("kernel"), py::arg("lambda_"), py::arg("u"));

    py::class_<dw::ModeBasis>(m, "ModeBasis")
        .def_readonly("n_modes", &dw::ModeBasis::n_modes)
        .def_readonly("mu", &dw::ModeBasis::mu)
        .def_readonly("parity", &dw::ModeBasis::parity)
        .def_readonly("modes", &dw::ModeBasis::modes)
        .def_readonly("u1", &dw::ModeBasis::u1)
        .def_readonly("u2", &dw::ModeBasis::u2)
        .def_readonly("u_right", &dw::ModeBasis::u_right)
        .def_readonly("u_left", &dw::ModeBasis::u_left)
        .def_readonly("pairing_warning", &dw::ModeBasis::pairing_warning);
    m.def("mean_field_spectrum", &dw::mean_field_spectrum, py::arg("grid"), py::arg("V"),
          py::arg("kernel"), py::arg("hartree"), py::arg("n_modes"));
    m.def("tunneling_parameter", &dw::tunneling_parameter, py::arg("s"), py::arg("L"));

    py::class_<dw::TunnelingReport>(m, "TunnelingReport")
        .def_readonly("T", &dw::TunnelingReport::T)
        .def_readonly("mu_plus", &dw::TunnelingReport::mu_plus)
        .def_readonly("mu_minus", &dw::TunnelingReport::mu_minus)
        .def_readonly("gap", &dw::TunnelingReport::gap)
        .def_readonly("gap_over_T", &dw::TunnelingReport::gap_over_T)
        .def_readonly("excited_gap", &dw::TunnelingReport::excited_gap);
    m.def(
        "gap_report",
        [](const dw::ModeBasis& basis, double s, double L) {
            return dw::gap_report(basis, {s, L});
        },
        py::arg("basis"), py::arg("s"), py::arg("L"));

    py::class_<dw::TwoModeModel>(m, "TwoModeModel")
        .def_readonly("N", &dw::TwoModeModel::N)
        .def_readonly("lambda_", &dw::TwoModeModel::lambda)
        .def_readonly("h11", &dw::TwoModeModel::h11)
        .def_readonly("h12", &dw::TwoModeModel::h12)
        .def_readonly("w1111", &dw::TwoModeModel::w1111)
        .def_readonly("w1112", &dw::TwoModeModel::w1112)
        .def_readonly("w1212", &dw::TwoModeModel::w1212)
        .def_readonly("w1122", &dw::TwoModeModel::w1122)
        .def_readonly("gap", &dw::TwoModeModel::gap);
    m.def("build_two_mode_model", &dw::build_two_mode_model, py::arg("grid"), py::arg("V"),
          py::arg("kernel"), py::arg("basis"), py::arg("N"), py::arg("lambda_"));
    m.def("interaction_coefficient", &dw::interaction_coefficient, py::arg("grid"),
          py::arg("kernel"), py::arg("um"), py::arg("un"), py::arg("up"), py::arg("uq"));

    py::class_<dw::TwoModeConstants>(m, "TwoModeConstants")
        .def_readonly("E0", &dw::TwoModeConstants::E0)
        .def_readonly("EwN", &dw::TwoModeConstants::EwN)
        .def_readonly("mu", &dw::TwoModeConstants::mu)
        .def_readonly("U", &dw::TwoModeConstants::U)
        .def_readonly("hop_constant", &dw::TwoModeConstants::hop_constant);
    m.def("two_mode_constants", &dw::two_mode_constants);

    py::class_<dw::FockMatrix>(m, "FockMatrix")
        .def_readonly("N", &dw::FockMatrix::N)
        .def_readonly("diag", &dw::FockMatrix::diag)
        .def_readonly("off1", &dw::FockMatrix::off1)
        .def_readonly("off2", &dw::FockMatrix::off2)
        .def("at", &dw::FockMatrix::at);
    m.def("assemble_two_mode_hamiltonian", &dw::assemble_two_mode_hamiltonian);
    m.def("assemble_identity_form", &dw::assemble_identity_form);
    m.def("assemble_bose_hubbard", &dw::assemble_bose_hubbard);

    py::class_<dw::GroundStateRecord>(m, "GroundStateRecord")
        .def_readonly("energy", &dw::GroundStateRecord::energy)
        .def_readonly("v", &dw::GroundStateRecord::v)
        .def_readonly("variance", &dw::GroundStateRecord::variance)
        .def_readonly("imbalance", &dw::GroundStateRecord::imbalance)
        .def_readonly("degenerate", &dw::GroundStateRecord::degenerate)
        .def_readonly("iterations", &dw::GroundStateRecord::iterations);
    m.def("fock_ground_state", &dw::fock_ground_state, py::arg("f"),
          py::arg("force_iterative") = false);

    py::class_<dw::GaussianTrial>(m, "GaussianTrial")
        .def_readonly("sigma_sq", &dw::GaussianTrial::sigma_sq)
        .def_readonly("d", &dw::GaussianTrial::d)
        .def_readonly("c", &dw::GaussianTrial::c)
        .def_readonly("d_second_moment", &dw::GaussianTrial::d_second_moment);
    m.def(
        "gaussian_trial_state",
        [](int N, double gap, const std::string& rule, double sigma_override) {
            return dw::gaussian_trial_state(N, gap, sigma_rule_from(rule), sigma_override);
        },
        py::arg("N"), py::arg("gap"), py::arg("rule") = "sqrt_gap_N",
        py::arg("sigma_override") = 0.0);
    m.def("trial_energy", &dw::trial_energy, py::arg("f"), py::arg("trial"));

    py::class_<dw::QuadraticBlocks>(m, "QuadraticBlocks")
        .def_readonly("D", &dw::QuadraticBlocks::D)
        .def_readonly("K", &dw::QuadraticBlocks::K)
        .def_readonly("v", &dw::QuadraticBlocks::v);
    py::class_<dw::ExcitedBlocks>(m, "ExcitedBlocks")
        .def_readonly("right", &dw::ExcitedBlocks::right)
        .def_readonly("left", &dw::ExcitedBlocks::left)
        .def_readonly("M", &dw::ExcitedBlocks::M);
    m.def("excited_blocks", &dw::excited_blocks, py::arg("grid"), py::arg("kernel"),
          py::arg("basis"), py::arg("M"));
    m.def("bogoliubov_energy_trace", &dw::bogoliubov_energy_trace, py::arg("D"), py::arg("K"),
          py::arg("lambda_"));
    py::class_<dw::BogoliubovResult>(m, "BogoliubovResult")
        .def_readonly("e_right", &dw::BogoliubovResult::e_right)
        .def_readonly("e_left", &dw::BogoliubovResult::e_left)
        .def_readonly("e_bog", &dw::BogoliubovResult::e_bog)
        .def_readonly("M", &dw::BogoliubovResult::M);
    m.def("bogoliubov_energy", &dw::bogoliubov_energy, py::arg("grid"), py::arg("kernel"),
          py::arg("basis"), py::arg("lambda_"), py::arg("M"));
    m.def("quadratic_ground_energy", &dw::quadratic_ground_energy, py::arg("A"), py::arg("B"));
    m.def("variance_coefficient_bound", &dw::variance_coefficient_bound, py::arg("U"),
          py::arg("blocks"), py::arg("lambda_"));

    py::class_<dw::TruncatedFockBasis>(m, "TruncatedFockBasis")
        .def_readonly("n_modes", &dw::TruncatedFockBasis::n_modes)
        .def_readonly("n_particles", &dw::TruncatedFockBasis::n_particles)
        .def_readonly("states", &dw::TruncatedFockBasis::states)
        .def("dim", &dw::TruncatedFockBasis::dim)
        .def("find", &dw::TruncatedFockBasis::find);
    m.def("build_fock_basis", &dw::build_fock_basis, py::arg("n_modes"), py::arg("n_particles"),
          py::arg("max_dim") = 20000);
    m.def(
        "assemble_full_hamiltonian",
        [](const dw::Grid& g, const std::vector<double>& V, const std::vector<double>& w,
           const dw::ModeBasis& basis, const dw::TruncatedFockBasis& fock, double lam) {
            return Eigen::MatrixXd(dw::assemble_full_hamiltonian(g, V, w, basis, fock, lam));
        },
        py::arg("grid"), py::arg("V"), py::arg("kernel"), py::arg("basis"), py::arg("fock"),
        py::arg("lambda_"));
    py::class_<dw::OracleResult>(m, "OracleResult")
        .def_readonly("energy", &dw::OracleResult::energy)
        .def_readonly("v", &dw::OracleResult::v)
        .def_readonly("nperp", &dw::OracleResult::nperp)
        .def_readonly("nperp_sq", &dw::OracleResult::nperp_sq)
        .def_readonly("variance", &dw::OracleResult::variance)
        .def_readonly("imbalance", &dw::OracleResult::imbalance)
        .def_readonly("nminus", &dw::OracleResult::nminus)
        .def_readonly("iterations", &dw::OracleResult::iterations);
    m.def(
        "oracle_ground_state",
        [](const dw::Grid& g, const std::vector<double>& V, const std::vector<double>& w,
           const dw::ModeBasis& basis, const dw::TruncatedFockBasis& fock, double lam) {
            return dw::oracle_ground_state(dw::assemble_full_hamiltonian(g, V, w, basis, fock, lam),
                                           fock);
        },
        py::arg("grid"), py::arg("V"), py::arg("kernel"), py::arg("basis"), py::arg("fock"),
        py::arg("lambda_"));
    py::class_<dw::SectorWeight>(m, "SectorWeight")
        .def_readonly("s", &dw::SectorWeight::s)
        .def_readonly("d", &dw::SectorWeight::d)
        .def_readonly("weight", &dw::SectorWeight::weight);
    m.def("excitation_decomposition", &dw::excitation_decomposition, py::arg("fock"),
          py::arg("v"));
    py::class_<dw::ConjugationReport>(m, "ConjugationReport")
        .def_readonly("fock_dim", &dw::ConjugationReport::fock_dim)
        .def_readonly("sector_dim", &dw::ConjugationReport::sector_dim)
        .def_readonly("row_errors", &dw::ConjugationReport::row_errors)
        .def_readonly("orthonormal_error", &dw::ConjugationReport::orthonormal_error)
        .def_readonly("projector_error", &dw::ConjugationReport::projector_error)
        .def("max_error", &dw::ConjugationReport::max_error);
    m.def("verify_conjugation", &dw::verify_conjugation, py::arg("n_particles"),
          py::arg("n_modes"), py::arg("max_dim") = 5000);

    py::class_<dw::ExperimentConfig>(m, "ExperimentConfig")
        .def(py::init<>())
        .def_readwrite("s", &dw::ExperimentConfig::s)
        .def_readwrite("L", &dw::ExperimentConfig::L)
        .def_readwrite("N", &dw::ExperimentConfig::N)
        .def_readwrite("lambda_", &dw::ExperimentConfig::lambda)
        .def_readwrite("kernel_family", &dw::ExperimentConfig::kernel_family)
        .def_readwrite("kernel_amplitude", &dw::ExperimentConfig::kernel_amplitude)
        .def_readwrite("kernel_range", &dw::ExperimentConfig::kernel_range)
        .def_readwrite("grid_n", &dw::ExperimentConfig::grid_n)
        .def_readwrite("grid_x_max", &dw::ExperimentConfig::grid_x_max)
        .def_readwrite("n_modes", &dw::ExperimentConfig::n_modes)
        .def_readwrite("bog_M", &dw::ExperimentConfig::bog_M)
        .def_readwrite("sigma_rule", &dw::ExperimentConfig::sigma_rule)
        .def_readwrite("sigma_sq", &dw::ExperimentConfig::sigma_sq)
        .def_readwrite("hartree_tol", &dw::ExperimentConfig::hartree_tol)
        .def_readwrite("hartree_max_iter", &dw::ExperimentConfig::hartree_max_iter)
        .def_readwrite("oracle_enabled", &dw::ExperimentConfig::oracle_enabled)
        .def_readwrite("oracle_modes", &dw::ExperimentConfig::oracle_modes)
        .def_readwrite("out_csv", &dw::ExperimentConfig::out_csv)
        .def_readwrite("out_svg", &dw::ExperimentConfig::out_svg)
        .def_readwrite("workers", &dw::ExperimentConfig::workers)
        .def_readwrite("seed", &dw::ExperimentConfig::seed);
    m.def("parse_config", &dw::parse_config, py::arg("text"));
    m.def("load_config", &dw::load_config, py::arg("path"));
    m.def("validate_config", &dw::validate_config, py::arg("cfg"));
    m.def("serialize_config", &dw::serialize_config, py::arg("cfg"));

    py::class_<dw::ScanRecord>(m, "ScanRecord")
        .def_readonly("N", &dw::ScanRecord::N)
        .def_readonly("L", &dw::ScanRecord::L)
        .def_readonly("s", &dw::ScanRecord::s)
        .def_readonly("lambda_", &dw::ScanRecord::lambda)
        .def_readonly("T", &dw::ScanRecord::T)
        .def_readonly("gap", &dw::ScanRecord::gap)
        .def_readonly("gap_over_T", &dw::ScanRecord::gap_over_T)
        .def_readonly("mu_plus", &dw::ScanRecord::mu_plus)
        .def_readonly("mu_minus", &dw::ScanRecord::mu_minus)
        .def_readonly("excited_gap", &dw::ScanRecord::excited_gap)
        .def_readonly("E_2mode", &dw::ScanRecord::E_2mode)
        .def_readonly("E_bog", &dw::ScanRecord::E_bog)
        .def_readonly("bog_M", &dw::ScanRecord::bog_M)
        .def_readonly("variance", &dw::ScanRecord::variance)
        .def_readonly("variance_over_N", &dw::ScanRecord::variance_over_N)
        .def_readonly("sigma_sq_used", &dw::ScanRecord::sigma_sq_used)
        .def_readonly("E_trial", &dw::ScanRecord::E_trial)
        .def_readonly("oracle_run", &dw::ScanRecord::oracle_run)
        .def_readonly("oracle_E", &dw::ScanRecord::oracle_E)
        .def_readonly("oracle_variance", &dw::ScanRecord::oracle_variance)
        .def_readonly("oracle_nperp", &dw::ScanRecord::oracle_nperp)
        .def_readonly("oracle_nperp_sq", &dw::ScanRecord::oracle_nperp_sq)
        .def_readonly("oracle_imbalance", &dw::ScanRecord::oracle_imbalance)
        .def_readonly("runtime_ms", &dw::ScanRecord::runtime_ms)
        .def_readonly("error", &dw::ScanRecord::error);
    m.def("run_point", &dw::run_point, py::arg("cfg"), py::arg("L"), py::arg("N"),
          py::call_guard<py::gil_scoped_release>());
    m.def("run_scan", &dw::run_scan, py::arg("cfg"), py::call_guard<py::gil_scoped_release>());
    m.def("csv_string", &dw::csv_string, py::arg("records"));
    m.def("write_csv", &dw::write_csv, py::arg("records"), py::arg("path"));
    m.def("svg_string", &dw::svg_string, py::arg("records"));
    m.def("write_svg", &dw::write_svg, py::arg("records"), py::arg("path"));
}
