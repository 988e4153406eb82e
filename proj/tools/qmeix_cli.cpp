// qmeix: vacuum distributions of homogeneous quadratic Bose/Fermi Hamiltonians.
// Subcommands: classify, cf, verify, sample, density.
// Exit codes: 0 success, 1 verification failure, 2 invalid input,
//             3 numerical/branch failure, 4 resource guard.

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"

#include "qmeix/charfun.hpp"
#include "qmeix/fock.hpp"
#include "qmeix/json_io.hpp"
#include "qmeix/meixner.hpp"
#include "qmeix/oracle.hpp"
#include "qmeix/sampling.hpp"

namespace {

using namespace qmeix;

void require_finite(std::initializer_list<double> vals) {
  for (double v : vals)
    if (!std::isfinite(v)) throw std::invalid_argument("numeric flags must be finite reals");
}

std::ostream& open_out(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw std::invalid_argument("cannot open output file: " + path);
  return file;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

struct ClassifyArgs {
  std::string family;
  double alpha = 0.0, beta = 0.0;
  bool as_json = false;
};

int cmd_classify(const ClassifyArgs& a) {
  require_finite({a.alpha, a.beta});
  const meix::ClassificationResult res = a.family == "bose"
                                             ? meix::classify_bose(a.alpha, a.beta)
                                             : meix::classify_fermi(a.alpha, a.beta);
  if (a.as_json) {
    std::cout << io::classification_to_json(res).dump(2) << "\n";
    return 0;
  }
  std::cout << "family: " << a.family << "  alpha: " << fmt(a.alpha)
            << "  beta: " << fmt(a.beta) << "\n";
  std::cout << "det_h: " << fmt(res.det_h) << "  omega: " << fmt(res.omega.real());
  if (res.omega.imag() != 0.0) std::cout << (res.omega.imag() < 0 ? " - " : " + ")
                                         << fmt(std::abs(res.omega.imag())) << "i";
  std::cout << "\nclass: " << meix::class_label_name(res.label) << "\n";
  std::cout << "params: " << io::dist_spec_to_json(res.dist)["params"].dump() << "\n";
  if (meix::is_atomic(res.dist)) {
    std::cout << "atoms:";
    int shown = 0;
    for (const auto& [x, w] : meix::atoms(res.dist)) {
      if (++shown > 6) { std::cout << " ..."; break; }
      std::cout << " {" << fmt(x) << ": " << fmt(w) << "}";
    }
    std::cout << "\n";
  }
  for (const auto& [k, v] : res.metadata) std::cout << k << ": " << v << "\n";
  return 0;
}

struct CfArgs {
  std::string family, matrices, out;
  double alpha = 0.0, beta = 0.0;
  double t_min = 0.0, t_max = 1.0;
  int steps = 100;
};

int cmd_cf(const CfArgs& a) {
  require_finite({a.alpha, a.beta, a.t_min, a.t_max});
  if (a.steps < 1) throw std::invalid_argument("--steps must be >= 1");
  if (a.t_max < a.t_min) throw std::invalid_argument("--t-max must be >= --t-min");
  const auto ts = a.t_min == a.t_max ? std::vector<double>{a.t_min}
                                     : cf::uniform_grid(a.t_min, a.t_max, a.steps);
  cf::CfGrid grid;
  std::string source;
  if (!a.matrices.empty()) {
    const io::MatrixFile mf = io::load_matrix_file(a.matrices);
    grid = cf::nmode_cf(mf.A, mf.C, ts);
    source = "nmode matrices " + a.matrices;
  } else if (a.family == "bose") {
    grid = cf::bose_cf_grid(a.alpha, a.beta, ts);
    source = "bose alpha " + fmt(a.alpha) + " beta " + fmt(a.beta);
  } else if (a.family == "fermi") {
    grid = cf::fermi_cf_grid(a.alpha, a.beta, ts);
    source = "fermi alpha " + fmt(a.alpha) + " beta " + fmt(a.beta);
    if (cf::fermi_cf_degenerate(a.alpha, a.beta)) source += " (degenerate: Dirac mass at 0)";
  } else {
    throw std::invalid_argument("cf: give --matrices FILE or --family bose|fermi");
  }
  std::ofstream file;
  std::ostream& os = open_out(file, a.out);
  os << "# source: " << source << "\n";
  os << "# branch_continuous: " << (grid.branch_continuous ? "true" : "false") << "\n";
  grid.write_csv(os);
  return 0;
}

struct VerifyArgs {
  std::string family, out;
  double alpha = 0.0, beta = 0.0;
  int cutoff = 128;
  double t_max = -1.0, tol = -1.0;
  int steps = 200;
  bool as_json = false;
};

int cmd_verify(const VerifyArgs& a) {
  require_finite({a.alpha, a.beta});
  const double t_max = a.t_max > 0 ? a.t_max : (a.family == "fermi" ? 10.0 : 2.0);
  const double tol = a.tol > 0 ? a.tol : (a.family == "fermi" ? 1e-12 : 1e-8);
  const auto ts = cf::uniform_grid(0.0, t_max, a.steps);

  std::unique_ptr<oracle::OracleReport> rep;
  if (a.family == "fermi") {
    auto ops = fock::build_fermi_ops();
    Matrix h = fock::build_hamiltonian(
        fock::QuadraticHamiltonianSpec::fermi_two_mode(a.alpha, a.beta), ops);
    std::vector<Complex> closed;
    for (double t : ts) closed.push_back(cf::fermi_cf(a.alpha, a.beta, t));
    rep = std::make_unique<oracle::OracleReport>(ts, closed,
                                                 oracle::vacuum_cf_numeric(h, ops.vacuum, ts), 0);
  } else if (a.family == "bose") {
    auto ops = fock::build_bose_ops(1, a.cutoff);
    Matrix h = fock::build_hamiltonian(
        fock::QuadraticHamiltonianSpec::bose_one_mode(a.alpha, a.beta), ops);
    std::vector<Complex> closed;
    for (double t : ts) closed.push_back(cf::bose_cf(a.alpha, a.beta, t));
    rep = std::make_unique<oracle::OracleReport>(ts, closed,
                                                 oracle::vacuum_cf_numeric(h, ops.vacuum, ts),
                                                 a.cutoff);
  } else {
    throw std::invalid_argument("verify: --family must be bose or fermi");
  }
  rep->converged = rep->max_abs_error <= tol;
  if (!a.out.empty()) {
    std::ofstream file;
    rep->write_csv(open_out(file, a.out));
  }
  if (a.as_json) {
    std::cout << rep->to_json().dump(2) << "\n";
  } else {
    std::cout << "family: " << a.family << "  alpha: " << fmt(a.alpha) << "  beta: "
              << fmt(a.beta) << (a.family == "bose" ? "  cutoff: " + std::to_string(a.cutoff) : "")
              << "\nmax_abs_error: " << fmt(rep->max_abs_error) << "  tol: " << fmt(tol) << "\n"
              << (rep->max_abs_error <= tol ? "PASS" : "FAIL") << "\n";
  }
  return rep->max_abs_error <= tol ? 0 : 1;
}

struct SampleArgs {
  std::string dist_json, out;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

int cmd_sample(const SampleArgs& a) {
  const auto spec = io::load_dist_spec(a.dist_json);
  const auto xs = meix::sample(spec, a.n, a.seed);
  std::ofstream file;
  std::ostream& os = open_out(file, a.out);
  os << "x\n" << std::setprecision(17);
  for (double x : xs) os << x << "\n";
  return 0;
}

struct DensityArgs {
  std::string dist_json, out;
  double x_min = -1.0, x_max = 1.0;
  int steps = 100;
  bool atoms = false;
  int max_atoms = 64;
};

int cmd_density(const DensityArgs& a) {
  const auto spec = io::load_dist_spec(a.dist_json);
  std::ofstream file;
  std::ostream& os = open_out(file, a.out);
  if (a.atoms) {
    if (!meix::is_atomic(spec))
      throw std::invalid_argument("continuous law: use the density output (drop --atoms)");
    os << "x,w\n" << std::setprecision(17);
    for (const auto& [x, w] : meix::atoms(spec, 1e-12, a.max_atoms)) os << x << ',' << w << "\n";
    return 0;
  }
  if (meix::is_atomic(spec))
    throw std::invalid_argument("atomic law: use atoms output (--atoms)");
  require_finite({a.x_min, a.x_max});
  if (a.steps < 1) throw std::invalid_argument("--steps must be >= 1");
  os << "x,p\n" << std::setprecision(17);
  for (int k = 0; k <= a.steps; ++k) {
    const double x = a.x_min + (a.x_max - a.x_min) * k / a.steps;
    os << x << ',' << meix::density(spec, x) << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vacuum distributions of homogeneous quadratic Bose/Fermi Hamiltonians"};
  app.require_subcommand(1);

  ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "classify the vacuum law of a quadratic Hamiltonian");
  classify->add_option("--family", ca.family, "bose or fermi")->required()
      ->check(CLI::IsMember({"bose", "fermi"}));
  classify->add_option("--alpha", ca.alpha)->required();
  classify->add_option("--beta", ca.beta)->required();
  classify->add_flag("--json", ca.as_json, "emit the DistributionSpec as JSON");

  CfArgs cfa;
  auto* cfc = app.add_subcommand("cf", "evaluate the vacuum characteristic function on a grid");
  cfc->add_option("--family", cfa.family)->check(CLI::IsMember({"bose", "fermi"}));
  cfc->add_option("--alpha", cfa.alpha);
  cfc->add_option("--beta", cfa.beta);
  cfc->add_option("--matrices", cfa.matrices, "JSON file with n, A, C for the n-mode cf");
  cfc->add_option("--t-min", cfa.t_min);
  cfc->add_option("--t-max", cfa.t_max);
  cfc->add_option("--steps", cfa.steps);
  cfc->add_option("--out", cfa.out, "output CSV (default stdout)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "compare a closed form against the Fock-space oracle");
  verify->add_option("--family", va.family)->required()->check(CLI::IsMember({"bose", "fermi"}));
  verify->add_option("--alpha", va.alpha)->required();
  verify->add_option("--beta", va.beta)->required();
  verify->add_option("--cutoff", va.cutoff, "Bose truncation (default 128)");
  verify->add_option("--t-max", va.t_max, "grid end (default 2 bose / 10 fermi)");
  verify->add_option("--tol", va.tol, "pass threshold (default 1e-8 bose / 1e-12 fermi)");
  verify->add_option("--steps", va.steps);
  verify->add_option("--out", va.out, "write the comparison CSV here");
  verify->add_flag("--json", va.as_json, "emit the OracleReport as JSON");

  SampleArgs sa;
  auto* samp = app.add_subcommand("sample", "draw deterministic samples from a DistributionSpec");
  samp->add_option("--dist-json", sa.dist_json)->required();
  samp->add_option("--n", sa.n)->required();
  samp->add_option("--seed", sa.seed)->required();
  samp->add_option("--out", sa.out);

  DensityArgs da;
  auto* dens = app.add_subcommand("density", "evaluate the density (or atom list) of a DistributionSpec");
  dens->add_option("--dist-json", da.dist_json)->required();
  dens->add_option("--x-min", da.x_min);
  dens->add_option("--x-max", da.x_max);
  dens->add_option("--steps", da.steps);
  dens->add_flag("--atoms", da.atoms, "emit (location, weight) rows for atomic laws");
  dens->add_option("--max-atoms", da.max_atoms);
  dens->add_option("--out", da.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // malformed invocation is invalid input
  }

  try {
    if (classify->parsed()) return cmd_classify(ca);
    if (cfc->parsed()) return cmd_cf(cfa);
    if (verify->parsed()) return cmd_verify(va);
    if (samp->parsed()) return cmd_sample(sa);
    if (dens->parsed()) return cmd_density(da);
  } catch (const resource_limit_error& e) {
    std::cerr << "resource guard: " << e.what() << "\n";
    return 4;
  } catch (const branch_tracking_error& e) {
    std::cerr << "branch tracking failed at t = " << e.t_fail << ": " << e.what() << "\n";
    return 3;
  } catch (const numerical_error& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
