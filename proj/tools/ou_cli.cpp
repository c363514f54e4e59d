// Command-line front end: validate systems, enumerate spectra, compute and
// verify eigenfunctions, export operator matrices, solve backward equations,
// and run exact Monte Carlo checks. Every run writes a JSON manifest.

#include "CLI11.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ou/classical_poly.hpp"
#include "ou/general.hpp"
#include "ou/json_io.hpp"
#include "ou/matrix_market.hpp"
#include "ou/mc.hpp"
#include "ou/oracle.hpp"
#include "ou/pde.hpp"
#include "ou/special.hpp"
#include "ou/system.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

struct TolOverrides {
  std::optional<double> eigvec_condition, hypoellipticity, real_eigenvalue,
      reconstruction, classification, resonance, structural_zero,
      eigenvalue_dedup, covariance_pd;

  void attach(CLI::App& app) {
    app.add_option("--tol.eigvec_condition", eigvec_condition);
    app.add_option("--tol.hypoellipticity", hypoellipticity);
    app.add_option("--tol.real_eigenvalue", real_eigenvalue);
    app.add_option("--tol.reconstruction", reconstruction);
    app.add_option("--tol.classification", classification);
    app.add_option("--tol.resonance", resonance);
    app.add_option("--tol.structural_zero", structural_zero);
    app.add_option("--tol.eigenvalue_dedup", eigenvalue_dedup);
    app.add_option("--tol.covariance_pd", covariance_pd);
  }

  void apply(ou::Tolerances& t) const {
    auto set = [](const std::optional<double>& v, double& slot) {
      if (v) slot = *v;
    };
    set(eigvec_condition, t.eigvec_condition);
    set(hypoellipticity, t.hypoellipticity);
    set(real_eigenvalue, t.real_eigenvalue);
    set(reconstruction, t.reconstruction);
    set(classification, t.classification);
    set(resonance, t.resonance);
    set(structural_zero, t.structural_zero);
    set(eigenvalue_dedup, t.eigenvalue_dedup);
    set(covariance_pd, t.covariance_pd);
  }
};

struct RunContext {
  std::string config_path;
  std::string manifest_path = "ou_manifest.json";
  int threads = 0;
  TolOverrides tol;

  std::vector<std::string> inputs;
  std::vector<std::string> outputs;
  std::string command;
  std::chrono::steady_clock::time_point start =
      std::chrono::steady_clock::now();
  ou::Tolerances resolved_tol;

  // File tolerances (config "tolerances" section) sit between the document
  // defaults and the command-line overrides.
  ou::OUSystem load(const std::string& path) {
    inputs.push_back(path);
    ou::Json doc = ou::load_json(path);
    ou::Tolerances t;
    if (doc.contains("tolerances"))
      t = ou::tolerances_from_json(doc["tolerances"]);
    if (!config_path.empty()) {
      ou::Json cfg = ou::load_json(config_path);
      if (cfg.contains("tolerances"))
        t = ou::tolerances_from_json(cfg["tolerances"], t);
    }
    tol.apply(t);
    resolved_tol = t;
    doc["tolerances"] = ou::tolerances_to_json(t);
    return ou::system_from_json(doc);
  }

  void write_manifest(ou::Json extra = ou::Json::object()) {
    double wall = std::chrono::duration<double>(
                      std::chrono::steady_clock::now() - start)
                      .count();
    ou::Json m{{"tool", "ou_cli"},
               {"version", kVersion},
               {"command", command},
               {"inputs", inputs},
               {"outputs", outputs},
               {"tolerances", ou::tolerances_to_json(resolved_tol)},
               {"wall_time_seconds", wall}};
    m.update(extra);
    ou::save_json(m, manifest_path);
  }
};

ou::MultiIndex parse_index(const std::vector<int>& raw, int d) {
  if (static_cast<int>(raw.size()) != d)
    throw ou::DimensionMismatch("--index needs " + std::to_string(d) +
                                " comma-separated entries");
  for (int v : raw)
    if (v < 0) throw ou::ParseError("--index entries must be nonnegative");
  return ou::MultiIndex(raw);
}

ou::Eigenfunction pick_member(ou::SolveResult&& res, const ou::MultiIndex& n) {
  if (auto* ef = std::get_if<ou::Eigenfunction>(&res)) return std::move(*ef);
  auto& bundle = std::get<ou::ResonantBundle>(res);
  for (auto& m : bundle.members)
    if (m.index == n) return std::move(m);
  throw ou::SolverFailure("resonant nullspace has no member led by the requested index");
}

ou::Eigenfunction compute_eigenfunction(const ou::OUSystem& sys,
                                        const ou::SpectralDecomposition& dec,
                                        const ou::MultiIndex& n,
                                        const std::string& method,
                                        std::string& used) {
  if (method == "special" || method == "auto") {
    ou::CaseClassification cls = ou::classify(sys, dec);
    if (cls.tag == ou::CaseClassification::Tag::SelfAdjointSimultaneous) {
      used = "special:self-adjoint";
      return ou::selfadjoint_eigenfunction(sys, dec, cls, n);
    }
    if (cls.tag == ou::CaseClassification::Tag::NormalSimultaneous) {
      used = "special:normal";
      return ou::normal_eigenfunction(sys, dec, cls, n);
    }
    if (method == "special")
      throw ou::WrongCase("system does not match a closed-form case");
  }
  used = "general";
  ou::BasisSet basis = ou::basis_closure(n);
  ou::SparseOperatorMatrix M = ou::assemble_matrix(sys, dec, basis);
  return pick_member(
      ou::solve_eigenfunction(M, basis, n, dec, sys.tol.resonance), n);
}

int cmd_validate(RunContext& ctx, const std::string& system_path) {
  ctx.command = "validate";
  ou::OUSystem sys = ctx.load(system_path);
  ou::SpectralDecomposition dec = spectral_decomposition(sys);
  ou::Json lams = ou::Json::array();
  for (int k = 0; k < dec.dim(); ++k)
    lams.push_back({{"re", dec.lambdas(k).real()},
                    {"im", dec.lambdas(k).imag()}});
  std::cout << "valid system: d=" << sys.dim() << " r=" << sys.B.cols()
            << " spectral_abscissa=" << dec.spectral_abscissa << "\n";
  for (int k = 0; k < dec.dim(); ++k)
    std::cout << "  lambda_" << k << " = " << dec.lambdas(k).real()
              << (dec.lambdas(k).imag() < 0 ? " - " : " + ")
              << std::abs(dec.lambdas(k).imag()) << "i\n";
  ctx.write_manifest({{"lambdas", lams},
                      {"num_real", dec.num_real},
                      {"num_pairs", dec.num_pairs}});
  return 0;
}

int cmd_spectrum(RunContext& ctx, const std::string& system_path,
                 int max_degree, const std::string& out) {
  ctx.command = "spectrum";
  ou::OUSystem sys = ctx.load(system_path);
  ou::SpectralDecomposition dec = spectral_decomposition(sys);
  auto entries = ou::spectrum(dec, max_degree, sys.tol.eigenvalue_dedup);
  ou::Json j = ou::spectrum_to_json(entries);
  if (!out.empty()) {
    ou::save_json(j, out);
    ctx.outputs.push_back(out);
  } else {
    std::cout << j.dump(2) << "\n";
  }
  ctx.write_manifest({{"max_degree", max_degree},
                      {"count", entries.size()}});
  return 0;
}

int cmd_eigenfunction(RunContext& ctx, const std::string& system_path,
                      const std::vector<int>& raw_index,
                      const std::string& method, const std::string& out,
                      const std::string& emit_matrix,
                      const std::string& emit_pattern) {
  ctx.command = "eigenfunction";
  ou::OUSystem sys = ctx.load(system_path);
  ou::SpectralDecomposition dec = spectral_decomposition(sys);
  ou::MultiIndex n = parse_index(raw_index, sys.dim());

  std::string used;
  ou::Eigenfunction ef = compute_eigenfunction(sys, dec, n, method, used);
  double res = ou::residual(sys, ef.monomial_form, ef.mu);

  if (!emit_matrix.empty() || !emit_pattern.empty()) {
    ou::BasisSet basis = ou::basis_closure(n);
    ou::SparseOperatorMatrix M = ou::assemble_matrix(sys, dec, basis);
    if (!emit_matrix.empty()) {
      ou::write_matrix_market(M, emit_matrix);
      ctx.outputs.push_back(emit_matrix);
    }
    if (!emit_pattern.empty()) {
      ou::write_pattern_csv(M, emit_pattern);
      ctx.outputs.push_back(emit_pattern);
    }
  }

  ou::Json j = ou::eigenfunction_to_json(ef);
  if (!out.empty()) {
    ou::save_json(j, out);
    ctx.outputs.push_back(out);
  } else {
    std::cout << j.dump(2) << "\n";
  }
  std::cout << "method=" << used << " mu=(" << ef.mu.real() << ","
            << ef.mu.imag() << ") residual=" << res << "\n";
  ctx.write_manifest({{"method", used},
                      {"mu", {{"re", ef.mu.real()}, {"im", ef.mu.imag()}}},
                      {"residual", res}});
  return 0;
}

int cmd_matrix(RunContext& ctx, const std::string& system_path,
               const std::vector<int>& raw_index, const std::string& basis_kind,
               const std::string& out, const std::string& pattern_out) {
  ctx.command = "matrix";
  ou::OUSystem sys = ctx.load(system_path);
  ou::SpectralDecomposition dec = spectral_decomposition(sys);
  ou::MultiIndex n = parse_index(raw_index, sys.dim());
  ou::BasisSet basis =
      (basis_kind == "full") ? ou::full_basis(n) : ou::basis_closure(n);
  ou::SparseOperatorMatrix M = ou::assemble_matrix(sys, dec, basis);
  if (!out.empty()) {
    ou::write_matrix_market(M, out);
    ctx.outputs.push_back(out);
  } else {
    ou::write_matrix_market(M, std::cout);
  }
  if (!pattern_out.empty()) {
    ou::write_pattern_csv(M, pattern_out);
    ctx.outputs.push_back(pattern_out);
  }
  double density = static_cast<double>(M.numeric_nonzeros) /
                   (static_cast<double>(M.size) * M.size);
  std::cout << "size=" << M.size << " nnz=" << M.numeric_nonzeros
            << " density=" << density << "\n";
  ctx.write_manifest({{"basis", basis_kind},
                      {"size", M.size},
                      {"structural_nonzeros", M.structural_nonzeros},
                      {"numeric_nonzeros", M.numeric_nonzeros},
                      {"density", density}});
  return 0;
}

int cmd_verify(RunContext& ctx, const std::string& system_path,
               const std::string& ef_path, double tolerance) {
  ctx.command = "verify";
  ou::OUSystem sys = ctx.load(system_path);
  ctx.inputs.push_back(ef_path);
  ou::Eigenfunction ef = ou::load_eigenfunction(ef_path);
  if (ef.monomial_form.dim() != sys.dim())
    throw ou::DimensionMismatch("eigenfunction dimension vs system dimension");
  double res = ou::residual(sys, ef.monomial_form, ef.mu);
  bool ok = res <= tolerance;
  std::cout << "residual=" << res << " tolerance=" << tolerance << " "
            << (ok ? "PASS" : "FAIL") << "\n";
  ctx.write_manifest({{"residual", res}, {"tolerance", tolerance},
                      {"pass", ok}});
  return ok ? 0 : 1;
}

int cmd_kbe(RunContext& ctx, const std::string& system_path,
            const std::string& terminal_path, double horizon,
            const std::vector<double>& times, const std::string& out_prefix) {
  ctx.command = "kbe";
  ou::OUSystem sys = ctx.load(system_path);
  ctx.inputs.push_back(terminal_path);
  ou::Polynomial g = ou::load_polynomial(terminal_path);
  ou::SpectralDecomposition dec = spectral_decomposition(sys);
  Eigen::MatrixXd sigma = ou::stationary_covariance(sys);

  ou::BasisSet basis = ou::full_basis(
      ou::MultiIndex(std::vector<int>(static_cast<std::size_t>(sys.dim()),
                                      std::max(g.degree(), 0))));
  ou::SparseOperatorMatrix M = ou::assemble_matrix(sys, dec, basis);
  std::vector<ou::Eigenfunction> system_eigs =
      ou::solve_all(M, basis, dec, sys.tol.resonance);
  ou::EigenExpansion exp =
      ou::expansion_coefficients(g, system_eigs, sys, dec, sigma);

  ou::Json report = ou::Json::array();
  for (std::size_t i = 0; i < times.size(); ++i) {
    ou::Polynomial sol = ou::kbe_solve(exp, horizon, times[i]);
    std::string path = out_prefix + "_t" + std::to_string(i) + ".json";
    ou::Json doc = ou::polynomial_to_json(sol);
    doc["time"] = times[i];
    doc["horizon"] = horizon;
    ou::save_json(doc, path);
    ctx.outputs.push_back(path);
    report.push_back({{"time", times[i]}, {"path", path}});
  }
  ctx.write_manifest({{"horizon", horizon},
                      {"expansion_terms", exp.terms.size()},
                      {"solutions", report}});
  return 0;
}

int cmd_simulate(RunContext& ctx, const std::string& system_path,
                 const std::string& ef_path, const std::vector<double>& x0_raw,
                 double t, long paths, std::uint64_t seed,
                 const std::string& out) {
  ctx.command = "simulate";
  ou::OUSystem sys = ctx.load(system_path);
  ctx.inputs.push_back(ef_path);
  ou::Eigenfunction ef = ou::load_eigenfunction(ef_path);
  if (static_cast<int>(x0_raw.size()) != sys.dim())
    throw ou::DimensionMismatch("--x0 needs " + std::to_string(sys.dim()) +
                                " entries");
  Eigen::VectorXd x0 = Eigen::Map<const Eigen::VectorXd>(
      x0_raw.data(), static_cast<Eigen::Index>(x0_raw.size()));
  ou::KoopmanReport rep = ou::koopman_check(sys, ef, x0, t, paths, seed);
  ou::Json j{{"estimate", {{"re", rep.estimate.real()}, {"im", rep.estimate.imag()}}},
             {"predicted", {{"re", rep.predicted.real()}, {"im", rep.predicted.imag()}}},
             {"stderr", {{"re", rep.stderr_re}, {"im", rep.stderr_im}}},
             {"z_score", rep.z_score},
             {"N", rep.paths},
             {"t", rep.time},
             {"seed", rep.seed},
             {"rng", rep.rng}};
  if (!out.empty()) {
    ou::save_json(j, out);
    ctx.outputs.push_back(out);
  } else {
    std::cout << j.dump(2) << "\n";
  }
  ctx.write_manifest({{"report", j}});
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact eigenfunctions of multidimensional Ornstein-Uhlenbeck generators"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.fallthrough();

  RunContext ctx;
  app.add_option("--config", ctx.config_path,
                 "JSON config with a \"tolerances\" section");
  app.add_option("--manifest", ctx.manifest_path, "run manifest output path");
  app.add_option("--threads", ctx.threads, "worker thread cap (0 = default)");
  ctx.tol.attach(app);

  std::string system_path, ef_path, terminal_path, out, emit_matrix,
      emit_pattern, pattern_out;
  std::string method = "auto", basis_kind = "closure";
  std::vector<int> raw_index;
  std::vector<double> times, x0_raw;
  int max_degree = 0;
  double horizon = 1.0, time_point = 1.0, verify_tol = 1e-8;
  long paths = 10000;
  std::uint64_t seed = 0;

  auto* validate = app.add_subcommand("validate", "validate a system document");
  validate->add_option("system", system_path)->required();

  auto* spectrum = app.add_subcommand("spectrum", "enumerate the point spectrum");
  spectrum->add_option("system", system_path)->required();
  spectrum->add_option("--max-degree", max_degree)->required();
  spectrum->add_option("--out", out);

  auto* eig = app.add_subcommand("eigenfunction", "compute one eigenfunction");
  eig->add_option("system", system_path)->required();
  eig->add_option("--index", raw_index)->required()->delimiter(',');
  eig->add_option("--method", method)
      ->check(CLI::IsMember({"auto", "special", "general"}));
  eig->add_option("--out", out);
  eig->add_option("--emit-matrix", emit_matrix);
  eig->add_option("--emit-pattern", emit_pattern);

  auto* matrix = app.add_subcommand("matrix", "assemble the sparse operator matrix");
  matrix->add_option("system", system_path)->required();
  matrix->add_option("--index", raw_index)->required()->delimiter(',');
  matrix->add_option("--basis", basis_kind)
      ->check(CLI::IsMember({"closure", "full"}));
  matrix->add_option("--out", out);
  matrix->add_option("--pattern", pattern_out);

  auto* verify = app.add_subcommand("verify", "check an eigenpair residual");
  verify->add_option("system", system_path)->required();
  verify->add_option("eigenfunction", ef_path)->required();
  verify->add_option("--tolerance", verify_tol);

  auto* kbe = app.add_subcommand("kbe", "solve the backward equation by eigenexpansion");
  kbe->add_option("system", system_path)->required();
  kbe->add_option("terminal", terminal_path)->required();
  kbe->add_option("--horizon", horizon)->required();
  kbe->add_option("--times", times)->required()->delimiter(',');
  kbe->add_option("--out-prefix", out)->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo semigroup check");
  simulate->add_option("system", system_path)->required();
  simulate->add_option("eigenfunction", ef_path)->required();
  simulate->add_option("--x0", x0_raw)->required()->delimiter(',');
  simulate->add_option("--time", time_point)->required();
  simulate->add_option("--paths", paths);
  simulate->add_option("--seed", seed);
  simulate->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return cmd_validate(ctx, system_path);
    if (spectrum->parsed())
      return cmd_spectrum(ctx, system_path, max_degree, out);
    if (eig->parsed())
      return cmd_eigenfunction(ctx, system_path, raw_index, method, out,
                               emit_matrix, emit_pattern);
    if (matrix->parsed())
      return cmd_matrix(ctx, system_path, raw_index, basis_kind, out,
                        pattern_out);
    if (verify->parsed())
      return cmd_verify(ctx, system_path, ef_path, verify_tol);
    if (kbe->parsed())
      return cmd_kbe(ctx, system_path, terminal_path, horizon, times, out);
    if (simulate->parsed())
      return cmd_simulate(ctx, system_path, ef_path, x0_raw, time_point,
                          paths, seed, out);
  } catch (const ou::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
