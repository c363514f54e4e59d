#include "ou/json_io.hpp"

#include <fstream>

namespace ou {

namespace {

Eigen::MatrixXd matrix_from_json(const Json& j, const std::string& name) {
  if (!j.is_array() || j.empty() || !j[0].is_array())
    throw ParseError(name + " must be a non-empty array of rows");
  const auto rows = j.size();
  const auto cols = j[0].size();
  Eigen::MatrixXd m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols)
      throw ParseError(name + " rows have inconsistent lengths");
    for (std::size_t k = 0; k < cols; ++k) {
      if (!j[i][k].is_number())
        throw ParseError(name + " entries must be numbers");
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
          j[i][k].get<double>();
    }
  }
  return m;
}

Json matrix_to_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

} // namespace

Json tolerances_to_json(const Tolerances& tol) {
  return Json{{"eigvec_condition", tol.eigvec_condition},
              {"hypoellipticity", tol.hypoellipticity},
              {"real_eigenvalue", tol.real_eigenvalue},
              {"reconstruction", tol.reconstruction},
              {"classification", tol.classification},
              {"resonance", tol.resonance},
              {"structural_zero", tol.structural_zero},
              {"eigenvalue_dedup", tol.eigenvalue_dedup},
              {"covariance_pd", tol.covariance_pd}};
}

Tolerances tolerances_from_json(const Json& j, Tolerances base) {
  if (!j.is_object()) throw ParseError("tolerances must be an object");
  auto get = [&](const char* key, double& slot) {
    if (j.contains(key)) {
      if (!j[key].is_number()) throw ParseError(std::string("tolerance ") + key + " must be a number");
      slot = j[key].get<double>();
    }
  };
  get("eigvec_condition", base.eigvec_condition);
  get("hypoellipticity", base.hypoellipticity);
  get("real_eigenvalue", base.real_eigenvalue);
  get("reconstruction", base.reconstruction);
  get("classification", base.classification);
  get("resonance", base.resonance);
  get("structural_zero", base.structural_zero);
  get("eigenvalue_dedup", base.eigenvalue_dedup);
  get("covariance_pd", base.covariance_pd);
  return base;
}

Json system_to_json(const OUSystem& sys) {
  return Json{{"A", matrix_to_json(sys.A)},
              {"B", matrix_to_json(sys.B)},
              {"tolerances", tolerances_to_json(sys.tol)}};
}

OUSystem system_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("A") || !j.contains("B"))
    throw ParseError("system document requires \"A\" and \"B\"");
  Tolerances tol;
  if (j.contains("tolerances")) tol = tolerances_from_json(j["tolerances"]);
  return validate_system(matrix_from_json(j["A"], "A"),
                         matrix_from_json(j["B"], "B"), tol);
}

OUSystem load_system(const std::string& path) {
  return system_from_json(load_json(path));
}

Json polynomial_to_json(const Polynomial& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms())  // map iterates graded-lex ascending
    terms.push_back(Json{{"exponents", e.entries()},
                         {"re", c.real()},
                         {"im", c.imag()}});
  return Json{{"dimension", p.dim()}, {"terms", std::move(terms)}};
}

Polynomial polynomial_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("dimension") || !j.contains("terms"))
    throw ParseError("polynomial document requires \"dimension\" and \"terms\"");
  if (!j["dimension"].is_number_integer())
    throw ParseError("polynomial dimension must be an integer");
  Polynomial p(j["dimension"].get<int>());
  for (const auto& t : j["terms"]) {
    if (!t.contains("exponents") || !t.contains("re"))
      throw ParseError("polynomial term requires \"exponents\" and \"re\"");
    auto exps = t["exponents"].get<std::vector<int>>();
    for (int e : exps)
      if (e < 0) throw ParseError("negative exponent in polynomial term");
    double re = t["re"].get<double>();
    double im = t.contains("im") ? t["im"].get<double>() : 0.0;
    p.add_term(MultiIndex(std::move(exps)), Complex(re, im));
  }
  return p;
}

Polynomial load_polynomial(const std::string& path) {
  return polynomial_from_json(load_json(path));
}

Json eigenfunction_to_json(const Eigenfunction& ef) {
  Json j = polynomial_to_json(ef.monomial_form);
  j["index"] = ef.index.entries();
  j["mu"] = Json{{"re", ef.mu.real()}, {"im", ef.mu.imag()}};
  if (ef.psi_coefficients) {
    Json coeffs = Json::array();
    for (const auto& [m, c] : *ef.psi_coefficients)
      coeffs.push_back(Json{{"index", m.entries()},
                            {"re", c.real()},
                            {"im", c.imag()}});
    j["psi_coefficients"] = std::move(coeffs);
  }
  return j;
}

Eigenfunction eigenfunction_from_json(const Json& j) {
  Eigenfunction ef;
  ef.monomial_form = polynomial_from_json(j);
  if (!j.contains("index") || !j.contains("mu"))
    throw ParseError("eigenfunction document requires \"index\" and \"mu\"");
  ef.index = MultiIndex(j["index"].get<std::vector<int>>());
  ef.mu = Complex(j["mu"]["re"].get<double>(), j["mu"]["im"].get<double>());
  if (j.contains("psi_coefficients")) {
    Eigenfunction::PsiCoeffs coeffs;
    for (const auto& t : j["psi_coefficients"])
      coeffs.emplace(MultiIndex(t["index"].get<std::vector<int>>()),
                     Complex(t["re"].get<double>(), t["im"].get<double>()));
    ef.psi_coefficients = std::move(coeffs);
  }
  return ef;
}

Eigenfunction load_eigenfunction(const std::string& path) {
  return eigenfunction_from_json(load_json(path));
}

Json spectrum_to_json(const std::vector<SpectrumEntry>& entries) {
  Json arr = Json::array();
  for (const auto& e : entries)
    arr.push_back(Json{{"multi_index", e.index.entries()},
                       {"re", e.mu.real()},
                       {"im", e.mu.imag()}});
  return arr;
}

Json load_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ParseError("cannot open " + path);
  Json j;
  try {
    is >> j;
  } catch (const std::exception& e) {
    throw ParseError("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

void save_json(const Json& j, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw ParseError("cannot open output file " + path);
  os << j.dump(2) << "\n";
}

} // namespace ou
