#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "ou/eigenfunction.hpp"
#include "ou/polynomial.hpp"
#include "ou/system.hpp"

namespace ou {

using Json = nlohmann::json;

// System document: {"A": [[...]], "B": [[...]], "tolerances": {...}}.
Json system_to_json(const OUSystem& sys);
OUSystem system_from_json(const Json& j);
OUSystem load_system(const std::string& path);

Json tolerances_to_json(const Tolerances& tol);
Tolerances tolerances_from_json(const Json& j, Tolerances base = {});

// Polynomial document: {"dimension": d, "terms": [{"exponents": [...],
// "re": r, "im": i}]}, terms in graded-lex order.
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);
Polynomial load_polynomial(const std::string& path);

// Polynomial document plus {"index": [...], "mu": {"re","im"}} and optional
// psi-basis coefficients.
Json eigenfunction_to_json(const Eigenfunction& ef);
Eigenfunction eigenfunction_from_json(const Json& j);
Eigenfunction load_eigenfunction(const std::string& path);

Json spectrum_to_json(const std::vector<SpectrumEntry>& entries);

Json load_json(const std::string& path);
void save_json(const Json& j, const std::string& path);

} // namespace ou
