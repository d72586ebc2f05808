#pragma once

#include <string>
#include <vector>

namespace rnda {

enum class Budget { fast, full };

/// One verification check: a named bound together with the worst value
/// actually measured. Checks never throw on a failed bound; they record it.
struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;  // what the measured number is
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  [[nodiscard]] bool passed() const;
};

/// Exact identities of the polynomial and density layers: Jack layer sums,
/// hypergeometric closed forms, the inverse-density change of variables, and
/// the generator-series route against the closed normal form.
/// Setting RNDA_VERIFY_PERTURB=jack injects a 1e-6 perturbation into the
/// Jack layer sums, which this suite must detect and fail.
[[nodiscard]] SuiteReport verify_identities(Budget budget);

/// Scalar (m = 1) reductions against classical oracles across every algebra,
/// and the joint eigenvalue density normalization by 2-D quadrature.
[[nodiscard]] SuiteReport verify_reductions(Budget budget);

/// Monte Carlo agreement for the central family: the largest-eigenvalue
/// distribution against sampled spectra, the scalar sampling law, and the
/// quaternion eigenvalue pairing.
[[nodiscard]] SuiteReport verify_mc_central(Budget budget);

/// Monte Carlo normalization of noncentral densities by importance weights.
[[nodiscard]] SuiteReport verify_mc_noncentral(Budget budget);

/// All four suites, in the order above.
[[nodiscard]] std::vector<SuiteReport> verify_all(Budget budget);

/// Suite selection by name: identities, reductions, mc-central,
/// mc-noncentral, or all. Unknown names throw std::invalid_argument.
[[nodiscard]] std::vector<SuiteReport> verify_suite(const std::string& name, Budget budget);

}  // namespace rnda
