// Command line front end. JSON results go to standard output and stay
// byte-identical for identical flags, input files and seed; human-readable
// progress and timing go to standard error. Exit codes: 0 success, 2 invalid
// input, 3 series convergence failure, and 1 when a verification check fails.
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rnda/generator.hpp"
#include "rnda/matrix_io.hpp"
#include "rnda/sampling.hpp"
#include "rnda/verify.hpp"
#include "rnda/wishart.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int exit_validation = 2;
constexpr int exit_convergence = 3;

ordered_json report_json(const rnda::ConvergenceReport& r) {
  ordered_json j;
  j["converged"] = r.converged;
  j["degrees_used"] = r.degrees_used;
  j["last_layer_ratio"] = r.last_layer_ratio;
  j["prev_layer_ratio"] = r.prev_layer_ratio;
  j["note"] = r.note;
  if (!r.converged) j["layer_magnitudes"] = r.layer_magnitudes;
  return j;
}

void emit(const ordered_json& j) { std::printf("%s\n", j.dump(2).c_str()); }

double parse_double(const std::string& text, const std::string& what) {
  double value = 0.0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument(what + " is not a number: " + text);
  }
  return value;
}

struct DensityArgs {
  int beta = 1;
  double n = 0.0;
  std::string sigma_path;
  std::string omega_path;
  std::string s_path;
  std::string dist = "wishart";
  std::string generator = "normal";
  int max_degree = 40;
  double tol = 1e-12;
};

/// Octonion inputs arrive as spectra of diagonal matrices in one shared
/// eigenbasis; entries of the different files pair up by position.
rnda::DensityPoint octonion_point(const std::string& sigma_path, const std::string& s_path,
                                  const std::string& omega_path, bool invert_sample) {
  const rnda::SpectralFile sigma = rnda::load_spectral(sigma_path);
  const rnda::SpectralFile s = rnda::load_spectral(s_path);
  const int m = static_cast<int>(sigma.diagonal.size());
  if (static_cast<int>(s.diagonal.size()) != m) {
    throw std::invalid_argument(s_path + ": spectrum length differs from the scale file");
  }
  for (const double v : sigma.diagonal) {
    if (v <= 0.0) throw std::invalid_argument(sigma_path + ": scale spectrum must be positive");
  }
  for (const double v : s.diagonal) {
    if (v <= 0.0) throw std::invalid_argument(s_path + ": sample spectrum must be positive");
  }
  rnda::DensityPoint pt;
  pt.m = m;
  pt.logdet_sigma = sigma.logdet;
  pt.logdet_s = invert_sample ? -s.logdet : s.logdet;
  std::vector<double> ratio(static_cast<size_t>(m));
  for (int i = 0; i < m; ++i) {
    const double si = s.diagonal[static_cast<size_t>(i)];
    const double scale = sigma.diagonal[static_cast<size_t>(i)];
    ratio[static_cast<size_t>(i)] = invert_sample ? 1.0 / (si * scale) : si / scale;
    pt.trace_sigma_inv_s += ratio[static_cast<size_t>(i)];
  }
  if (!omega_path.empty()) {
    const rnda::SpectralFile omega = rnda::load_spectral(omega_path);
    if (static_cast<int>(omega.diagonal.size()) != m) {
      throw std::invalid_argument(omega_path + ": spectrum length differs from the scale file");
    }
    std::vector<double> noncentral(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
      const double w = omega.diagonal[static_cast<size_t>(i)];
      if (w < 0.0) {
        throw std::invalid_argument(omega_path + ": noncentrality spectrum must be nonnegative");
      }
      pt.trace_omega += w;
      noncentral[static_cast<size_t>(i)] = w * ratio[static_cast<size_t>(i)];
    }
    pt.noncentral = rnda::Spectrum(std::move(noncentral));
  }
  return pt;
}

int run_density(const DensityArgs& a) {
  const rnda::AlgebraDim dim(a.beta);
  const rnda::SeriesControl ctrl{a.max_degree, a.tol};
  const rnda::GeneratorFunction h = rnda::normal_generator(dim);
  rnda::ConvergenceReport report;
  ordered_json out;
  out["schema_version"] = 1;
  out["command"] = "density";
  out["dist"] = a.dist;
  out["beta"] = a.beta;
  out["n"] = a.n;
  try {
    double value = 0.0;
    int m = 0;
    if (a.beta == 8) {
      const rnda::DensityPoint pt =
          octonion_point(a.sigma_path, a.s_path, a.omega_path, a.dist == "inv-gw");
      m = pt.m;
      if (!(a.n > m - 1)) {
        throw std::invalid_argument("degrees of freedom must exceed m - 1");
      }
      if (a.dist == "wishart") {
        value = rnda::wishart_density_log(pt, a.n, dim, ctrl, &report);
      } else if (a.dist == "gw") {
        value = rnda::gw_density_log(pt, a.n, dim, h, ctrl, &report);
      } else {
        // The point built for inv-gw already describes the inverse sample.
        value = rnda::inv_gw_density_log(pt, a.n, dim, h, ctrl, &report);
      }
    } else {
      const rnda::HermitianMatrix sigma = rnda::load_hermitian(a.sigma_path, dim);
      const rnda::HermitianMatrix s = rnda::load_hermitian(a.s_path, dim);
      const rnda::WishartParams p =
          a.omega_path.empty()
              ? rnda::WishartParams(a.n, sigma)
              : rnda::WishartParams(a.n, sigma, rnda::load_hermitian(a.omega_path, dim));
      m = p.size();
      if (a.dist == "wishart") {
        value = rnda::wishart_density_log(s, p, ctrl, &report);
      } else if (a.dist == "gw") {
        value = rnda::gw_density_log(s, p, h, ctrl, &report);
      } else {
        value = rnda::inv_gw_density_log(s, p, h, ctrl, &report);
      }
    }
    out["m"] = m;
    out["log_density"] = value;
    out["report"] = report_json(report);
  } catch (const std::runtime_error& e) {
    out["error"] = e.what();
    out["report"] = report_json(report);
    emit(out);
    return exit_convergence;
  }
  emit(out);
  return 0;
}

struct LmaxArgs {
  int beta = 1;
  double n = 0.0;
  std::string sigma_path;
  std::string omega_path;
  std::string y_grid;
  std::string y_range;
  std::string method = "series";
  long count = 0;
  std::uint64_t seed = 0;
  int max_degree = 40;
  double tol = 1e-12;
};

std::vector<double> parse_y_values(const LmaxArgs& a) {
  if (a.y_grid.empty() == a.y_range.empty()) {
    throw std::invalid_argument("exactly one of --y-grid and --y-range is required");
  }
  std::vector<double> y;
  if (!a.y_grid.empty()) {
    size_t start = 0;
    while (start <= a.y_grid.size()) {
      const size_t comma = a.y_grid.find(',', start);
      const size_t end = comma == std::string::npos ? a.y_grid.size() : comma;
      y.push_back(parse_double(a.y_grid.substr(start, end - start), "--y-grid entry"));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
  } else {
    const size_t c1 = a.y_range.find(':');
    const size_t c2 = c1 == std::string::npos ? std::string::npos : a.y_range.find(':', c1 + 1);
    if (c2 == std::string::npos) {
      throw std::invalid_argument("--y-range needs the form lo:hi:steps");
    }
    const double lo = parse_double(a.y_range.substr(0, c1), "--y-range lo");
    const double hi = parse_double(a.y_range.substr(c1 + 1, c2 - c1 - 1), "--y-range hi");
    const double steps = parse_double(a.y_range.substr(c2 + 1), "--y-range steps");
    if (steps != std::floor(steps) || steps < 2.0 || steps > 100000.0) {
      throw std::invalid_argument("--y-range needs an integer step count between 2 and 100000");
    }
    if (!(hi > lo)) {
      throw std::invalid_argument("--y-range is empty; hi must exceed lo");
    }
    const int k = static_cast<int>(steps);
    for (int i = 0; i < k; ++i) {
      y.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(k - 1));
    }
  }
  for (const double v : y) {
    if (v <= 0.0) throw std::invalid_argument("y values must be positive");
  }
  return y;
}

/// Mean matrix reproducing a target noncentrality: with theta = I and
/// mu^* mu = Sigma Omega, the sampled member has exactly that Omega.
rnda::AlgebraMatrix mean_for_omega(const rnda::WishartParams& p, int rows) {
  const rnda::HermitianMatrix root = p.sigma().sqrt_psd();
  const rnda::AlgebraMatrix product =
      root.matrix() * p.noncentrality_kernel().matrix() * root.matrix();
  const rnda::HermitianMatrix square = rnda::HermitianMatrix(product).sqrt_psd();
  const int m = square.size();
  if (rows < m) {
    throw std::invalid_argument("sampling a noncentral member needs n >= m");
  }
  rnda::AlgebraMatrix mu(rows, m, p.algebra());
  for (int plane = 0; plane < p.algebra().beta(); ++plane) {
    mu.plane(plane).topRows(m) = square.matrix().plane(plane);
  }
  return mu;
}

int run_lmax(const LmaxArgs& a) {
  const rnda::AlgebraDim dim(a.beta);
  const rnda::SeriesControl ctrl{a.max_degree, a.tol};
  const std::vector<double> y = parse_y_values(a);
  ordered_json out;
  out["schema_version"] = 1;
  out["command"] = "lmax";
  out["method"] = a.method;
  out["beta"] = a.beta;
  out["n"] = a.n;
  if (a.method == "series") {
    if (!a.omega_path.empty()) {
      throw std::invalid_argument(
          "the series method covers the central family; rerun with --method mc");
    }
    std::optional<rnda::LambdaMaxCdf> cdf;
    int m = 0;
    if (a.beta == 8) {
      const rnda::SpectralFile sigma = rnda::load_spectral(a.sigma_path);
      m = static_cast<int>(sigma.diagonal.size());
      std::vector<double> inv(sigma.diagonal.size());
      for (size_t i = 0; i < inv.size(); ++i) {
        if (sigma.diagonal[i] <= 0.0) {
          throw std::invalid_argument(a.sigma_path + ": scale spectrum must be positive");
        }
        inv[i] = 1.0 / sigma.diagonal[i];
      }
      cdf.emplace(rnda::Spectrum(std::move(inv)), a.n, dim, ctrl);
    } else {
      const rnda::HermitianMatrix sigma = rnda::load_hermitian(a.sigma_path, dim);
      m = sigma.size();
      cdf.emplace(rnda::WishartParams(a.n, sigma), ctrl);
    }
    out["m"] = m;
    ordered_json points = ordered_json::array();
    for (const double yi : y) {
      try {
        const rnda::CdfValue v = (*cdf)(yi);
        ordered_json pt;
        pt["y"] = yi;
        pt["cdf"] = v.probability;
        pt["report"] = report_json(v.report);
        points.push_back(std::move(pt));
      } catch (const std::runtime_error& e) {
        out["error"] = e.what();
        out["failed_at_y"] = yi;
        out["points"] = std::move(points);
        emit(out);
        return exit_convergence;
      }
    }
    out["points"] = std::move(points);
  } else {
    if (a.beta == 8) {
      throw std::invalid_argument(
          "monte carlo needs a samplable algebra; the octonion case is unsupported");
    }
    if (a.count <= 0) throw std::invalid_argument("--method mc needs a positive --count");
    const rnda::HermitianMatrix sigma = rnda::load_hermitian(a.sigma_path, dim);
    out["m"] = sigma.size();
    std::optional<rnda::WishartSampler> sampler;
    if (a.omega_path.empty()) {
      sampler.emplace(rnda::WishartParams(a.n, sigma));
    } else {
      const rnda::WishartParams p(a.n, sigma, rnda::load_hermitian(a.omega_path, dim));
      if (a.n != std::floor(a.n)) {
        throw std::domain_error("sampling requires integer degrees of freedom");
      }
      const int rows = static_cast<int>(a.n);
      sampler.emplace(mean_for_omega(p, rows), sigma,
                      rnda::HermitianMatrix::identity(rows, dim));
    }
    const std::vector<rnda::McEstimate> est =
        rnda::mc_lambda_max_cdf(*sampler, y, a.count, a.seed, rnda::Execution::parallel);
    out["count"] = a.count;
    out["seed"] = a.seed;
    ordered_json points = ordered_json::array();
    for (size_t i = 0; i < y.size(); ++i) {
      ordered_json pt;
      pt["y"] = y[i];
      pt["cdf"] = est[i].estimate;
      pt["std_error"] = est[i].std_error;
      points.push_back(std::move(pt));
    }
    out["points"] = std::move(points);
  }
  emit(out);
  return 0;
}

struct SampleArgs {
  int beta = 1;
  double n = 0.0;
  int m = 0;
  std::string mu_path;
  std::string sigma_path;
  std::string theta_path;
  long count = 0;
  std::uint64_t seed = 0;
  std::string out_path;
};

int run_sample(const SampleArgs& a) {
  if (a.beta == 8) {
    throw std::invalid_argument(
        "beta 8 has no matrix representation to sample; the octonion algebra is unsupported "
        "here");
  }
  const rnda::AlgebraDim dim(a.beta);
  if (a.m <= 0) throw std::invalid_argument("--m must be positive");
  if (a.n != std::floor(a.n) || a.n < 1.0) {
    throw std::invalid_argument("sampling requires a positive integer --n");
  }
  const int rows = static_cast<int>(a.n);
  const rnda::HermitianMatrix sigma = a.sigma_path.empty()
                                          ? rnda::HermitianMatrix::identity(a.m, dim)
                                          : rnda::load_hermitian(a.sigma_path, dim);
  if (sigma.size() != a.m) {
    throw std::invalid_argument("--sigma must be an m by m matrix");
  }
  const rnda::HermitianMatrix theta = a.theta_path.empty()
                                          ? rnda::HermitianMatrix::identity(rows, dim)
                                          : rnda::load_hermitian(a.theta_path, dim);
  rnda::AlgebraMatrix mu(rows, a.m, dim);
  if (!a.mu_path.empty()) {
    mu = rnda::load_matrix(a.mu_path, dim);
    if (mu.rows() != rows || mu.cols() != a.m) {
      throw std::invalid_argument("--mu must have n rows and m columns");
    }
  }
  const rnda::WishartSampler sampler(mu, sigma, theta);
  const rnda::SampleBatch batch = sampler.spectra(a.count, a.seed, rnda::Execution::parallel);
  rnda::write_spectra_csv(a.out_path, batch);
  ordered_json out;
  out["schema_version"] = 1;
  out["command"] = "sample";
  out["beta"] = a.beta;
  out["n"] = a.n;
  out["m"] = a.m;
  out["count"] = a.count;
  out["seed"] = a.seed;
  out["out"] = a.out_path;
  emit(out);
  return 0;
}

struct VerifyArgs {
  std::string suite = "all";
  std::string budget = "fast";
};

int run_verify(const VerifyArgs& a) {
  const rnda::Budget budget = a.budget == "full" ? rnda::Budget::full : rnda::Budget::fast;
  const std::vector<rnda::SuiteReport> reports = rnda::verify_suite(a.suite, budget);
  bool all_passed = true;
  ordered_json suites = ordered_json::array();
  for (const rnda::SuiteReport& suite : reports) {
    std::fprintf(stderr, "[%s]\n", suite.suite.c_str());
    ordered_json checks = ordered_json::array();
    int passed = 0;
    for (const rnda::CheckResult& c : suite.checks) {
      std::fprintf(stderr, "  %s %-26s measured %.3e  tolerance %.3e  (%.1f s)\n",
                   c.passed ? "PASS" : "FAIL", c.name.c_str(), c.measured, c.tolerance,
                   c.seconds);
      if (!c.passed) std::fprintf(stderr, "       %s\n", c.detail.c_str());
      passed += c.passed ? 1 : 0;
      ordered_json check;
      check["name"] = c.name;
      check["passed"] = c.passed;
      check["measured"] = c.measured;
      check["tolerance"] = c.tolerance;
      check["detail"] = c.detail;
      checks.push_back(std::move(check));
    }
    std::fprintf(stderr, "  %d/%d passed\n", passed, static_cast<int>(suite.checks.size()));
    all_passed = all_passed && suite.passed();
    ordered_json entry;
    entry["suite"] = suite.suite;
    entry["passed"] = suite.passed();
    entry["checks"] = std::move(checks);
    suites.push_back(std::move(entry));
  }
  ordered_json out;
  out["schema_version"] = 1;
  out["command"] = "verify";
  out["suite"] = a.suite;
  out["budget"] = a.budget;
  out["passed"] = all_passed;
  out["suites"] = std::move(suites);
  emit(out);
  return all_passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wishart family tools: densities, eigenvalue distributions, sampling"};
  app.require_subcommand(1);

  DensityArgs da;
  CLI::App* density = app.add_subcommand("density", "Evaluate a log density at a sample point");
  density->add_option("--beta", da.beta, "Algebra: 1 real, 2 complex, 4 quaternion, 8 octonion")
      ->required()
      ->check(CLI::IsMember({1, 2, 4, 8}));
  density->add_option("--n", da.n, "Degrees of freedom")->required();
  density->add_option("--sigma", da.sigma_path, "Scale matrix file")->required();
  density->add_option("--omega", da.omega_path, "Noncentrality matrix file; absent = central");
  density->add_option("--s", da.s_path, "Evaluation point file")->required();
  density->add_option("--dist", da.dist, "Density to evaluate")
      ->check(CLI::IsMember({"wishart", "gw", "inv-gw"}));
  density->add_option("--generator", da.generator, "Radial generator for gw and inv-gw")
      ->check(CLI::IsMember({"normal"}));
  density->add_option("--max-degree", da.max_degree, "Partition series degree cap")
      ->check(CLI::PositiveNumber);
  density->add_option("--tol", da.tol, "Series convergence tolerance")->check(CLI::PositiveNumber);

  LmaxArgs la;
  CLI::App* lmax =
      app.add_subcommand("lmax", "Distribution of the largest eigenvalue on a y grid");
  lmax->add_option("--beta", la.beta, "Algebra: 1, 2, 4, or 8 (series only)")
      ->required()
      ->check(CLI::IsMember({1, 2, 4, 8}));
  lmax->add_option("--n", la.n, "Degrees of freedom")->required();
  lmax->add_option("--sigma", la.sigma_path, "Scale matrix file")->required();
  lmax->add_option("--omega", la.omega_path, "Noncentrality matrix file (mc only)");
  lmax->add_option("--y-grid", la.y_grid, "Comma separated y values");
  lmax->add_option("--y-range", la.y_range, "lo:hi:steps, inclusive linear grid");
  lmax->add_option("--method", la.method, "series or mc")
      ->check(CLI::IsMember({"series", "mc"}));
  lmax->add_option("--count", la.count, "Sample count for mc");
  lmax->add_option("--seed", la.seed, "Sampler seed for mc");
  lmax->add_option("--max-degree", la.max_degree, "Partition series degree cap")
      ->check(CLI::PositiveNumber);
  lmax->add_option("--tol", la.tol, "Series convergence tolerance")->check(CLI::PositiveNumber);

  SampleArgs sa;
  CLI::App* sample = app.add_subcommand("sample", "Draw sample spectra to a CSV file");
  sample->add_option("--beta", sa.beta, "Algebra: 1, 2, or 4")->required();
  sample->add_option("--n", sa.n, "Degrees of freedom (integer rows of the latent matrix)")
      ->required();
  sample->add_option("--m", sa.m, "Matrix dimension")->required();
  sample->add_option("--mu", sa.mu_path, "Mean matrix file, n rows; absent = zero");
  sample->add_option("--sigma", sa.sigma_path, "Scale matrix file; absent = identity");
  sample->add_option("--theta", sa.theta_path, "Row scale matrix file; absent = identity");
  sample->add_option("--count", sa.count, "Rows to draw")->required();
  sample->add_option("--seed", sa.seed, "Stream seed");
  sample->add_option("--out", sa.out_path, "Output CSV path")->required();

  VerifyArgs va;
  CLI::App* verify = app.add_subcommand("verify", "Run the verification suites");
  verify->add_option("--suite", va.suite, "identities, reductions, mc-central, mc-noncentral, all")
      ->check(CLI::IsMember({"identities", "reductions", "mc-central", "mc-noncentral", "all"}));
  verify->add_option("--budget", va.budget, "fast or full")
      ->check(CLI::IsMember({"fast", "full"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return exit_validation;
  }

  try {
    if (density->parsed()) return run_density(da);
    if (lmax->parsed()) return run_lmax(la);
    if (sample->parsed()) return run_sample(sa);
    return run_verify(va);
  } catch (const std::runtime_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_convergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_validation;
  }
}
