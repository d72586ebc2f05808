#include "rnda/wishart.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace rnda {

namespace {

double checked_series_log(const HypResult& r, const char* what) {
  if (!r.report.converged) {
    throw std::runtime_error(std::string(what) + " series did not converge: " + r.report.note);
  }
  if (!std::isfinite(r.value) || r.value <= 0.0) {
    throw std::runtime_error(std::string(what) +
                             " series lost all precision to cancellation");
  }
  return std::log(r.value);
}

void check_sample(const HermitianMatrix& s, const WishartParams& p, const char* what) {
  if (s.size() != p.size() || s.algebra() != p.algebra()) {
    throw std::invalid_argument(std::string(what) + " does not match the parameter set");
  }
}

void check_central(const WishartParams& p, const char* what) {
  if (!p.central()) {
    throw std::invalid_argument(std::string(what) + " requires a central parameter set");
  }
}

const WishartParams& as_central(const WishartParams& p, const char* what) {
  check_central(p, what);
  return p;
}

void report_closed_form(ConvergenceReport* report) {
  if (report == nullptr) return;
  *report = {};
  report->converged = true;
  report->note = "closed form, no series";
}

const Spectrum& checked_eigen_scale(const Spectrum& sigma_inv, double n) {
  const int m = sigma_inv.size();
  if (m <= 0) throw std::invalid_argument("dimension must be positive");
  if (!(n > m - 1)) {
    throw std::domain_error("degrees of freedom must exceed the dimension minus one");
  }
  if (!(sigma_inv[m - 1] > 0.0)) {
    throw std::domain_error("scale spectrum must be positive definite");
  }
  return sigma_inv;
}

}  // namespace

WishartParams::WishartParams(double n, HermitianMatrix sigma)
    : n_(n),
      sigma_(std::move(sigma)),
      sigma_inv_(sigma_.inverse()),
      sigma_inv_sqrt_(sigma_.inv_sqrt_pd()),
      logdet_sigma_(sigma_.logdet_pd()) {
  if (!(n_ > sigma_.size() - 1)) {
    throw std::domain_error("degrees of freedom must exceed the dimension minus one");
  }
}

WishartParams::WishartParams(double n, HermitianMatrix sigma, const HermitianMatrix& omega)
    : WishartParams(n, std::move(sigma)) {
  if (omega.size() != size() || omega.algebra() != algebra()) {
    throw std::invalid_argument("noncentrality does not match the scale matrix");
  }
  // Sigma^{1/2} Omega Sigma^{-1/2} is self-adjoint exactly when Omega and
  // Sigma commute; the validating constructor rejects the other cases.
  set_kernel(HermitianMatrix(sigma_.sqrt_psd().matrix() * omega.matrix() *
                             sigma_inv_sqrt_.matrix()));
}

WishartParams WishartParams::with_mean(double n, HermitianMatrix sigma,
                                       const AlgebraMatrix& mu, const HermitianMatrix& theta) {
  WishartParams p(n, std::move(sigma));
  if (mu.cols() != p.size() || mu.algebra() != p.algebra() || theta.size() != mu.rows() ||
      theta.algebra() != p.algebra()) {
    throw std::invalid_argument("mean and row scale do not match the parameter set");
  }
  const HermitianMatrix gram = theta.inverse().congruence(mu);
  p.set_kernel(gram.congruence(p.sigma_inv_sqrt_.matrix()));
  return p;
}

void WishartParams::set_kernel(HermitianMatrix q) {
  const Spectrum spec = q.spectrum();
  if (spec[q.size() - 1] < -1e-10 * (1.0 + spec.max_abs())) {
    throw std::invalid_argument("noncentrality must be positive semidefinite");
  }
  trace_omega_ = q.trace();
  kernel_.emplace(std::move(q));
}

const HermitianMatrix& WishartParams::noncentrality_kernel() const {
  if (!kernel_) throw std::logic_error("central parameter set has no noncentrality kernel");
  return *kernel_;
}

DensityPoint density_point(const HermitianMatrix& s, const WishartParams& p) {
  check_sample(s, p, "sample matrix");
  DensityPoint pt;
  pt.m = s.size();
  pt.logdet_s = s.logdet_pd();
  pt.logdet_sigma = p.logdet_sigma();
  pt.trace_sigma_inv_s = p.sigma_inverse().trace_product(s);
  pt.trace_omega = p.trace_omega();
  if (!p.central()) {
    const HermitianMatrix h = s.congruence(p.sigma_inv_sqrt().matrix());
    pt.noncentral = product_spectrum(h, p.noncentrality_kernel());
  }
  return pt;
}

double gw_density_log(const DensityPoint& pt, double n, AlgebraDim dim,
                      const GeneratorFunction& h, const SeriesControl& ctrl,
                      ConvergenceReport* report) {
  const int m = pt.m;
  if (m <= 0) throw std::invalid_argument("dimension must be positive");
  if (!(n > m - 1)) {
    throw std::domain_error("degrees of freedom must exceed the dimension minus one");
  }
  const double b = dim.beta();
  const double a = 0.5 * b * n;
  const double v = pt.trace_sigma_inv_s + pt.trace_omega;

  double series_log = 0.0;
  if (pt.noncentral.size() == 0 || pt.noncentral.max_abs() == 0.0) {
    const double hv = h.derivative(0, v);
    if (!(hv > 0.0)) throw std::domain_error("generator vanishes at the evaluation point");
    series_log = std::log(hv);
    report_closed_form(report);
  } else {
    JackTable table(pt.noncentral, dim, ctrl.max_degree);
    double aux = 1.0;  // scale^k / k!
    const auto prefactor = [&h, &table, &aux, v](int k) {
      if (k > 0) aux *= table.scale() / k;
      return h.derivative(2 * k, v) * aux;
    };
    const auto weight = [&table, a, dim](int id) {
      return 1.0 / gen_pochhammer(a, table.partition_of(id), dim);
    };
    const HypResult r = partition_series(table, ctrl, prefactor, weight);
    if (report) *report = r.report;
    series_log = checked_series_log(r, "generator");
  }

  return 0.5 * b * m * n * std::log(std::numbers::pi) +
         elliptical_constant_log(h, m, n, dim).log_c - mv_gamma_log(a, m, dim) -
         a * pt.logdet_sigma + (0.5 * b * (n - m + 1) - 1.0) * pt.logdet_s + series_log;
}

double gw_density_log(const HermitianMatrix& s, const WishartParams& p,
                      const GeneratorFunction& h, const SeriesControl& ctrl,
                      ConvergenceReport* report) {
  return gw_density_log(density_point(s, p), p.n(), p.algebra(), h, ctrl, report);
}

double wishart_density_log(const DensityPoint& pt, double n, AlgebraDim dim,
                           const SeriesControl& ctrl, ConvergenceReport* report) {
  const int m = pt.m;
  if (m <= 0) throw std::invalid_argument("dimension must be positive");
  if (!(n > m - 1)) {
    throw std::domain_error("degrees of freedom must exceed the dimension minus one");
  }
  const double b = dim.beta();
  const double a = 0.5 * b * n;

  double bessel_log = 0.0;
  if (pt.noncentral.size() > 0 && pt.noncentral.max_abs() > 0.0) {
    const HypResult r = hyp_pfq({{}, {a}}, pt.noncentral.scaled(0.25 * b * b), dim, ctrl);
    if (report) *report = r.report;
    bessel_log = checked_series_log(r, "noncentrality");
  } else {
    report_closed_form(report);
  }

  return -0.5 * b * m * n * std::log(2.0 / b) - mv_gamma_log(a, m, dim) -
         a * pt.logdet_sigma + (0.5 * b * (n - m + 1) - 1.0) * pt.logdet_s -
         0.5 * b * (pt.trace_sigma_inv_s + pt.trace_omega) + bessel_log;
}

double wishart_density_log(const HermitianMatrix& s, const WishartParams& p,
                           const SeriesControl& ctrl, ConvergenceReport* report) {
  return wishart_density_log(density_point(s, p), p.n(), p.algebra(), ctrl, report);
}

double inv_gw_density_log(const DensityPoint& inverse_point, double n, AlgebraDim dim,
                          const GeneratorFunction& h, const SeriesControl& ctrl,
                          ConvergenceReport* report) {
  const double jacobian = dim.beta() * (inverse_point.m - 1) + 2.0;
  return gw_density_log(inverse_point, n, dim, h, ctrl, report) +
         jacobian * inverse_point.logdet_s;
}

double inv_gw_density_log(const HermitianMatrix& w, const WishartParams& p,
                          const GeneratorFunction& h, const SeriesControl& ctrl,
                          ConvergenceReport* report) {
  check_sample(w, p, "sample matrix");
  return inv_gw_density_log(density_point(w.inverse(), p), p.n(), p.algebra(), h, ctrl,
                            report);
}

JointEigenDensity::JointEigenDensity(const Spectrum& sigma_inv, double n, AlgebraDim dim,
                                     const SeriesControl& ctrl)
    : n_(n),
      dim_(dim),
      ctrl_(ctrl),
      m_(sigma_inv.size()),
      tx_(checked_eigen_scale(sigma_inv, n).scaled(-0.5 * dim.beta()), dim, ctrl.max_degree),
      ti_(Spectrum(std::vector<double>(static_cast<size_t>(m_), 1.0)), dim, ctrl.max_degree) {
  const double b = dim_.beta();
  const double a = 0.5 * b * n_;
  double log_sigma_inv_sum = 0.0;
  for (int i = 0; i < m_; ++i) log_sigma_inv_sum += std::log(sigma_inv[i]);
  shape_ = 0.5 * b * (n_ - m_ + 1) - 1.0;
  const_log_ = (0.5 * b * m_ * m_ + tau(m_, dim_)) * std::log(std::numbers::pi) -
               0.5 * b * m_ * n_ * std::log(2.0 / b) - mv_gamma_log(a, m_, dim_) -
               mv_gamma_log(0.5 * b * m_, m_, dim_) + a * log_sigma_inv_sum;
}

JointEigenDensity::JointEigenDensity(const WishartParams& p, const SeriesControl& ctrl)
    : JointEigenDensity(
          as_central(p, "the joint eigenvalue density").sigma_inverse().spectrum(), p.n(),
          p.algebra(), ctrl) {}

double JointEigenDensity::operator()(const Spectrum& lambda) const {
  if (lambda.size() != m_) {
    throw std::invalid_argument("eigenvalue and scale spectra must have equal positive size");
  }
  if (!(lambda[m_ - 1] > 0.0)) throw std::domain_error("eigenvalues must be positive");
  const double b = dim_.beta();

  double repulsion = 0.0;
  for (int i = 0; i < m_; ++i) {
    for (int j = i + 1; j < m_; ++j) {
      if (lambda[i] == lambda[j]) return -std::numeric_limits<double>::infinity();
      repulsion += std::log(lambda[i] - lambda[j]);
    }
  }
  double log_lambda_sum = 0.0;
  for (int i = 0; i < m_; ++i) log_lambda_sum += std::log(lambda[i]);

  JackTable ty(lambda, dim_, ctrl_.max_degree);
  const double kernel_log =
      checked_series_log(hyp_pfq_two({{}, {}}, tx_, ty, ti_, ctrl_), "eigenvalue");

  return const_log_ + shape_ * log_lambda_sum + b * repulsion + kernel_log;
}

double eigen_joint_density_central_log(const Spectrum& lambda, const Spectrum& sigma_inv,
                                       double n, AlgebraDim dim, const SeriesControl& ctrl) {
  if (lambda.size() != sigma_inv.size()) {
    throw std::invalid_argument("eigenvalue and scale spectra must have equal positive size");
  }
  return JointEigenDensity(sigma_inv, n, dim, ctrl)(lambda);
}

double eigen_joint_density_central_log(const Spectrum& lambda, const WishartParams& p,
                                       const SeriesControl& ctrl) {
  return JointEigenDensity(p, ctrl)(lambda);
}

double smax_cdf_central_log(const Spectrum& xi, double n, AlgebraDim dim,
                            const SeriesControl& ctrl) {
  const int m = xi.size();
  if (m <= 0) throw std::invalid_argument("dimension must be positive");
  if (!(n > m - 1)) {
    throw std::domain_error("degrees of freedom must exceed the dimension minus one");
  }
  if (xi[m - 1] < 0.0) {
    throw std::domain_error("spectrum of the threshold relative to the scale is negative");
  }
  if (xi[m - 1] == 0.0) return -std::numeric_limits<double>::infinity();
  const double b = dim.beta();

  double sum = 0.0;
  double log_sum = 0.0;
  for (int i = 0; i < m; ++i) {
    sum += xi[i];
    log_sum += std::log(xi[i]);
  }

  const HypParams params{{0.5 * b * (m - 1) + 1.0}, {0.5 * b * (n + m - 1) + 1.0}};
  const HypResult r = hyp_pfq(params, xi.scaled(0.5 * b), dim, ctrl);
  if (!r.report.converged) {
    throw std::runtime_error("distribution series did not converge at spectral radius " +
                             std::to_string(0.5 * b * xi[0]) + "; increase max_degree");
  }

  return mv_gamma_log(0.5 * b * (m - 1) + 1.0, m, dim) -
         mv_gamma_log(0.5 * b * (n + m - 1) + 1.0, m, dim) -
         0.5 * b * m * n * std::log(2.0 / b) + 0.5 * b * n * log_sum - 0.5 * b * sum +
         std::log(r.value);
}

double smax_cdf_central_log(const HermitianMatrix& delta, const WishartParams& p,
                            const SeriesControl& ctrl) {
  check_sample(delta, p, "threshold matrix");
  check_central(p, "the distribution function");
  return smax_cdf_central_log(product_spectrum(delta, p.sigma_inverse()), p.n(), p.algebra(),
                              ctrl);
}

LambdaMaxCdf::LambdaMaxCdf(const Spectrum& sigma_inv, double n, AlgebraDim dim,
                           const SeriesControl& ctrl)
    : sigma_inv_(sigma_inv),
      n_(n),
      dim_(dim),
      ctrl_(ctrl),
      table_(sigma_inv, dim, ctrl.max_degree) {
  const int m = sigma_inv_.size();
  if (m <= 0) throw std::invalid_argument("dimension must be positive");
  if (!(n_ > m - 1)) {
    throw std::domain_error("degrees of freedom must exceed the dimension minus one");
  }
  if (!(sigma_inv_[m - 1] > 0.0)) {
    throw std::domain_error("scale spectrum must be positive definite");
  }
  const double b = dim_.beta();
  for (int i = 0; i < m; ++i) {
    sum_sigma_inv_ += sigma_inv_[i];
    sum_log_sigma_inv_ += std::log(sigma_inv_[i]);
  }
  const_log_ = mv_gamma_log(0.5 * b * (m - 1) + 1.0, m, dim_) -
               mv_gamma_log(0.5 * b * (n_ + m - 1) + 1.0, m, dim_) -
               0.5 * b * m * n_ * std::log(2.0 / b);
}

LambdaMaxCdf::LambdaMaxCdf(const WishartParams& p, const SeriesControl& ctrl)
    : LambdaMaxCdf(as_central(p, "the distribution function").sigma_inverse().spectrum(),
                   p.n(), p.algebra(), ctrl) {}

CdfValue LambdaMaxCdf::operator()(double y) const {
  if (!(y > 0.0)) throw std::domain_error("threshold must be positive");
  const int m = sigma_inv_.size();
  const double b = dim_.beta();
  const HypParams params{{0.5 * b * (m - 1) + 1.0}, {0.5 * b * (n_ + m - 1) + 1.0}};
  const HypResult r = hyp_pfq(params, table_, ctrl_, 0.5 * b * y);
  if (!r.report.converged) {
    throw std::runtime_error("distribution series did not converge at spectral radius " +
                             std::to_string(0.5 * b * y * sigma_inv_[0]) +
                             "; increase max_degree");
  }
  CdfValue out;
  out.report = r.report;
  out.log_value = const_log_ + 0.5 * b * n_ * (m * std::log(y) + sum_log_sigma_inv_) -
                  0.5 * b * y * sum_sigma_inv_ + std::log(r.value);
  const double raw = std::exp(out.log_value);
  out.clamped = raw > 1.0 + ctrl_.rel_tol;
  out.probability = raw < 1.0 ? raw : 1.0;
  return out;
}

CdfValue lambda_max_cdf_central(double y, const WishartParams& p, const SeriesControl& ctrl) {
  return LambdaMaxCdf(p, ctrl)(y);
}

CdfValue lambda_max_cdf_central(double y, const Spectrum& sigma_inv, double n, AlgebraDim dim,
                                const SeriesControl& ctrl) {
  return LambdaMaxCdf(sigma_inv, n, dim, ctrl)(y);
}

}  // namespace rnda
