#pragma once

#include <optional>

#include "rnda/generator.hpp"
#include "rnda/hermitian.hpp"
#include "rnda/hypergeom.hpp"
#include "rnda/jack.hpp"
#include "rnda/special.hpp"

namespace rnda {

/// Parameter set of the Wishart family over one of the division algebras:
/// degrees of freedom n (real valued, n > m - 1), a positive definite scale
/// Sigma, and an optional noncentrality Omega. Omega is the product of
/// Sigma^{-1} with a positive semidefinite matrix, so it is stored through
/// its self-adjoint kernel Sigma^{1/2} Omega Sigma^{-1/2}, which is what the
/// spectral formulas consume. Expensive transforms of Sigma are computed once
/// here and shared by every evaluation.
class WishartParams {
 public:
  /// Central member (Omega = 0).
  WishartParams(double n, HermitianMatrix sigma);

  /// Noncentral member with a self-adjoint Omega. Such an Omega lies in the
  /// family only when it commutes with Sigma; otherwise construction fails
  /// and with_mean is the way to parameterize.
  WishartParams(double n, HermitianMatrix sigma, const HermitianMatrix& omega);

  /// Noncentral member from the underlying mean: Omega =
  /// Sigma^{-1} mu^* theta^{-1} mu, where mu has one row per degree of
  /// freedom and theta is the positive definite row scale.
  [[nodiscard]] static WishartParams with_mean(double n, HermitianMatrix sigma,
                                               const AlgebraMatrix& mu,
                                               const HermitianMatrix& theta);

  [[nodiscard]] double n() const { return n_; }
  [[nodiscard]] int size() const { return sigma_.size(); }
  [[nodiscard]] AlgebraDim algebra() const { return sigma_.algebra(); }
  [[nodiscard]] const HermitianMatrix& sigma() const { return sigma_; }
  [[nodiscard]] const HermitianMatrix& sigma_inverse() const { return sigma_inv_; }
  [[nodiscard]] const HermitianMatrix& sigma_inv_sqrt() const { return sigma_inv_sqrt_; }
  [[nodiscard]] double logdet_sigma() const { return logdet_sigma_; }

  [[nodiscard]] bool central() const { return !kernel_.has_value(); }
  [[nodiscard]] double trace_omega() const { return trace_omega_; }

  /// Sigma^{1/2} Omega Sigma^{-1/2}: self-adjoint, positive semidefinite,
  /// with the spectrum and trace of Omega. Throws when central.
  [[nodiscard]] const HermitianMatrix& noncentrality_kernel() const;

 private:
  void set_kernel(HermitianMatrix q);

  double n_;
  HermitianMatrix sigma_;
  HermitianMatrix sigma_inv_;
  HermitianMatrix sigma_inv_sqrt_;
  std::optional<HermitianMatrix> kernel_;
  double trace_omega_ = 0.0;
  double logdet_sigma_ = 0.0;
};

/// One evaluation point of a Wishart-family density, reduced to the spectral
/// data the closed forms consume. The matrix front ends fill it for
/// beta <= 4; octonion callers construct it directly, since no matrix
/// decomposition is available at beta = 8.
struct DensityPoint {
  int m = 0;
  double logdet_s = 0.0;           // log |S|
  double logdet_sigma = 0.0;       // log |Sigma|
  double trace_sigma_inv_s = 0.0;  // tr Sigma^{-1} S
  double trace_omega = 0.0;        // tr Omega
  Spectrum noncentral;             // spectrum of Omega Sigma^{-1} S; empty when central
};

/// Reduces a positive definite sample matrix S and a parameter set to a
/// DensityPoint. The noncentral spectrum is computed as the eigenvalues of
/// H^{1/2} Q H^{1/2} with H = Sigma^{-1/2} S Sigma^{-1/2} and Q the
/// noncentrality kernel, which equal those of Omega Sigma^{-1} S.
[[nodiscard]] DensityPoint density_point(const HermitianMatrix& s, const WishartParams& p);

/// Eigenvalues of a self-adjoint matrix, in decreasing order.
[[nodiscard]] inline Spectrum spectrum_of(const HermitianMatrix& s) { return s.spectrum(); }

/// Log density of the generalised (elliptical) Wishart family with radial
/// generator h, evaluated through the derivative series
///   sum_k h^{(2k)}(tr Sigma^{-1}S + tr Omega)/k!
///         sum_{|kappa|=k} C_kappa(Omega Sigma^{-1}S) / [beta n/2]_kappa.
/// Throws std::runtime_error when the series fails to converge under ctrl.
/// When report is non-null it receives the series diagnostics (also on
/// throw, so failures can be surfaced with their report attached); central
/// evaluations record a trivially converged closed form.
[[nodiscard]] double gw_density_log(const DensityPoint& pt, double n, AlgebraDim dim,
                                    const GeneratorFunction& h, const SeriesControl& ctrl,
                                    ConvergenceReport* report = nullptr);
[[nodiscard]] double gw_density_log(const HermitianMatrix& s, const WishartParams& p,
                                    const GeneratorFunction& h, const SeriesControl& ctrl,
                                    ConvergenceReport* report = nullptr);

/// Log density of the (noncentral) Wishart distribution: the normal member
/// of the family in its closed form with a 0F1 noncentrality factor.
[[nodiscard]] double wishart_density_log(const DensityPoint& pt, double n, AlgebraDim dim,
                                         const SeriesControl& ctrl,
                                         ConvergenceReport* report = nullptr);
[[nodiscard]] double wishart_density_log(const HermitianMatrix& s, const WishartParams& p,
                                         const SeriesControl& ctrl,
                                         ConvergenceReport* report = nullptr);

/// Log density of the inverse of a generalised Wishart matrix at W, i.e. of
/// S^{-1} when S follows the family. The spectral overload takes the point
/// describing W^{-1} together with the algebra, and adds the change of
/// variables exponent (beta(m-1)+2) log|W^{-1}|.
[[nodiscard]] double inv_gw_density_log(const DensityPoint& inverse_point, double n,
                                        AlgebraDim dim, const GeneratorFunction& h,
                                        const SeriesControl& ctrl,
                                        ConvergenceReport* report = nullptr);
[[nodiscard]] double inv_gw_density_log(const HermitianMatrix& w, const WishartParams& p,
                                        const GeneratorFunction& h, const SeriesControl& ctrl,
                                        ConvergenceReport* report = nullptr);

/// Log joint density of the eigenvalues of a central Wishart matrix at the
/// (strictly positive) spectrum lambda. Ties make the repulsion factor
/// vanish, so they yield -infinity rather than an error. The spectral
/// overload takes the spectrum of Sigma^{-1} in place of the parameter set.
/// The octonion constant is conjectural: its one dimensional reduction
/// overshoots the scalar gamma density by Gamma(beta/2).
[[nodiscard]] double eigen_joint_density_central_log(const Spectrum& lambda,
                                                     const Spectrum& sigma_inv, double n,
                                                     AlgebraDim dim,
                                                     const SeriesControl& ctrl);
[[nodiscard]] double eigen_joint_density_central_log(const Spectrum& lambda,
                                                     const WishartParams& p,
                                                     const SeriesControl& ctrl);

/// Joint eigenvalue density evaluated over many spectra with one fixed
/// parameter set. The series kernel couples lambda to the scale spectrum
/// through Jack tables at three spectra, two of which do not involve lambda;
/// those are built once here, so each evaluation fills a single table.
class JointEigenDensity {
 public:
  JointEigenDensity(const WishartParams& p, const SeriesControl& ctrl);
  JointEigenDensity(const Spectrum& sigma_inv, double n, AlgebraDim dim,
                    const SeriesControl& ctrl);

  /// Log density at the decreasing positive spectrum lambda; -infinity on ties.
  [[nodiscard]] double operator()(const Spectrum& lambda) const;

  [[nodiscard]] double n() const { return n_; }
  [[nodiscard]] AlgebraDim algebra() const { return dim_; }

 private:
  double n_;
  AlgebraDim dim_;
  SeriesControl ctrl_;
  int m_;
  double const_log_ = 0.0;
  double shape_ = 0.0;  // exponent of |diag lambda|
  JackTable tx_;        // at -(beta/2) times the scale spectrum
  JackTable ti_;        // at the unit spectrum
};

/// Log of P[S < Delta] for central S, through the Kummer form of the 1F1
/// series, which keeps every term positive. The spectral overload takes
/// xi = spectrum of Sigma^{-1} Delta, which determines the probability.
[[nodiscard]] double smax_cdf_central_log(const Spectrum& xi, double n, AlgebraDim dim,
                                          const SeriesControl& ctrl);
[[nodiscard]] double smax_cdf_central_log(const HermitianMatrix& delta, const WishartParams& p,
                                          const SeriesControl& ctrl);

/// A probability with its clamping and convergence diagnostics. Series
/// truncation can push the raw value slightly past one; the flag records
/// when the excess was larger than the series tolerance.
struct CdfValue {
  double probability = 0.0;
  double log_value = 0.0;  // log of the raw series value, before clamping
  bool clamped = false;
  ConvergenceReport report;
};

/// Distribution function of the largest eigenvalue of a central Wishart
/// matrix, P[lambda_max < y] = P[S < yI]. Holds one Jack table at the
/// spectrum of Sigma^{-1} and rescales it per evaluation, so a whole grid of
/// y values costs one table fill.
class LambdaMaxCdf {
 public:
  LambdaMaxCdf(const WishartParams& p, const SeriesControl& ctrl);
  LambdaMaxCdf(const Spectrum& sigma_inv, double n, AlgebraDim dim, const SeriesControl& ctrl);

  [[nodiscard]] CdfValue operator()(double y) const;

  [[nodiscard]] double n() const { return n_; }
  [[nodiscard]] AlgebraDim algebra() const { return dim_; }

 private:
  Spectrum sigma_inv_;
  double n_;
  AlgebraDim dim_;
  SeriesControl ctrl_;
  double const_log_ = 0.0;
  double sum_sigma_inv_ = 0.0;
  double sum_log_sigma_inv_ = 0.0;
  JackTable table_;
};

/// One-shot version of LambdaMaxCdf for a single y.
[[nodiscard]] CdfValue lambda_max_cdf_central(double y, const WishartParams& p,
                                              const SeriesControl& ctrl);
[[nodiscard]] CdfValue lambda_max_cdf_central(double y, const Spectrum& sigma_inv, double n,
                                              AlgebraDim dim, const SeriesControl& ctrl);

}  // namespace rnda
