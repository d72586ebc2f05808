#pragma once

#include <string>

#include "rnda/algebra.hpp"
#include "rnda/hermitian.hpp"
#include "rnda/jack.hpp"
#include "rnda/sampling.hpp"

namespace rnda {

/// Matrices travel as JSON documents with one real plane per basis unit:
///   {"m": cols, "beta": 1|2|4, "planes": [beta row-major 2-D arrays]}
/// Octonion data has no matrix form and travels as a spectrum instead:
///   {"spectrum": [diagonal entries], "logdet": real}
/// interpreted as a diagonal matrix, so a parameter set and a sample given in
/// the same file order share an eigenbasis.

/// Loads a planes-form matrix. Rows may exceed "m" (a mean matrix has one row
/// per degree of freedom). Malformed documents throw std::invalid_argument
/// naming the offending field.
[[nodiscard]] AlgebraMatrix load_matrix(const std::string& path, AlgebraDim expected);

/// Loads a planes-form matrix and validates self-adjointness: square, plane 0
/// symmetric, later planes antisymmetric, tolerance 1e-12.
[[nodiscard]] HermitianMatrix load_hermitian(const std::string& path, AlgebraDim expected);

/// Spectra-form document for the octonion path. The diagonal keeps file
/// order, so entries of different files pair up by position.
struct SpectralFile {
  std::vector<double> diagonal;
  double logdet = 0.0;
};

/// Loads a spectra-form file. When every entry is positive, the logdet field
/// must agree with the spectrum to 1e-9.
[[nodiscard]] SpectralFile load_spectral(const std::string& path);

/// Writes eigenvalue rows as CSV: header lambda_1..lambda_m, one sample per
/// row, entries formatted with %.17g so a read-back is lossless.
void write_spectra_csv(const std::string& path, const SampleBatch& batch);

}  // namespace rnda
