#include "rnda/matrix_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace rnda {

namespace {

using nlohmann::json;

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

const json& field(const json& doc, const char* name, const std::string& path) {
  auto it = doc.find(name);
  if (it == doc.end()) {
    throw std::invalid_argument(path + ": missing field \"" + name + "\"");
  }
  return *it;
}

int int_field(const json& doc, const char* name, const std::string& path) {
  const json& f = field(doc, name, path);
  if (!f.is_number_integer()) {
    throw std::invalid_argument(path + ": field \"" + std::string(name) +
                                "\" must be an integer");
  }
  return f.get<int>();
}

double double_field(const json& doc, const char* name, const std::string& path) {
  const json& f = field(doc, name, path);
  if (!f.is_number()) {
    throw std::invalid_argument(path + ": field \"" + std::string(name) +
                                "\" must be a number");
  }
  return f.get<double>();
}

}  // namespace

AlgebraMatrix load_matrix(const std::string& path, AlgebraDim expected) {
  const json doc = parse_file(path);
  const int m = int_field(doc, "m", path);
  const int beta = int_field(doc, "beta", path);
  if (beta != expected.beta()) {
    throw std::invalid_argument(path + ": field \"beta\" is " + std::to_string(beta) +
                                ", expected " + std::to_string(expected.beta()));
  }
  const json& planes = field(doc, "planes", path);
  if (!planes.is_array() || static_cast<int>(planes.size()) != beta) {
    throw std::invalid_argument(path + ": field \"planes\" must hold " +
                                std::to_string(beta) + " arrays");
  }

  const int rows = planes[0].is_array() ? static_cast<int>(planes[0].size()) : 0;
  if (rows <= 0 || m <= 0) {
    throw std::invalid_argument(path + ": field \"planes\" has no rows or \"m\" is not positive");
  }
  AlgebraMatrix a(rows, m, expected);
  for (int p = 0; p < beta; ++p) {
    const json& plane = planes[p];
    if (!plane.is_array() || static_cast<int>(plane.size()) != rows) {
      throw std::invalid_argument(path + ": field \"planes\" has ragged plane row counts");
    }
    for (int i = 0; i < rows; ++i) {
      const json& row = plane[i];
      if (!row.is_array() || static_cast<int>(row.size()) != m) {
        throw std::invalid_argument(path + ": field \"planes\" row length differs from \"m\"");
      }
      for (int j = 0; j < m; ++j) {
        if (!row[j].is_number()) {
          throw std::invalid_argument(path + ": field \"planes\" holds a non-numeric entry");
        }
        a.plane(p)(i, j) = row[j].get<double>();
      }
    }
  }
  return a;
}

HermitianMatrix load_hermitian(const std::string& path, AlgebraDim expected) {
  const AlgebraMatrix a = load_matrix(path, expected);
  if (a.rows() != a.cols()) {
    throw std::invalid_argument(path + ": field \"planes\" must be square for this input");
  }
  try {
    return HermitianMatrix(a, 1e-12);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
}

SpectralFile load_spectral(const std::string& path) {
  const json doc = parse_file(path);
  const json& spec = field(doc, "spectrum", path);
  if (!spec.is_array() || spec.empty()) {
    throw std::invalid_argument(path + ": field \"spectrum\" must be a non-empty array");
  }
  SpectralFile out;
  out.diagonal.reserve(spec.size());
  bool positive = true;
  double log_sum = 0.0;
  for (const json& v : spec) {
    if (!v.is_number()) {
      throw std::invalid_argument(path + ": field \"spectrum\" holds a non-numeric entry");
    }
    const double x = v.get<double>();
    if (!std::isfinite(x)) {
      throw std::invalid_argument(path + ": field \"spectrum\" holds a non-finite entry");
    }
    out.diagonal.push_back(x);
    if (x > 0.0) {
      log_sum += std::log(x);
    } else {
      positive = false;
    }
  }
  out.logdet = double_field(doc, "logdet", path);
  if (positive && std::abs(out.logdet - log_sum) > 1e-9 * std::max(1.0, std::abs(log_sum))) {
    throw std::invalid_argument(path + ": field \"logdet\" disagrees with the spectrum");
  }
  return out;
}

void write_spectra_csv(const std::string& path, const SampleBatch& batch) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (out == nullptr) throw std::invalid_argument("cannot open " + path + " for writing");
  const int m = batch.count() > 0 ? batch.spectra.front().size() : 0;
  for (int j = 0; j < m; ++j) {
    std::fprintf(out, j + 1 < m ? "lambda_%d," : "lambda_%d", j + 1);
  }
  std::fprintf(out, "\n");
  for (const Spectrum& row : batch.spectra) {
    for (int j = 0; j < m; ++j) {
      std::fprintf(out, j + 1 < m ? "%.17g," : "%.17g", row[j]);
    }
    std::fprintf(out, "\n");
  }
  std::fclose(out);
}

}  // namespace rnda
