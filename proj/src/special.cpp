#include "rnda/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace rnda {

AlgebraDim::AlgebraDim(int beta) : beta_(beta) {
  if (beta != 1 && beta != 2 && beta != 4 && beta != 8) {
    throw std::invalid_argument("algebra dimension beta must be 1, 2, 4 or 8, got " +
                                std::to_string(beta));
  }
}

Partition::Partition(std::initializer_list<int> parts)
    : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
  for (size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 0) throw std::invalid_argument("partition parts must be non-negative");
    if (i > 0 && parts_[i] > parts_[i - 1]) {
      throw std::invalid_argument("partition parts must be non-increasing");
    }
    weight_ += parts_[i];
  }
}

std::vector<int> Partition::conjugate() const {
  std::vector<int> conj(static_cast<size_t>(part(0)), 0);
  for (int p : parts_) {
    for (int j = 0; j < p; ++j) conj[static_cast<size_t>(j)] += 1;
  }
  return conj;
}

namespace {

void emit_partitions(int remaining, int max_parts, int max_first,
                     std::vector<int>& prefix, std::vector<Partition>& out) {
  if (remaining == 0) {
    out.emplace_back(prefix);
    return;
  }
  if (max_parts == 0) return;
  for (int first = std::min(remaining, max_first); first >= 1; --first) {
    prefix.push_back(first);
    emit_partitions(remaining - first, max_parts - 1, first, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<Partition> enumerate_partitions(int weight, int max_parts) {
  if (weight < 0) throw std::invalid_argument("partition weight must be non-negative");
  if (max_parts < 1) throw std::invalid_argument("max_parts must be at least 1");
  std::vector<Partition> out;
  std::vector<int> prefix;
  emit_partitions(weight, max_parts, weight, prefix, out);
  return out;
}

double gen_pochhammer(double a, const Partition& kappa, AlgebraDim dim) {
  const double half_beta = dim.beta() / 2.0;
  double prod = 1.0;
  for (int i = 0; i < kappa.length(); ++i) {
    const double base = a - i * half_beta;
    for (int j = 0; j < kappa.part(i); ++j) prod *= base + j;
  }
  return prod;
}

double mv_gamma_log(double a, int m, AlgebraDim dim) {
  if (m < 1) throw std::invalid_argument("matrix dimension m must be positive");
  const double half_beta = dim.beta() / 2.0;
  if (a <= (m - 1) * half_beta) {
    throw std::domain_error("multivariate gamma requires a > (m-1) beta/2, got a = " +
                            std::to_string(a));
  }
  double sum = 0.25 * m * (m - 1) * dim.beta() * std::log(std::numbers::pi);
  for (int i = 0; i < m; ++i) sum += std::lgamma(a - i * half_beta);
  return sum;
}

double stiefel_volume_log(int m, int n, AlgebraDim dim) {
  if (m < 1) throw std::invalid_argument("frame count m must be positive");
  if (n < m) throw std::invalid_argument("ambient dimension n must be at least m");
  const double half_beta = dim.beta() / 2.0;
  return m * std::numbers::ln2 + m * n * half_beta * std::log(std::numbers::pi) -
         mv_gamma_log(n * half_beta, m, dim);
}

int tau(int m, AlgebraDim dim) {
  switch (dim.beta()) {
    case 1: return 0;
    case 2: return -m;
    case 4: return -2 * m;
    default: return -4 * m;
  }
}

}  // namespace rnda
