// Copyright 2026 the nbpolar authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef NBPOLAR_TESTS_PROPERTIES_HPP
#define NBPOLAR_TESTS_PROPERTIES_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "nbpolar/polar.hpp"

namespace nbtest {

using nbpolar::Elem;
using nbpolar::Kernel;
using nbpolar::LikelihoodVector;

/// Exact successive cancellation posterior by full enumeration: the
/// unnormalized posterior of u_i given a fed prefix u_0..u_{i-1} and the
/// per-symbol observation likelihoods, with all later inputs marginalized
/// uniformly.  Exponential cost; only usable for q^{N-i} up to ~1e6.
inline std::vector<double> oracle_posterior(const Kernel& kernel, unsigned levels,
                                            const std::vector<LikelihoodVector>& obs,
                                            std::span<const Elem> prefix) {
  const unsigned q = kernel.field->size();
  std::size_t n_len = 1;
  for (unsigned v = 0; v < levels; ++v) n_len *= kernel.ell;
  if (prefix.size() >= n_len) throw std::invalid_argument("oracle prefix too long");
  const std::size_t free_count = n_len - prefix.size() - 1;

  std::vector<double> post(q, 0.0);
  std::vector<Elem> u(prefix.begin(), prefix.end());
  u.resize(n_len, 0);
  std::uint64_t combos = 1;
  for (std::size_t i = 0; i < free_count; ++i) combos *= q;
  for (unsigned cand = 0; cand < q; ++cand) {
    u[prefix.size()] = static_cast<Elem>(cand);
    for (std::uint64_t rest = 0; rest < combos; ++rest) {
      std::uint64_t t = rest;
      for (std::size_t i = 0; i < free_count; ++i) {
        u[prefix.size() + 1 + i] = static_cast<Elem>(t % q);
        t /= q;
      }
      auto x = polar_transform(kernel, u, levels);
      double w = 1.0;
      for (std::size_t k = 0; k < n_len; ++k) w *= obs[k][x[k]];
      post[cand] += w;
    }
  }
  return post;
}

/// Largest relative entry difference after normalizing both vectors to unit
/// sum.  Returns +inf if one vector sums to zero and the other does not.
inline double normalized_diff(std::span<const double> a, std::span<const double> b) {
  double sa = 0.0, sb = 0.0;
  for (double v : a) sa += v;
  for (double v : b) sb += v;
  if (sa == 0.0 || sb == 0.0)
    return sa == sb ? 0.0 : std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    double d = std::abs(a[i] / sa - b[i] / sb);
    worst = std::max(worst, d);
  }
  return worst;
}

/// Capacity of the binary-input AWGN channel with BPSK levels +-1 and noise
/// deviation sigma, in bits per use, via Simpson integration.
inline double biawgn_capacity(double sigma) {
  const double lo = -10.0, hi = 10.0;
  const int steps = 4000;  // even
  const double h = (hi - lo) / steps;
  auto integrand = [sigma](double z) {
    double y = 1.0 + sigma * z;  // received sample given +1 sent
    double phi = std::exp(-z * z / 2.0) / std::sqrt(2.0 * 3.14159265358979323846);
    return phi * std::log2(1.0 + std::exp(-2.0 * y / (sigma * sigma)));
  };
  double acc = integrand(lo) + integrand(hi);
  for (int i = 1; i < steps; ++i)
    acc += integrand(lo + i * h) * (i % 2 ? 4.0 : 2.0);
  return 1.0 - acc * h / 3.0;
}

}  // namespace nbtest

#endif
