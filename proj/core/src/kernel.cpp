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

#include "nbpolar/kernel.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace nbpolar {
namespace {

using boost::multiprecision::cpp_int;

bool within_budget(unsigned q, std::size_t count, std::uint64_t budget) {
  std::uint64_t acc = 1;
  for (std::size_t i = 0; i < count; ++i) {
    if (acc > budget / q) return false;
    acc *= q;
  }
  return acc <= budget;
}

std::vector<unsigned> ascending(std::size_t ell) {
  std::vector<unsigned> d(ell);
  std::iota(d.begin(), d.end(), 1u);
  return d;
}

void check_gv_args(unsigned q, unsigned ell) {
  if (q < 2 || q > 256) throw std::invalid_argument("gv bound: q must be in [2, 256]");
  if (ell < 2 || ell > 64) throw std::invalid_argument("gv bound: ell must be in [2, 64]");
}

}  // namespace

Kernel rs_kernel(FieldPtr field, std::size_t ell) {
  const Field& f = *field;
  if (ell < 2 || ell > f.size())
    throw std::invalid_argument("rs kernel needs 2 <= ell <= q");
  Kernel k;
  k.field = std::move(field);
  k.ell = ell;
  k.matrix = Matrix(ell, ell);
  for (std::size_t t = 0; t < ell; ++t) {
    auto x = static_cast<Elem>(f.size() - 1 - t);
    for (std::size_t j = 0; j < ell; ++j)
      k.matrix(j, t) = f.pow(x, ell - 1 - j);
  }
  k.label = "rs";
  k.partial_distances = ascending(ell);
  k.exponent = exponent_from_distances(*k.partial_distances, ell);
  k.mds_nested = true;
  return k;
}

Kernel rs_kernel_modified_4_2(FieldPtr field) {
  const Field& f = *field;
  if (f.characteristic() != 2 || f.extension_degree() != 2)
    throw std::invalid_argument("modified-rs42 kernel is defined over GF(4)");
  Kernel k;
  k.field = std::move(field);
  k.ell = 2;
  k.matrix = Matrix(2, 2);
  k.matrix(0, 0) = 1;
  k.matrix(1, 0) = 1;
  k.matrix(1, 1) = f.alpha();
  k.label = "modified-rs42";
  k.partial_distances = std::vector<unsigned>{1, 2};
  k.exponent = exponent_from_distances(*k.partial_distances, 2);
  k.mds_nested = true;
  return k;
}

HermitianBasis hermitian_basis(unsigned r) {
  if (r < 2) throw std::invalid_argument("hermitian basis needs r >= 2");
  auto [p, s] = factor_prime_power(r);
  if (static_cast<std::uint64_t>(r) * r > 256)
    throw std::invalid_argument("hermitian basis limited to r^2 <= 256");

  HermitianBasis basis;
  basis.r = r;
  basis.field = make_field(p, 2 * s);
  const Field& f = *basis.field;
  const unsigned q = f.size();

  for (unsigned x1 = q; x1-- > 0;) {
    for (unsigned x2 = q; x2-- > 0;) {
      auto e1 = static_cast<Elem>(x1), e2 = static_cast<Elem>(x2);
      if (f.pow(e1, r + 1) == f.add(f.pow(e2, r), e2))
        basis.points.emplace_back(e1, e2);
    }
  }
  if (basis.points.size() != static_cast<std::size_t>(r) * r * r)
    throw std::logic_error("hermitian curve has unexpected point count");

  for (unsigned a = 0; a < r * r; ++a)
    for (unsigned b = 0; b < r; ++b)
      basis.monomials.emplace_back(a, b);
  std::sort(basis.monomials.begin(), basis.monomials.end(),
            [r](const auto& lhs, const auto& rhs) {
              return lhs.first * r + lhs.second * (r + 1) >
                     rhs.first * r + rhs.second * (r + 1);
            });
  basis.pole_orders.reserve(basis.monomials.size());
  for (const auto& [a, b] : basis.monomials)
    basis.pole_orders.push_back(a * r + b * (r + 1));
  return basis;
}

Kernel hermitian_kernel(unsigned r) {
  if (static_cast<std::uint64_t>(r) * r * r > 512)
    throw std::invalid_argument("hermitian kernel limited to r^3 <= 512");
  HermitianBasis basis = hermitian_basis(r);
  const Field& f = *basis.field;
  const std::size_t ell = basis.points.size();

  Kernel k;
  k.field = basis.field;
  k.ell = ell;
  k.matrix = Matrix(ell, ell);
  for (std::size_t j = 0; j < ell; ++j) {
    auto [a, b] = basis.monomials[j];
    for (std::size_t t = 0; t < ell; ++t) {
      auto [x1, x2] = basis.points[t];
      k.matrix(j, t) = f.mul(f.pow(x1, a), f.pow(x2, b));
    }
  }
  if (rank(f, k.matrix) != ell)
    throw std::logic_error("hermitian evaluation matrix is singular");
  k.label = "hermitian";
  return k;
}

Kernel custom_kernel(FieldPtr field, Matrix m, std::string label) {
  if (m.rows != m.cols || m.rows < 2)
    throw std::invalid_argument("kernel matrix must be square with ell >= 2");
  for (Elem e : m.data)
    if (e >= field->size()) throw std::invalid_argument("kernel entry out of field range");
  if (rank(*field, m) != m.rows)
    throw std::invalid_argument("kernel matrix is not invertible");
  Kernel k;
  k.field = std::move(field);
  k.ell = m.rows;
  k.matrix = std::move(m);
  k.label = std::move(label);
  return k;
}

std::vector<unsigned> brute_force_partial_distances(const Kernel& k) {
  const Field& f = *k.field;
  const std::size_t ell = k.ell;
  const unsigned q = f.size();

  // srow[r*q + c] = c * row_r, flattened.
  std::vector<Elem> srow(ell * q * ell);
  for (std::size_t r = 0; r < ell; ++r)
    for (unsigned c = 0; c < q; ++c)
      for (std::size_t t = 0; t < ell; ++t)
        srow[(r * q + c) * ell + t] = f.mul(static_cast<Elem>(c), k.matrix(r, t));

  std::vector<unsigned> out(ell);
  std::vector<Elem> acc((ell + 1) * ell);  // one row buffer per recursion depth
  for (std::size_t i = 0; i < ell; ++i) {
    unsigned best = std::numeric_limits<unsigned>::max();
    // depth buffer d holds the running sum after choosing rows i..i+d
    auto dfs = [&](auto&& self, std::size_t row) -> void {
      Elem* cur = acc.data() + (row - i) * ell;
      const Elem* prev = cur - ell;
      for (unsigned v = 0; v < q; ++v) {
        const Elem* add = srow.data() + (row * q + v) * ell;
        for (std::size_t t = 0; t < ell; ++t) cur[t] = f.add(prev[t], add[t]);
        if (row + 1 == ell) {
          auto w = static_cast<unsigned>(hamming_weight(std::span<const Elem>(cur, ell)));
          if (w < best) best = w;
        } else {
          self(self, row + 1);
        }
      }
    };
    for (unsigned c = 1; c < q; ++c) {
      const Elem* base = srow.data() + (i * q + c) * ell;
      std::copy(base, base + ell, acc.begin());
      if (i + 1 == ell) {
        auto w = static_cast<unsigned>(hamming_weight(std::span<const Elem>(acc.data(), ell)));
        if (w < best) best = w;
      } else {
        dfs(dfs, i + 1);
      }
    }
    out[i] = best;
  }
  return out;
}

const std::vector<unsigned>& partial_distances(Kernel& k, std::uint64_t budget) {
  if (k.partial_distances) return *k.partial_distances;
  if (!within_budget(k.field->size(), k.ell - 1, budget))
    throw std::runtime_error("partial distance enumeration over budget (q^{ell-1} too large)");
  k.partial_distances = brute_force_partial_distances(k);
  if (*k.partial_distances == ascending(k.ell)) k.mds_nested = true;
  return *k.partial_distances;
}

double exponent_from_distances(std::span<const unsigned> distances, std::size_t ell) {
  if (distances.size() != ell || ell < 2)
    throw std::invalid_argument("distance profile has wrong length");
  double sum = 0.0;
  for (unsigned d : distances) {
    if (d == 0) throw std::invalid_argument("partial distance of zero");
    sum += std::log(static_cast<double>(d));
  }
  return sum / (static_cast<double>(ell) * std::log(static_cast<double>(ell)));
}

double exponent(Kernel& k, std::uint64_t budget) {
  if (k.exponent) return *k.exponent;
  k.exponent = exponent_from_distances(partial_distances(k, budget), k.ell);
  return *k.exponent;
}

double rs_exponent_formula(std::size_t ell) {
  if (ell < 2) throw std::invalid_argument("rs exponent needs ell >= 2");
  auto l = static_cast<double>(ell);
  return std::lgamma(l + 1.0) / (l * std::log(l));
}

std::vector<unsigned> gv_partial_distances(unsigned q, unsigned ell) {
  check_gv_args(q, ell);
  // psum[D] = sum_{j<D} C(ell, j) (q-1)^j, exact.
  std::vector<cpp_int> psum(ell + 1);
  cpp_int binom = 1, pw = 1;
  for (unsigned d = 1; d <= ell; ++d) {
    psum[d] = psum[d - 1] + binom * pw;
    binom = binom * (ell - (d - 1)) / d;
    pw *= q - 1;
  }
  std::vector<unsigned> out(ell);
  cpp_int threshold = 1;
  for (unsigned i = 0; i < ell; ++i) {
    threshold *= q;
    unsigned best = 1;
    for (unsigned d = 1; d <= ell; ++d)
      if (psum[d] < threshold) best = d;
    out[i] = best;
  }
  return out;
}

unsigned gv_partial_distance(unsigned q, unsigned ell, unsigned i) {
  if (i >= ell) throw std::invalid_argument("gv bound: index out of range");
  return gv_partial_distances(q, ell)[i];
}

double gv_lower_bound(unsigned q, unsigned ell) {
  return exponent_from_distances(gv_partial_distances(q, ell), ell);
}

std::string kernel_to_text(const Kernel& k) {
  std::ostringstream out;
  out << k.field->size() << ' ' << k.ell << ' ' << k.label << '\n';
  for (std::size_t i = 0; i < k.ell; ++i) {
    for (std::size_t j = 0; j < k.ell; ++j) {
      if (j) out << ' ';
      out << k.matrix(i, j);
    }
    out << '\n';
  }
  return out.str();
}

Kernel kernel_from_text(std::istream& in) {
  unsigned q = 0;
  std::size_t ell = 0;
  std::string label;
  if (!(in >> q >> ell >> label)) throw std::runtime_error("bad kernel header");
  if (ell < 2 || ell > 4096) throw std::runtime_error("bad kernel size");
  Matrix m(ell, ell);
  for (auto& e : m.data) {
    unsigned v = 0;
    if (!(in >> v)) throw std::runtime_error("truncated kernel matrix");
    if (v >= q) throw std::runtime_error("kernel entry out of field range");
    e = static_cast<Elem>(v);
  }
  if (label == "rs" || label == "modified-rs42" || label == "hermitian") {
    Kernel k = kernel_by_label(label, q, ell);
    if (k.matrix != m) throw std::runtime_error("kernel matrix does not match label " + label);
    return k;
  }
  auto [p, deg] = factor_prime_power(q);
  return custom_kernel(make_field(p, deg), std::move(m), label);
}

Kernel kernel_by_label(const std::string& label, unsigned q, std::size_t ell) {
  auto [p, deg] = factor_prime_power(q);
  if (label == "rs") return rs_kernel(make_field(p, deg), ell);
  if (label == "modified-rs42") {
    if (q != 4 || ell != 2)
      throw std::invalid_argument("modified-rs42 requires q=4, ell=2");
    return rs_kernel_modified_4_2(make_field(2, 2));
  }
  if (label == "hermitian") {
    unsigned r = 2;
    while (static_cast<std::size_t>(r) * r * r < ell) ++r;
    if (static_cast<std::size_t>(r) * r * r != ell || static_cast<unsigned>(r) * r != q)
      throw std::invalid_argument("hermitian kernel requires ell = r^3, q = r^2");
    return hermitian_kernel(r);
  }
  throw std::invalid_argument("unknown kernel label: " + label);
}

std::pair<unsigned, unsigned> factor_prime_power(unsigned q) {
  if (q < 2) throw std::invalid_argument("field size must be at least 2");
  unsigned p = 2;
  while (q % p != 0) {
    ++p;
    if (static_cast<std::uint64_t>(p) * p > q) { p = q; break; }
  }
  unsigned m = 0, t = q;
  while (t % p == 0) { t /= p; ++m; }
  if (t != 1) throw std::invalid_argument("field size is not a prime power");
  return {p, m};
}

}  // namespace nbpolar
