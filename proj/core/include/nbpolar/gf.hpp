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

#ifndef NBPOLAR_GF_HPP
#define NBPOLAR_GF_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace nbpolar {

/// Field element, stored in the integer encoding: the element with
/// coefficient vector (c_0, ..., c_{m-1}) over the monomial basis
/// 1, alpha, ..., alpha^{m-1} is encoded as sum_i c_i p^i.  In particular
/// 0 -> 0, 1 -> 1 and (for m >= 2) alpha -> p.
using Elem = std::uint16_t;

/// GF(p^m) with a fixed canonical primitive polynomial per (p, m).
///
/// Supports q = p^m up to 65536.  Fields with q <= 256 keep full q-by-q
/// addition and multiplication tables; larger fields fall back to log/antilog
/// multiplication and digit-wise addition.  Instances are immutable after
/// construction, so a single shared field can be used from many threads.
class Field {
public:
  Field(unsigned p, unsigned m);

  unsigned characteristic() const { return p_; }
  unsigned extension_degree() const { return m_; }
  unsigned size() const { return q_; }

  /// Primitive element: the root alpha of the field polynomial (for m >= 2),
  /// or the smallest primitive root mod p (for prime fields).
  Elem alpha() const { return alpha_; }

  /// Coefficients c_0, ..., c_m of the field polynomial, constant term first,
  /// c_m == 1.  For m == 1 this is X - g with g the primitive root.
  const std::vector<unsigned>& modulus() const { return poly_; }

  Elem add(Elem a, Elem b) const;
  Elem neg(Elem a) const;
  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }
  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;  ///< throws std::domain_error for a == 0
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  /// a^e with the convention pow(0, 0) == 1.
  Elem pow(Elem a, std::uint64_t e) const;

  /// alpha^k for 0 <= k < q-1.
  Elem alpha_pow(std::uint64_t k) const { return exp_[k % (q_ - 1)]; }

  /// Discrete log base alpha; throws std::domain_error for a == 0.
  unsigned log(Elem a) const;

  std::string describe() const;  ///< e.g. "GF(2^4)" or "GF(7)"

private:
  void build_tables();

  unsigned p_ = 0;
  unsigned m_ = 0;
  unsigned q_ = 0;
  Elem alpha_ = 0;
  std::vector<unsigned> poly_;
  std::vector<Elem> exp_;        // exp_[k] = alpha^k, k in [0, q-1)
  std::vector<std::int32_t> log_;
  std::vector<Elem> neg_;
  std::vector<Elem> inv_;
  std::vector<Elem> add_table_;  // q*q, only for q <= 256
  std::vector<Elem> mul_table_;  // q*q, only for q <= 256
};

using FieldPtr = std::shared_ptr<const Field>;

/// Builds (and validates) the canonical field for (p, m).
FieldPtr make_field(unsigned p, unsigned m);

/// Dense row-major matrix over a field.  The field itself is carried
/// separately; Matrix is just storage.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Elem& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  Elem operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  std::span<const Elem> row(std::size_t r) const {
    return std::span<const Elem>(data).subspan(r * cols, cols);
  }

  bool operator==(const Matrix&) const = default;
};

Matrix identity(std::size_t n);

/// Row vector times matrix; v.size() must equal m.rows.
std::vector<Elem> vec_matmul(const Field& f, std::span<const Elem> v, const Matrix& m);

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b);

/// Kronecker product a (x) b.
Matrix kron(const Field& f, const Matrix& a, const Matrix& b);

/// Rank via Gaussian elimination on a copy.
std::size_t rank(const Field& f, const Matrix& m);

inline bool invertible(const Field& f, const Matrix& m) {
  return m.rows == m.cols && rank(f, m) == m.rows;
}

std::size_t hamming_weight(std::span<const Elem> v);

}  // namespace nbpolar

#endif
