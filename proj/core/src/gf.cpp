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

#include "nbpolar/gf.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace nbpolar {
namespace {

// Polynomials over GF(p) used during field construction only: coefficient
// vectors, constant term first, not necessarily trimmed.
using Poly = std::vector<unsigned>;

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

std::vector<unsigned> prime_factors(unsigned n) {
  std::vector<unsigned> out;
  for (unsigned d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

unsigned powmod(unsigned base, unsigned e, unsigned mod) {
  std::uint64_t r = 1, b = base % mod;
  while (e) {
    if (e & 1) r = r * b % mod;
    b = b * b % mod;
    e >>= 1;
  }
  return static_cast<unsigned>(r);
}

unsigned smallest_primitive_root(unsigned p) {
  if (p == 2) return 1;
  auto factors = prime_factors(p - 1);
  for (unsigned g = 2; g < p; ++g) {
    bool ok = true;
    for (unsigned r : factors)
      if (powmod(g, (p - 1) / r, p) == 1) { ok = false; break; }
    if (ok) return g;
  }
  throw std::logic_error("no primitive root found");
}

int degree(const Poly& a) {
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[static_cast<std::size_t>(i)] != 0) return i;
  return -1;
}

// a * b followed by reduction modulo the monic polynomial mod.
Poly mul_mod(const Poly& a, const Poly& b, const Poly& mod, unsigned p) {
  const int da = degree(a), db = degree(b);
  if (da < 0 || db < 0) return {};
  Poly prod(static_cast<std::size_t>(da + db) + 1, 0);
  for (int i = 0; i <= da; ++i) {
    if (a[static_cast<std::size_t>(i)] == 0) continue;
    for (int j = 0; j <= db; ++j)
      prod[static_cast<std::size_t>(i + j)] =
          (prod[static_cast<std::size_t>(i + j)] +
           a[static_cast<std::size_t>(i)] * b[static_cast<std::size_t>(j)]) % p;
  }
  const int dm = degree(mod);
  for (int i = degree(prod); i >= dm; --i) {
    unsigned c = prod[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    // mod is monic, so subtract c * X^{i-dm} * mod.
    for (int j = 0; j <= dm; ++j) {
      auto& slot = prod[static_cast<std::size_t>(i - dm + j)];
      slot = (slot + p * c - c * mod[static_cast<std::size_t>(j)] % p) % p;
    }
  }
  prod.resize(static_cast<std::size_t>(dm));
  return prod;
}

Poly pow_mod(Poly base, std::uint64_t e, const Poly& mod, unsigned p) {
  Poly result{1};
  while (e) {
    if (e & 1) result = mul_mod(result, base, mod, p);
    base = mul_mod(base, base, mod, p);
    e >>= 1;
  }
  return result;
}

bool is_one(const Poly& a) { return degree(a) == 0 && a[0] == 1; }

// Remainder of a divided by the monic polynomial d; true iff it is zero.
bool divides(const Poly& d, Poly a, unsigned p) {
  const int dd = degree(d);
  for (int i = degree(a); i >= dd; --i) {
    unsigned c = a[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    for (int j = 0; j <= dd; ++j) {
      auto& slot = a[static_cast<std::size_t>(i - dd + j)];
      slot = (slot + p * c - c * d[static_cast<std::size_t>(j)] % p) % p;
    }
  }
  return degree(a) < 0;
}

unsigned eval_poly(const Poly& a, unsigned x, unsigned p) {
  unsigned acc = 0;
  for (auto it = a.rbegin(); it != a.rend(); ++it)
    acc = (acc * x + *it) % p;
  return acc;
}

bool is_irreducible(const Poly& poly, unsigned p, unsigned m) {
  if (m == 1) return true;
  if (m == 2) {
    // A quadratic is reducible iff it has a root.
    for (unsigned x = 0; x < p; ++x)
      if (eval_poly(poly, x, p) == 0) return false;
    return true;
  }
  // Exhaustive check against every monic divisor of degree 1..m/2.
  for (unsigned d = 1; 2 * d <= m; ++d) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < d; ++i) count *= p;
    for (std::uint64_t k = 0; k < count; ++k) {
      Poly div(d + 1, 0);
      std::uint64_t t = k;
      for (unsigned i = 0; i < d; ++i) { div[i] = static_cast<unsigned>(t % p); t /= p; }
      div[d] = 1;
      if (divides(div, poly, p)) return false;
    }
  }
  return true;
}

bool is_primitive(const Poly& poly, unsigned p, unsigned q) {
  // X must have multiplicative order q-1 modulo poly.
  Poly x{0, 1};
  for (unsigned r : prime_factors(q - 1))
    if (is_one(pow_mod(x, (q - 1) / r, poly, p))) return false;
  return true;
}

// Canonical field polynomials for the sizes used throughout; everything else
// comes from the deterministic search below.
Poly pinned_polynomial(unsigned p, unsigned m) {
  if (p == 2) {
    switch (m) {
      case 2: return {1, 1, 1};
      case 3: return {1, 1, 0, 1};
      case 4: return {1, 1, 0, 0, 1};
      case 5: return {1, 0, 1, 0, 0, 1};
      case 6: return {1, 1, 0, 0, 0, 0, 1};
      case 7: return {1, 1, 0, 0, 0, 0, 0, 1};
      case 8: return {1, 0, 1, 1, 1, 0, 0, 0, 1};
      default: break;
    }
  }
  if (p == 3 && m == 2) return {2, 1, 1};
  return {};
}

Poly search_polynomial(unsigned p, unsigned m, unsigned q) {
  // Smallest coefficient encoding wins; coefficients of X^0..X^{m-1} are the
  // base-p digits of the counter, the leading coefficient is 1.
  for (unsigned k = 0; k < q; ++k) {
    Poly poly(m + 1, 0);
    unsigned t = k;
    for (unsigned i = 0; i < m; ++i) { poly[i] = t % p; t /= p; }
    poly[m] = 1;
    if (is_irreducible(poly, p, m) && is_primitive(poly, p, q)) return poly;
  }
  throw std::logic_error("no primitive polynomial found");
}

}  // namespace

Field::Field(unsigned p, unsigned m) : p_(p), m_(m) {
  if (!is_prime(p)) throw std::invalid_argument("field characteristic must be prime");
  if (m < 1) throw std::invalid_argument("extension degree must be at least 1");
  std::uint64_t q = 1;
  for (unsigned i = 0; i < m; ++i) {
    q *= p;
    if (q > 65536) throw std::invalid_argument("field size limited to 65536");
  }
  q_ = static_cast<unsigned>(q);

  if (m == 1) {
    unsigned g = smallest_primitive_root(p);
    poly_ = {(p - g) % p, 1};  // X - g
    alpha_ = static_cast<Elem>(g);
  } else {
    poly_ = pinned_polynomial(p, m);
    if (poly_.empty()) poly_ = search_polynomial(p, m, q_);
    alpha_ = static_cast<Elem>(p);  // the class of X
  }
  if (!is_irreducible(poly_, p_, m_) || !is_primitive(poly_, p_, q_))
    throw std::logic_error("field polynomial failed validation");

  build_tables();
}

void Field::build_tables() {
  // exp/log from repeated multiplication by X modulo the field polynomial.
  exp_.assign(q_ - 1, 0);
  log_.assign(q_, -1);
  Poly cur{1};
  Poly x{0, 1};
  if (m_ == 1) x = {alpha_};
  for (unsigned k = 0; k < q_ - 1; ++k) {
    Elem enc = 0;
    unsigned scale = 1;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      enc = static_cast<Elem>(enc + cur[i] * scale);
      scale *= p_;
    }
    if (log_[enc] != -1) throw std::logic_error("field element repeated in exp table");
    exp_[k] = enc;
    log_[enc] = static_cast<std::int32_t>(k);
    cur = mul_mod(cur, x, poly_, p_);
  }

  neg_.assign(q_, 0);
  for (unsigned a = 0; a < q_; ++a) {
    unsigned enc = 0, scale = 1, t = a;
    for (unsigned i = 0; i < m_; ++i) {
      unsigned c = t % p_;
      t /= p_;
      enc += ((p_ - c) % p_) * scale;
      scale *= p_;
    }
    neg_[a] = static_cast<Elem>(enc);
  }

  inv_.assign(q_, 0);
  for (unsigned k = 0; k < q_ - 1; ++k)
    inv_[exp_[k]] = exp_[(q_ - 1 - k) % (q_ - 1)];

  if (q_ <= 256) {
    add_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    mul_table_.assign(static_cast<std::size_t>(q_) * q_, 0);
    for (unsigned a = 0; a < q_; ++a) {
      for (unsigned b = 0; b < q_; ++b) {
        unsigned enc = 0, scale = 1, ta = a, tb = b;
        for (unsigned i = 0; i < m_; ++i) {
          enc += (ta % p_ + tb % p_) % p_ * scale;
          ta /= p_;
          tb /= p_;
          scale *= p_;
        }
        add_table_[static_cast<std::size_t>(a) * q_ + b] = static_cast<Elem>(enc);
        mul_table_[static_cast<std::size_t>(a) * q_ + b] =
            (a == 0 || b == 0)
                ? 0
                : exp_[(static_cast<std::uint64_t>(log_[a]) + static_cast<std::uint64_t>(log_[b])) %
                       (q_ - 1)];
      }
    }
  }
}

Elem Field::add(Elem a, Elem b) const {
  if (!add_table_.empty()) return add_table_[static_cast<std::size_t>(a) * q_ + b];
  if (p_ == 2) return static_cast<Elem>(a ^ b);
  unsigned enc = 0, scale = 1, ta = a, tb = b;
  for (unsigned i = 0; i < m_; ++i) {
    enc += (ta % p_ + tb % p_) % p_ * scale;
    ta /= p_;
    tb /= p_;
    scale *= p_;
  }
  return static_cast<Elem>(enc);
}

Elem Field::neg(Elem a) const { return neg_[a]; }

Elem Field::mul(Elem a, Elem b) const {
  if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(a) * q_ + b];
  if (a == 0 || b == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) + static_cast<std::uint64_t>(log_[b])) % (q_ - 1)];
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw std::domain_error("inverse of zero");
  return inv_[a];
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  std::uint64_t k = static_cast<std::uint64_t>(log_[a]) % (q_ - 1) * (e % (q_ - 1)) % (q_ - 1);
  return exp_[k];
}

unsigned Field::log(Elem a) const {
  if (a == 0) throw std::domain_error("log of zero");
  return static_cast<unsigned>(log_[a]);
}

std::string Field::describe() const {
  if (m_ == 1) return "GF(" + std::to_string(p_) + ")";
  return "GF(" + std::to_string(p_) + "^" + std::to_string(m_) + ")";
}

FieldPtr make_field(unsigned p, unsigned m) { return std::make_shared<Field>(p, m); }

Matrix identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Elem> vec_matmul(const Field& f, std::span<const Elem> v, const Matrix& m) {
  if (v.size() != m.rows) throw std::invalid_argument("vec_matmul: size mismatch");
  std::vector<Elem> out(m.cols, 0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (v[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols; ++j)
      out[j] = f.add(out[j], f.mul(v[i], m(i, j)));
  }
  return out;
}

Matrix mat_mul(const Field& f, const Matrix& a, const Matrix& b) {
  if (a.cols != b.rows) throw std::invalid_argument("mat_mul: size mismatch");
  Matrix out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      Elem aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols; ++j)
        out(i, j) = f.add(out(i, j), f.mul(aik, b(k, j)));
    }
  return out;
}

Matrix kron(const Field& f, const Matrix& a, const Matrix& b) {
  Matrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) {
      Elem aij = a(i, j);
      if (aij == 0) continue;
      for (std::size_t k = 0; k < b.rows; ++k)
        for (std::size_t l = 0; l < b.cols; ++l)
          out(i * b.rows + k, j * b.cols + l) = f.mul(aij, b(k, l));
    }
  return out;
}

std::size_t rank(const Field& f, const Matrix& m) {
  Matrix w = m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < w.cols && r < w.rows; ++c) {
    std::size_t pivot = r;
    while (pivot < w.rows && w(pivot, c) == 0) ++pivot;
    if (pivot == w.rows) continue;
    if (pivot != r)
      for (std::size_t j = c; j < w.cols; ++j) std::swap(w(r, j), w(pivot, j));
    Elem pinv = f.inv(w(r, c));
    for (std::size_t i = r + 1; i < w.rows; ++i) {
      Elem e = w(i, c);
      if (e == 0) continue;
      Elem factor = f.mul(e, pinv);
      for (std::size_t j = c; j < w.cols; ++j)
        w(i, j) = f.sub(w(i, j), f.mul(factor, w(r, j)));
    }
    ++r;
  }
  return r;
}

std::size_t hamming_weight(std::span<const Elem> v) {
  std::size_t w = 0;
  for (Elem e : v)
    if (e != 0) ++w;
  return w;
}

}  // namespace nbpolar
