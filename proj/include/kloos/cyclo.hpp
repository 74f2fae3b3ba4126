/* Copyright (C) 2026 The kloos authors
 * This program is Licensed under the Apache License, Version 2.0
 * (the "License"); you may not use this file except in compliance
 * with the License. You may obtain a copy of the License at
 *   http://www.apache.org/licenses/LICENSE-2.0
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License. See accompanying LICENSE file.
 */

#ifndef KLOOS_CYCLO_HPP
#define KLOOS_CYCLO_HPP

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace kloos {

/**
 * Element of Z[zeta_p] in the power basis 1, zeta, ..., zeta^{p-2}.
 *
 * The basis is a Z-basis, so two values are equal iff their coordinates are.
 * zeta^{p-1} is rewritten as -(1 + zeta + ... + zeta^{p-2}).
 */
class CycInt {
 public:
  explicit CycInt(std::uint32_t p);
  CycInt(std::uint32_t p, std::vector<mpz_class> coords);

  static CycInt integer(std::uint32_t p, const mpz_class& c);
  static CycInt zeta_power(std::uint32_t p, std::int64_t k);
  /// sum_t counts[t] * zeta^t for t = 0..p-1.
  static CycInt from_exponent_counts(std::uint32_t p, std::span<const mpz_class> counts);

  std::uint32_t p() const noexcept { return p_; }
  const std::vector<mpz_class>& coords() const noexcept { return coords_; }

  CycInt& operator+=(const CycInt& rhs);
  CycInt& operator-=(const CycInt& rhs);
  CycInt& operator*=(const CycInt& rhs);

  friend CycInt operator+(CycInt lhs, const CycInt& rhs) { return lhs += rhs; }
  friend CycInt operator-(CycInt lhs, const CycInt& rhs) { return lhs -= rhs; }
  friend CycInt operator*(CycInt lhs, const CycInt& rhs) { return lhs *= rhs; }
  CycInt operator-() const;

  friend bool operator==(const CycInt& a, const CycInt& b) {
    return a.p_ == b.p_ && a.coords_ == b.coords_;
  }
  /// Lexicographic on coordinates; only meaningful for equal p.
  friend bool operator<(const CycInt& a, const CycInt& b) { return a.coords_ < b.coords_; }

 private:
  void require_same_ring(const CycInt& other) const;

  std::uint32_t p_;
  std::vector<mpz_class> coords_;
};

std::ostream& operator<<(std::ostream& os, const CycInt& u);

/// zeta -> zeta^i. Throws std::invalid_argument if p divides i.
CycInt galois_apply(std::int64_t i, const CycInt& u);

/// c if u = c, nothing otherwise.
std::optional<mpz_class> as_rational(const CycInt& u);

/// Polynomial with integer coefficients, constant term first, no trailing zeros.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<mpz_class> coeffs);

  static IntPolynomial monomial(unsigned degree, const mpz_class& c = 1);

  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  const std::vector<mpz_class>& coeffs() const noexcept { return coeffs_; }
  mpz_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpz_class(0); }

  friend IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b);
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  IntPolynomial pow(unsigned e) const;
  /// Every coefficient reduced into [0, m).
  IntPolynomial reduce_mod(const mpz_class& m) const;

  std::string to_string() const;

 private:
  void normalize();

  std::vector<mpz_class> coeffs_;
};

std::ostream& operator<<(std::ostream& os, const IntPolynomial& f);

/// Raised by product_linear when an expanded coefficient is not rational.
class NonRationalCoefficient : public std::runtime_error {
 public:
  explicit NonRationalCoefficient(std::size_t index);
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// prod_j (x - roots[j]) over Z[zeta_p], required to land in Z[x].
IntPolynomial product_linear(std::span<const CycInt> roots);

}  // namespace kloos

#endif  // KLOOS_CYCLO_HPP
