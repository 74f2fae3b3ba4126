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

#ifndef KLOOS_PADIC_HPP
#define KLOOS_PADIC_HPP

#include <cstdint>
#include <vector>

#include "kloos/ff.hpp"
#include "kloos/kloosterman.hpp"
#include "kloos/report.hpp"

namespace kloos {

/// p^K must stay below this so residue products fit in 64 bits.
inline constexpr std::uint64_t kMaxPadicModulus = std::uint64_t{1} << 31;

/// Element of Z_p truncated to K digits, i.e. a residue mod p^K.
class PadicInt {
 public:
  PadicInt(std::uint32_t p, unsigned precision, std::int64_t value = 0);

  std::uint32_t p() const noexcept { return p_; }
  unsigned precision() const noexcept { return precision_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t residue() const noexcept { return residue_; }

  PadicInt& operator+=(const PadicInt& rhs);
  PadicInt& operator-=(const PadicInt& rhs);
  PadicInt& operator*=(const PadicInt& rhs);
  friend PadicInt operator+(PadicInt a, const PadicInt& b) { return a += b; }
  friend PadicInt operator-(PadicInt a, const PadicInt& b) { return a -= b; }
  friend PadicInt operator*(PadicInt a, const PadicInt& b) { return a *= b; }
  PadicInt operator-() const;
  friend bool operator==(const PadicInt&, const PadicInt&) = default;

  PadicInt pow(std::uint64_t e) const;
  /// Throws std::domain_error unless the residue is a unit.
  PadicInt inverse() const;
  bool is_unit() const noexcept { return residue_ % p_ != 0; }
  /// Number of trailing zero digits; `precision` for zero.
  unsigned valuation() const noexcept;
  /// Reduction to fewer digits.
  PadicInt truncate(unsigned precision) const;

 private:
  void require_same_ring(const PadicInt& other) const;

  std::uint32_t p_;
  unsigned precision_;
  std::uint64_t modulus_;
  std::uint64_t residue_;
};

std::uint64_t padic_modulus(std::uint32_t p, unsigned precision);

/// Digit sum of j in base p.
unsigned weight_p(std::uint64_t j, std::uint32_t p);

/// num / den as a residue mod p^K. Throws if p divides den.
PadicInt pad_from_rational(std::int64_t num, std::int64_t den, std::uint32_t p, unsigned precision);

/// Gamma_p(k) = (-1)^k prod_{0 < t < k, p !| t} t, reduced mod `modulus`.
std::uint64_t gamma_p_natural(std::uint64_t k, std::uint32_t p, std::uint64_t modulus);

/// Gamma_p(x) mod p^K, evaluated at the natural-number representative of x.
PadicInt gamma_p(const PadicInt& x);

/// Argument <numerator/denominator> of Gamma_p, kept both as a rational and
/// as its residue mod p^K.
struct GammaArg {
  std::int64_t numerator = 0;
  std::int64_t denominator = 1;
  PadicInt residue;
};

/// <p^i j / (q - 1)>.
GammaArg fractional_part_arg(std::uint64_t j, unsigned i, std::uint32_t p, unsigned n,
                             unsigned precision);

struct UnramElem {
  std::vector<std::uint64_t> coords;  // residues mod p^K, constant first

  bool operator==(const UnramElem&) const = default;
};

/**
 * Z_q / p^K: the unramified extension of degree n, truncated to K digits,
 * realised as (Z/p^K)[x] modulo the field modulus lifted digit-wise.
 */
class UnramCtx {
 public:
  UnramCtx(FieldCtx field, unsigned precision);

  const FieldCtx& field() const noexcept { return field_; }
  std::uint32_t p() const noexcept { return field_.p(); }
  unsigned n() const noexcept { return field_.n(); }
  unsigned precision() const noexcept { return precision_; }
  std::uint64_t modulus() const noexcept { return modulus_; }
  const std::vector<std::uint64_t>& lifted_modulus() const noexcept { return lifted_; }

  UnramElem zero() const { return UnramElem{std::vector<std::uint64_t>(n(), 0)}; }
  UnramElem one() const { return constant(1); }
  UnramElem constant(std::int64_t c) const;
  UnramElem constant(const PadicInt& c) const;
  /// Coordinates of a read as integers in [0, p-1].
  UnramElem naive_lift(const FFElem& a) const;

  UnramElem add(const UnramElem& x, const UnramElem& y) const;
  UnramElem sub(const UnramElem& x, const UnramElem& y) const;
  UnramElem scale(std::int64_t c, const UnramElem& x) const;
  UnramElem mul(const UnramElem& x, const UnramElem& y) const;
  UnramElem pow(const UnramElem& x, std::uint64_t e) const;

  FFElem reduce_mod_p(const UnramElem& x) const;
  bool is_constant(const UnramElem& x) const;
  /// Constant coordinate, requiring all others to vanish.
  PadicInt as_padic(const UnramElem& x) const;

 private:
  FieldCtx field_;
  unsigned precision_;
  std::uint64_t modulus_;
  std::vector<std::uint64_t> lifted_;
};

/// Teichmuller representative: the (q-1)th root of unity congruent to a mod
/// p, or 0 for a = 0. Computed by K iterations of y -> y^q from the naive lift.
UnramElem teich(const UnramCtx& uctx, const FFElem& a);

/// sum_{s in S} teich(a)^s.
UnramElem lifted_tau(const UnramCtx& uctx, const SubsetSpec& subset, const FFElem& a);

/**
 * pi^{pi_exponent} * (-p)^{p_exponent} * unit with pi^{p-1} = -p,
 * 0 <= pi_exponent < p - 1 and `unit` invertible mod p.
 *
 * Only products are supported. The power of -p is kept as an exponent
 * instead of being multiplied into the unit so that the pi-adic valuation
 * survives truncation to K digits.
 */
struct EisNormal {
  unsigned pi_exponent = 0;
  unsigned p_exponent = 0;
  UnramElem unit;

  bool operator==(const EisNormal&) const = default;
};

/// pi^e * unit, folded into normal form.
EisNormal eis_normal(const UnramCtx& uctx, unsigned pi_power, UnramElem unit);
EisNormal multiply(const UnramCtx& uctx, const EisNormal& x, const EisNormal& y);
/// pi-adic valuation pi_exponent + (p-1) p_exponent.
unsigned pi_valuation(const UnramCtx& uctx, const EisNormal& x);
/// (-p)^{p_exponent} * unit mod p^K; requires pi_exponent == 0.
UnramElem to_unramified(const UnramCtx& uctx, const EisNormal& x);

/// Gauss sum g(j) = pi^{wt_p(j)} prod_i Gamma_p(<p^i j / (q-1)>), 1 <= j <= q-2.
EisNormal gauss_gk(const UnramCtx& uctx, std::uint64_t j);

/// g(j)^2 mod 27 for p = 3, using pi^2 = -3.
PadicInt gauss_sq_mod27(const UnramCtx& uctx, std::uint64_t j);

/// Unit part of g(j) against 1 / (j_0! ... j_{n-1}!) mod p.
CongruenceReport stickelberger_check(const UnramCtx& uctx, std::uint64_t j);

/// Residue of g(j)^2 mod 27 predicted from the 3-weight of j: 6, 9 or 0.
std::int64_t gauss_sq_mod27_expected(std::uint64_t j);
CongruenceReport wt1_check(const UnramCtx& uctx, std::uint64_t j);

/// Lifted-side evaluation of K_q(a) mod 27 through the Fourier expansion
/// -sum_j g(j)^2 teich(a)^j, with the Gauss-sum table built once.
class FourierMod27 {
 public:
  explicit FourierMod27(UnramCtx uctx);

  const UnramCtx& ring() const noexcept { return uctx_; }
  /// -sum_{j=1}^{q-2} g(j)^2 teich(a)^j mod 27; throws if not rational.
  std::int64_t sum(const FFElem& a) const;
  /// 21 Tr^(a) + 18 tau^_X(a) mod 27.
  std::int64_t lifted_trace_form(const FFElem& a) const;

 private:
  UnramCtx uctx_;
  UnramCtx mod27_;
  std::vector<std::uint64_t> gauss_sq_;  // index j
  SubsetSpec w_;
  SubsetSpec x_;
};

/// Fourier sum against the exact K_q(a) mod 27 and against
/// 21 Tr^(a) + 18 tau^_X(a). p = 3, n >= 3, precision >= 3.
CongruenceReport fourier_kloosterman_mod(const FourierMod27& fourier, const FFElem& a,
                                         const KloostermanValue& exact);
CongruenceReport fourier_kloosterman_mod(const UnramCtx& uctx, const FFElem& a);

}  // namespace kloos

#endif  // KLOOS_PADIC_HPP
