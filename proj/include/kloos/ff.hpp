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

#ifndef KLOOS_FF_HPP
#define KLOOS_FF_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kloos {

using Residue = std::uint32_t;

/// Element of F_{p^n} in polynomial-basis coordinates, constant term first.
struct FFElem {
  std::vector<Residue> coeffs;

  bool operator==(const FFElem&) const = default;
};

/// Largest field order accepted by make_field. Primitivity testing factors
/// q - 1 by trial division and the Kloosterman tables hold one entry per
/// element, so anything bigger is outside desk scale anyway.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 40;

/**
 * The finite field F_q, q = p^n, with a fixed monic irreducible modulus and
 * a fixed generator of the multiplicative group.
 *
 * Immutable after construction. Elements are indexed by
 * sum_i coeffs[i] * p^i, which gives the enumeration order used by sweeps.
 */
class FieldCtx {
 public:
  /// See make_field().
  static FieldCtx make(std::uint32_t p, unsigned n,
                       std::optional<std::vector<Residue>> modulus = std::nullopt);

  std::uint32_t p() const noexcept { return p_; }
  unsigned n() const noexcept { return n_; }
  std::uint64_t q() const noexcept { return q_; }
  /// n + 1 coefficients, constant term first, leading coefficient 1.
  const std::vector<Residue>& modulus() const noexcept { return modulus_; }
  const FFElem& generator() const noexcept { return generator_; }

  FFElem zero() const { return FFElem{std::vector<Residue>(n_, 0)}; }
  FFElem one() const { return scalar(1); }
  FFElem scalar(std::int64_t c) const;
  /// Validates range and length.
  FFElem element(std::vector<Residue> coeffs) const;
  bool contains(const FFElem& x) const noexcept;

  FFElem from_index(std::uint64_t index) const;
  std::uint64_t index_of(const FFElem& x) const;

  FFElem add(const FFElem& x, const FFElem& y) const;
  FFElem sub(const FFElem& x, const FFElem& y) const;
  FFElem neg(const FFElem& x) const;
  FFElem scale(std::int64_t c, const FFElem& x) const;
  FFElem mul(const FFElem& x, const FFElem& y) const;
  FFElem pow(const FFElem& x, std::uint64_t e) const;
  /// x -> x^p.
  FFElem frobenius(const FFElem& x) const { return pow(x, p_); }

  /// Tr(x^i) for the polynomial basis element x^i.
  Residue basis_trace(unsigned i) const { return basis_trace_.at(i); }

  bool operator==(const FieldCtx&) const = default;

 private:
  FieldCtx() = default;

  std::uint32_t p_ = 0;
  unsigned n_ = 0;
  std::uint64_t q_ = 0;
  std::vector<Residue> modulus_;
  FFElem generator_;
  std::vector<Residue> basis_trace_;
};

/**
 * Builds F_{p^n}. Without a modulus the lexicographically first monic
 * irreducible polynomial whose root is primitive is chosen (coefficient
 * sequences compared constant term first), and the generator is that root.
 * For n = 1 the default modulus is x - g with g the smallest primitive root.
 *
 * Throws std::invalid_argument on a non-prime or even p, n = 0, a modulus of
 * the wrong degree, a non-monic modulus, a reducible modulus, or q above
 * kMaxFieldOrder.
 */
FieldCtx make_field(std::uint32_t p, unsigned n,
                    std::optional<std::vector<Residue>> modulus = std::nullopt);

/// x^{-1}, with 0^{-1} = 0.
FFElem inv(const FieldCtx& ctx, const FFElem& x);

/// Absolute trace F_q -> F_p.
Residue trace(const FieldCtx& ctx, const FFElem& x);

enum class SubsetKind { W, X, Y, Z, Custom };

std::string to_string(SubsetKind kind);

/// Exponent set S in Z/(q-1), closed under s -> p*s mod (q-1).
struct SubsetSpec {
  std::vector<std::uint64_t> exponents;  // sorted, unique, each < q - 1
  SubsetKind kind = SubsetKind::Custom;

  bool operator==(const SubsetSpec&) const = default;
};

bool is_frobenius_closed(const FieldCtx& ctx, std::span<const std::uint64_t> exponents);

/// W = {p^i}; X = {3^i + 3^j}; Y = {3^i + 3^j + 3^k, distinct};
/// Z = {2*3^i + 3^j, i != j}. X, Y, Z need p = 3, and Y needs n >= 3.
SubsetSpec build_subset(const FieldCtx& ctx, SubsetKind kind);

/// Custom exponent set; sorts, deduplicates, and rejects sets that are not
/// Frobenius-closed or contain exponents outside [0, q - 2].
SubsetSpec make_subset(const FieldCtx& ctx, std::vector<std::uint64_t> exponents);

/// sum_{s in S} a^s, an element of F_p. Exponent 0 contributes 1, even at a = 0.
Residue tau(const FieldCtx& ctx, const SubsetSpec& subset, const FFElem& a);

/// Legendre symbol (t/p) in {-1, 0, 1}.
int legendre(std::int64_t t, std::uint32_t p);

bool is_prime(std::uint64_t n);

/// Distinct prime divisors, ascending.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// Base-p digits of j, least significant first, padded to `width` digits.
std::vector<std::uint32_t> base_p_digits(std::uint64_t j, std::uint32_t p, unsigned width = 0);

}  // namespace kloos

#endif  // KLOOS_FF_HPP
