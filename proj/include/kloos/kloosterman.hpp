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

#ifndef KLOOS_KLOOSTERMAN_HPP
#define KLOOS_KLOOSTERMAN_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <vector>

#include "kloos/cyclo.hpp"
#include "kloos/ff.hpp"
#include "kloos/report.hpp"

namespace kloos {

/// K_q(a) = sum_x zeta^{Tr(x^{-1} + a x)}, stored both as the exponent
/// histogram N_t and as the reduced cyclotomic integer sum_t N_t zeta^t.
struct KloostermanValue {
  std::vector<mpz_class> counts;
  CycInt value;
};

/**
 * Precomputed Tr(x^{-1}) for every x in F_q, indexed by element index.
 *
 * With that table each sum is one linear pass: Tr(a x) is an F_p-linear
 * function of the coordinates of x, so it is accumulated along the
 * enumeration order without multiplying field elements.
 */
class KloostermanEvaluator {
 public:
  explicit KloostermanEvaluator(FieldCtx ctx);

  const FieldCtx& field() const noexcept { return ctx_; }

  KloostermanValue operator()(const FFElem& a) const;
  std::vector<std::uint64_t> exponent_counts(const FFElem& a) const;

 private:
  FieldCtx ctx_;
  std::vector<Residue> inverse_trace_;
};

KloostermanValue kloosterman(const FieldCtx& ctx, const FFElem& a);
KloostermanValue kloosterman(const KloostermanEvaluator& eval, const FFElem& a);

/// K_q(i^2 a) for i = 1..(p-1)/2, each summed directly.
std::vector<KloostermanValue> conjugate_family(const KloostermanEvaluator& eval, const FFElem& a);
std::vector<KloostermanValue> conjugate_family(const FieldCtx& ctx, const FFElem& a);

/// prod_i (x - K_q(i^2 a)), degree (p-1)/2.
IntPolynomial char_poly(const KloostermanEvaluator& eval, const FFElem& a);
IntPolynomial char_poly(const FieldCtx& ctx, const FFElem& a);

struct MinPolyResult {
  IntPolynomial min_poly;
  unsigned multiplicity = 1;
  IntPolynomial char_poly;
};

/// Minimal polynomial from the distinct conjugates; checks c_a = m_a^e_a.
MinPolyResult min_poly(const KloostermanEvaluator& eval, const FFElem& a);
MinPolyResult min_poly(const FieldCtx& ctx, const FFElem& a);

/// prod_i K_q(i^2 a) == p * (Tr(a)/p) mod p^2.
CongruenceReport check_thm1(const KloostermanEvaluator& eval, const FFElem& a);
CongruenceReport check_thm1(const FieldCtx& ctx, const FFElem& a);

/// p = 3, n > 1: K_q(a) == 3 Tr(a) mod 9.
CongruenceReport check_mod9(const KloostermanEvaluator& eval, const FFElem& a);
CongruenceReport check_mod9(const FieldCtx& ctx, const FFElem& a);

/// Residue of K mod 27 predicted from Tr, tau_X, tau_Y (all taken as
/// integers 0..2) by the closed-form congruence.
std::int64_t mod27_formula(std::int64_t tr, std::int64_t tau_x, std::int64_t tau_y);
/// Same residue looked up in the nine-row case table.
std::int64_t mod27_table(std::int64_t tr, std::int64_t tau_x, std::int64_t tau_y);

/// p = 3, n >= 3: K_q(a) mod 27 against the closed form and the case table.
CongruenceReport check_mod27(const KloostermanEvaluator& eval, const FFElem& a);
CongruenceReport check_mod27(const FieldCtx& ctx, const FFElem& a);

/// Weil bound |sigma(K) - 1| <= 2 sqrt(q) for every real embedding sigma (the
/// x = 0 term contributes the 1). For p = 3 the check is exact and also
/// demands |K| <= 2 sqrt(q), which holds there because 3 divides K.
CongruenceReport check_weil(const FieldCtx& ctx, const KloostermanValue& k);

/// Moisio: m_a(x) == x^t mod p. lhs = t, rhs = lowest index whose
/// coefficient is nonzero mod p.
CongruenceReport check_moisio(const FieldCtx& ctx, const MinPolyResult& m);

/// Wan: Tr(a) != 0 implies deg m_a = (p-1)/2 and e_a = 1. Vacuous for Tr(a) = 0.
CongruenceReport check_wan(const FieldCtx& ctx, const FFElem& a, const MinPolyResult& m);

/// Frequency of each Kloosterman value over all a. Keys are the power-basis
/// coordinates; for p = 3 every key is (K, 0).
struct Spectrum {
  std::uint32_t p = 0;
  std::uint64_t q = 0;
  std::map<std::vector<mpz_class>, std::uint64_t> counts;
  CycInt total{3};  // sum over a of K_q(a)
};

Spectrum spectrum(const KloostermanEvaluator& eval);
Spectrum spectrum(const FieldCtx& ctx);

}  // namespace kloos

#endif  // KLOOS_KLOOSTERMAN_HPP
