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

#include "kloos/kloosterman.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace kloos {

namespace {

std::int64_t mod_small(const mpz_class& v, std::int64_t m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(m));
  return r.get_si();
}

mpz_class rational_or_throw(const CycInt& u, const char* what) {
  auto c = as_rational(u);
  if (!c) throw std::logic_error(std::string(what) + " is not a rational integer");
  return *c;
}

void stamp(CongruenceReport& r, const FieldCtx& ctx, const FFElem& a) {
  r.index = ctx.index_of(a);
  r.witness = a.coeffs;
}

void require_ternary(const FieldCtx& ctx, unsigned min_n, const char* check) {
  if (ctx.p() != 3 || ctx.n() < min_n) {
    std::ostringstream os;
    os << check << " needs p = 3 and n >= " << min_n;
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

KloostermanEvaluator::KloostermanEvaluator(FieldCtx ctx) : ctx_(std::move(ctx)) {
  const std::uint64_t q = ctx_.q();
  inverse_trace_.assign(q, 0);
  // Walk g^k and g^{-k} together; 0 keeps Tr(0^{-1}) = Tr(0) = 0.
  const FFElem g = ctx_.generator();
  const FFElem g_inv = inv(ctx_, g);
  FFElem y = ctx_.one();
  FFElem z = ctx_.one();
  for (std::uint64_t k = 0; k + 1 < q; ++k) {
    inverse_trace_[ctx_.index_of(y)] = trace(ctx_, z);
    y = ctx_.mul(y, g);
    z = ctx_.mul(z, g_inv);
  }
}

std::vector<std::uint64_t> KloostermanEvaluator::exponent_counts(const FFElem& a) const {
  if (!ctx_.contains(a)) throw std::invalid_argument("element does not belong to the field");
  const unsigned n = ctx_.n();
  const std::uint32_t p = ctx_.p();
  std::vector<std::uint32_t> slope(n);
  for (unsigned i = 0; i < n; ++i) {
    FFElem basis = ctx_.zero();
    basis.coeffs[i] = 1;
    slope[i] = trace(ctx_, ctx_.mul(a, basis));
  }

  std::vector<std::uint64_t> counts(p, 0);
  std::vector<std::uint32_t> digits(n, 0);
  std::uint32_t linear = 0;  // Tr(a x) for the current x
  const std::uint64_t q = ctx_.q();
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::uint32_t t = inverse_trace_[idx] + linear;
    if (t >= p) t -= p;
    ++counts[t];
    // A digit wrapping from p-1 to 0 changes Tr(a x) by -(p-1) slope = +slope,
    // so every step of the odometer simply adds the slope of the digit it touches.
    for (unsigned i = 0; i < n; ++i) {
      linear += slope[i];
      if (linear >= p) linear -= p;
      if (++digits[i] < p) break;
      digits[i] = 0;
    }
  }
  return counts;
}

KloostermanValue KloostermanEvaluator::operator()(const FFElem& a) const {
  const auto raw = exponent_counts(a);
  std::vector<mpz_class> counts;
  counts.reserve(raw.size());
  for (std::uint64_t c : raw) {
    mpz_class v;
    mpz_set_ui(v.get_mpz_t(), static_cast<unsigned long>(c));
    counts.push_back(v);
  }
  CycInt value = CycInt::from_exponent_counts(ctx_.p(), counts);
  return KloostermanValue{std::move(counts), std::move(value)};
}

KloostermanValue kloosterman(const KloostermanEvaluator& eval, const FFElem& a) { return eval(a); }

KloostermanValue kloosterman(const FieldCtx& ctx, const FFElem& a) {
  return KloostermanEvaluator(ctx)(a);
}

std::vector<KloostermanValue> conjugate_family(const KloostermanEvaluator& eval, const FFElem& a) {
  const FieldCtx& ctx = eval.field();
  const std::int64_t half = (ctx.p() - 1) / 2;
  std::vector<KloostermanValue> out;
  out.reserve(half);
  for (std::int64_t i = 1; i <= half; ++i) out.push_back(eval(ctx.scale(i * i, a)));
  return out;
}

std::vector<KloostermanValue> conjugate_family(const FieldCtx& ctx, const FFElem& a) {
  return conjugate_family(KloostermanEvaluator(ctx), a);
}

namespace {

std::vector<CycInt> values_of(const std::vector<KloostermanValue>& family) {
  std::vector<CycInt> values;
  values.reserve(family.size());
  for (const auto& k : family) values.push_back(k.value);
  return values;
}

}  // namespace

IntPolynomial char_poly(const KloostermanEvaluator& eval, const FFElem& a) {
  const auto values = values_of(conjugate_family(eval, a));
  return product_linear(values);
}

IntPolynomial char_poly(const FieldCtx& ctx, const FFElem& a) {
  return char_poly(KloostermanEvaluator(ctx), a);
}

MinPolyResult min_poly(const KloostermanEvaluator& eval, const FFElem& a) {
  const auto values = values_of(conjugate_family(eval, a));
  std::vector<CycInt> distinct;
  for (const CycInt& v : values) {
    if (std::find(distinct.begin(), distinct.end(), v) == distinct.end()) distinct.push_back(v);
  }
  if (values.size() % distinct.size() != 0) {
    throw std::logic_error("conjugate multiset is not a repeated Galois orbit");
  }
  MinPolyResult result;
  result.multiplicity = static_cast<unsigned>(values.size() / distinct.size());
  result.min_poly = product_linear(distinct);
  result.char_poly = product_linear(values);
  if (result.min_poly.pow(result.multiplicity) != result.char_poly) {
    throw std::logic_error("characteristic polynomial is not a power of the minimal polynomial");
  }
  return result;
}

MinPolyResult min_poly(const FieldCtx& ctx, const FFElem& a) {
  return min_poly(KloostermanEvaluator(ctx), a);
}

CongruenceReport check_thm1(const KloostermanEvaluator& eval, const FFElem& a) {
  const FieldCtx& ctx = eval.field();
  const std::int64_t p = ctx.p();
  CycInt product = CycInt::integer(ctx.p(), 1);
  for (const auto& k : conjugate_family(eval, a)) product *= k.value;
  const mpz_class value = rational_or_throw(product, "product of conjugates");
  const int symbol = legendre(trace(ctx, a), ctx.p());
  auto r = make_congruence("thm1", mod_small(value, p * p), p * symbol, p * p);
  stamp(r, ctx, a);
  return r;
}

CongruenceReport check_thm1(const FieldCtx& ctx, const FFElem& a) {
  return check_thm1(KloostermanEvaluator(ctx), a);
}

CongruenceReport check_mod9(const KloostermanEvaluator& eval, const FFElem& a) {
  const FieldCtx& ctx = eval.field();
  require_ternary(ctx, 2, "mod9");
  const mpz_class k = rational_or_throw(eval(a).value, "ternary Kloosterman sum");
  auto r = make_congruence("mod9", mod_small(k, 9), 3 * std::int64_t{trace(ctx, a)}, 9);
  stamp(r, ctx, a);
  return r;
}

CongruenceReport check_mod9(const FieldCtx& ctx, const FFElem& a) {
  return check_mod9(KloostermanEvaluator(ctx), a);
}

std::int64_t mod27_formula(std::int64_t tr, std::int64_t tau_x, std::int64_t tau_y) {
  return residue_mod(21 * tr * tr * tr + 18 * tr + 18 * tau_x + 9 * tr * tau_x + 9 * tau_y, 27);
}

std::int64_t mod27_table(std::int64_t tr, std::int64_t tau_x, std::int64_t tau_y) {
  switch (tr) {
    case 0: {
      static constexpr std::int64_t row[3] = {0, 9, 18};
      return row[residue_mod(tau_y + 2 * tau_x, 3)];
    }
    case 1: {
      static constexpr std::int64_t row[3] = {12, 21, 3};
      return row[residue_mod(tau_y, 3)];
    }
    case 2: {
      static constexpr std::int64_t row[3] = {15, 24, 6};
      return row[residue_mod(tau_y + tau_x, 3)];
    }
  }
  throw std::invalid_argument("trace must be 0, 1 or 2");
}

CongruenceReport check_mod27(const KloostermanEvaluator& eval, const FFElem& a) {
  const FieldCtx& ctx = eval.field();
  require_ternary(ctx, 3, "mod27");
  const mpz_class k = rational_or_throw(eval(a).value, "ternary Kloosterman sum");
  const std::int64_t tr = trace(ctx, a);
  const std::int64_t tx = tau(ctx, build_subset(ctx, SubsetKind::X), a);
  const std::int64_t ty = tau(ctx, build_subset(ctx, SubsetKind::Y), a);
  const std::int64_t formula = mod27_formula(tr, tx, ty);
  const std::int64_t table = mod27_table(tr, tx, ty);

  auto r = make_congruence("mod27", mod_small(k, 27), formula, 27);
  r.pass = r.pass && table == formula;
  std::ostringstream note;
  note << "Tr=" << tr << " tauX=" << tx << " tauY=" << ty << " table=" << table;
  r.note = note.str();
  stamp(r, ctx, a);
  return r;
}

CongruenceReport check_mod27(const FieldCtx& ctx, const FFElem& a) {
  return check_mod27(KloostermanEvaluator(ctx), a);
}

CongruenceReport check_weil(const FieldCtx& ctx, const KloostermanValue& k) {
  // The classical bound covers the sum over x != 0, i.e. K - 1.
  const std::int64_t bound = 4 * static_cast<std::int64_t>(ctx.q());
  if (ctx.p() == 3) {
    const mpz_class v = rational_or_throw(k.value, "ternary Kloosterman sum");
    const mpz_class sq = v * v;
    const mpz_class shifted = (v - 1) * (v - 1);
    auto r = make_comparison("weil", sq.get_si(), bound, Relation::AtMost);
    r.pass = r.pass && shifted <= bound;
    r.note = "(K-1)^2=" + shifted.get_str();
    return r;
  }
  // K is real; its conjugates are sum_t N_t cos(2 pi i t / p).
  double worst = 0.0;
  for (std::uint32_t i = 1; i <= (ctx.p() - 1) / 2; ++i) {
    double s = -1.0;
    for (std::uint32_t t = 0; t < ctx.p(); ++t) {
      s += k.counts[t].get_d() * std::cos(2.0 * std::numbers::pi * i * t / ctx.p());
    }
    worst = std::max(worst, s * s);
  }
  auto r = make_comparison("weil", static_cast<std::int64_t>(std::ceil(worst - 1e-6)), bound,
                           Relation::AtMost);
  std::ostringstream note;
  note << "max|K-1|^2=" << worst;
  r.note = note.str();
  return r;
}

CongruenceReport check_moisio(const FieldCtx& ctx, const MinPolyResult& m) {
  const mpz_class p = ctx.p();
  const IntPolynomial reduced = m.min_poly.reduce_mod(p);
  std::int64_t lowest = 0;
  while (reduced.coeff(lowest) == 0) ++lowest;
  return make_comparison("moisio", m.min_poly.degree(), lowest, Relation::Equal);
}

CongruenceReport check_wan(const FieldCtx& ctx, const FFElem& a, const MinPolyResult& m) {
  const std::int64_t half = (ctx.p() - 1) / 2;
  CongruenceReport r;
  if (trace(ctx, a) == 0) {
    r = make_comparison("wan", m.min_poly.degree(), m.min_poly.degree(), Relation::Equal);
    r.note = "vacuous: Tr(a)=0";
  } else {
    r = make_comparison("wan", m.min_poly.degree(), half, Relation::Equal);
    r.pass = r.pass && m.multiplicity == 1;
    r.note = "multiplicity=" + std::to_string(m.multiplicity);
  }
  stamp(r, ctx, a);
  return r;
}

Spectrum spectrum(const KloostermanEvaluator& eval) {
  const FieldCtx& ctx = eval.field();
  Spectrum s;
  s.p = ctx.p();
  s.q = ctx.q();
  s.total = CycInt(ctx.p());
  for (std::uint64_t idx = 0; idx < ctx.q(); ++idx) {
    const KloostermanValue k = eval(ctx.from_index(idx));
    ++s.counts[k.value.coords()];
    s.total += k.value;
  }
  return s;
}

Spectrum spectrum(const FieldCtx& ctx) { return spectrum(KloostermanEvaluator(ctx)); }

}  // namespace kloos
