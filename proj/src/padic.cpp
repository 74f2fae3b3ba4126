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

#include "kloos/padic.hpp"

#include <sstream>
#include <stdexcept>

namespace kloos {

namespace {

std::uint64_t reduce_signed(std::int64_t v, std::uint64_t m) {
  const auto sm = static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(((v % sm) + sm) % sm);
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

void require_ternary_mod27(const UnramCtx& uctx, const char* what) {
  if (uctx.p() != 3) throw std::invalid_argument(std::string(what) + " needs p = 3");
  if (uctx.precision() < 3) {
    throw std::invalid_argument(std::string(what) + " needs precision >= 3 digits");
  }
}

}  // namespace

std::uint64_t padic_modulus(std::uint32_t p, unsigned precision) {
  if (precision == 0) throw std::invalid_argument("p-adic precision must be at least 1 digit");
  std::uint64_t m = 1;
  for (unsigned i = 0; i < precision; ++i) {
    m *= p;
    if (m >= kMaxPadicModulus) throw std::invalid_argument("p^K must stay below 2^31");
  }
  return m;
}

PadicInt::PadicInt(std::uint32_t p, unsigned precision, std::int64_t value)
    : p_(p), precision_(precision), modulus_(padic_modulus(p, precision)),
      residue_(reduce_signed(value, modulus_)) {}

void PadicInt::require_same_ring(const PadicInt& other) const {
  if (p_ != other.p_ || precision_ != other.precision_) {
    throw std::invalid_argument("p-adic operands differ in prime or precision");
  }
}

PadicInt& PadicInt::operator+=(const PadicInt& rhs) {
  require_same_ring(rhs);
  residue_ = (residue_ + rhs.residue_) % modulus_;
  return *this;
}

PadicInt& PadicInt::operator-=(const PadicInt& rhs) {
  require_same_ring(rhs);
  residue_ = (residue_ + modulus_ - rhs.residue_) % modulus_;
  return *this;
}

PadicInt& PadicInt::operator*=(const PadicInt& rhs) {
  require_same_ring(rhs);
  residue_ = mulmod(residue_, rhs.residue_, modulus_);
  return *this;
}

PadicInt PadicInt::operator-() const {
  PadicInt r(*this);
  r.residue_ = (modulus_ - residue_) % modulus_;
  return r;
}

PadicInt PadicInt::pow(std::uint64_t e) const {
  PadicInt result(p_, precision_, 1);
  PadicInt base(*this);
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

PadicInt PadicInt::inverse() const {
  if (!is_unit()) throw std::domain_error("p-adic element is not a unit");
  // Units of Z/p^K form a group of order p^{K-1}(p-1).
  return pow(modulus_ / p_ * (p_ - 1) - 1);
}

unsigned PadicInt::valuation() const noexcept {
  if (residue_ == 0) return precision_;
  unsigned v = 0;
  for (std::uint64_t r = residue_; r % p_ == 0; r /= p_) ++v;
  return v;
}

PadicInt PadicInt::truncate(unsigned precision) const {
  if (precision > precision_) throw std::invalid_argument("cannot raise p-adic precision");
  PadicInt r(p_, precision, 0);
  r.residue_ = residue_ % r.modulus_;
  return r;
}

unsigned weight_p(std::uint64_t j, std::uint32_t p) {
  unsigned w = 0;
  for (; j > 0; j /= p) w += static_cast<unsigned>(j % p);
  return w;
}

PadicInt pad_from_rational(std::int64_t num, std::int64_t den, std::uint32_t p,
                           unsigned precision) {
  if (den % static_cast<std::int64_t>(p) == 0) {
    throw std::invalid_argument("denominator must be coprime to p");
  }
  return PadicInt(p, precision, num) * PadicInt(p, precision, den).inverse();
}

std::uint64_t gamma_p_natural(std::uint64_t k, std::uint32_t p, std::uint64_t modulus) {
  std::uint64_t product = 1 % modulus;
  for (std::uint64_t t = 1; t < k; ++t) {
    if (t % p != 0) product = mulmod(product, t % modulus, modulus);
  }
  return (k % 2 == 0) ? product : (modulus - product) % modulus;
}

PadicInt gamma_p(const PadicInt& x) {
  return PadicInt(x.p(), x.precision(),
                  static_cast<std::int64_t>(gamma_p_natural(x.residue(), x.p(), x.modulus())));
}

GammaArg fractional_part_arg(std::uint64_t j, unsigned i, std::uint32_t p, unsigned n,
                             unsigned precision) {
  std::uint64_t q = 1;
  for (unsigned k = 0; k < n; ++k) q *= p;
  const std::uint64_t order = q - 1;
  std::uint64_t shift = 1 % order;
  for (unsigned k = 0; k < i; ++k) shift = mulmod(shift, p, order);
  const std::uint64_t numerator = mulmod(shift, j % order, order);
  GammaArg arg{static_cast<std::int64_t>(numerator), static_cast<std::int64_t>(order),
               pad_from_rational(static_cast<std::int64_t>(numerator),
                                 static_cast<std::int64_t>(order), p, precision)};
  return arg;
}

UnramCtx::UnramCtx(FieldCtx field, unsigned precision)
    : field_(std::move(field)), precision_(precision),
      modulus_(padic_modulus(field_.p(), precision)),
      lifted_(field_.modulus().begin(), field_.modulus().end()) {}

UnramElem UnramCtx::constant(std::int64_t c) const {
  UnramElem x = zero();
  x.coords[0] = reduce_signed(c, modulus_);
  return x;
}

UnramElem UnramCtx::constant(const PadicInt& c) const {
  if (c.p() != p() || c.precision() < precision_) {
    throw std::invalid_argument("p-adic constant has the wrong prime or too little precision");
  }
  UnramElem x = zero();
  x.coords[0] = c.residue() % modulus_;
  return x;
}

UnramElem UnramCtx::naive_lift(const FFElem& a) const {
  if (!field_.contains(a)) throw std::invalid_argument("element does not belong to the field");
  return UnramElem{std::vector<std::uint64_t>(a.coeffs.begin(), a.coeffs.end())};
}

UnramElem UnramCtx::add(const UnramElem& x, const UnramElem& y) const {
  UnramElem r = zero();
  for (unsigned i = 0; i < n(); ++i) r.coords[i] = (x.coords[i] + y.coords[i]) % modulus_;
  return r;
}

UnramElem UnramCtx::sub(const UnramElem& x, const UnramElem& y) const {
  UnramElem r = zero();
  for (unsigned i = 0; i < n(); ++i) {
    r.coords[i] = (x.coords[i] + modulus_ - y.coords[i]) % modulus_;
  }
  return r;
}

UnramElem UnramCtx::scale(std::int64_t c, const UnramElem& x) const {
  const std::uint64_t s = reduce_signed(c, modulus_);
  UnramElem r = zero();
  for (unsigned i = 0; i < n(); ++i) r.coords[i] = mulmod(s, x.coords[i], modulus_);
  return r;
}

UnramElem UnramCtx::mul(const UnramElem& x, const UnramElem& y) const {
  const unsigned deg = n();
  if (deg == 1) return UnramElem{{mulmod(x.coords[0], y.coords[0], modulus_)}};
  std::vector<std::uint64_t> prod(2 * deg - 1, 0);
  for (unsigned i = 0; i < deg; ++i) {
    if (x.coords[i] == 0) continue;
    for (unsigned j = 0; j < deg; ++j) {
      prod[i + j] = (prod[i + j] + x.coords[i] * y.coords[j]) % modulus_;
    }
  }
  for (unsigned k = 2 * deg - 2; k >= deg; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned i = 0; i < deg; ++i) {
      prod[k - deg + i] = (prod[k - deg + i] + (modulus_ - c) * lifted_[i]) % modulus_;
    }
  }
  prod.resize(deg);
  return UnramElem{std::move(prod)};
}

UnramElem UnramCtx::pow(const UnramElem& x, std::uint64_t e) const {
  UnramElem result = one();
  UnramElem base = x;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

FFElem UnramCtx::reduce_mod_p(const UnramElem& x) const {
  FFElem r = field_.zero();
  for (unsigned i = 0; i < n(); ++i) r.coeffs[i] = static_cast<Residue>(x.coords[i] % p());
  return r;
}

bool UnramCtx::is_constant(const UnramElem& x) const {
  for (unsigned i = 1; i < n(); ++i) {
    if (x.coords[i] != 0) return false;
  }
  return true;
}

PadicInt UnramCtx::as_padic(const UnramElem& x) const {
  if (!is_constant(x)) throw std::domain_error("unramified element is not in Z_p");
  return PadicInt(p(), precision_, static_cast<std::int64_t>(x.coords[0]));
}

UnramElem teich(const UnramCtx& uctx, const FFElem& a) {
  UnramElem y = uctx.naive_lift(a);
  if (y == uctx.zero()) return y;
  const std::uint64_t q = uctx.field().q();
  for (unsigned k = 0; k < uctx.precision(); ++k) y = uctx.pow(y, q);
  return y;
}

UnramElem lifted_tau(const UnramCtx& uctx, const SubsetSpec& subset, const FFElem& a) {
  const FieldCtx& field = uctx.field();
  if (!is_frobenius_closed(field, subset.exponents)) {
    throw std::invalid_argument("subset is not closed under s -> p*s mod (q-1)");
  }
  const unsigned n = uctx.n();
  std::vector<UnramElem> powers(n);
  powers[0] = teich(uctx, a);
  for (unsigned k = 1; k < n; ++k) powers[k] = uctx.pow(powers[k - 1], uctx.p());

  UnramElem sum = uctx.zero();
  for (std::uint64_t s : subset.exponents) {
    UnramElem term = uctx.one();
    const auto digits = base_p_digits(s, uctx.p(), n);
    for (unsigned k = 0; k < n; ++k) {
      if (digits[k]) term = uctx.mul(term, uctx.pow(powers[k], digits[k]));
    }
    sum = uctx.add(sum, term);
  }
  return sum;
}

EisNormal eis_normal(const UnramCtx& uctx, unsigned pi_power, UnramElem unit) {
  if (uctx.reduce_mod_p(unit) == uctx.field().zero()) {
    throw std::invalid_argument("unit part of a pi-monomial must be invertible");
  }
  const unsigned e = uctx.p() - 1;
  return EisNormal{pi_power % e, pi_power / e, std::move(unit)};
}

EisNormal multiply(const UnramCtx& uctx, const EisNormal& x, const EisNormal& y) {
  const unsigned e = uctx.p() - 1;
  const unsigned pi_total = x.pi_exponent + y.pi_exponent;
  return EisNormal{pi_total % e, x.p_exponent + y.p_exponent + pi_total / e,
                   uctx.mul(x.unit, y.unit)};
}

unsigned pi_valuation(const UnramCtx& uctx, const EisNormal& x) {
  return x.pi_exponent + (uctx.p() - 1) * x.p_exponent;
}

UnramElem to_unramified(const UnramCtx& uctx, const EisNormal& x) {
  if (x.pi_exponent != 0) throw std::domain_error("odd power of pi is not in the unramified ring");
  const PadicInt minus_p(uctx.p(), uctx.precision(), -static_cast<std::int64_t>(uctx.p()));
  return uctx.mul(uctx.constant(minus_p.pow(x.p_exponent)), x.unit);
}

EisNormal gauss_gk(const UnramCtx& uctx, std::uint64_t j) {
  const std::uint64_t q = uctx.field().q();
  if (j < 1 || j + 2 > q) throw std::invalid_argument("Gauss sum index j must lie in [1, q-2]");
  PadicInt unit(uctx.p(), uctx.precision(), 1);
  for (unsigned i = 0; i < uctx.n(); ++i) {
    unit *= gamma_p(fractional_part_arg(j, i, uctx.p(), uctx.n(), uctx.precision()).residue);
  }
  return eis_normal(uctx, weight_p(j, uctx.p()), uctx.constant(unit));
}

PadicInt gauss_sq_mod27(const UnramCtx& uctx, std::uint64_t j) {
  require_ternary_mod27(uctx, "gauss_sq_mod27");
  const EisNormal g = gauss_gk(uctx, j);
  return uctx.as_padic(to_unramified(uctx, multiply(uctx, g, g))).truncate(3);
}

CongruenceReport stickelberger_check(const UnramCtx& uctx, std::uint64_t j) {
  const std::uint32_t p = uctx.p();
  const EisNormal g = gauss_gk(uctx, j);
  const std::int64_t unit = static_cast<std::int64_t>(uctx.as_padic(g.unit).residue() % p);
  std::int64_t factorials = 1;
  for (std::uint32_t digit : base_p_digits(j, p, uctx.n())) {
    for (std::uint32_t t = 2; t <= digit; ++t) factorials = factorials * t % p;
  }
  const std::int64_t expected = PadicInt(p, 1, factorials).inverse().residue();
  auto r = make_congruence("stickelberger", unit, expected, p);
  r.index = j;
  r.note = "wt=" + std::to_string(weight_p(j, p));
  return r;
}

std::int64_t gauss_sq_mod27_expected(std::uint64_t j) {
  switch (weight_p(j, 3)) {
    case 1: return 6;
    case 2: return 9;
    default: return 0;
  }
}

CongruenceReport wt1_check(const UnramCtx& uctx, std::uint64_t j) {
  if (uctx.n() < 3) throw std::invalid_argument("wt1 needs n >= 3");
  const auto value = static_cast<std::int64_t>(gauss_sq_mod27(uctx, j).residue());
  auto r = make_congruence("wt1", value, gauss_sq_mod27_expected(j), 27);
  r.index = j;
  r.note = "wt=" + std::to_string(weight_p(j, 3));
  return r;
}

namespace {

UnramCtx mod27_ring(const UnramCtx& uctx) {
  require_ternary_mod27(uctx, "Fourier expansion mod 27");
  if (uctx.n() < 3) throw std::invalid_argument("Fourier expansion mod 27 needs n >= 3");
  return UnramCtx(uctx.field(), 3);
}

}  // namespace

FourierMod27::FourierMod27(UnramCtx uctx)
    : uctx_(std::move(uctx)), mod27_(mod27_ring(uctx_)),
      w_(build_subset(uctx_.field(), SubsetKind::W)),
      x_(build_subset(uctx_.field(), SubsetKind::X)) {
  const std::uint64_t q = uctx_.field().q();
  gauss_sq_.assign(q - 1, 0);
  for (std::uint64_t j = 1; j + 2 <= q; ++j) gauss_sq_[j] = gauss_sq_mod27(mod27_, j).residue();
}

std::int64_t FourierMod27::sum(const FFElem& a) const {
  const UnramElem w = teich(mod27_, a);
  UnramElem acc = mod27_.zero();
  UnramElem power = w;
  const std::uint64_t q = uctx_.field().q();
  for (std::uint64_t j = 1; j + 2 <= q; ++j) {
    if (gauss_sq_[j] != 0) {
      acc = mod27_.add(acc, mod27_.scale(static_cast<std::int64_t>(gauss_sq_[j]), power));
    }
    power = mod27_.mul(power, w);
  }
  const UnramElem total = mod27_.scale(-1, acc);
  if (!mod27_.is_constant(total)) {
    throw std::logic_error("Fourier expansion of K_q(a) mod 27 is not rational");
  }
  return static_cast<std::int64_t>(total.coords[0]);
}

std::int64_t FourierMod27::lifted_trace_form(const FFElem& a) const {
  const PadicInt tr = mod27_.as_padic(lifted_tau(mod27_, w_, a));
  const PadicInt tx = mod27_.as_padic(lifted_tau(mod27_, x_, a));
  const PadicInt form = PadicInt(3, 3, 21) * tr + PadicInt(3, 3, 18) * tx;
  return static_cast<std::int64_t>(form.residue());
}

CongruenceReport fourier_kloosterman_mod(const FourierMod27& fourier, const FFElem& a,
                                         const KloostermanValue& exact) {
  const FieldCtx& field = fourier.ring().field();
  const auto k = as_rational(exact.value);
  if (!k) throw std::logic_error("ternary Kloosterman sum is not rational");
  mpz_class k27;
  mpz_fdiv_r_ui(k27.get_mpz_t(), k->get_mpz_t(), 27);

  const std::int64_t lifted = fourier.sum(a);
  const std::int64_t form = fourier.lifted_trace_form(a);
  auto r = make_congruence("fourier", lifted, k27.get_si(), 27);
  r.pass = r.pass && form == lifted;
  std::ostringstream note;
  note << "lifted_trace_form=" << form;
  r.note = note.str();
  r.index = field.index_of(a);
  r.witness = a.coeffs;
  return r;
}

CongruenceReport fourier_kloosterman_mod(const UnramCtx& uctx, const FFElem& a) {
  const FourierMod27 fourier(uctx);
  return fourier_kloosterman_mod(fourier, a, kloosterman(uctx.field(), a));
}

}  // namespace kloos
