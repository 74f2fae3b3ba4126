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

#include "kloos/cyclo.hpp"

#include <sstream>

namespace kloos {

namespace {

std::uint32_t exponent_mod(std::int64_t k, std::uint32_t p) {
  const std::int64_t m = p;
  return static_cast<std::uint32_t>(((k % m) + m) % m);
}

// Full span of p coefficients for 1..zeta^{p-1} -> power basis.
std::vector<mpz_class> reduce_full(std::vector<mpz_class> full) {
  const mpz_class top = full.back();
  full.pop_back();
  if (top != 0) {
    for (auto& c : full) c -= top;
  }
  return full;
}

}  // namespace

CycInt::CycInt(std::uint32_t p) : p_(p), coords_(p - 1) {
  if (p < 3) throw std::invalid_argument("cyclotomic integers need an odd prime p");
}

CycInt::CycInt(std::uint32_t p, std::vector<mpz_class> coords) : p_(p), coords_(std::move(coords)) {
  if (p < 3) throw std::invalid_argument("cyclotomic integers need an odd prime p");
  if (coords_.size() != p - 1) throw std::invalid_argument("CycInt needs exactly p-1 coordinates");
}

CycInt CycInt::integer(std::uint32_t p, const mpz_class& c) {
  CycInt u(p);
  u.coords_[0] = c;
  return u;
}

CycInt CycInt::zeta_power(std::uint32_t p, std::int64_t k) {
  std::vector<mpz_class> full(p);
  full[exponent_mod(k, p)] = 1;
  return CycInt(p, reduce_full(std::move(full)));
}

CycInt CycInt::from_exponent_counts(std::uint32_t p, std::span<const mpz_class> counts) {
  if (counts.size() != p) throw std::invalid_argument("need one count per exponent 0..p-1");
  return CycInt(p, reduce_full(std::vector<mpz_class>(counts.begin(), counts.end())));
}

void CycInt::require_same_ring(const CycInt& other) const {
  if (p_ != other.p_) throw std::invalid_argument("CycInt operands live in different rings");
}

CycInt& CycInt::operator+=(const CycInt& rhs) {
  require_same_ring(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
  return *this;
}

CycInt& CycInt::operator-=(const CycInt& rhs) {
  require_same_ring(rhs);
  for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
  return *this;
}

CycInt& CycInt::operator*=(const CycInt& rhs) {
  require_same_ring(rhs);
  std::vector<mpz_class> full(p_);
  mpz_class t;
  for (std::uint32_t i = 0; i + 1 < p_; ++i) {
    if (coords_[i] == 0) continue;
    for (std::uint32_t j = 0; j + 1 < p_; ++j) {
      if (rhs.coords_[j] == 0) continue;
      mpz_mul(t.get_mpz_t(), coords_[i].get_mpz_t(), rhs.coords_[j].get_mpz_t());
      auto& slot = full[(i + j) % p_];
      mpz_add(slot.get_mpz_t(), slot.get_mpz_t(), t.get_mpz_t());
    }
  }
  coords_ = reduce_full(std::move(full));
  return *this;
}

CycInt CycInt::operator-() const {
  CycInt r(*this);
  for (auto& c : r.coords_) c = -c;
  return r;
}

std::ostream& operator<<(std::ostream& os, const CycInt& u) {
  os << '(';
  for (std::size_t i = 0; i < u.coords().size(); ++i) {
    if (i) os << ',';
    os << u.coords()[i];
  }
  return os << ')';
}

CycInt galois_apply(std::int64_t i, const CycInt& u) {
  const std::uint32_t p = u.p();
  const std::uint32_t r = exponent_mod(i, p);
  if (r == 0) throw std::invalid_argument("Galois exponent must be coprime to p");
  std::vector<mpz_class> full(p);
  for (std::uint32_t k = 0; k + 1 < p; ++k) {
    full[static_cast<std::uint64_t>(k) * r % p] += u.coords()[k];
  }
  return CycInt(p, reduce_full(std::move(full)));
}

std::optional<mpz_class> as_rational(const CycInt& u) {
  for (std::size_t i = 1; i < u.coords().size(); ++i) {
    if (u.coords()[i] != 0) return std::nullopt;
  }
  return u.coords()[0];
}

IntPolynomial::IntPolynomial(std::vector<mpz_class> coeffs) : coeffs_(std::move(coeffs)) {
  normalize();
}

IntPolynomial IntPolynomial::monomial(unsigned degree, const mpz_class& c) {
  std::vector<mpz_class> coeffs(degree + 1);
  coeffs[degree] = c;
  return IntPolynomial(std::move(coeffs));
}

void IntPolynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial operator*(const IntPolynomial& a, const IntPolynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> out(a.coeffs_.size() + b.coeffs_.size() - 1);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return IntPolynomial(std::move(out));
}

IntPolynomial IntPolynomial::pow(unsigned e) const {
  IntPolynomial result({mpz_class(1)});
  for (unsigned k = 0; k < e; ++k) result = result * *this;
  return result;
}

IntPolynomial IntPolynomial::reduce_mod(const mpz_class& m) const {
  std::vector<mpz_class> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    mpz_fdiv_r(out[i].get_mpz_t(), coeffs_[i].get_mpz_t(), m.get_mpz_t());
  }
  return IntPolynomial(std::move(out));
}

std::string IntPolynomial::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = coeffs_.size(); k-- > 0;) {
    const mpz_class& c = coeffs_[k];
    if (c == 0) continue;
    const mpz_class mag = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (mag != 1 || k == 0) os << mag;
    if (k >= 1) os << 'x';
    if (k >= 2) os << '^' << k;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const IntPolynomial& f) { return os << f.to_string(); }

NonRationalCoefficient::NonRationalCoefficient(std::size_t index)
    : std::runtime_error("coefficient of x^" + std::to_string(index) +
                         " is not rational; roots are not a union of Galois orbits"),
      index_(index) {}

IntPolynomial product_linear(std::span<const CycInt> roots) {
  if (roots.empty()) return IntPolynomial({mpz_class(1)});
  const std::uint32_t p = roots.front().p();
  // coeffs[k] is the coefficient of x^k of the partial product.
  std::vector<CycInt> coeffs{CycInt::integer(p, 1)};
  for (const CycInt& r : roots) {
    if (r.p() != p) throw std::invalid_argument("roots live in different cyclotomic rings");
    std::vector<CycInt> next(coeffs.size() + 1, CycInt(p));
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      next[k + 1] += coeffs[k];
      next[k] -= coeffs[k] * r;
    }
    coeffs = std::move(next);
  }
  std::vector<mpz_class> out;
  out.reserve(coeffs.size());
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    auto c = as_rational(coeffs[k]);
    if (!c) throw NonRationalCoefficient(k);
    out.push_back(*c);
  }
  return IntPolynomial(std::move(out));
}

}  // namespace kloos
