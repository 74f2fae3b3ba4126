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

#include "kloos/ff.hpp"

#include <algorithm>
#include <stdexcept>

namespace kloos {

namespace {

using Poly = std::vector<std::uint64_t>;  // coefficients mod p, constant first

void trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t p) {
  // p is prime and a != 0 mod p.
  std::uint64_t result = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

// Remainder of f modulo g (g nonzero).
Poly poly_mod(Poly f, const Poly& g, std::uint64_t p) {
  trim(f);
  const std::size_t dg = g.size() - 1;
  const std::uint64_t lead_inv = inverse_mod(g.back(), p);
  while (f.size() >= g.size()) {
    const std::uint64_t c = f.back() * lead_inv % p;
    const std::size_t shift = f.size() - g.size();
    for (std::size_t i = 0; i <= dg; ++i) {
      f[shift + i] = (f[shift + i] + (p - c) * g[i]) % p;
    }
    trim(f);
  }
  return f;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& g, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + a[i] * b[j]) % p;
    }
  }
  return poly_mod(std::move(prod), g, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& g, std::uint64_t p) {
  Poly result = poly_mod(Poly{1}, g, p);
  base = poly_mod(std::move(base), g, p);
  while (e) {
    if (e & 1) result = poly_mulmod(result, base, g, p);
    e >>= 1;
    if (e) base = poly_mulmod(base, base, g, p);
  }
  return result;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

// Ben-Or: f of degree n is irreducible iff gcd(x^{p^i} - x, f) = 1 for
// 1 <= i <= n/2.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t n = f.size() - 1;
  if (n <= 1) return n == 1;
  Poly xpow{0, 1};
  for (std::size_t i = 1; i <= n / 2; ++i) {
    xpow = poly_powmod(xpow, p, f, p);
    Poly diff = xpow;
    diff.resize(std::max<std::size_t>(diff.size(), 2), 0);
    diff[1] = (diff[1] + p - 1) % p;
    trim(diff);
    if (diff.empty()) return false;
    if (poly_gcd(f, diff, p).size() != 1) return false;
  }
  return true;
}

// Root of irreducible f generates the multiplicative group.
bool has_primitive_root(const Poly& f, std::uint64_t p, std::uint64_t q) {
  const Poly one{1};
  for (std::uint64_t r : prime_factors(q - 1)) {
    if (poly_powmod(Poly{0, 1}, (q - 1) / r, f, p) == one) return false;
  }
  return true;
}

std::uint64_t checked_power(std::uint64_t p, unsigned n) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < n; ++i) {
    if (q > kMaxFieldOrder / p) {
      throw std::invalid_argument("field order p^n exceeds the supported maximum of 2^40");
    }
    q *= p;
  }
  return q;
}

std::uint64_t reduce(std::int64_t c, std::uint32_t p) {
  const std::int64_t m = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((c % m) + m) % m);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::uint32_t> base_p_digits(std::uint64_t j, std::uint32_t p, unsigned width) {
  std::vector<std::uint32_t> digits;
  while (j > 0) {
    digits.push_back(static_cast<std::uint32_t>(j % p));
    j /= p;
  }
  if (digits.size() < width) digits.resize(width, 0);
  return digits;
}

FieldCtx FieldCtx::make(std::uint32_t p, unsigned n, std::optional<std::vector<Residue>> modulus) {
  if (p == 2 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
  if (p >= (1u << 31)) throw std::invalid_argument("p must be below 2^31");
  if (n == 0) throw std::invalid_argument("extension degree n must be at least 1");

  FieldCtx ctx;
  ctx.p_ = p;
  ctx.n_ = n;
  ctx.q_ = checked_power(p, n);

  bool modulus_is_primitive = false;
  if (modulus) {
    if (modulus->size() != n + 1) {
      throw std::invalid_argument("modulus must have n + 1 coefficients (degree n)");
    }
    for (Residue c : *modulus) {
      if (c >= p) throw std::invalid_argument("modulus coefficients must lie in [0, p-1]");
    }
    if (modulus->back() != 1) throw std::invalid_argument("modulus must be monic");
    Poly f(modulus->begin(), modulus->end());
    if (!is_irreducible(f, p)) throw std::invalid_argument("modulus is reducible over F_p");
    ctx.modulus_ = *modulus;
    modulus_is_primitive = n > 1 && has_primitive_root(f, p, ctx.q_);
  } else if (n == 1) {
    // Filled in once the smallest primitive root is known.
  } else {
    // Odometer over (c_0, ..., c_{n-1}) with c_0 most significant.
    std::vector<Residue> tail(n, 0);
    for (;;) {
      Poly f(tail.begin(), tail.end());
      f.push_back(1);
      if (f[0] != 0 && is_irreducible(f, p) && has_primitive_root(f, p, ctx.q_)) {
        ctx.modulus_.assign(f.begin(), f.end());
        modulus_is_primitive = true;
        break;
      }
      int pos = static_cast<int>(n) - 1;
      while (pos >= 0 && ++tail[pos] == p) tail[pos--] = 0;
      if (pos < 0) throw std::logic_error("no primitive polynomial found");
    }
  }

  if (n == 1 && !modulus) ctx.modulus_ = {0, 1};  // placeholder for arithmetic
  ctx.basis_trace_.assign(n, 0);

  if (modulus_is_primitive) {
    ctx.generator_ = ctx.zero();
    ctx.generator_.coeffs[1] = 1;
  } else {
    const auto factors = prime_factors(ctx.q_ - 1);
    bool found = false;
    for (std::uint64_t idx = 1; idx < ctx.q_ && !found; ++idx) {
      const FFElem g = ctx.from_index(idx);
      found = std::all_of(factors.begin(), factors.end(), [&](std::uint64_t r) {
        return ctx.pow(g, (ctx.q_ - 1) / r) != ctx.one();
      });
      if (found) ctx.generator_ = g;
    }
    if (!found) throw std::logic_error("multiplicative group has no generator");
  }
  if (n == 1 && !modulus) {
    ctx.modulus_ = {static_cast<Residue>((p - ctx.generator_.coeffs[0]) % p), 1};
  }

  for (unsigned i = 0; i < n; ++i) {
    FFElem basis = ctx.zero();
    basis.coeffs[i] = 1;
    FFElem acc = ctx.zero();
    FFElem conj = basis;
    for (unsigned k = 0; k < n; ++k) {
      acc = ctx.add(acc, conj);
      conj = ctx.frobenius(conj);
    }
    for (unsigned k = 1; k < n; ++k) {
      if (acc.coeffs[k] != 0) throw std::logic_error("trace left the prime field");
    }
    ctx.basis_trace_[i] = acc.coeffs[0];
  }
  return ctx;
}

FieldCtx make_field(std::uint32_t p, unsigned n, std::optional<std::vector<Residue>> modulus) {
  return FieldCtx::make(p, n, std::move(modulus));
}

FFElem FieldCtx::scalar(std::int64_t c) const {
  FFElem x = zero();
  x.coeffs[0] = static_cast<Residue>(reduce(c, p_));
  return x;
}

FFElem FieldCtx::element(std::vector<Residue> coeffs) const {
  FFElem x{std::move(coeffs)};
  if (!contains(x)) {
    throw std::invalid_argument("element must have n coordinates in [0, p-1]");
  }
  return x;
}

bool FieldCtx::contains(const FFElem& x) const noexcept {
  return x.coeffs.size() == n_ &&
         std::all_of(x.coeffs.begin(), x.coeffs.end(), [&](Residue c) { return c < p_; });
}

FFElem FieldCtx::from_index(std::uint64_t index) const {
  if (index >= q_) throw std::out_of_range("element index out of range");
  FFElem x = zero();
  for (unsigned i = 0; i < n_; ++i) {
    x.coeffs[i] = static_cast<Residue>(index % p_);
    index /= p_;
  }
  return x;
}

std::uint64_t FieldCtx::index_of(const FFElem& x) const {
  std::uint64_t index = 0;
  for (unsigned i = n_; i-- > 0;) index = index * p_ + x.coeffs[i];
  return index;
}

FFElem FieldCtx::add(const FFElem& x, const FFElem& y) const {
  FFElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = (x.coeffs[i] + y.coeffs[i]) % p_;
  return r;
}

FFElem FieldCtx::sub(const FFElem& x, const FFElem& y) const {
  FFElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = (x.coeffs[i] + p_ - y.coeffs[i]) % p_;
  return r;
}

FFElem FieldCtx::neg(const FFElem& x) const { return sub(zero(), x); }

FFElem FieldCtx::scale(std::int64_t c, const FFElem& x) const {
  const std::uint64_t s = reduce(c, p_);
  FFElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = static_cast<Residue>(s * x.coeffs[i] % p_);
  return r;
}

FFElem FieldCtx::mul(const FFElem& x, const FFElem& y) const {
  if (n_ == 1) {
    return FFElem{{static_cast<Residue>(std::uint64_t{x.coeffs[0]} * y.coeffs[0] % p_)}};
  }
  std::vector<std::uint64_t> prod(2 * n_ - 1, 0);
  for (unsigned i = 0; i < n_; ++i) {
    if (x.coeffs[i] == 0) continue;
    for (unsigned j = 0; j < n_; ++j) {
      prod[i + j] = (prod[i + j] + std::uint64_t{x.coeffs[i]} * y.coeffs[j]) % p_;
    }
  }
  // x^n = -(m_0 + ... + m_{n-1} x^{n-1}).
  for (unsigned k = 2 * n_ - 2; k >= n_; --k) {
    const std::uint64_t c = prod[k];
    if (c == 0) continue;
    prod[k] = 0;
    for (unsigned i = 0; i < n_; ++i) {
      prod[k - n_ + i] = (prod[k - n_ + i] + (p_ - c) * modulus_[i]) % p_;
    }
  }
  FFElem r = zero();
  for (unsigned i = 0; i < n_; ++i) r.coeffs[i] = static_cast<Residue>(prod[i]);
  return r;
}

FFElem FieldCtx::pow(const FFElem& x, std::uint64_t e) const {
  FFElem result = one();
  FFElem base = x;
  while (e) {
    if (e & 1) result = mul(result, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return result;
}

FFElem inv(const FieldCtx& ctx, const FFElem& x) {
  // x^{q-2} is x^{-1} for x != 0 and 0 for x = 0.
  if (x == ctx.zero()) return ctx.zero();
  return ctx.pow(x, ctx.q() - 2);
}

Residue trace(const FieldCtx& ctx, const FFElem& x) {
  std::uint64_t t = 0;
  for (unsigned i = 0; i < ctx.n(); ++i) {
    t = (t + std::uint64_t{x.coeffs[i]} * ctx.basis_trace(i)) % ctx.p();
  }
  return static_cast<Residue>(t);
}

std::string to_string(SubsetKind kind) {
  switch (kind) {
    case SubsetKind::W: return "W";
    case SubsetKind::X: return "X";
    case SubsetKind::Y: return "Y";
    case SubsetKind::Z: return "Z";
    case SubsetKind::Custom: return "custom";
  }
  return "?";
}

bool is_frobenius_closed(const FieldCtx& ctx, std::span<const std::uint64_t> exponents) {
  const std::uint64_t order = ctx.q() - 1;
  std::vector<std::uint64_t> sorted(exponents.begin(), exponents.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::uint64_t s : sorted) {
    const auto image = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(s) * ctx.p() % order);
    if (!std::binary_search(sorted.begin(), sorted.end(), image)) return false;
  }
  return true;
}

SubsetSpec build_subset(const FieldCtx& ctx, SubsetKind kind) {
  if (kind == SubsetKind::Custom) {
    throw std::invalid_argument("build_subset builds W, X, Y or Z; use make_subset for custom sets");
  }
  if (kind != SubsetKind::W && ctx.p() != 3) {
    throw std::invalid_argument("subsets X, Y and Z are defined for p = 3 only");
  }
  if (kind == SubsetKind::Y && ctx.n() < 3) {
    throw std::invalid_argument("subset Y needs n >= 3");
  }
  const unsigned n = ctx.n();
  std::vector<std::uint64_t> powers(n);
  powers[0] = 1;
  for (unsigned i = 1; i < n; ++i) powers[i] = powers[i - 1] * ctx.p();

  std::vector<std::uint64_t> out;
  for (unsigned i = 0; i < n; ++i) {
    if (kind == SubsetKind::W) {
      out.push_back(powers[i]);
      continue;
    }
    for (unsigned j = 0; j < n; ++j) {
      if (kind == SubsetKind::X && j >= i) out.push_back(powers[i] + powers[j]);
      if (kind == SubsetKind::Z && j != i) out.push_back(2 * powers[i] + powers[j]);
      if (kind == SubsetKind::Y && j > i) {
        for (unsigned k = j + 1; k < n; ++k) out.push_back(powers[i] + powers[j] + powers[k]);
      }
    }
  }
  std::erase_if(out, [&](std::uint64_t r) { return r > ctx.q() - 2; });
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (!is_frobenius_closed(ctx, out)) throw std::logic_error("built subset is not Frobenius-closed");
  return SubsetSpec{std::move(out), kind};
}

SubsetSpec make_subset(const FieldCtx& ctx, std::vector<std::uint64_t> exponents) {
  std::sort(exponents.begin(), exponents.end());
  exponents.erase(std::unique(exponents.begin(), exponents.end()), exponents.end());
  if (!exponents.empty() && exponents.back() > ctx.q() - 2) {
    throw std::invalid_argument("subset exponents must lie in [0, q-2]");
  }
  if (!is_frobenius_closed(ctx, exponents)) {
    throw std::invalid_argument("subset is not closed under s -> p*s mod (q-1)");
  }
  return SubsetSpec{std::move(exponents), SubsetKind::Custom};
}

Residue tau(const FieldCtx& ctx, const SubsetSpec& subset, const FFElem& a) {
  if (!is_frobenius_closed(ctx, subset.exponents)) {
    throw std::invalid_argument("subset is not closed under s -> p*s mod (q-1)");
  }
  const unsigned n = ctx.n();
  // a^s = prod_k (a^{p^k})^{s_k} over the base-p digits of s.
  std::vector<FFElem> conjugates(n);
  conjugates[0] = a;
  for (unsigned k = 1; k < n; ++k) conjugates[k] = ctx.frobenius(conjugates[k - 1]);

  FFElem sum = ctx.zero();
  for (std::uint64_t s : subset.exponents) {
    FFElem term = ctx.one();
    const auto digits = base_p_digits(s, ctx.p(), n);
    for (unsigned k = 0; k < n; ++k) {
      if (digits[k]) term = ctx.mul(term, ctx.pow(conjugates[k], digits[k]));
    }
    sum = ctx.add(sum, term);
  }
  for (unsigned k = 1; k < n; ++k) {
    if (sum.coeffs[k] != 0) throw std::logic_error("tau left the prime field");
  }
  return sum.coeffs[0];
}

int legendre(std::int64_t t, std::uint32_t p) {
  const std::uint64_t r = reduce(t, p);
  if (r == 0) return 0;
  std::uint64_t result = 1, base = r, e = (p - 1) / 2;
  while (e) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result == 1 ? 1 : -1;
}

}  // namespace kloos
