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

#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>
#include <vector>

#include "kloos/cyclo.hpp"

using namespace kloos;

namespace {

CycInt random_cyc(std::uint32_t p, std::mt19937_64& rng) {
  std::vector<mpz_class> c(p - 1);
  for (auto& v : c) v = static_cast<long>(rng() % 41) - 20;
  return CycInt(p, c);
}

std::vector<mpz_class> z(std::initializer_list<long> v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("arithmetic examples") {
  const CycInt one = CycInt::integer(3, 1);
  const CycInt zeta = CycInt::zeta_power(3, 1);
  CHECK((one + zeta) * (one + zeta) == zeta);
  CHECK(zeta + CycInt(3) == zeta);
  auto prod = CycInt::zeta_power(5, 3) * CycInt::zeta_power(5, 2);
  CHECK(prod.coords() == z({1, 0, 0, 0}));
  CHECK(CycInt::zeta_power(3, 2).coords() == z({-1, -1}));
  CHECK(CycInt::zeta_power(7, -1) == CycInt::zeta_power(7, 6));
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int k = 0; k < 100; ++k) {
      auto a = random_cyc(p, rng), b = random_cyc(p, rng), c = random_cyc(p, rng);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * b == b * a);
      CHECK(a - a == CycInt(p));
      CHECK(a + (-a) == CycInt(p));
    }
  }
}

TEST_CASE("mismatched rings and bad coordinates throw") {
  CHECK_THROWS_AS(CycInt::integer(3, 1) + CycInt::integer(5, 1), std::invalid_argument);
  CHECK_THROWS_AS(CycInt(5, z({1, 2})), std::invalid_argument);
}

TEST_CASE("exponent counts") {
  std::vector<mpz_class> counts = z({1, 1, 1, 1, 1});
  CHECK(CycInt::from_exponent_counts(5, counts) == CycInt(5));
  std::vector<mpz_class> c3 = z({4, 2, 2});
  CHECK(as_rational(CycInt::from_exponent_counts(3, c3)) == mpz_class(2));
}

TEST_CASE("galois action examples") {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 50; ++k) {
    auto u = random_cyc(7, rng);
    CHECK(galois_apply(1, u) == u);
  }
  CHECK(galois_apply(2, CycInt::zeta_power(3, 1)).coords() == z({-1, -1}));
  CHECK(galois_apply(2, CycInt::zeta_power(5, 1)).coords() == z({0, 0, 1, 0}));
  CHECK_THROWS_AS(galois_apply(5, CycInt::zeta_power(5, 1)), std::invalid_argument);
}

TEST_CASE("galois action is a group action by ring automorphisms") {
  std::mt19937_64 rng(9);
  for (std::uint32_t p : {3u, 5u, 7u, 11u}) {
    for (int k = 0; k < 40; ++k) {
      auto a = random_cyc(p, rng), b = random_cyc(p, rng);
      const std::int64_t i = 1 + static_cast<std::int64_t>(rng() % (p - 1));
      const std::int64_t j = 1 + static_cast<std::int64_t>(rng() % (p - 1));
      CHECK(galois_apply(i, a + b) == galois_apply(i, a) + galois_apply(i, b));
      CHECK(galois_apply(i, a * b) == galois_apply(i, a) * galois_apply(i, b));
      CHECK(galois_apply(i, galois_apply(j, a)) == galois_apply((i * j) % p, a));
    }
  }
}

TEST_CASE("rationality") {
  CHECK(as_rational(CycInt(3, z({5, 0}))) == mpz_class(5));
  CHECK_FALSE(as_rational(CycInt::zeta_power(3, 1)).has_value());
  CycInt s(5);
  for (int k = 0; k < 5; ++k) s += CycInt::zeta_power(5, k);
  CHECK(as_rational(s) == mpz_class(0));
}

TEST_CASE("rational iff fixed by every automorphism") {
  std::mt19937_64 rng(13);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int k = 0; k < 60; ++k) {
      CycInt u = random_cyc(p, rng);
      if (k % 2 == 0) {
        // Galois-orbit sum, always rational.
        CycInt s(p);
        for (std::int64_t i = 1; i < p; ++i) s += galois_apply(i, u);
        u = s;
      }
      bool fixed = true;
      for (std::int64_t i = 1; i < p; ++i) fixed &= galois_apply(i, u) == u;
      CHECK(as_rational(u).has_value() == fixed);
    }
  }
}

TEST_CASE("product of linear factors") {
  std::vector<CycInt> single{CycInt::integer(3, -3)};
  CHECK(product_linear(single) == IntPolynomial(z({3, 1})));
  std::vector<CycInt> roots{CycInt::zeta_power(3, 1), CycInt::zeta_power(3, 2)};
  CHECK(product_linear(roots) == IntPolynomial(z({1, 1, 1})));
  CHECK(product_linear(roots).to_string() == "x^2 + x + 1");

  std::vector<CycInt> bad{CycInt::zeta_power(5, 1)};
  try {
    product_linear(bad);
    FAIL("expected NonRationalCoefficient");
  } catch (const NonRationalCoefficient& e) {
    CHECK(e.index() == 0);
  }
}

TEST_CASE("product of linear factors is invariant under root permutation") {
  std::mt19937_64 rng(17);
  for (int k = 0; k < 20; ++k) {
    auto u = random_cyc(7, rng);
    std::vector<CycInt> orbit;
    for (std::int64_t i = 1; i < 7; ++i) orbit.push_back(galois_apply(i, u));
    const IntPolynomial ref = product_linear(orbit);
    CHECK(ref.degree() == 6);
    std::shuffle(orbit.begin(), orbit.end(), rng);
    CHECK(product_linear(orbit) == ref);
  }
}

TEST_CASE("integer polynomials") {
  IntPolynomial f(z({45, -15, 1}));
  CHECK(f.to_string() == "x^2 - 15x + 45");
  CHECK(f.degree() == 2);
  CHECK(f.reduce_mod(5) == IntPolynomial::monomial(2));
  CHECK(f.pow(2) == f * f);
  CHECK(IntPolynomial(z({0, 0})).is_zero());
  std::ostringstream os;
  os << CycInt(3, z({2, -1}));
  CHECK(os.str() == "(2,-1)");
}
