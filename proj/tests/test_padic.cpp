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

#include <random>
#include <stdexcept>
#include <vector>

#include "kloos/padic.hpp"

using namespace kloos;

namespace {

// (-1)^k * prod of t < k prime to p, reduced mod m.
std::uint64_t gamma_oracle(std::uint64_t k, std::uint64_t p, std::uint64_t m) {
  std::uint64_t r = 1;
  for (std::uint64_t t = 1; t < k; ++t)
    if (t % p != 0) r = r * t % m;
  return k % 2 == 0 ? r : (m - r) % m;
}

std::uint64_t factorial_mod(std::uint64_t k, std::uint64_t p) {
  std::uint64_t r = 1;
  for (std::uint64_t t = 2; t <= k; ++t) r = r * t % p;
  return r;
}

}  // namespace

TEST_CASE("truncated p-adic integers") {
  PadicInt a(3, 3, 5), b(3, 3, -1);
  CHECK(b.residue() == 26);
  CHECK((a + b).residue() == 4);
  CHECK((a * b).residue() == 22);
  CHECK((a * a.inverse()).residue() == 1);
  CHECK(PadicInt(3, 3, 18).valuation() == 2);
  CHECK(PadicInt(3, 3, 0).valuation() == 3);
  CHECK_THROWS_AS(PadicInt(3, 3, 6).inverse(), std::domain_error);
  CHECK(PadicInt(5, 3, 124).truncate(2).residue() == 24);
  CHECK_THROWS(PadicInt(3, 3, 1) + PadicInt(5, 3, 1));
  CHECK(padic_modulus(7, 4) == 2401);
}

TEST_CASE("digit sums") {
  CHECK(weight_p(4, 3) == 2);
  CHECK(weight_p(13, 3) == 3);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    std::uint64_t pi = 1;
    for (int i = 0; i < 6; ++i, pi *= p) CHECK(weight_p(pi, p) == 1);
  }
}

TEST_CASE("rationals as residues") {
  CHECK(pad_from_rational(3, 26, 3, 3).residue() == 24);
  CHECK(pad_from_rational(1, 26, 3, 3).residue() == 26);
  CHECK(pad_from_rational(0, 7, 5, 2).residue() == 0);
  CHECK(pad_from_rational(1, 2, 7, 2) * PadicInt(7, 2, 2) == PadicInt(7, 2, 1));
  CHECK_THROWS_AS(pad_from_rational(1, 6, 3, 3), std::invalid_argument);
}

TEST_CASE("gamma function values") {
  CHECK(gamma_p(PadicInt(3, 3, 0)).residue() == 1);
  CHECK(gamma_oracle(24, 3, 27) == 13);
  CHECK(gamma_p(PadicInt(3, 3, 24)).residue() == 13);
  for (std::uint32_t p : {3u, 5u, 7u, 11u, 13u}) {
    CHECK(gamma_p(PadicInt(p, 1, p - 1)).residue() == 1);
    CHECK(gamma_p_natural(p - 1, p, p) == 1);
  }
  for (std::uint32_t p : {3u, 5u, 7u}) {
    const std::uint64_t m = padic_modulus(p, 3);
    for (std::uint64_t k = 0; k < m; ++k) CHECK(gamma_p(PadicInt(p, 3, k)).residue() == gamma_oracle(k, p, m));
  }
}

TEST_CASE("gamma is continuous") {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint32_t p = std::vector<std::uint32_t>{3, 5, 7}[rng() % 3];
    const unsigned precision = 2 + rng() % 3;
    const unsigned k = 1 + rng() % precision;
    const std::uint64_t m = padic_modulus(p, precision);
    const std::uint64_t x = rng() % m;
    const std::uint64_t y = (x + padic_modulus(p, k) * (rng() % m)) % m;
    auto gx = gamma_p(PadicInt(p, precision, x)).truncate(k);
    auto gy = gamma_p(PadicInt(p, precision, y)).truncate(k);
    CHECK(gx == gy);
  }
}

TEST_CASE("gamma is stable under raising precision") {
  for (std::uint32_t p : {3u, 5u}) {
    for (unsigned precision = 1; precision <= 3; ++precision) {
      const std::uint64_t m = padic_modulus(p, precision);
      for (std::uint64_t x = 0; x < m; ++x) {
        CHECK(gamma_p(PadicInt(p, precision + 1, x)).truncate(precision) == gamma_p(PadicInt(p, precision, x)));
      }
    }
  }
}

TEST_CASE("gamma at the fractional parts of 3^i / (3^n - 1)") {
  for (unsigned n = 3; n <= 8; ++n) {
    for (unsigned i = 0; i < n; ++i) {
      auto arg = fractional_part_arg(1, i, 3, n, 3);
      CHECK(arg.denominator == static_cast<std::int64_t>(padic_modulus(3, n) - 1));
      std::int64_t pi = 1;
      for (unsigned k = 0; k < i; ++k) pi *= 3;
      CHECK(arg.numerator == pi);
      const auto g = gamma_p(arg.residue).residue();
      CHECK(g == (i == 1 ? 13u : 1u));
    }
  }
}

TEST_CASE("unramified ring lifts the field modulus") {
  auto field = make_field(3, 4);
  UnramCtx u(field, 3);
  const auto& lifted = u.lifted_modulus();
  REQUIRE(lifted.size() == field.modulus().size());
  for (std::size_t i = 0; i < lifted.size(); ++i) CHECK(lifted[i] % 3 == field.modulus()[i]);
  auto x = u.naive_lift(field.generator());
  CHECK(u.reduce_mod_p(u.pow(x, 5)) == field.pow(field.generator(), 5));
}

TEST_CASE("Teichmuller lifts") {
  auto f3 = make_field(3, 1);
  UnramCtx u3(f3, 4);
  CHECK(teich(u3, f3.zero()) == u3.zero());
  CHECK(teich(u3, f3.one()) == u3.one());
  CHECK(teich(u3, f3.scalar(2)) == u3.constant(-1));

  auto field = make_field(3, 3);
  UnramCtx u(field, 3);
  std::vector<UnramElem> lift(field.q());
  for (std::uint64_t i = 0; i < field.q(); ++i) lift[i] = teich(u, field.from_index(i));
  for (std::uint64_t i = 0; i < field.q(); ++i) {
    auto a = field.from_index(i);
    CHECK(u.reduce_mod_p(lift[i]) == a);
    if (i != 0) CHECK(u.pow(lift[i], field.q() - 1) == u.one());
    for (std::uint64_t j = 0; j < field.q(); ++j) {
      auto b = field.from_index(j);
      CHECK(lift[field.index_of(field.mul(a, b))] == u.mul(lift[i], lift[j]));
    }
  }
  auto xi = teich(u, field.generator());
  for (std::uint64_t j = 0; j < field.q() - 1; ++j)
    CHECK(teich(u, field.pow(field.generator(), j)) == u.pow(xi, j));
}

TEST_CASE("lifted tau") {
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {3, 4}, {5, 2}}) {
    auto field = make_field(p, n);
    UnramCtx u(field, 3);
    auto w = build_subset(field, SubsetKind::W);
    CHECK(lifted_tau(u, w, field.zero()) == u.zero());
    for (std::uint64_t i = 0; i < field.q(); ++i) {
      auto a = field.from_index(i);
      auto t = lifted_tau(u, w, a);
      CHECK(u.is_constant(t));
      CHECK(u.as_padic(t).residue() % p == trace(field, a));
    }
  }
  auto field = make_field(3, 3);
  UnramCtx u(field, 3);
  auto w = build_subset(field, SubsetKind::W);
  auto y = build_subset(field, SubsetKind::Y);
  auto z = build_subset(field, SubsetKind::Z);
  for (std::uint64_t i = 0; i < field.q(); ++i) {
    auto a = field.from_index(i);
    auto tr = lifted_tau(u, w, a);
    auto rhs = u.add(tr, u.add(u.scale(3, lifted_tau(u, z, a)), u.scale(6, lifted_tau(u, y, a))));
    CHECK(u.pow(tr, 3) == rhs);
    for (auto k : {SubsetKind::X, SubsetKind::Y, SubsetKind::Z}) {
      auto s = build_subset(field, k);
      CHECK(u.as_padic(lifted_tau(u, s, a)).residue() % 3 == tau(field, s, a));
    }
  }
}

TEST_CASE("pi-monomials multiply in normal form") {
  auto field = make_field(5, 2);
  UnramCtx u(field, 2);
  std::mt19937_64 rng(4);
  auto random_mono = [&] {
    std::uint64_t idx = 1 + rng() % (field.q() - 1);
    auto unit = u.add(u.naive_lift(field.from_index(idx)), u.scale(5, u.naive_lift(field.from_index(rng() % field.q()))));
    return eis_normal(u, static_cast<unsigned>(rng() % 12), unit);
  };
  for (int k = 0; k < 200; ++k) {
    auto a = random_mono(), b = random_mono(), c = random_mono();
    CHECK(multiply(u, a, b) == multiply(u, b, a));
    CHECK(multiply(u, multiply(u, a, b), c) == multiply(u, a, multiply(u, b, c)));
    auto ab = multiply(u, a, b);
    CHECK(ab.pi_exponent == (a.pi_exponent + b.pi_exponent) % 4);
    CHECK(pi_valuation(u, ab) == pi_valuation(u, a) + pi_valuation(u, b));
    CHECK(ab.pi_exponent < 4);
  }
  CHECK_THROWS_AS(eis_normal(u, 1, u.constant(5)), std::invalid_argument);
  CHECK_THROWS_AS(to_unramified(u, eis_normal(u, 1, u.one())), std::domain_error);
  CHECK(to_unramified(u, eis_normal(u, 4, u.one())) == u.constant(-5));
}

TEST_CASE("Gauss sums from the gamma function") {
  for (unsigned n = 3; n <= 5; ++n) {
    auto field = make_field(3, n);
    UnramCtx u(field, 3);
    auto g1 = gauss_gk(u, 1);
    CHECK(g1.pi_exponent == 1);
    CHECK(g1.p_exponent == 0);
    CHECK(u.as_padic(g1.unit).residue() == 13);
  }
  for (auto [p, n] : std::vector<std::pair<std::uint32_t, unsigned>>{{3, 3}, {5, 2}, {7, 2}}) {
    auto field = make_field(p, n);
    UnramCtx u(field, 2);
    for (std::uint64_t j = 1; j + 2 <= field.q(); ++j) {
      auto g = gauss_gk(u, j);
      CHECK(pi_valuation(u, g) == weight_p(j, p));
      CHECK(u.reduce_mod_p(g.unit) != field.zero());
      std::uint64_t fact = 1;
      for (auto d : base_p_digits(j, p, n)) fact = fact * factorial_mod(d, p) % p;
      CHECK(u.as_padic(g.unit).residue() % p * fact % p == 1);
    }
    CHECK_THROWS_AS(gauss_gk(u, 0), std::invalid_argument);
    CHECK_THROWS_AS(gauss_gk(u, field.q() - 1), std::invalid_argument);
  }
}

TEST_CASE("Stickelberger unit congruence") {
  auto f = make_field(3, 3);
  UnramCtx u(f, 2);
  auto r1 = stickelberger_check(u, 1);
  CHECK(r1.pass);
  CHECK(r1.lhs == 1);
  CHECK(r1.rhs == 1);
  auto r2 = stickelberger_check(u, 2);
  CHECK(r2.pass);
  CHECK(r2.rhs == 2);
  auto f25 = make_field(5, 2);
  UnramCtx u25(f25, 2);
  for (std::uint64_t j = 1; j <= 23; ++j) CHECK(stickelberger_check(u25, j).pass);
}

TEST_CASE("squared Gauss sums mod 27") {
  for (unsigned n = 3; n <= 4; ++n) {
    auto field = make_field(3, n);
    UnramCtx u(field, 3);
    for (std::uint64_t j = 1; j + 2 <= field.q(); ++j) {
      auto g = gauss_gk(u, j);
      auto sq = u.as_padic(to_unramified(u, multiply(u, g, g)));
      CHECK(gauss_sq_mod27(u, j) == sq);
      const unsigned wt = weight_p(j, 3);
      CHECK(sq.residue() == (wt == 1 ? 6u : wt == 2 ? 9u : 0u));
      CHECK(wt1_check(u, j).pass);
    }
  }
  CHECK_THROWS_AS(gauss_sq_mod27(UnramCtx(make_field(5, 2), 2), 1), std::invalid_argument);
}

TEST_CASE("Fourier expansion mod 27") {
  for (unsigned n = 3; n <= 4; ++n) {
    auto field = make_field(3, n);
    UnramCtx u(field, 3);
    FourierMod27 fourier(u);
    KloostermanEvaluator eval(field);
    CHECK(fourier.sum(field.zero()) == 0);
    for (std::uint64_t i = 0; i < field.q(); ++i) {
      auto a = field.from_index(i);
      auto k = eval(a);
      auto r = fourier_kloosterman_mod(fourier, a, k);
      CHECK(r.pass);
      CHECK(fourier.lifted_trace_form(a) == r.lhs);
      if (trace(field, a) == 1 && tau(field, build_subset(field, SubsetKind::X), a) == 0 &&
          tau(field, build_subset(field, SubsetKind::Y), a) == 2) {
        CHECK(r.lhs == 3);
      }
    }
  }
  CHECK_THROWS_AS(FourierMod27(UnramCtx(make_field(3, 2), 3)), std::invalid_argument);
}
