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
#include <json.hpp>

#include <sstream>
#include <string>

#include "kloos/verify.hpp"

using namespace kloos;

namespace {

std::string render(const SweepReport& r, ReportFormat f, bool all = false) {
  std::ostringstream os;
  emit_report(r, os, EmitOptions{f, all, false});
  return os.str();
}

VerificationJob job(std::string_view field, Check check) {
  VerificationJob j;
  j.field = parse_field_spec(field);
  j.check = check;
  return j;
}

}  // namespace

TEST_CASE("field spec parsing") {
  auto s = parse_field_spec("p=3,n=5");
  CHECK(s.p == 3);
  CHECK(s.n == 5);
  CHECK_FALSE(s.modulus.has_value());
  CHECK(s.to_string() == "p=3,n=5");

  auto m = parse_field_spec("p=3,n=3,mod=1,2,0,1");
  REQUIRE(m.modulus.has_value());
  CHECK(*m.modulus == std::vector<Residue>{1, 2, 0, 1});
  CHECK(m.build().modulus() == std::vector<Residue>{1, 2, 0, 1});

  CHECK_THROWS_AS(parse_field_spec("p=4,n=2"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("p=3"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("p=3,n=3,mod=1,2,0"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("p=3,n=3,mod=1,2,0,2"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("p=3,n=x"), ParseError);
  CHECK_THROWS_AS(parse_field_spec("p=3,n=3,mod=0,0,0,1").build(), std::invalid_argument);
  try {
    parse_field_spec("p=3,n=2,q=9");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 8);
  }
}

TEST_CASE("element parsing") {
  auto ctx = make_field(3, 3);
  CHECK(parse_element(ctx, "1,2,0") == ctx.element({1, 2, 0}));
  CHECK(parse_element(ctx, "a=0,0,1") == ctx.element({0, 0, 1}));
  CHECK(format_element(ctx.element({1, 2, 0})) == "1,2,0");
  CHECK_THROWS_AS(parse_element(ctx, "1,2"), ParseError);
  CHECK_THROWS_AS(parse_element(ctx, "1,3,0"), ParseError);
}

TEST_CASE("check names round trip") {
  for (auto c : {Check::Thm1, Check::Mod9, Check::Mod27, Check::Stickelberger, Check::Wt1, Check::Fourier,
                 Check::Moisio, Check::Wan, Check::Weil, Check::Identities, Check::Spectrum}) {
    CHECK(parse_check(to_string(c)) == c);
  }
  CHECK_FALSE(parse_check("nope").has_value());
  CHECK(is_exponent_indexed(Check::Stickelberger));
  CHECK_FALSE(is_exponent_indexed(Check::Mod27));
}

TEST_CASE("job validation") {
  CHECK_THROWS_AS(validate(job("p=5,n=3", Check::Mod9)), ConfigError);
  CHECK_THROWS_AS(validate(job("p=3,n=2", Check::Mod27)), ConfigError);
  CHECK_THROWS_AS(validate(job("p=3,n=2", Check::Fourier)), ConfigError);
  auto low = job("p=3,n=3", Check::Wt1);
  low.precision = 2;
  CHECK_THROWS_AS(validate(low), ConfigError);
  auto big = job("p=7,n=2", Check::Stickelberger);
  big.precision = 12;
  CHECK_THROWS_AS(validate(big), ConfigError);
  auto out = job("p=3,n=3", Check::Thm1);
  out.scope = Scope{Scope::Kind::Single, 27, 0, 0};
  CHECK_THROWS_AS(validate(out), ConfigError);
  auto spec = job("p=3,n=3", Check::Spectrum);
  spec.scope = Scope{Scope::Kind::Sample, 0, 5, 1};
  CHECK_THROWS_AS(validate(spec), ConfigError);
  CHECK_NOTHROW(validate(job("p=3,n=3", Check::Mod27)));
  CHECK(effective_precision(job("p=3,n=3", Check::Wt1)) == 3);
  CHECK(effective_precision(job("p=5,n=2", Check::Stickelberger)) == 2);
}

TEST_CASE("sweep examples") {
  auto r = run_verification(job("p=3,n=5", Check::Mod27));
  CHECK(r.total == 243);
  CHECK(r.passed());
  CHECK(r.histogram_modulus == 27);
  for (const auto& [residue, count] : r.histogram) CHECK(residue % 3 == 0);

  auto t = run_verification(job("p=5,n=3", Check::Thm1));
  CHECK(t.total == 125);
  CHECK(t.failures.empty());
  CHECK(render(t, ReportFormat::Summary).rfind("PASS total=125\n", 0) == 0);

  auto s = run_verification(job("p=5,n=2", Check::Stickelberger));
  CHECK(s.total == 23);
  CHECK(s.passed());
}

TEST_CASE("reports do not depend on the worker count") {
  auto one = job("p=3,n=4", Check::Mod27);
  one.jobs = 1;
  auto eight = one;
  eight.jobs = 8;
  const auto a = run_verification(one), b = run_verification(eight);
  for (auto f : {ReportFormat::JsonLines, ReportFormat::Csv, ReportFormat::Summary}) {
    CHECK(render(a, f, true) == render(b, f, true));
  }

  auto sample = job("p=5,n=3", Check::Thm1);
  sample.scope = Scope{Scope::Kind::Sample, 0, 40, 99};
  sample.jobs = 1;
  auto sample8 = sample;
  sample8.jobs = 8;
  const auto c = run_verification(sample), d = run_verification(sample8);
  CHECK(c.total == 40);
  CHECK(render(c, ReportFormat::JsonLines, true) == render(d, ReportFormat::JsonLines, true));
}

TEST_CASE("a failing case is reported with its witness") {
  SweepReport r;
  r.job = job("p=3,n=3", Check::Mod27);
  r.total = 1;
  CongruenceReport bad = make_congruence("mod27", 3, 6, 27);
  bad.index = 5;
  bad.witness = {2, 1, 0};
  r.records.push_back(bad);
  r.failures.push_back(bad);
  CHECK_FALSE(r.passed());

  const std::string lines = render(r, ReportFormat::JsonLines);
  std::istringstream in(lines);
  std::string first, second;
  std::getline(in, first);
  std::getline(in, second);
  auto rec = nlohmann::json::parse(first);
  CHECK(rec["type"] == "case");
  CHECK(rec["element"] == nlohmann::json::array({2, 1, 0}));
  CHECK(rec["pass"] == false);
  auto sum = nlohmann::json::parse(second);
  CHECK(sum["pass"] == false);
  CHECK(sum["failures"] == 1);
  CHECK(render(r, ReportFormat::Summary).rfind("FAIL total=1 failures=1\n", 0) == 0);
}

TEST_CASE("spectrum sweep reports the checksum") {
  auto r = run_verification(job("p=3,n=3", Check::Spectrum));
  CHECK(r.passed());
  bool found = false;
  for (const auto& line : r.extra) found |= line == "checksum sum=27 q=27 ok";
  CHECK(found);
}

TEST_CASE("identity bundle") {
  auto r = run_verification(job("p=3,n=4", Check::Identities));
  CHECK(r.total == 81);
  CHECK(r.passed());
  CHECK(r.records.size() > r.total);
}
