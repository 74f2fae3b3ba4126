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

#ifndef KLOOS_VERIFY_HPP
#define KLOOS_VERIFY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "kloos/ff.hpp"
#include "kloos/report.hpp"

namespace kloos {

/// Parsed "p=<int>,n=<int>[,mod=<c0>,...,<cn>]".
struct FieldSpec {
  std::uint32_t p = 0;
  unsigned n = 0;
  std::optional<std::vector<Residue>> modulus;

  FieldCtx build() const { return make_field(p, n, modulus); }
  std::string to_string() const;
};

/// Malformed input; `position` is the 0-based character offset of the problem.
class ParseError : public std::invalid_argument {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Bad check/field/scope combination or unusable precision.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

FieldSpec parse_field_spec(std::string_view text);

/// "1,0,2" (optionally prefixed "a="), constant coordinate first.
FFElem parse_element(const FieldCtx& ctx, std::string_view text);

std::string format_element(const FFElem& x);

enum class Check {
  Thm1, Mod9, Mod27, Stickelberger, Wt1, Fourier, Moisio, Wan, Weil, Identities, Spectrum,
};

std::optional<Check> parse_check(std::string_view name);
std::string_view to_string(Check check);
/// Stickelberger and wt1 sweep the exponents j in [1, q-2]; all other checks
/// sweep the field elements.
bool is_exponent_indexed(Check check);

struct Scope {
  enum class Kind { All, Single, Sample };
  Kind kind = Kind::All;
  std::uint64_t single = 0;  // element index, or j for exponent-indexed checks
  std::uint64_t count = 0;
  std::uint64_t seed = 0;
};

struct VerificationJob {
  FieldSpec field;
  Check check = Check::Thm1;
  Scope scope;
  unsigned jobs = 0;  // 0: available parallelism
  std::optional<unsigned> precision;
};

/// Effective p-adic precision for a job: the override, or 3 digits for the
/// mod-27 work and 2 digits otherwise.
unsigned effective_precision(const VerificationJob& job);

/// Throws ConfigError when the check cannot run on the field.
void validate(const VerificationJob& job);

struct SweepReport {
  VerificationJob job;
  std::uint64_t total = 0;  // cases examined
  std::vector<CongruenceReport> records;  // every report, in domain order
  std::vector<CongruenceReport> failures;
  std::int64_t histogram_modulus = 0;
  std::map<std::int64_t, std::uint64_t> histogram;
  std::vector<std::string> extra;  // e.g. the spectrum checksum line
  double wall_seconds = 0.0;

  bool passed() const noexcept { return failures.empty(); }
};

/// Runs the check over its scope on `jobs` workers. Results are merged in
/// domain order, so the report does not depend on the worker count.
SweepReport run_verification(const VerificationJob& job);

enum class ReportFormat { JsonLines, Csv, Summary };

std::optional<ReportFormat> parse_format(std::string_view name);

struct EmitOptions {
  ReportFormat format = ReportFormat::Summary;
  bool all_records = false;  // json-lines: every case instead of failures only
  bool timing = false;       // include wall time (breaks byte-for-byte reproducibility)
};

void emit_report(const SweepReport& report, std::ostream& out, const EmitOptions& options);

}  // namespace kloos

#endif  // KLOOS_VERIFY_HPP
