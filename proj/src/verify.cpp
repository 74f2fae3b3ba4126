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

#include "kloos/verify.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <exception>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "kloos/kloosterman.hpp"
#include "kloos/padic.hpp"

namespace kloos {

namespace {

struct CheckName {
  Check check;
  std::string_view name;
};

constexpr std::array<CheckName, 11> kCheckNames{{
    {Check::Thm1, "thm1"},
    {Check::Mod9, "mod9"},
    {Check::Mod27, "mod27"},
    {Check::Stickelberger, "stickelberger"},
    {Check::Wt1, "wt1"},
    {Check::Fourier, "fourier"},
    {Check::Moisio, "moisio"},
    {Check::Wan, "wan"},
    {Check::Weil, "weil"},
    {Check::Identities, "identities"},
    {Check::Spectrum, "spectrum"},
}};

struct CaseResult {
  std::vector<CongruenceReport> reports;
  std::optional<std::int64_t> residue;  // histogram entry
  std::optional<CycInt> value;          // spectrum entry
};

CongruenceReport flag(std::string subject, bool ok) {
  return make_comparison(std::move(subject), ok ? 1 : 0, 1, Relation::Equal);
}

/// Immutable per-job state shared by all workers.
class CaseRunner {
 public:
  explicit CaseRunner(const VerificationJob& job)
      : check_(job.check), field_(job.field.build()) {
    const unsigned precision = effective_precision(job);
    if (!is_exponent_indexed(check_)) eval_.emplace(field_);
    if (check_ == Check::Stickelberger || check_ == Check::Wt1 || check_ == Check::Fourier ||
        check_ == Check::Identities) {
      uctx_.emplace(field_, precision);
    }
    if (check_ == Check::Fourier) fourier_.emplace(*uctx_);
    if (check_ == Check::Identities) {
      subsets_.push_back(build_subset(field_, SubsetKind::W));
      if (field_.p() == 3 && field_.n() >= 3) {
        for (SubsetKind k : {SubsetKind::X, SubsetKind::Y, SubsetKind::Z}) {
          subsets_.push_back(build_subset(field_, k));
        }
      }
    }
  }

  const FieldCtx& field() const noexcept { return field_; }

  std::uint64_t domain_size() const {
    return is_exponent_indexed(check_) ? field_.q() - 2 : field_.q();
  }

  /// Position in the domain -> element index or exponent j.
  std::uint64_t domain_value(std::uint64_t position) const {
    return is_exponent_indexed(check_) ? position + 1 : position;
  }

  CaseResult run(std::uint64_t value) const {
    CaseResult out;
    if (is_exponent_indexed(check_)) {
      const CongruenceReport r =
          check_ == Check::Wt1 ? wt1_check(*uctx_, value) : stickelberger_check(*uctx_, value);
      if (check_ == Check::Wt1) out.residue = r.lhs;
      out.reports.push_back(r);
      return out;
    }

    const FFElem a = field_.from_index(value);
    switch (check_) {
      case Check::Thm1:
        out.reports.push_back(check_thm1(*eval_, a));
        out.residue = out.reports.back().lhs;
        break;
      case Check::Mod9:
        out.reports.push_back(check_mod9(*eval_, a));
        out.residue = out.reports.back().lhs;
        break;
      case Check::Mod27:
        out.reports.push_back(check_mod27(*eval_, a));
        out.residue = out.reports.back().lhs;
        break;
      case Check::Fourier:
        out.reports.push_back(fourier_kloosterman_mod(*fourier_, a, (*eval_)(a)));
        out.residue = out.reports.back().lhs;
        break;
      case Check::Moisio:
        out.reports.push_back(check_moisio(field_, min_poly(*eval_, a)));
        break;
      case Check::Wan:
        out.reports.push_back(check_wan(field_, a, min_poly(*eval_, a)));
        break;
      case Check::Weil:
        out.reports.push_back(check_weil(field_, (*eval_)(a)));
        break;
      case Check::Spectrum: {
        KloostermanValue k = (*eval_)(a);
        out.reports.push_back(check_weil(field_, k));
        out.value = std::move(k.value);
        break;
      }
      case Check::Identities:
        identities(a, out.reports);
        break;
      default:
        throw std::logic_error("exponent-indexed check routed to the element path");
    }
    for (CongruenceReport& r : out.reports) {
      r.index = value;
      r.witness = a.coeffs;
    }
    return out;
  }

 private:
  void identities(const FFElem& a, std::vector<CongruenceReport>& out) const {
    const UnramCtx& u = *uctx_;
    const auto pk = static_cast<std::int64_t>(u.modulus());

    for (const SubsetSpec& s : subsets_) {
      const UnramElem lifted = lifted_tau(u, s, a);
      out.push_back(make_congruence("lift-reduction-" + to_string(s.kind),
                                    static_cast<std::int64_t>(u.as_padic(lifted).residue()),
                                    tau(field_, s, a), field_.p()));
    }

    if (field_.p() == 3 && field_.n() >= 3) {
      // subsets_ = {W, X, Y, Z}
      const PadicInt tr = u.as_padic(lifted_tau(u, subsets_[0], a));
      const PadicInt ty = u.as_padic(lifted_tau(u, subsets_[2], a));
      const PadicInt tz = u.as_padic(lifted_tau(u, subsets_[3], a));
      const PadicInt rhs = tr + PadicInt(3, u.precision(), 3) * tz + PadicInt(3, u.precision(), 6) * ty;
      out.push_back(make_congruence("lifted-trace-cube", static_cast<std::int64_t>(tr.pow(3).residue()),
                                    static_cast<std::int64_t>(rhs.residue()), pk));

      const std::int64_t t = trace(field_, a);
      const std::int64_t tx = tau(field_, subsets_[1], a);
      const std::int64_t tzf = tau(field_, subsets_[3], a);
      out.push_back(make_congruence("trace-tauX", t * tx, t + 2 * tzf, 3));
    }

    const UnramElem w = teich(u, a);
    const bool zero = a == field_.zero();
    out.push_back(flag("teich-reduction", u.reduce_mod_p(w) == a));
    out.push_back(flag("teich-root", zero ? w == u.zero() : u.pow(w, field_.q() - 1) == u.one()));
    const FFElem g = field_.generator();
    out.push_back(flag("teich-multiplicative",
                       teich(u, field_.mul(a, g)) == u.mul(w, teich(u, g))));
  }

  Check check_;
  FieldCtx field_;
  std::optional<KloostermanEvaluator> eval_;
  std::optional<UnramCtx> uctx_;
  std::optional<FourierMod27> fourier_;
  std::vector<SubsetSpec> subsets_;
};

std::vector<std::uint64_t> select_positions(const Scope& scope, std::uint64_t domain,
                                            std::uint64_t single_position) {
  std::vector<std::uint64_t> out;
  switch (scope.kind) {
    case Scope::Kind::All:
      out.resize(domain);
      for (std::uint64_t i = 0; i < domain; ++i) out[i] = i;
      break;
    case Scope::Kind::Single:
      out.push_back(single_position);
      break;
    case Scope::Kind::Sample: {
      const std::uint64_t count = std::min(scope.count, domain);
      // Floyd's algorithm: `count` distinct positions.
      std::mt19937_64 rng(scope.seed);
      std::set<std::uint64_t> chosen;
      for (std::uint64_t j = domain - count; j < domain; ++j) {
        std::uniform_int_distribution<std::uint64_t> dist(0, j);
        const std::uint64_t t = dist(rng);
        if (!chosen.insert(t).second) chosen.insert(j);
      }
      out.assign(chosen.begin(), chosen.end());
      break;
    }
  }
  return out;
}

}  // namespace

std::optional<Check> parse_check(std::string_view name) {
  for (const auto& entry : kCheckNames) {
    if (entry.name == name) return entry.check;
  }
  return std::nullopt;
}

std::string_view to_string(Check check) {
  for (const auto& entry : kCheckNames) {
    if (entry.check == check) return entry.name;
  }
  return "?";
}

bool is_exponent_indexed(Check check) {
  return check == Check::Stickelberger || check == Check::Wt1;
}

unsigned effective_precision(const VerificationJob& job) {
  if (job.precision) return *job.precision;
  return job.field.p == 3 ? 3 : 2;
}

void validate(const VerificationJob& job) {
  FieldCtx field = [&] {
    try {
      return job.field.build();
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("invalid field: ") + e.what());
    }
  }();
  const std::uint32_t p = field.p();
  const unsigned n = field.n();
  const std::string check(to_string(job.check));

  switch (job.check) {
    case Check::Mod9:
      if (p != 3 || n < 2) throw ConfigError("mod9 needs p = 3 and n >= 2");
      break;
    case Check::Mod27:
    case Check::Fourier:
    case Check::Wt1:
      if (p != 3 || n < 3) throw ConfigError(check + " needs p = 3 and n >= 3");
      break;
    default:
      break;
  }

  const unsigned precision = effective_precision(job);
  const bool mod27 = job.check == Check::Fourier || job.check == Check::Wt1;
  if (mod27 && precision < 3) throw ConfigError(check + " needs precision >= 3 digits");
  if (precision == 0) throw ConfigError("precision must be at least 1 digit");
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < precision; ++i) {
    pk *= p;
    if (pk >= kMaxPadicModulus) throw ConfigError("precision too high: p^K must stay below 2^31");
  }

  const std::uint64_t domain = is_exponent_indexed(job.check) ? field.q() - 2 : field.q();
  switch (job.scope.kind) {
    case Scope::Kind::Single:
      if (is_exponent_indexed(job.check)) {
        if (job.scope.single < 1 || job.scope.single > field.q() - 2) {
          throw ConfigError("exponent j must lie in [1, q-2]");
        }
      } else if (job.scope.single >= field.q()) {
        throw ConfigError("element index out of range");
      }
      break;
    case Scope::Kind::Sample:
      if (job.scope.count == 0) throw ConfigError("sample count must be positive");
      break;
    case Scope::Kind::All:
      break;
  }
  if (job.check == Check::Spectrum && job.scope.kind != Scope::Kind::All) {
    throw ConfigError("spectrum needs the full element domain (--all)");
  }
  if (domain == 0) throw ConfigError(check + " has an empty domain on this field");
}

SweepReport run_verification(const VerificationJob& job) {
  validate(job);
  const auto start = std::chrono::steady_clock::now();
  const CaseRunner runner(job);
  const FieldCtx& field = runner.field();

  const std::uint64_t single_position =
      is_exponent_indexed(job.check) ? job.scope.single - 1 : job.scope.single;
  const auto positions = select_positions(job.scope, runner.domain_size(), single_position);

  unsigned workers = job.jobs ? job.jobs : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::uint64_t>(workers, std::max<std::uint64_t>(1, positions.size())));

  std::vector<CaseResult> results(positions.size());
  std::vector<std::exception_ptr> errors(workers);
  {
    std::vector<std::jthread> pool;
    const std::uint64_t chunk = (positions.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          const std::uint64_t begin = w * chunk;
          const std::uint64_t end = std::min<std::uint64_t>(positions.size(), begin + chunk);
          for (std::uint64_t i = begin; i < end; ++i) {
            results[i] = runner.run(runner.domain_value(positions[i]));
          }
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  SweepReport report;
  report.job = job;
  report.total = positions.size();
  switch (job.check) {
    case Check::Thm1:
      report.histogram_modulus = static_cast<std::int64_t>(field.p()) * field.p();
      break;
    case Check::Mod9:
      report.histogram_modulus = 9;
      break;
    case Check::Mod27:
    case Check::Fourier:
    case Check::Wt1:
      report.histogram_modulus = 27;
      break;
    default:
      break;
  }

  std::map<std::vector<mpz_class>, std::uint64_t> spectrum_counts;
  CycInt total(field.p());
  for (CaseResult& r : results) {
    if (r.residue && report.histogram_modulus) ++report.histogram[*r.residue];
    if (r.value) {
      ++spectrum_counts[r.value->coords()];
      total += *r.value;
    }
    for (CongruenceReport& c : r.reports) {
      if (!c.pass) report.failures.push_back(c);
      report.records.push_back(std::move(c));
    }
  }

  if (job.check == Check::Spectrum) {
    const auto render = [&](const std::vector<mpz_class>& coords) {
      std::ostringstream os;
      if (std::all_of(coords.begin() + 1, coords.end(), [](const mpz_class& c) { return c == 0; })) {
        os << coords[0];
      } else {
        os << CycInt(field.p(), coords);
      }
      return os.str();
    };
    for (const auto& [key, count] : spectrum_counts) {
      report.extra.push_back("value=" + render(key) + " count=" + std::to_string(count));
    }
    const mpz_class q = static_cast<unsigned long>(field.q());
    const bool ok = total == CycInt::integer(field.p(), q);
    report.extra.push_back("checksum sum=" + render(total.coords()) + " q=" + q.get_str() +
                           (ok ? " ok" : " MISMATCH"));
    if (!ok) {
      auto c = make_comparison("spectrum-checksum", 0, 1, Relation::Equal);
      c.note = report.extra.back();
      report.failures.push_back(c);
      report.records.push_back(c);
    }
  }

  report.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

}  // namespace kloos
