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

// Command-line front end: single computations and verification sweeps.
// Exit codes: 0 pass, 1 verification failure, 2 usage or configuration error.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "kloos/kloosterman.hpp"
#include "kloos/padic.hpp"
#include "kloos/verify.hpp"

namespace {

using namespace kloos;
using nlohmann::ordered_json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string field;
  std::string element;
  bool all = false;
  std::uint64_t sample = 0;
  std::uint64_t seed = 0;
  unsigned jobs = 0;
  std::optional<unsigned> precision;
  std::string format = "summary";
  std::string out;
  std::string check;
  std::uint64_t j = 0;
  std::string x;
  bool all_records = false;
  bool timing = false;
};

ordered_json big(const mpz_class& v) {
  if (v.fits_slong_p()) return v.get_si();
  return v.get_str();
}

ordered_json big_list(const std::vector<mpz_class>& vs) {
  ordered_json arr = ordered_json::array();
  for (const auto& v : vs) arr.push_back(big(v));
  return arr;
}

std::string plain(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + plain(v[i]);
    return s;
  }
  return v.dump();
}

/// Rows of key/value pairs rendered in the chosen format.
class RowWriter {
 public:
  RowWriter(std::ostream& out, ReportFormat format) : out_(out), format_(format) {}

  void write(const ordered_json& row) {
    switch (format_) {
      case ReportFormat::JsonLines:
        out_ << row.dump() << '\n';
        break;
      case ReportFormat::Csv:
        if (!header_written_) {
          bool first = true;
          for (const auto& item : row.items()) {
            out_ << (first ? "" : ",") << item.key();
            first = false;
          }
          out_ << '\n';
          header_written_ = true;
        }
        {
          bool first = true;
          for (const auto& item : row.items()) {
            std::string cell = plain(item.value());
            if (cell.find(',') != std::string::npos) cell = '"' + cell + '"';
            out_ << (first ? "" : ",") << cell;
            first = false;
          }
          out_ << '\n';
        }
        break;
      case ReportFormat::Summary: {
        bool first = true;
        for (const auto& item : row.items()) {
          out_ << (first ? "" : " ") << item.key() << '=' << plain(item.value());
          first = false;
        }
        out_ << '\n';
        break;
      }
    }
  }

 private:
  std::ostream& out_;
  ReportFormat format_;
  bool header_written_ = false;
};

ReportFormat format_of(const Options& o) {
  auto f = parse_format(o.format);
  if (!f) throw ConfigError("unknown format '" + o.format + "' (json-lines, csv, summary)");
  return *f;
}

/// Output stream honouring --out.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ConfigError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::vector<FFElem> elements_of(const FieldCtx& ctx, const Options& o) {
  if (o.all == !o.element.empty()) throw ConfigError("give exactly one of --a or --all");
  if (!o.all) return {parse_element(ctx, o.element)};
  std::vector<FFElem> out;
  out.reserve(ctx.q());
  for (std::uint64_t i = 0; i < ctx.q(); ++i) out.push_back(ctx.from_index(i));
  return out;
}

ordered_json element_row(const FieldCtx& ctx, const FFElem& a) {
  ordered_json row;
  row["index"] = ctx.index_of(a);
  row["a"] = a.coeffs;
  return row;
}

int cmd_kloosterman(const Options& o) {
  const FieldCtx ctx = parse_field_spec(o.field).build();
  const auto elements = elements_of(ctx, o);
  Sink sink(o.out);
  RowWriter w(sink.stream(), format_of(o));
  const KloostermanEvaluator eval(ctx);
  for (const FFElem& a : elements) {
    const KloostermanValue k = eval(a);
    ordered_json row = element_row(ctx, a);
    row["trace"] = trace(ctx, a);
    if (auto r = as_rational(k.value)) {
      row["K"] = big(*r);
    } else {
      row["K"] = big_list(k.value.coords());
    }
    row["counts"] = big_list(k.counts);
    w.write(row);
  }
  return kExitPass;
}

int cmd_poly(const Options& o, bool minimal) {
  const FieldCtx ctx = parse_field_spec(o.field).build();
  const auto elements = elements_of(ctx, o);
  Sink sink(o.out);
  const ReportFormat format = format_of(o);
  RowWriter w(sink.stream(), format);
  const KloostermanEvaluator eval(ctx);
  for (const FFElem& a : elements) {
    ordered_json row = element_row(ctx, a);
    if (minimal) {
      const MinPolyResult m = min_poly(eval, a);
      row["min_poly"] = format == ReportFormat::JsonLines ? ordered_json(big_list(m.min_poly.coeffs()))
                                                          : ordered_json(m.min_poly.to_string());
      row["degree"] = m.min_poly.degree();
      row["multiplicity"] = m.multiplicity;
    } else {
      const IntPolynomial c = char_poly(eval, a);
      row["char_poly"] = format == ReportFormat::JsonLines ? ordered_json(big_list(c.coeffs()))
                                                           : ordered_json(c.to_string());
      row["degree"] = c.degree();
    }
    w.write(row);
  }
  return kExitPass;
}

int cmd_gauss(const Options& o) {
  const FieldCtx ctx = parse_field_spec(o.field).build();
  const unsigned precision = o.precision.value_or(ctx.p() == 3 ? 3 : 2);
  const UnramCtx u(ctx, precision);
  std::vector<std::uint64_t> js;
  if (o.all == (o.j != 0)) throw ConfigError("give exactly one of --j or --all");
  if (o.all) {
    for (std::uint64_t j = 1; j + 2 <= ctx.q(); ++j) js.push_back(j);
  } else {
    js.push_back(o.j);
  }
  Sink sink(o.out);
  RowWriter w(sink.stream(), format_of(o));
  for (std::uint64_t j : js) {
    const EisNormal g = gauss_gk(u, j);
    ordered_json row;
    row["j"] = j;
    row["weight"] = weight_p(j, ctx.p());
    row["pi_exponent"] = g.pi_exponent;
    row["p_exponent"] = g.p_exponent;
    row["unit"] = u.as_padic(g.unit).residue();
    row["modulus"] = u.modulus();
    if (ctx.p() == 3 && precision >= 3) row["g_squared_mod27"] = gauss_sq_mod27(u, j).residue();
    w.write(row);
  }
  return kExitPass;
}

int cmd_gamma(const Options& o) {
  const FieldCtx ctx = parse_field_spec(o.field).build();
  const unsigned precision = o.precision.value_or(ctx.p() == 3 ? 3 : 2);
  std::int64_t num = 0, den = 1;
  {
    const auto slash = o.x.find('/');
    try {
      num = std::stoll(o.x.substr(0, slash));
      if (slash != std::string::npos) den = std::stoll(o.x.substr(slash + 1));
    } catch (const std::exception&) {
      throw ConfigError("--x must be an integer or a fraction num/den");
    }
  }
  const PadicInt x = pad_from_rational(num, den, ctx.p(), precision);
  Sink sink(o.out);
  RowWriter w(sink.stream(), format_of(o));
  ordered_json row;
  row["x"] = o.x;
  row["residue"] = x.residue();
  row["gamma"] = gamma_p(x).residue();
  row["modulus"] = x.modulus();
  w.write(row);
  return kExitPass;
}

int cmd_spectrum(const Options& o) {
  VerificationJob job;
  job.field = parse_field_spec(o.field);
  job.check = Check::Spectrum;
  job.jobs = o.jobs;
  job.precision = o.precision;
  const SweepReport report = run_verification(job);
  Sink sink(o.out);
  emit_report(report, sink.stream(), EmitOptions{format_of(o), o.all_records, o.timing});
  return report.passed() ? kExitPass : kExitFail;
}

int cmd_verify(const Options& o) {
  VerificationJob job;
  job.field = parse_field_spec(o.field);
  const auto check = parse_check(o.check);
  if (!check) throw ConfigError("unknown check '" + o.check + "'");
  job.check = *check;
  job.jobs = o.jobs;
  job.precision = o.precision;

  const int scopes = (o.all ? 1 : 0) + (o.element.empty() ? 0 : 1) + (o.j ? 1 : 0) + (o.sample ? 1 : 0);
  if (scopes != 1) throw ConfigError("give exactly one of --all, --a, --j or --sample");
  if (o.all) {
    job.scope.kind = Scope::Kind::All;
  } else if (o.sample) {
    job.scope = Scope{Scope::Kind::Sample, 0, o.sample, o.seed};
  } else if (o.j) {
    if (!is_exponent_indexed(job.check)) throw ConfigError("--j applies to stickelberger and wt1");
    job.scope = Scope{Scope::Kind::Single, o.j, 0, 0};
  } else {
    if (is_exponent_indexed(job.check)) throw ConfigError("use --j for " + o.check);
    const FieldCtx ctx = job.field.build();
    job.scope = Scope{Scope::Kind::Single, ctx.index_of(parse_element(ctx, o.element)), 0, 0};
  }

  const SweepReport report = run_verification(job);
  Sink sink(o.out);
  emit_report(report, sink.stream(), EmitOptions{format_of(o), o.all_records, o.timing});
  return report.passed() ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Kloosterman sums, their minimal polynomials, and congruence sweeps"};
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--field", o.field, "p=<int>,n=<int>[,mod=<c0>,...,<cn>]")->required();
    sub->add_option("--format", o.format, "json-lines | csv | summary");
    sub->add_option("--out", o.out, "write output to this file");
    sub->add_option("--precision", o.precision, "p-adic precision in digits");
    sub->add_option("--jobs", o.jobs, "worker threads (0 = all cores)");
  };

  auto* kl = app.add_subcommand("kloosterman", "K_q(a) as an exact cyclotomic integer");
  auto* mp = app.add_subcommand("minpoly", "minimal polynomial of K_q(a) over Q");
  auto* cp = app.add_subcommand("charpoly", "characteristic polynomial of K_q(a) over Q");
  for (auto* sub : {kl, mp, cp}) {
    common(sub);
    sub->add_option("--a", o.element, "element coordinates, constant first, e.g. 1,0,2");
    sub->add_flag("--all", o.all, "every element of the field");
  }

  auto* ga = app.add_subcommand("gauss", "Gauss sum g(j) in Gross-Koblitz normal form");
  common(ga);
  ga->add_option("--j", o.j, "exponent j in [1, q-2]");
  ga->add_flag("--all", o.all, "every j in [1, q-2]");

  auto* gm = app.add_subcommand("gamma", "p-adic gamma function at a rational argument");
  common(gm);
  gm->add_option("--x", o.x, "argument: integer or num/den with den prime to p")->required();

  auto* sp = app.add_subcommand("spectrum", "value distribution of K_q(a) over all a");
  common(sp);
  sp->add_flag("--records", o.all_records, "json-lines: emit every case");
  sp->add_flag("--timing", o.timing, "include wall time");

  auto* ve = app.add_subcommand("verify", "run a congruence check over a scope");
  common(ve);
  ve->add_option("--check", o.check,
                 "thm1 | mod9 | mod27 | stickelberger | wt1 | fourier | moisio | wan | weil | "
                 "identities | spectrum")
      ->required();
  ve->add_option("--a", o.element, "single element");
  ve->add_option("--j", o.j, "single exponent (stickelberger, wt1)");
  ve->add_flag("--all", o.all, "whole domain");
  ve->add_option("--sample", o.sample, "number of sampled cases");
  ve->add_option("--seed", o.seed, "sampling seed");
  ve->add_flag("--records", o.all_records, "json-lines: emit every case, not only failures");
  ve->add_flag("--timing", o.timing, "include wall time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (kl->parsed()) return cmd_kloosterman(o);
    if (mp->parsed()) return cmd_poly(o, true);
    if (cp->parsed()) return cmd_poly(o, false);
    if (ga->parsed()) return cmd_gauss(o);
    if (gm->parsed()) return cmd_gamma(o);
    if (sp->parsed()) return cmd_spectrum(o);
    if (ve->parsed()) return cmd_verify(o);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
