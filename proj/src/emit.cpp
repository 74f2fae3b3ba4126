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

#include <json.hpp>

#include "kloos/verify.hpp"

namespace kloos {

namespace {

using nlohmann::json;

std::string_view relation_name(Relation r) {
  switch (r) {
    case Relation::Congruent: return "congruent";
    case Relation::Equal: return "equal";
    case Relation::AtMost: return "at_most";
  }
  return "?";
}

std::string scope_name(const Scope& s) {
  switch (s.kind) {
    case Scope::Kind::All: return "all";
    case Scope::Kind::Single: return "single";
    case Scope::Kind::Sample: return "sample";
  }
  return "?";
}

json record_json(const SweepReport& report, const CongruenceReport& r) {
  json j;
  j["type"] = "case";
  j["check"] = to_string(report.job.check);
  j["subject"] = r.subject;
  if (r.witness.empty()) {
    j["j"] = r.index;
  } else {
    j["index"] = r.index;
    j["element"] = r.witness;
  }
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  if (r.relation == Relation::Congruent) j["modulus"] = r.modulus;
  j["relation"] = relation_name(r.relation);
  j["pass"] = r.pass;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

json summary_json(const SweepReport& report, bool timing) {
  json j;
  j["type"] = "summary";
  j["check"] = to_string(report.job.check);
  j["field"] = report.job.field.to_string();
  j["scope"] = scope_name(report.job.scope);
  if (report.job.scope.kind == Scope::Kind::Sample) {
    j["sample"] = report.job.scope.count;
    j["seed"] = report.job.scope.seed;
  }
  if (report.job.scope.kind == Scope::Kind::Single) j["single"] = report.job.scope.single;
  j["precision"] = effective_precision(report.job);
  j["total"] = report.total;
  j["failures"] = report.failures.size();
  j["pass"] = report.passed();
  if (report.histogram_modulus) {
    json hist = json::object();
    for (const auto& [residue, count] : report.histogram) hist[std::to_string(residue)] = count;
    j["histogram_modulus"] = report.histogram_modulus;
    j["histogram"] = hist;
  }
  if (!report.extra.empty()) j["extra"] = report.extra;
  if (timing) j["wall_seconds"] = report.wall_seconds;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string describe(const CongruenceReport& r) {
  std::string s = "failure " + r.subject;
  s += r.witness.empty() ? " j=" + std::to_string(r.index)
                         : " index=" + std::to_string(r.index) +
                               " element=" + format_element(FFElem{r.witness});
  s += " lhs=" + std::to_string(r.lhs) + " rhs=" + std::to_string(r.rhs);
  if (r.relation == Relation::Congruent) s += " mod=" + std::to_string(r.modulus);
  if (!r.note.empty()) s += " (" + r.note + ")";
  return s;
}

}  // namespace

std::optional<ReportFormat> parse_format(std::string_view name) {
  if (name == "json-lines") return ReportFormat::JsonLines;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "summary") return ReportFormat::Summary;
  return std::nullopt;
}

void emit_report(const SweepReport& report, std::ostream& out, const EmitOptions& options) {
  switch (options.format) {
    case ReportFormat::JsonLines: {
      const auto& rows = options.all_records ? report.records : report.failures;
      for (const auto& r : rows) out << record_json(report, r).dump() << '\n';
      out << summary_json(report, options.timing).dump() << '\n';
      break;
    }
    case ReportFormat::Csv: {
      out << "check,subject,index,element,lhs,rhs,modulus,relation,pass,note\n";
      for (const auto& r : report.records) {
        out << to_string(report.job.check) << ',' << r.subject << ',' << r.index << ','
            << csv_escape(format_element(FFElem{r.witness})) << ',' << r.lhs << ',' << r.rhs << ','
            << r.modulus << ',' << relation_name(r.relation) << ',' << (r.pass ? 1 : 0) << ','
            << csv_escape(r.note) << '\n';
      }
      break;
    }
    case ReportFormat::Summary: {
      out << (report.passed() ? "PASS" : "FAIL") << " total=" << report.total;
      if (!report.passed()) out << " failures=" << report.failures.size();
      out << '\n';
      out << "check=" << to_string(report.job.check) << " field=" << report.job.field.to_string()
          << " scope=" << scope_name(report.job.scope);
      if (report.job.scope.kind == Scope::Kind::Sample) {
        out << " sample=" << report.job.scope.count << " seed=" << report.job.scope.seed;
      }
      out << '\n';
      for (const auto& [residue, count] : report.histogram) {
        out << "residue " << residue << " mod " << report.histogram_modulus << ": " << count << '\n';
      }
      for (const auto& line : report.extra) out << line << '\n';
      for (const auto& r : report.failures) out << describe(r) << '\n';
      if (options.timing) out << "wall_seconds=" << report.wall_seconds << '\n';
      break;
    }
  }
  if (!out) throw std::runtime_error("failed to write report");
}

}  // namespace kloos
