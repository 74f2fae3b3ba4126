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

#ifndef KLOOS_REPORT_HPP
#define KLOOS_REPORT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kloos/ff.hpp"

namespace kloos {

enum class Relation {
  Congruent,  // lhs == rhs as residues mod `modulus`
  Equal,      // lhs == rhs as integers
  AtMost,     // lhs <= rhs
};

/// Outcome of one check on one input. `witness` is the field element for
/// element-indexed checks and empty for checks indexed by an exponent j,
/// in which case `index` holds j.
struct CongruenceReport {
  std::string subject;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::int64_t modulus = 0;
  Relation relation = Relation::Congruent;
  bool pass = false;
  std::uint64_t index = 0;
  std::vector<Residue> witness;
  std::string note;
};

inline std::int64_t residue_mod(std::int64_t v, std::int64_t m) { return ((v % m) + m) % m; }

/// Residues are normalised into [0, modulus) before comparison.
inline CongruenceReport make_congruence(std::string subject, std::int64_t lhs, std::int64_t rhs,
                                        std::int64_t modulus) {
  CongruenceReport r;
  r.subject = std::move(subject);
  r.modulus = modulus;
  r.lhs = residue_mod(lhs, modulus);
  r.rhs = residue_mod(rhs, modulus);
  r.relation = Relation::Congruent;
  r.pass = r.lhs == r.rhs;
  return r;
}

inline CongruenceReport make_comparison(std::string subject, std::int64_t lhs, std::int64_t rhs,
                                        Relation relation) {
  CongruenceReport r;
  r.subject = std::move(subject);
  r.lhs = lhs;
  r.rhs = rhs;
  r.relation = relation;
  r.pass = relation == Relation::AtMost ? lhs <= rhs : lhs == rhs;
  return r;
}

}  // namespace kloos

#endif  // KLOOS_REPORT_HPP
