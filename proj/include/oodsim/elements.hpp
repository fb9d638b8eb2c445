// Copyright 2026 The oodsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OODSIM_ELEMENTS_HPP_
#define OODSIM_ELEMENTS_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oodsim/corpus.hpp"
#include "oodsim/lexer.hpp"

namespace oodsim {

// Language-element taxonomy. The enumerator order is the taxonomy order used
// for tie-breaking and report layout; do not reorder.
enum class ElementKind : std::uint8_t {
  kElse,
  kTrue,
  kFloatingPointType,
  kUnaryExpression,
  kArrayAccess,
  kWhileStatement,
  kLong,
  kArrayCreationExpression,
  kBreak,
  kGeOperator,
  kFor,
  kOrOperator,
  kConditionalExpression,
};

inline constexpr std::size_t kNumElementKinds = 13;
inline constexpr int kElementTaxonomyVersion = 1;

inline constexpr std::array<ElementKind, kNumElementKinds> kAllElementKinds = {
    ElementKind::kElse,          ElementKind::kTrue,
    ElementKind::kFloatingPointType, ElementKind::kUnaryExpression,
    ElementKind::kArrayAccess,   ElementKind::kWhileStatement,
    ElementKind::kLong,          ElementKind::kArrayCreationExpression,
    ElementKind::kBreak,         ElementKind::kGeOperator,
    ElementKind::kFor,           ElementKind::kOrOperator,
    ElementKind::kConditionalExpression,
};

// Stable report name: "else", "while_statement", ">=", "||", ...
std::string_view to_string(ElementKind kind);

// Accepts the report names plus the aliases "ge_operator" / "or_operator".
std::optional<ElementKind> parse_element_kind(std::string_view name);

// Like parse_element_kind but throws InputError naming the bad value.
ElementKind element_kind_from_string(std::string_view name);

class ElementHistogram {
 public:
  std::uint64_t count(ElementKind kind) const {
    return counts_[static_cast<std::size_t>(kind)];
  }
  void add(ElementKind kind, std::uint64_t n = 1) {
    counts_[static_cast<std::size_t>(kind)] += n;
  }
  bool contains(ElementKind kind) const { return count(kind) > 0; }
  std::uint64_t total() const;

  ElementHistogram& operator+=(const ElementHistogram& other);
  bool operator==(const ElementHistogram&) const = default;

 private:
  std::array<std::uint64_t, kNumElementKinds> counts_{};
};

// Rule-based recognizer over a token stream (comments already removed).
// Detection rules:
//   else/true/break/for/long  keyword occurrence
//   while_statement           `while`, except the tail of a do-while
//   floating_point_type       `float` or `double`
//   >= / ||                   operator tokens
//   unary_expression          prefix `!`/`~`; `-`/`+` after an operator (not
//                             postfix ++/--), `(`, `[`, `{`, `,`, `return`,
//                             `case`, a primitive cast, or at stream start
//   array_access              `[` after an identifier, `]` or `)`, unless it
//                             is a creation dimension or a `[]`/`[,]` declarator
//   array_creation_expression `new` Type (qualified/generic) `[`
//   conditional_expression    `?` after an expression end, outside generic
//                             arguments, with a matching `:`
ElementHistogram extract_elements(std::span<const Token> tokens);

// Convenience: tokenize + extract. Throws LexError.
ElementHistogram extract_elements(std::string_view code);

// True iff the sample's basis text contains `kind`. Throws LexError.
bool contains_element(const CodeSample& sample, TaskKind task, ElementKind kind,
                      std::optional<Basis> basis_override = std::nullopt);

// Default syntax scenarios: five elements per task.
std::vector<ElementKind> default_element_preset(TaskKind task);

}  // namespace oodsim

#endif  // OODSIM_ELEMENTS_HPP_
