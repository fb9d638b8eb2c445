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

#include "oodsim/elements.hpp"

#include <numeric>
#include <unordered_set>

#include "oodsim/error.hpp"

namespace oodsim {

std::string_view to_string(ElementKind kind) {
  switch (kind) {
    case ElementKind::kElse: return "else";
    case ElementKind::kTrue: return "true";
    case ElementKind::kFloatingPointType: return "floating_point_type";
    case ElementKind::kUnaryExpression: return "unary_expression";
    case ElementKind::kArrayAccess: return "array_access";
    case ElementKind::kWhileStatement: return "while_statement";
    case ElementKind::kLong: return "long";
    case ElementKind::kArrayCreationExpression: return "array_creation_expression";
    case ElementKind::kBreak: return "break";
    case ElementKind::kGeOperator: return ">=";
    case ElementKind::kFor: return "for";
    case ElementKind::kOrOperator: return "||";
    case ElementKind::kConditionalExpression: return "conditional_expression";
  }
  return "unknown";
}

std::optional<ElementKind> parse_element_kind(std::string_view name) {
  for (const auto kind : kAllElementKinds) {
    if (to_string(kind) == name) return kind;
  }
  if (name == "ge_operator") return ElementKind::kGeOperator;
  if (name == "or_operator") return ElementKind::kOrOperator;
  return std::nullopt;
}

ElementKind element_kind_from_string(std::string_view name) {
  if (const auto kind = parse_element_kind(name)) return *kind;
  throw InputError("unknown language element \"" + std::string(name) + "\"");
}

std::uint64_t ElementHistogram::total() const {
  return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

ElementHistogram& ElementHistogram::operator+=(const ElementHistogram& other) {
  for (std::size_t i = 0; i < kNumElementKinds; ++i) counts_[i] += other.counts_[i];
  return *this;
}

namespace {

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Keywords of the C# table that are plain identifiers in Java, plus the
// indexable `this` / `base`. Declarators such as `string[]` are still
// rejected by the empty-bracket check.
bool is_name_keyword(std::string_view word) {
  static const std::unordered_set<std::string_view> kNames = {
      "this", "base", "as", "checked", "decimal", "delegate", "event", "explicit",
      "extern", "fixed", "implicit", "in", "internal", "is", "lock", "namespace",
      "object", "operator", "out", "override", "params", "readonly", "ref", "sbyte",
      "sealed", "string", "struct", "typeof", "uint", "ulong", "unchecked", "unsafe",
      "ushort", "using", "virtual", "bool"};
  return kNames.count(word) > 0;
}

class Recognizer {
 public:
  explicit Recognizer(std::span<const Token> toks)
      : t_(toks), match_(toks.size(), kNone), creation_bracket_(toks.size(), false),
        in_generic_(toks.size(), false), do_tail_(toks.size(), false) {}

  ElementHistogram run() {
    match_brackets();
    mark_generics();
    mark_creations();
    mark_do_tails();

    ElementHistogram h;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      const Token& tok = t_[i];
      if (tok.kind == TokenKind::kKeyword) {
        const std::string_view w = tok.text;
        if (w == "else") h.add(ElementKind::kElse);
        else if (w == "true") h.add(ElementKind::kTrue);
        else if (w == "break") h.add(ElementKind::kBreak);
        else if (w == "for") h.add(ElementKind::kFor);
        else if (w == "long") h.add(ElementKind::kLong);
        else if (w == "float" || w == "double") h.add(ElementKind::kFloatingPointType);
        else if (w == "while" && !do_tail_[i]) h.add(ElementKind::kWhileStatement);
      } else if (tok.kind == TokenKind::kOperator) {
        const std::string_view op = tok.text;
        if (op == ">=") h.add(ElementKind::kGeOperator);
        else if (op == "||") h.add(ElementKind::kOrOperator);
        else if (op == "!" || op == "~") h.add(ElementKind::kUnaryExpression);
        else if ((op == "-" || op == "+") && unary_context(i)) h.add(ElementKind::kUnaryExpression);
        else if (op == "?" && is_conditional(i)) h.add(ElementKind::kConditionalExpression);
      } else if (tok.kind == TokenKind::kPunct) {
        if (tok.text == "[" && is_array_access(i)) h.add(ElementKind::kArrayAccess);
      }
    }
    for (const bool c : creation_start_) {
      if (c) h.add(ElementKind::kArrayCreationExpression);
    }
    return h;
  }

 private:
  bool is(std::size_t i, std::string_view text) const {
    return i < t_.size() && t_[i].text == text &&
           (t_[i].kind == TokenKind::kPunct || t_[i].kind == TokenKind::kOperator ||
            t_[i].kind == TokenKind::kKeyword);
  }

  bool is_type_name(std::size_t i) const {
    return i < t_.size() &&
           (t_[i].kind == TokenKind::kIdentifier ||
            (t_[i].kind == TokenKind::kKeyword && is_builtin_type(t_[i].text)));
  }

  void match_brackets() {
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i].kind != TokenKind::kPunct) continue;
      const std::string_view p = t_[i].text;
      if (p == "(" || p == "[" || p == "{") {
        stack.push_back(i);
      } else if (p == ")" || p == "]" || p == "}") {
        const char open = p == ")" ? '(' : p == "]" ? '[' : '{';
        // Unwind to the nearest matching opener; unmatched closers are ignored.
        for (std::size_t k = stack.size(); k > 0; --k) {
          if (t_[stack[k - 1]].text[0] == open) {
            match_[stack[k - 1]] = i;
            match_[i] = stack[k - 1];
            stack.resize(k - 1);
            break;
          }
        }
      }
    }
  }

  // If t_[open] is '<' starting a type-argument list, returns the index of the
  // token that closes it (a '>' / '>>' / '>>>'), else kNone.
  std::size_t generic_close(std::size_t open) const {
    int depth = 0;
    for (std::size_t j = open; j < t_.size(); ++j) {
      const Token& tok = t_[j];
      const std::string_view x = tok.text;
      if (tok.kind == TokenKind::kOperator) {
        if (x == "<") {
          ++depth;
        } else if (x == ">" || x == ">>" || x == ">>>") {
          depth -= static_cast<int>(x.size());
          if (depth <= 0) return j;
        } else if (x == "?") {
          // Java wildcard `<?`, `, ?` or C# nullable argument `T?>` / `T?,`.
          const bool wildcard = j > 0 && (is(j - 1, "<") || is(j - 1, ","));
          const bool nullable = is(j + 1, ">") || is(j + 1, ",") || is(j + 1, ">>") ||
                                is(j + 1, ">>>") || is(j + 1, "[");
          if (!wildcard && !nullable) return kNone;
        } else if (x != "&") {
          return kNone;
        }
      } else if (tok.kind == TokenKind::kPunct) {
        if (x == "[") {
          if (match_[j] == kNone) return kNone;
          // Only array declarators (`[]`, `[,]`) may appear in type arguments.
          for (std::size_t k = j + 1; k < match_[j]; ++k) {
            if (!is(k, ",")) return kNone;
          }
          j = match_[j];
        } else if (x != "," && x != "." && x != "@") {
          return kNone;
        }
      } else if (tok.kind == TokenKind::kKeyword) {
        if (!is_builtin_type(x) && x != "extends" && x != "super" && x != "void") {
          return kNone;
        }
      } else if (tok.kind != TokenKind::kIdentifier) {
        return kNone;
      }
    }
    return kNone;
  }

  void mark_generics() {
    for (std::size_t i = 1; i < t_.size(); ++i) {
      if (!is(i, "<")) continue;
      if (t_[i - 1].kind != TokenKind::kIdentifier && !is(i - 1, ".")) continue;
      const std::size_t close = generic_close(i);
      if (close == kNone) continue;
      for (std::size_t k = i; k <= close; ++k) in_generic_[k] = true;
    }
  }

  void mark_creations() {
    creation_start_.assign(t_.size(), false);
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i].kind != TokenKind::kKeyword || t_[i].text != "new") continue;
      std::size_t j = i + 1;
      if (!is_type_name(j)) continue;
      ++j;
      while (j < t_.size()) {
        if ((is(j, ".") || is(j, "::")) && j + 1 < t_.size() &&
            t_[j + 1].kind == TokenKind::kIdentifier) {
          j += 2;
        } else if (is(j, "<")) {
          const std::size_t close = generic_close(j);
          if (close == kNone) break;
          j = close + 1;
        } else {
          break;
        }
      }
      if (is(j, "?") && is(j + 1, "[")) ++j;
      if (!is(j, "[")) continue;
      creation_start_[i] = true;
      while (is(j, "[") && match_[j] != kNone) {
        creation_bracket_[j] = true;
        j = match_[j] + 1;
      }
    }
  }

  void mark_do_tails() {
    for (std::size_t i = 0; i < t_.size(); ++i) {
      if (t_[i].kind != TokenKind::kKeyword || t_[i].text != "do") continue;
      std::size_t body_end = kNone;
      if (is(i + 1, "{")) {
        body_end = match_[i + 1];
      } else {
        // Single-statement body: first ';' at the same nesting level.
        for (std::size_t j = i + 1; j < t_.size(); ++j) {
          if (t_[j].kind == TokenKind::kPunct &&
              (t_[j].text == "(" || t_[j].text == "[" || t_[j].text == "{") &&
              match_[j] != kNone) {
            j = match_[j];
          } else if (is(j, ";")) {
            body_end = j;
            break;
          }
        }
      }
      if (body_end != kNone && body_end + 1 < t_.size() &&
          t_[body_end + 1].kind == TokenKind::kKeyword &&
          t_[body_end + 1].text == "while") {
        do_tail_[body_end + 1] = true;
      }
    }
  }

  // `(int)`, `(double[])` and friends: a cast whose operand follows.
  bool is_primitive_cast_close(std::size_t close) const {
    const std::size_t open = match_[close];
    if (open == kNone || open + 1 >= close) return false;
    if (!(t_[open + 1].kind == TokenKind::kKeyword && is_builtin_type(t_[open + 1].text))) {
      return false;
    }
    for (std::size_t k = open + 2; k < close; ++k) {
      if (!is(k, "[") && !is(k, "]")) return false;
    }
    return true;
  }

  bool unary_context(std::size_t i) const {
    if (i == 0) return true;
    const Token& prev = t_[i - 1];
    switch (prev.kind) {
      case TokenKind::kOperator:
        return prev.text != "++" && prev.text != "--" && !in_generic_[i - 1];
      case TokenKind::kPunct:
        if (prev.text == ")") return is_primitive_cast_close(i - 1);
        return prev.text == "(" || prev.text == "[" || prev.text == "{" ||
               prev.text == ",";
      case TokenKind::kKeyword:
        return prev.text == "return" || prev.text == "case";
      default:
        return false;
    }
  }

  bool ends_expression(std::size_t i) const {
    const Token& tok = t_[i];
    switch (tok.kind) {
      case TokenKind::kIdentifier:
      case TokenKind::kNumber:
      case TokenKind::kStringLit:
      case TokenKind::kCharLit:
        return true;
      case TokenKind::kKeyword:
        return tok.text == "true" || tok.text == "false" || tok.text == "null" ||
               tok.text == "this";
      case TokenKind::kPunct:
        return tok.text == ")" || tok.text == "]";
      default:
        return false;
    }
  }

  bool is_conditional(std::size_t i) const {
    if (i == 0 || in_generic_[i] || !ends_expression(i - 1)) return false;
    // Look for the matching ':' before the enclosing statement ends.
    int nested = 0;
    for (std::size_t j = i + 1; j < t_.size(); ++j) {
      const Token& tok = t_[j];
      if (tok.kind == TokenKind::kPunct) {
        const std::string_view p = tok.text;
        if (p == "(" || p == "[" || p == "{") {
          if (match_[j] == kNone) return false;
          j = match_[j];
        } else if (p == ")" || p == "]" || p == "}" || p == ";") {
          return false;
        }
      } else if (tok.kind == TokenKind::kOperator && !in_generic_[j]) {
        if (tok.text == "?") {
          ++nested;
        } else if (tok.text == ":") {
          if (nested == 0) return true;
          --nested;
        }
      }
    }
    return false;
  }

  bool is_array_access(std::size_t i) const {
    if (i == 0 || creation_bracket_[i] || match_[i] == kNone) return false;
    const Token& prev = t_[i - 1];
    const bool after_expr = prev.kind == TokenKind::kIdentifier || is_name_keyword(prev.text) ||
                            (prev.kind == TokenKind::kPunct &&
                             (prev.text == "]" || prev.text == ")"));
    if (!after_expr) return false;
    for (std::size_t k = i + 1; k < match_[i]; ++k) {
      if (!is(k, ",")) return true;
    }
    return false;  // `[]` or `[,]` declarator
  }

  std::span<const Token> t_;
  std::vector<std::size_t> match_;
  std::vector<bool> creation_bracket_;
  std::vector<bool> creation_start_;
  std::vector<bool> in_generic_;
  std::vector<bool> do_tail_;
};

}  // namespace

ElementHistogram extract_elements(std::span<const Token> tokens) {
  return Recognizer(tokens).run();
}

ElementHistogram extract_elements(std::string_view code) {
  const auto tokens = tokenize(code);
  return extract_elements(tokens);
}

bool contains_element(const CodeSample& sample, TaskKind task, ElementKind kind,
                      std::optional<Basis> basis_override) {
  return extract_elements(basis_text(sample, task, basis_override)).contains(kind);
}

std::vector<ElementKind> default_element_preset(TaskKind task) {
  switch (task) {
    case TaskKind::kText2Code:
      return {ElementKind::kElse, ElementKind::kFloatingPointType,
              ElementKind::kUnaryExpression, ElementKind::kArrayAccess,
              ElementKind::kTrue};
    case TaskKind::kRefinement:
      return {ElementKind::kWhileStatement, ElementKind::kLong,
              ElementKind::kArrayCreationExpression, ElementKind::kBreak,
              ElementKind::kGeOperator};
    case TaskKind::kTranslation:
      return {ElementKind::kFor, ElementKind::kTrue,
              ElementKind::kArrayCreationExpression, ElementKind::kOrOperator,
              ElementKind::kConditionalExpression};
  }
  return {};
}

}  // namespace oodsim
