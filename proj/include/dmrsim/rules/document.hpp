#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dmrsim/rules/quantity.hpp"

namespace dmrsim::rules {

/// Location of a token in the source text, 1-based.
struct SourceSpan {
  int line = 0;
  int column = 0;
  int length = 0;
};

struct Diagnostic {
  SourceSpan span;
  std::string message;
};

struct Assignment {
  std::string symbol;
  Quantity value;
  SourceSpan span;

  friend bool operator==(const Assignment& a, const Assignment& b) {
    return a.symbol == b.symbol && a.value == b.value;
  }
};

/// Parsed rule document: a named block of unit-checked symbol assignments.
/// Magnitudes are normalized to base units at parse time, so "300 mm" and
/// "0.3 m" produce equal documents.
struct RuleDocument {
  std::string name;
  std::vector<Assignment> assignments;

  const Assignment* find(std::string_view symbol) const;
  std::optional<Quantity> get(std::string_view symbol) const;

  friend bool operator==(const RuleDocument& a, const RuleDocument& b) {
    return a.name == b.name && a.assignments == b.assignments;
  }
};

struct ParseResult {
  std::optional<RuleDocument> document;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return document.has_value(); }
};

/// Symbols the grammar accepts, with their expected dimensions. v_max,
/// t_stop_budget, d_brake, d_min and warning_margin are required; the rest
/// default at compile time.
struct SymbolSpec {
  std::string_view name;
  Dimension dim;
  bool required;
};
const std::vector<SymbolSpec>& known_symbols();

ParseResult parse_rules(std::string_view text);

/// Canonical rendering; parse_rules(print_rules(doc)) reproduces doc.
std::string print_rules(const RuleDocument& doc);

}  // namespace dmrsim::rules
