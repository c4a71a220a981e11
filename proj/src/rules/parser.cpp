#include <cctype>
#include <charconv>

#include "dmrsim/rules/document.hpp"

namespace dmrsim::rules {

namespace {

struct Token {
  std::string text;
  SourceSpan span;
};

/// Splits one physical line into whitespace-separated tokens, dropping
/// everything from '#' onward.
std::vector<Token> tokenize_line(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
           line[i] != '#')
      ++i;
    out.push_back(Token{std::string(line.substr(start, i - start)),
                        SourceSpan{line_no, static_cast<int>(start) + 1,
                                   static_cast<int>(i - start)}});
  }
  return out;
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return !std::isdigit(static_cast<unsigned char>(s.front()));
}

/// Parses a decimal literal with at most six fractional digits into micro
/// units, without a detour through floating point.
std::optional<std::int64_t> parse_decimal_micro(std::string_view s) {
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::size_t int_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == int_start) return std::nullopt;
  std::int64_t whole = 0;
  auto [p1, e1] = std::from_chars(s.data() + int_start, s.data() + i, whole);
  if (e1 != std::errc{} || p1 != s.data() + i) return std::nullopt;

  std::int64_t frac = 0;
  if (i < s.size() && s[i] == '.') {
    ++i;
    std::size_t frac_start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    std::size_t digits = i - frac_start;
    if (digits == 0 || digits > 6) return std::nullopt;
    auto [p2, e2] = std::from_chars(s.data() + frac_start, s.data() + i, frac);
    if (e2 != std::errc{} || p2 != s.data() + i) return std::nullopt;
    for (std::size_t k = digits; k < 6; ++k) frac *= 10;
  }
  if (i != s.size()) return std::nullopt;
  if (whole > (INT64_MAX - frac) / Quantity::kScale) return std::nullopt;
  std::int64_t micro = whole * Quantity::kScale + frac;
  return neg ? -micro : micro;
}

}  // namespace

const std::vector<SymbolSpec>& known_symbols() {
  static const std::vector<SymbolSpec> specs = {
      {"v_max", kSpeed, true},
      {"t_stop_budget", kTime, true},
      {"d_brake", kLength, true},
      {"d_min", kLength, true},
      {"warning_margin", kLength, true},
      {"margin_factor", kScalar, false},
      {"category", kScalar, false},
      {"dc_target", kScalar, false},
  };
  return specs;
}

const Assignment* RuleDocument::find(std::string_view symbol) const {
  for (const auto& a : assignments)
    if (a.symbol == symbol) return &a;
  return nullptr;
}

std::optional<Quantity> RuleDocument::get(std::string_view symbol) const {
  const Assignment* a = find(symbol);
  if (!a) return std::nullopt;
  return a->value;
}

ParseResult parse_rules(std::string_view text) {
  ParseResult result;
  auto error = [&](SourceSpan span, std::string msg) {
    result.diagnostics.push_back(Diagnostic{span, std::move(msg)});
  };

  RuleDocument doc;
  enum class State { ExpectRule, ExpectBody, Done };
  State state = State::ExpectRule;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? text.size() - pos : eol - pos);
    ++line_no;
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;

    std::vector<Token> toks = tokenize_line(line, line_no);
    if (toks.empty()) continue;

    switch (state) {
      case State::ExpectRule: {
        if (toks[0].text != "rule") {
          error(toks[0].span, "expected 'rule <name> {'");
          return result;
        }
        if (toks.size() != 3 || toks[2].text != "{" || !valid_identifier(toks[1].text)) {
          error(toks[0].span, "malformed rule header, expected 'rule <name> {'");
          return result;
        }
        doc.name = toks[1].text;
        state = State::ExpectBody;
        break;
      }
      case State::ExpectBody: {
        if (toks.size() == 1 && toks[0].text == "}") {
          state = State::Done;
          break;
        }
        // assignment: symbol = number [unit]
        if (toks.size() < 3 || toks[1].text != "=") {
          error(toks[0].span, "expected '<symbol> = <number> [unit]'");
          break;
        }
        if (toks.size() > 4) {
          error(toks[4].span, "unexpected trailing tokens");
          break;
        }
        const std::string& sym = toks[0].text;
        const SymbolSpec* spec = nullptr;
        for (const auto& s : known_symbols())
          if (s.name == sym) spec = &s;
        if (!spec) {
          error(toks[0].span, "unknown symbol '" + sym + "'");
          break;
        }
        if (doc.find(sym)) {
          error(toks[0].span, "duplicate assignment of '" + sym + "'");
          break;
        }
        auto micro = parse_decimal_micro(toks[2].text);
        if (!micro) {
          error(toks[2].span,
                "malformed number '" + toks[2].text + "' (decimal, at most six fractional digits)");
          break;
        }
        Quantity value;
        if (toks.size() == 4) {
          auto unit = lookup_unit(toks[3].text);
          if (!unit) {
            error(toks[3].span, "unknown unit '" + toks[3].text + "'");
            break;
          }
          if (!(unit->dim == spec->dim)) {
            error(toks[3].span, "dimension mismatch: expected " +
                                    std::string(dimension_name(spec->dim)) + ", got " +
                                    std::string(dimension_name(unit->dim)));
            break;
          }
          // Rescale written units to base units: exact integer arithmetic.
          __int128 scaled = static_cast<__int128>(*micro) * unit->micro_per_unit;
          value = Quantity(static_cast<std::int64_t>(scaled / Quantity::kScale), unit->dim);
        } else {
          if (!(spec->dim == kScalar)) {
            error(toks[2].span, "missing unit: expected " +
                                    std::string(dimension_name(spec->dim)));
            break;
          }
          value = Quantity::scalar(*micro);
        }
        doc.assignments.push_back(Assignment{sym, value, toks[0].span});
        break;
      }
      case State::Done: {
        error(toks[0].span, "unexpected content after closing '}'");
        break;
      }
    }
  }

  if (state == State::ExpectRule) {
    error(SourceSpan{line_no, 1, 0}, "empty input, expected a rule block");
    return result;
  }
  if (state == State::ExpectBody) {
    error(SourceSpan{line_no, 1, 0}, "missing closing '}'");
    return result;
  }
  for (const auto& spec : known_symbols()) {
    if (spec.required && !doc.find(spec.name))
      error(SourceSpan{line_no, 1, 0},
            "missing required symbol '" + std::string(spec.name) + "'");
  }
  if (!result.diagnostics.empty()) return result;
  result.document = std::move(doc);
  return result;
}

std::string print_rules(const RuleDocument& doc) {
  std::string out = "rule " + doc.name + " {\n";
  for (const auto& a : doc.assignments) {
    out += "  " + a.symbol + " = " + a.value.magnitude_text();
    if (auto unit = canonical_unit(a.value.dim())) {
      out += ' ';
      out += *unit;
    }
    out += '\n';
  }
  out += "}\n";
  return out;
}

}  // namespace dmrsim::rules
