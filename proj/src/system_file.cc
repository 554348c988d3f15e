// Copyright 2026 The sqpat Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sqpat/system_file.h"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace sqpat {

ParseError::ParseError(int line, int column, const std::string& message)
    : Error(ErrorCode::kParse, "line " + std::to_string(line) + ", column " +
                                   std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

namespace {

constexpr std::string_view kUnicodeMinus = "\xE2\x88\x92";

struct Token {
  enum Kind { kNumber, kIdent, kOp, kEnd } kind = kEnd;
  std::string text;
  int column = 0;
};

std::vector<Token> Tokenize(std::string_view s, int line, int col0) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const unsigned char c = static_cast<unsigned char>(s[i]);
    const int col = col0 + static_cast<int>(i);
    if (std::isspace(c)) {
      ++i;
    } else if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::kNumber, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (std::isalpha(c) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) ||
                              s[j] == '_')) {
        ++j;
      }
      out.push_back({Token::kIdent, std::string(s.substr(i, j - i)), col});
      i = j;
    } else if (s.substr(i, kUnicodeMinus.size()) == kUnicodeMinus) {
      out.push_back({Token::kOp, "-", col});
      i += kUnicodeMinus.size();
    } else if (std::string_view("+-*^()").find(static_cast<char>(c)) !=
               std::string_view::npos) {
      out.push_back({Token::kOp, std::string(1, static_cast<char>(c)), col});
      ++i;
    } else {
      throw ParseError(line, col,
                       std::string("unexpected character '") +
                           static_cast<char>(c) + "'");
    }
  }
  out.push_back({Token::kEnd, "", col0 + static_cast<int>(s.size())});
  return out;
}

class ExprParser {
 public:
  ExprParser(const FieldPtr& field, const std::vector<std::string>& vars,
             std::string_view text, int line, int col0)
      : field_(field),
        vars_(vars),
        tokens_(Tokenize(text, line, col0)),
        line_(line) {}

  Poly Parse() {
    if (Peek().kind == Token::kEnd) Fail("empty expression");
    Poly p = Expr();
    if (Peek().kind != Token::kEnd) Fail("unexpected '" + Peek().text + "'");
    return p;
  }

 private:
  const Token& Peek() const { return tokens_[pos_]; }
  bool IsOp(const char* op) const {
    return Peek().kind == Token::kOp && Peek().text == op;
  }
  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError(line_, Peek().column, msg);
  }

  Poly Expr() {
    Poly acc(field_, vars_.size());
    bool first = true;
    while (true) {
      bool neg = false;
      if (IsOp("+") || IsOp("-")) {
        neg = IsOp("-");
        ++pos_;
      } else if (!first) {
        break;
      }
      Poly t = Term();
      acc = neg ? acc - t : acc + t;
      first = false;
    }
    return acc;
  }

  bool StartsFactor() const {
    return Peek().kind == Token::kNumber || Peek().kind == Token::kIdent ||
           IsOp("(");
  }

  Poly Term() {
    Poly acc = Factor();
    while (true) {
      if (IsOp("*")) {
        ++pos_;
        acc = acc * Factor();
      } else if (StartsFactor()) {
        acc = acc * Factor();
      } else {
        return acc;
      }
    }
  }

  Poly Factor() {
    Poly base = Primary();
    if (IsOp("^")) {
      ++pos_;
      if (Peek().kind != Token::kNumber) Fail("expected an exponent");
      unsigned e = 0;
      const std::string& t = Peek().text;
      auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), e);
      if (ec != std::errc() || e > 1000) Fail("exponent out of range");
      ++pos_;
      return base.Power(e);
    }
    return base;
  }

  Poly Primary() {
    const Token& t = Peek();
    const std::size_t nv = vars_.size();
    if (IsOp("-")) {
      ++pos_;
      return -Factor();
    }
    if (IsOp("(")) {
      ++pos_;
      Poly p = Expr();
      if (!IsOp(")")) Fail("expected ')'");
      ++pos_;
      return p;
    }
    if (t.kind == Token::kNumber) {
      std::int64_t v = 0;
      auto [ptr, ec] =
          std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
      if (ec != std::errc()) Fail("integer literal out of range");
      ++pos_;
      return Poly::Constant(field_, nv, field_->FromInt(v));
    }
    if (t.kind == Token::kIdent) {
      // "x0x1" is read as x0*x1: split into declared names, longest first.
      Poly prod = Poly::Constant(field_, nv, field_->one());
      std::string_view rest = t.text;
      while (!rest.empty()) {
        std::size_t best = 0, best_len = 0;
        for (std::size_t i = 0; i < nv; ++i) {
          if (vars_[i].size() > best_len && rest.starts_with(vars_[i])) {
            best = i;
            best_len = vars_[i].size();
          }
        }
        if (best_len > 0) {
          prod = prod * Poly::Variable(field_, nv, best);
        } else if (rest.starts_with("g")) {
          if (field_->k() == 1) Fail("g needs a field with k > 1");
          prod = prod * Poly::Constant(field_, nv, field_->generator());
          best_len = 1;
        } else {
          Fail("undeclared variable '" + t.text + "'");
        }
        rest.remove_prefix(best_len);
      }
      ++pos_;
      return prod;
    }
    Fail(t.kind == Token::kEnd ? "unexpected end of expression"
                               : "unexpected '" + t.text + "'");
  }

  FieldPtr field_;
  const std::vector<std::string>& vars_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int line_;
};

struct Word {
  std::string text;
  int column;
};

std::vector<Word> SplitWords(std::string_view line) {
  std::vector<Word> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i >= line.size()) break;
    std::size_t j = i;
    while (j < line.size() &&
           !std::isspace(static_cast<unsigned char>(line[j])))
      ++j;
    out.push_back({std::string(line.substr(i, j - i)), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

template <typename T>
T ParseUnsigned(const Word& w, std::string_view value, int line) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ParseError(line, w.column, "expected a non-negative integer in '" +
                                         w.text + "'");
  }
  return v;
}

bool ValidIdent(std::string_view s) {
  if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

SystemFile ParseImpl(std::string_view text, FieldPtr override_field) {
  FieldPtr field;
  std::optional<Ambient> ambient;
  std::optional<std::vector<std::string>> vars;
  std::vector<Poly> polys;
  std::vector<std::string> names;
  std::vector<int> poly_lines;
  SystemOptions options;
  struct PendingElement {
    std::optional<Element>* slot;
    std::string text;
    int line;
    int column;
  };
  std::vector<PendingElement> pending;

  auto ensure_vars = [&](int line) {
    if (!field) throw ParseError(line, 1, "missing field line");
    if (!ambient) throw ParseError(line, 1, "missing ambient line");
    if (!vars) {
      vars.emplace();
      const std::size_t first = ambient->projective() ? 0 : 1;
      for (std::size_t i = 0; i < ambient->nvars(); ++i) {
        vars->push_back("x" + std::to_string(first + i));
      }
    }
  };

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto words = SplitWords(line);
    if (words.empty()) {
      if (end == text.size()) break;
      continue;
    }
    const std::string& kw = words[0].text;
    if (kw == "field") {
      if (field) throw ParseError(line_no, 1, "duplicate field line");
      std::optional<std::uint32_t> p, k;
      for (std::size_t i = 1; i < words.size(); ++i) {
        const std::string& w = words[i].text;
        if (w.rfind("p=", 0) == 0) {
          p = ParseUnsigned<std::uint32_t>(words[i], w.substr(2), line_no);
        } else if (w.rfind("k=", 0) == 0) {
          k = ParseUnsigned<std::uint32_t>(words[i], w.substr(2), line_no);
        } else {
          throw ParseError(line_no, words[i].column,
                           "unknown field parameter '" + w + "'");
        }
      }
      if (!p) throw ParseError(line_no, 1, "field line needs p=");
      try {
        field = override_field ? override_field : Field::Make(*p, k.value_or(1));
      } catch (const Error& e) {
        throw ParseError(line_no, 1, e.what());
      }
    } else if (kw == "ambient") {
      if (ambient) throw ParseError(line_no, 1, "duplicate ambient line");
      if (words.size() != 3) {
        throw ParseError(line_no, 1, "expected 'ambient affine|projective <n>'");
      }
      Ambient a;
      if (words[1].text == "affine") {
        a.kind = AmbientKind::kAffine;
      } else if (words[1].text == "projective") {
        a.kind = AmbientKind::kProjective;
      } else {
        throw ParseError(line_no, words[1].column,
                         "expected affine or projective");
      }
      a.n = ParseUnsigned<std::size_t>(words[2], words[2].text, line_no);
      if (a.n < 1) throw ParseError(line_no, words[2].column, "n must be >= 1");
      ambient = a;
    } else if (kw == "vars") {
      if (vars) throw ParseError(line_no, 1, "duplicate or late vars line");
      if (!ambient) throw ParseError(line_no, 1, "vars before ambient");
      vars.emplace();
      for (std::size_t i = 1; i < words.size(); ++i) {
        const std::string& v = words[i].text;
        if (!ValidIdent(v) || v == "g") {
          throw ParseError(line_no, words[i].column,
                           "invalid variable name '" + v + "'");
        }
        for (const auto& seen : *vars) {
          if (seen == v) {
            throw ParseError(line_no, words[i].column,
                             "duplicate variable '" + v + "'");
          }
        }
        vars->push_back(v);
      }
      if (vars->size() != ambient->nvars()) {
        throw ParseError(line_no, 1,
                         "expected " + std::to_string(ambient->nvars()) +
                             " variables");
      }
    } else if (kw == "poly") {
      ensure_vars(line_no);
      const std::size_t eq = line.find('=');
      if (words.size() < 2 || eq == std::string_view::npos) {
        throw ParseError(line_no, 1, "expected 'poly <name> = <expression>'");
      }
      std::string name(line.substr(words[1].column - 1));
      name = name.substr(0, name.find_first_of(" \t="));
      if (!ValidIdent(name)) {
        throw ParseError(line_no, words[1].column,
                         "invalid polynomial name '" + name + "'");
      }
      for (const auto& seen : names) {
        if (seen == name) {
          throw ParseError(line_no, words[1].column,
                           "duplicate polynomial '" + name + "'");
        }
      }
      const int col0 = static_cast<int>(eq) + 2;
      Poly f = ExprParser(field, *vars, line.substr(eq + 1), line_no, col0)
                   .Parse();
      if (f.is_zero()) {
        throw ParseError(line_no, col0, "polynomial '" + name + "' is zero");
      }
      if (ambient->projective() && !IsHomogeneous(f, 2)) {
        throw ParseError(line_no, col0,
                         "projective members must be quadratic forms; '" +
                             name + "' is not");
      }
      polys.push_back(std::move(f));
      names.push_back(name);
      poly_lines.push_back(line_no);
    } else if (kw == "option") {
      for (std::size_t i = 1; i < words.size(); ++i) {
        const Word& w = words[i];
        const std::size_t eq = w.text.find('=');
        if (eq == std::string::npos) {
          throw ParseError(line_no, w.column, "expected key=value");
        }
        const std::string key = w.text.substr(0, eq);
        const std::string value = w.text.substr(eq + 1);
        if (key == "nu") {
          pending.push_back({&options.nu, value, line_no, w.column});
        } else if (key == "cC") {
          pending.push_back({&options.class_c, value, line_no, w.column});
        } else if (key == "cD") {
          pending.push_back({&options.class_d, value, line_no, w.column});
        } else if (key == "C") {
          try {
            std::size_t used = 0;
            options.c_user = std::stod(value, &used);
            if (used != value.size() || *options.c_user < 0) throw 0;
          } catch (...) {
            throw ParseError(line_no, w.column, "C must be a number >= 0");
          }
        } else if (key == "seed") {
          options.seed = ParseUnsigned<std::uint64_t>(w, value, line_no);
        } else if (key == "ceiling") {
          options.ceiling = ParseUnsigned<std::uint64_t>(w, value, line_no);
        } else if (key == "workers") {
          options.workers = ParseUnsigned<unsigned>(w, value, line_no);
        } else {
          throw ParseError(line_no, w.column, "unknown option '" + key + "'");
        }
      }
    } else {
      throw ParseError(line_no, 1, "unknown keyword '" + kw + "'");
    }
    if (end == text.size()) break;
  }
  ensure_vars(line_no);
  if (polys.empty()) throw ParseError(line_no, 1, "no polynomials");
  for (const auto& p : pending) {
    try {
      *p.slot = field->Parse(p.text);
    } catch (const Error& e) {
      throw ParseError(p.line, p.column, e.what());
    }
  }
  try {
    return SystemFile{PolySystem(field, *ambient, std::move(polys),
                                 std::move(names)),
                      std::move(*vars), options};
  } catch (const Error& e) {
    throw ParseError(line_no, 1, e.what());
  }
}

std::string FormatDouble(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SystemFile ParseSystem(std::string_view text) { return ParseImpl(text, nullptr); }

SystemFile ParseSystemOver(std::string_view text, FieldPtr field) {
  if (!field) throw Error(ErrorCode::kInvalidArgument, "null field");
  return ParseImpl(text, std::move(field));
}

SystemFile LoadSystem(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kUsage, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseSystem(ss.str());
}

std::string FormatPoly(const Poly& f, const std::vector<std::string>& vars) {
  const Field& field = f.field();
  std::string out;
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    const auto& [e, c] = *it;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars.at(i);
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    std::string coef = field.ToString(c);
    if (coef.find('+') != std::string::npos) coef = "(" + coef + ")";
    std::string term;
    if (mono.empty()) {
      term = coef;
    } else if (c == field.one()) {
      term = mono;
    } else {
      term = coef + "*" + mono;
    }
    if (!out.empty()) out += " + ";
    out += term;
  }
  return out.empty() ? "0" : out;
}

std::string SerializeSystem(const SystemFile& file) {
  const PolySystem& s = file.system;
  const Field& f = *s.field();
  std::string out = "field p=" + std::to_string(f.p()) +
                    " k=" + std::to_string(f.k()) + "\n";
  out += std::string("ambient ") +
         (s.ambient().projective() ? "projective " : "affine ") +
         std::to_string(s.ambient().n) + "\n";
  out += "vars";
  for (const auto& v : file.vars) out += " " + v;
  out += "\n";
  for (std::size_t i = 0; i < s.m(); ++i) {
    out += "poly " + s.names()[i] + " = " + FormatPoly(s.polys()[i], file.vars) +
           "\n";
  }
  const SystemOptions& o = file.options;
  auto elem = [&](const char* key, const std::optional<Element>& e) {
    if (e) {
      std::string t = f.ToString(*e);
      out += std::string("option ") + key + "=" + t + "\n";
    }
  };
  elem("nu", o.nu);
  if (o.c_user) out += "option C=" + FormatDouble(*o.c_user) + "\n";
  if (o.seed) out += "option seed=" + std::to_string(*o.seed) + "\n";
  if (o.ceiling) out += "option ceiling=" + std::to_string(*o.ceiling) + "\n";
  if (o.workers) out += "option workers=" + std::to_string(*o.workers) + "\n";
  elem("cC", o.class_c);
  elem("cD", o.class_d);
  return out;
}

bool SameSystem(const SystemFile& a, const SystemFile& b) {
  const PolySystem& x = a.system;
  const PolySystem& y = b.system;
  return x.field()->SameAs(*y.field()) &&
         x.ambient().kind == y.ambient().kind &&
         x.ambient().n == y.ambient().n && x.names() == y.names() &&
         x.polys() == y.polys() && a.vars == b.vars && a.options == b.options;
}

}  // namespace sqpat
