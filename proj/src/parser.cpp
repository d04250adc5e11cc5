#include "xorunify/parser.hpp"

#include <cctype>
#include <map>
#include <optional>

namespace xorunify {

ParseError::ParseError(const std::string& msg, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

bool is_variable_name(std::string_view ident) {
  if (ident.size() >= 2 && ident.substr(0, 2) == "V_") return true;
  if (ident.empty()) return false;
  if (std::string_view("xyzuvw").find(ident[0]) == std::string_view::npos) return false;
  for (std::size_t i = 1; i < ident.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(ident[i]))) return false;
  return true;
}

namespace {

enum class Tok { Ident, Zero, LParen, RParen, Comma, Plus, Unify, Semi, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_blank();
    Token t{Tok::End, "", line_, col_};
    if (pos_ >= src_.size()) return t;
    char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) advance();
      t.kind = Tok::Ident;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalnum(static_cast<unsigned char>(src_[pos_]))) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      if (t.text != "0") throw ParseError("unexpected number '" + t.text + "'", t.line, t.column);
      t.kind = Tok::Zero;
      return t;
    }
    advance();
    switch (c) {
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case ',': t.kind = Tok::Comma; break;
      case '+': t.kind = Tok::Plus; break;
      case ';': t.kind = Tok::Semi; break;
      case '=':
        if (pos_ < src_.size() && src_[pos_] == '?') {
          advance();
          t.kind = Tok::Unify;
          break;
        }
        throw ParseError("expected '=?'", t.line, t.column);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", t.line, t.column);
    }
    return t;
  }

 private:
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
  void skip_blank() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  Parser(std::string_view src, const ParseOptions& opts) : lex_(src), opts_(opts) { shift(); }

  UnificationProblem problem() {
    std::vector<Equation> eqs;
    eqs.push_back(equation());
    while (cur_.kind == Tok::Semi) {
      shift();
      if (cur_.kind == Tok::End) break;
      eqs.push_back(equation());
    }
    expect(Tok::End, "end of input");
    return UnificationProblem::from_equations(std::move(eqs));
  }

  Term single_term() {
    Term t = term();
    expect(Tok::End, "end of input");
    return normalize(t);
  }

 private:
  Equation equation() {
    Term lhs = term();
    expect(Tok::Unify, "'=?'");
    shift();
    Term rhs = term();
    return {std::move(lhs), std::move(rhs)};
  }

  Term term() {
    std::vector<Term> parts;
    parts.push_back(atom());
    while (cur_.kind == Tok::Plus) {
      shift();
      parts.push_back(atom());
    }
    if (parts.size() == 1) return parts.front();
    return Term::raw_xor(std::move(parts));
  }

  Term atom() {
    Token t = cur_;
    switch (t.kind) {
      case Tok::Zero:
        shift();
        return Term::zero();
      case Tok::LParen: {
        shift();
        Term inner = term();
        expect(Tok::RParen, "')'");
        shift();
        return inner;
      }
      case Tok::Ident:
        shift();
        return identifier(t);
      default:
        throw ParseError("expected a term", t.line, t.column);
    }
  }

  Term identifier(const Token& t) {
    const std::string& id = t.text;
    bool reserved = FreshNames::is_reserved(id);
    if (reserved && !opts_.allow_reserved)
      throw ParseError("identifier '" + id + "' uses the reserved prefix '" + std::string(1, FreshNames::kPrefix) + "'",
                       t.line, t.column);
    if (reserved || is_variable_name(id)) {
      if (cur_.kind == Tok::LParen) throw ParseError("variable '" + id + "' cannot be applied", t.line, t.column);
      return Term::var(id);
    }
    std::vector<Term> args;
    if (cur_.kind == Tok::LParen) {
      shift();
      args.push_back(term());
      while (cur_.kind == Tok::Comma) {
        shift();
        args.push_back(term());
      }
      expect(Tok::RParen, "')'");
      shift();
    }
    check_arity(id, args.size(), t);
    if (id == "inv") return Term::raw_inv(std::move(args[0]));
    if (id == "xor") return Term::raw_xor(std::move(args));
    return Term::app(id, std::move(args));
  }

  void check_arity(const std::string& id, std::size_t n, const Token& t) {
    auto fail = [&](const std::string& want) {
      throw ParseError("symbol '" + id + "' expects " + want + " argument(s), got " + std::to_string(n), t.line,
                       t.column);
    };
    if (id == "inv") {
      if (n != 1) fail("1");
      return;
    }
    if (id == "xor") {
      if (n < 2) fail("at least 2");
      return;
    }
    if ((id == "pair" || id == "enc") && n != 2) fail("2");
    auto [it, fresh] = arities_.emplace(id, n);
    if (!fresh && it->second != n) fail(std::to_string(it->second));
  }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) {
      std::string got = cur_.kind == Tok::End ? "end of input" : cur_.text.empty() ? "punctuation" : "'" + cur_.text + "'";
      throw ParseError(std::string("expected ") + what + ", found " + got, cur_.line, cur_.column);
    }
  }

  void shift() { cur_ = lex_.next(); }

  Lexer lex_;
  ParseOptions opts_;
  Token cur_{Tok::End, "", 1, 1};
  std::map<std::string, std::size_t> arities_;
};

void collect_symbols(const Term& t, std::set<Symbol>& out) {
  if (t.is_var()) return;
  out.insert(t.symbol());
  for (const Term& a : t.args()) collect_symbols(a, out);
}

void render_into(const Term& t, std::string& out) {
  if (t.is_var() || t.is_constant() || t.is_zero()) {
    out += t.name();
    return;
  }
  if (t.is_xor()) {
    for (std::size_t i = 0; i < t.args().size(); ++i) {
      if (i) out += " + ";
      render_into(t.arg(i), out);
    }
    return;
  }
  out += t.name();
  out += '(';
  for (std::size_t i = 0; i < t.args().size(); ++i) {
    if (i) out += ", ";
    render_into(t.arg(i), out);
  }
  out += ')';
}

}  // namespace

UnificationProblem UnificationProblem::from_equations(std::vector<Equation> eqs) {
  UnificationProblem p;
  // Normalize both sides under one arity table.
  for (const Equation& e : eqs) {
    Term both = normalize(Term::app("=?", {e.lhs, e.rhs}));
    p.equations.push_back({both.arg(0), both.arg(1)});
  }
  for (const Equation& e : p.equations) {
    collect_symbols(e.lhs, p.signature);
    collect_symbols(e.rhs, p.signature);
    e.lhs.collect_vars(p.problem_vars);
    e.rhs.collect_vars(p.problem_vars);
  }
  return p;
}

UnificationProblem parse_problem(std::string_view text, const ParseOptions& opts) {
  return Parser(text, opts).problem();
}

Term parse_term(std::string_view text, const ParseOptions& opts) { return Parser(text, opts).single_term(); }

std::string render_term(const Term& t) {
  std::string out;
  render_into(t, out);
  return out;
}

std::string render_equation(const Equation& eq) { return render_term(eq.lhs) + " =? " + render_term(eq.rhs); }

std::string render_problem(const UnificationProblem& p) {
  std::string out;
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    if (i) out += "; ";
    out += render_equation(p.equations[i]);
  }
  return out;
}

std::string render_substitution(const Substitution& sigma) {
  if (sigma.empty()) return "{}";
  std::string out;
  bool first = true;
  for (const auto& [v, t] : sigma) {
    if (!first) out += "; ";
    first = false;
    out += v + " := " + render_term(t);
  }
  return out;
}

}  // namespace xorunify
