#include "ncf/dsl.hpp"

#include <cctype>
#include <sstream>

#include "ncf/errors.hpp"

namespace ncf {

namespace {

enum class Tok { Ident, Number, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int col = 1;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  bool accept(std::string_view punct) {
    if (cur_.kind == Tok::Punct && cur_.text == punct) {
      advance();
      return true;
    }
    return false;
  }

  Token expect(std::string_view punct, const char* what) {
    if (cur_.kind != Tok::Punct || cur_.text != punct) fail(cur_, std::string("expected ") + what);
    return take();
  }

  [[noreturn]] static void fail(const Token& at, const std::string& msg) {
    std::string found = at.kind == Tok::End ? "end of input" : "'" + at.text + "'";
    throw ParseError(msg + ", found " + found, at.line, at.col);
  }

 private:
  void advance() {
    skip();
    cur_ = Token{};
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src_.size()) return;
    const char c = src_[pos_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      cur_.kind = Tok::Ident;
      while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
        cur_.text += bump();
      }
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      cur_.kind = Tok::Number;
      while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) cur_.text += bump();
    } else if (std::string_view("+-*/^(),:;=").find(c) != std::string_view::npos) {
      cur_.kind = Tok::Punct;
      cur_.text = bump();
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
    }
  }

  void skip() {
    while (pos_ < src_.size()) {
      const char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        bump();
      } else {
        break;
      }
    }
  }

  char bump() {
    const char c = src_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token cur_;
};

long to_long(const Token& t) {
  try {
    return std::stol(t.text);
  } catch (const std::out_of_range&) {
    throw ParseError("integer out of range", t.line, t.col);
  }
}

class PolyParser {
 public:
  PolyParser(Lexer& lx, std::vector<std::string> names) : lx_(lx), names_(std::move(names)) {}

  NcPoly poly() {
    NcPoly out;
    bool negate = false;
    if (lx_.accept("-")) {
      negate = true;
    } else {
      lx_.accept("+");
    }
    for (;;) {
      NcPoly t = term();
      out += negate ? -t : t;
      const Token& p = lx_.peek();
      if (p.kind == Tok::Punct && (p.text == "+" || p.text == "-")) {
        negate = lx_.take().text == "-";
        continue;
      }
      return out;
    }
  }

 private:
  NcPoly term() {
    NcPoly out = factor(nullptr);
    while (lx_.peek().kind == Tok::Punct && lx_.peek().text == "*") {
      const Token op = lx_.take();
      out = out * factor(&op);
    }
    return out;
  }

  NcPoly factor(const Token* op) {
    NcPoly base = atom(op);
    if (lx_.peek().kind == Tok::Punct && lx_.peek().text == "^") {
      const Token caret = lx_.take();
      const Token e = lx_.peek();
      if (e.kind != Tok::Number) Lexer::fail(caret, "expected an exponent after '^'");
      lx_.take();
      base = pow(base, static_cast<int>(to_long(e)));
    }
    return base;
  }

  NcPoly atom(const Token* op) {
    const Token t = lx_.peek();
    if (t.kind == Tok::Number) {
      lx_.take();
      std::string q = t.text;
      if (lx_.accept("/")) {
        const Token d = lx_.peek();
        if (d.kind != Tok::Number) Lexer::fail(d, "expected a denominator");
        lx_.take();
        if (d.text.find_first_not_of('0') == std::string::npos) throw ParseError("zero denominator", d.line, d.col);
        q += "/" + d.text;
      }
      return NcPoly::constant(parse_rational(q));
    }
    if (t.kind == Tok::Ident) {
      lx_.take();
      for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == t.text) return NcPoly::gen(static_cast<int>(i));
      }
      throw UnknownGenerator("unknown generator '" + t.text + "' at " + std::to_string(t.line) + ":" +
                             std::to_string(t.col));
    }
    if (t.kind == Tok::Punct && t.text == "(") {
      lx_.take();
      NcPoly inner = poly();
      lx_.expect(")", "')'");
      return inner;
    }
    if (op) throw ParseError("dangling '" + op->text + "'", op->line, op->col);
    Lexer::fail(t, "expected a term");
  }

  Lexer& lx_;
  std::vector<std::string> names_;
};

void expect_end(Lexer& lx) {
  if (lx.peek().kind != Tok::End) Lexer::fail(lx.peek(), "unexpected trailing input");
}

}  // namespace

NcPoly parse_poly(std::string_view text, const std::vector<std::string>& names) {
  Lexer lx(text);
  PolyParser pp(lx, names);
  NcPoly p = pp.poly();
  expect_end(lx);
  return p;
}

Presentation parse_presentation(std::string_view text) {
  Lexer lx(text);
  Presentation P;
  bool have_gens = false, have_bound = false;
  while (lx.peek().kind != Tok::End) {
    const Token kw = lx.take();
    if (kw.kind != Tok::Ident) Lexer::fail(kw, "expected a statement keyword");
    if (kw.text == "algebra") {
      const Token name = lx.take();
      if (name.kind != Tok::Ident) Lexer::fail(name, "expected an algebra name");
      P.name = name.text;
    } else if (kw.text == "gens") {
      if (have_gens) Lexer::fail(kw, "gens given twice");
      have_gens = true;
      if (lx.peek().kind == Tok::Punct && lx.peek().text == ";") {
        // no generators
      } else {
        do {
          const Token g = lx.take();
          if (g.kind != Tok::Ident) Lexer::fail(g, "expected a generator name");
          for (const auto& old : P.gens) {
            if (old.name == g.text) throw ParseError("duplicate generator '" + g.text + "'", g.line, g.col);
          }
          int w = 0;
          if (lx.accept(":")) {
            const Token n = lx.take();
            if (n.kind != Tok::Number) Lexer::fail(n, "expected a weight");
            w = static_cast<int>(to_long(n));
          }
          P.gens.push_back({g.text, w});
        } while (lx.accept(","));
      }
    } else if (kw.text == "rel") {
      if (!have_gens) Lexer::fail(kw, "rel before gens");
      PolyParser pp(lx, P.names());
      do {
        P.relations.push_back(pp.poly());
      } while (lx.accept(","));
    } else if (kw.text == "bound") {
      const Token n = lx.take();
      if (n.kind != Tok::Number) Lexer::fail(n, "expected a degree bound");
      P.bound = static_cast<int>(to_long(n));
      have_bound = true;
    } else {
      Lexer::fail(kw, "unknown statement");
    }
    lx.expect(";", "';'");
  }
  if (!have_gens) Lexer::fail(lx.peek(), "missing gens statement");
  if (!have_bound) Lexer::fail(lx.peek(), "missing bound statement");
  P.validate();
  return P;
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream os;
  if (!p.name.empty()) os << "algebra " << p.name << ";\n";
  os << "gens";
  for (std::size_t i = 0; i < p.gens.size(); ++i) {
    os << (i ? ", " : " ") << p.gens[i].name << ':' << p.gens[i].weight;
  }
  os << ";\n";
  const auto names = p.names();
  for (const auto& r : p.relations) os << "rel " << format_poly(r, names) << ";\n";
  os << "bound " << p.bound << ";\n";
  return os.str();
}

FiniteAbGroup parse_group(std::string_view text) {
  // Z<n>(xZ<n>)*, whitespace allowed between the pieces
  std::size_t i = 0;
  auto col = [&] { return static_cast<int>(i) + 1; };
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& what) -> ParseError {
    std::string found = i < text.size() ? std::string("'") + text[i] + "'" : "end of input";
    return ParseError("expected " + what + ", found " + found, 1, col());
  };
  std::vector<long> moduli;
  for (;;) {
    skip();
    if (i >= text.size() || text[i] != 'Z') throw fail("'Z'");
    ++i;
    skip();
    const std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == start) throw fail("a modulus");
    if (i - start > 9) throw ParseError("modulus out of range", 1, static_cast<int>(start) + 1);
    const long n = std::stol(std::string(text.substr(start, i - start)));
    if (n == 0) throw ZeroModulus("Z0 at column " + std::to_string(start));
    moduli.push_back(n);
    skip();
    if (i == text.size()) break;
    if (text[i] != 'x') throw fail("'x'");
    ++i;
  }
  return FiniteAbGroup(moduli);
}

std::vector<std::pair<std::size_t, std::size_t>> parse_fm_algebra(std::string_view text, const FiniteAbGroup& X) {
  Lexer lx(text);
  std::vector<std::pair<std::size_t, std::size_t>> gens;
  auto tuple = [&]() {
    lx.expect("(", "'('");
    std::vector<long> v;
    const Token open = lx.peek();
    do {
      bool neg = lx.accept("-");
      const Token n = lx.take();
      if (n.kind != Tok::Number) Lexer::fail(n, "expected an integer");
      v.push_back(neg ? -to_long(n) : to_long(n));
    } while (lx.accept(","));
    lx.expect(")", "')'");
    if (v.size() != X.moduli().size()) {
      throw ParseError("expected " + std::to_string(X.moduli().size()) + " coordinates", open.line, open.col);
    }
    return X.index(v);
  };
  if (lx.peek().kind == Tok::End) return gens;
  do {
    std::size_t shift = 0, twist = 0;
    bool seen_shift = false, seen_twist = false;
    do {
      const Token key = lx.take();
      if (key.kind != Tok::Ident || (key.text != "shift" && key.text != "twist")) {
        Lexer::fail(key, "expected shift= or twist=");
      }
      bool& seen = key.text == "shift" ? seen_shift : seen_twist;
      if (seen) Lexer::fail(key, key.text + " given twice");
      seen = true;
      lx.expect("=", "'='");
      (key.text == "shift" ? shift : twist) = tuple();
    } while (lx.accept(","));
    gens.emplace_back(shift, twist);
  } while (lx.accept(";"));
  expect_end(lx);
  return gens;
}

std::string print_fm_algebra(const std::vector<std::pair<std::size_t, std::size_t>>& gens, const FiniteAbGroup& X) {
  auto tuple = [&](std::size_t idx) {
    std::string s = "(";
    const auto c = X.element(idx);
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
    return s + ")";
  };
  std::string out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (k) out += ";";
    const auto& [s, t] = gens[k];
    if (t == 0) {
      out += "shift=" + tuple(s);
    } else if (s == 0) {
      out += "twist=" + tuple(t);
    } else {
      out += "shift=" + tuple(s) + ",twist=" + tuple(t);
    }
  }
  return out;
}

}  // namespace ncf
