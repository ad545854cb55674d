#include <cctype>

#include "wordlogic/logic.hpp"

namespace wordlogic::logic {

namespace {

enum class Tok {
  kIdent, kNumber, kLParen, kRParen, kLBracket, kRBracket, kComma, kSemicolon, kDefine,
  kPlus, kStar, kMinus, kNot, kAnd, kOr, kImplies, kIff, kEq, kNe, kLt, kLe, kGt, kGe,
  kMeta, kEnd,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
  bool glued = false;  // no whitespace before this token
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    bool glued = false;
    while (true) {
      const std::size_t before = i_;
      skip_space();
      glued = i_ == before;
      if (i_ >= src_.size()) {
        out.push_back({Tok::kEnd, "", here(), false});
        return out;
      }
      const SourcePos pos = here();
      const char c = src_[i_];
      if (c == '#') {
        const bool meta = i_ + 1 < src_.size() && src_[i_ + 1] == '@';
        const std::size_t start = i_ + (meta ? 2 : 1);
        while (i_ < src_.size() && src_[i_] != '\n') advance();
        if (meta) out.push_back({Tok::kMeta, std::string(src_.substr(start, i_ - start)), pos, false});
        continue;
      }
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        const std::size_t start = i_;
        while (i_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[i_])) || src_[i_] == '_')) advance();
        out.push_back({Tok::kIdent, std::string(src_.substr(start, i_ - start)), pos, glued});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(c))) {
        const std::size_t start = i_;
        while (i_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[i_]))) advance();
        out.push_back({Tok::kNumber, std::string(src_.substr(start, i_ - start)), pos, glued});
        continue;
      }
      static const std::pair<std::string_view, Tok> symbols[] = {
          {"<=>", Tok::kIff}, {":=", Tok::kDefine}, {"=>", Tok::kImplies}, {"!=", Tok::kNe},
          {"<=", Tok::kLe},   {">=", Tok::kGe},     {"(", Tok::kLParen},   {")", Tok::kRParen},
          {"[", Tok::kLBracket}, {"]", Tok::kRBracket}, {",", Tok::kComma}, {";", Tok::kSemicolon},
          {"+", Tok::kPlus},  {"*", Tok::kStar},    {"-", Tok::kMinus},    {"~", Tok::kNot},
          {"&", Tok::kAnd},   {"|", Tok::kOr},      {"=", Tok::kEq},       {"<", Tok::kLt},
          {">", Tok::kGt},
      };
      bool matched = false;
      for (const auto& [text, kind] : symbols) {
        if (src_.substr(i_, text.size()) == text) {
          for (std::size_t k = 0; k < text.size(); ++k) advance();
          out.push_back({kind, std::string(text), pos, glued});
          matched = true;
          break;
        }
      }
      if (!matched) throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }
  }

 private:
  SourcePos here() const { return {line_, column_}; }
  void advance() {
    if (src_[i_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++i_;
  }
  void skip_space() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) advance();
  }

  std::string_view src_;
  std::size_t i_ = 0, line_ = 1, column_ = 1;
};

FormulaPtr make(SourcePos pos, auto node) {
  return std::make_shared<const Formula>(Formula{std::move(node), pos});
}

class Parser {
 public:
  explicit Parser(std::string_view text) : tokens_(Lexer(text).run()) {}

  std::vector<Definition> program() {
    std::vector<Definition> defs;
    std::map<std::string, std::string> pending;
    while (peek().kind != Tok::kEnd) {
      if (peek().kind == Tok::kMeta) {
        const Token& m = take();
        const auto colon = m.text.find(':');
        if (colon == std::string::npos) throw ParseError(m.pos, "metadata must be 'key: value'");
        auto strip = [](std::string s) {
          const auto b = s.find_first_not_of(" \t\r");
          const auto e = s.find_last_not_of(" \t\r");
          return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        pending[strip(m.text.substr(0, colon))] = strip(m.text.substr(colon + 1));
        continue;
      }
      Definition d = definition();
      d.metadata = std::move(pending);
      pending.clear();
      defs.push_back(std::move(d));
    }
    return defs;
  }

  FormulaPtr sentence() {
    skip_meta();
    FormulaPtr f = expr();
    if (peek().kind == Tok::kSemicolon) take();
    skip_meta();
    if (peek().kind != Tok::kEnd) fail("unexpected '" + peek().text + "' after formula");
    return f;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& take() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(peek().pos, message); }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) {
      fail(std::string("expected ") + what +
           (peek().kind == Tok::kEnd ? " at end of input" : ", found '" + peek().text + "'"));
    }
    return take();
  }
  void skip_meta() {
    while (peek().kind == Tok::kMeta) take();
  }

  static bool is_keyword(const std::string& s) {
    return s == "E" || s == "A" || s == "true" || s == "false";
  }

  Definition definition() {
    Definition d;
    const Token& name = expect(Tok::kIdent, "definition name");
    if (is_keyword(name.text)) throw ParseError(name.pos, "'" + name.text + "' is reserved");
    d.name = name.text;
    d.pos = name.pos;
    expect(Tok::kLParen, "'('");
    if (peek().kind != Tok::kRParen) {
      do {
        d.params.push_back(variable_name());
      } while (peek().kind == Tok::kComma && (take(), true));
    }
    expect(Tok::kRParen, "')'");
    expect(Tok::kDefine, "':='");
    d.body = expr();
    expect(Tok::kSemicolon, "';' after definition");
    return d;
  }

  std::string variable_name() {
    const Token& t = expect(Tok::kIdent, "variable name");
    if (is_keyword(t.text)) throw ParseError(t.pos, "'" + t.text + "' is reserved");
    return t.text;
  }

  FormulaPtr expr() { return iff(); }

  FormulaPtr iff() {
    FormulaPtr lhs = implies();
    while (peek().kind == Tok::kIff) {
      const SourcePos pos = take().pos;
      lhs = make(pos, Binary{Connective::kIff, lhs, implies()});
    }
    return lhs;
  }

  FormulaPtr implies() {
    FormulaPtr lhs = disjunction();
    if (peek().kind == Tok::kImplies) {
      const SourcePos pos = take().pos;
      return make(pos, Binary{Connective::kImplies, lhs, implies()});
    }
    return lhs;
  }

  FormulaPtr disjunction() {
    FormulaPtr lhs = conjunction();
    while (peek().kind == Tok::kOr) {
      const SourcePos pos = take().pos;
      lhs = make(pos, Binary{Connective::kOr, lhs, conjunction()});
    }
    return lhs;
  }

  FormulaPtr conjunction() {
    FormulaPtr lhs = unary();
    while (peek().kind == Tok::kAnd) {
      const SourcePos pos = take().pos;
      lhs = make(pos, Binary{Connective::kAnd, lhs, unary()});
    }
    return lhs;
  }

  FormulaPtr unary() {
    const Token& t = peek();
    if (t.kind == Tok::kNot) {
      take();
      return make(t.pos, Negation{unary()});
    }
    if (t.kind == Tok::kIdent && (t.text == "E" || t.text == "A") && peek(1).kind == Tok::kIdent) {
      take();
      Quantified q{t.text == "A", {}, nullptr};
      q.vars.push_back(variable_name());
      while (peek().kind == Tok::kComma) {
        take();
        q.vars.push_back(variable_name());
      }
      q.body = expr();
      return make(t.pos, std::move(q));
    }
    return primary();
  }

  FormulaPtr primary() {
    const Token& t = peek();
    if (t.kind == Tok::kLParen) {
      take();
      FormulaPtr inner = expr();
      expect(Tok::kRParen, "')'");
      return inner;
    }
    if (t.kind == Tok::kIdent && (t.text == "true" || t.text == "false")) {
      take();
      return make(t.pos, Constant{t.text == "true"});
    }
    if (t.kind == Tok::kIdent && peek(1).kind == Tok::kLParen) {
      take();
      take();
      Call c{t.text, {}};
      if (peek().kind != Tok::kRParen) {
        do {
          c.args.push_back(term());
        } while (peek().kind == Tok::kComma && (take(), true));
      }
      expect(Tok::kRParen, "')' closing the argument list");
      return make(t.pos, std::move(c));
    }
    if (t.kind == Tok::kIdent && peek(1).kind == Tok::kLBracket) {
      SequenceAtom a;
      a.lhs = sequence_ref();
      if (peek().kind == Tok::kEq) {
        a.equal = true;
      } else if (peek().kind == Tok::kNe) {
        a.equal = false;
      } else {
        fail("expected '=' or '!=' after a sequence term");
      }
      take();
      if (peek().kind == Tok::kNumber) {
        a.rhs = static_cast<Symbol>(std::stoul(take().text));
      } else if (peek().kind == Tok::kIdent && peek(1).kind == Tok::kLBracket) {
        a.rhs = sequence_ref();
      } else {
        fail("expected a sequence term or a symbol");
      }
      return make(t.pos, std::move(a));
    }
    if (t.kind == Tok::kIdent || t.kind == Tok::kNumber) {
      Comparison c;
      c.lhs = term();
      switch (peek().kind) {
        case Tok::kEq: c.rel = Relation::kEq; break;
        case Tok::kNe: c.rel = Relation::kNe; break;
        case Tok::kLt: c.rel = Relation::kLt; break;
        case Tok::kLe: c.rel = Relation::kLe; break;
        case Tok::kGt: c.rel = Relation::kGt; break;
        case Tok::kGe: c.rel = Relation::kGe; break;
        default: fail("expected a comparison operator");
      }
      take();
      c.rhs = term();
      return make(t.pos, std::move(c));
    }
    if (t.kind == Tok::kEnd) fail("unexpected end of input");
    fail("unexpected '" + t.text + "'");
  }

  SequenceRef sequence_ref() {
    SequenceRef r;
    r.name = take().text;
    expect(Tok::kLBracket, "'['");
    r.index = term();
    expect(Tok::kRBracket, "']'");
    return r;
  }

  Term term() {
    Term out;
    out.pos = peek().pos;
    while (true) {
      item(out);
      if (peek().kind == Tok::kMinus) {
        fail("subtraction is not supported; introduce a fresh variable (E d j+p = n+d)");
      }
      if (peek().kind != Tok::kPlus) break;
      take();
    }
    return out;
  }

  void item(Term& out) {
    const Token& t = peek();
    if (t.kind == Tok::kNumber) {
      take();
      const std::int64_t value = std::stoll(t.text);
      if (peek().kind == Tok::kStar) {
        take();
        add_variable(out, value);
      } else if (peek().kind == Tok::kIdent && peek().glued && peek(1).kind != Tok::kLBracket &&
                 peek(1).kind != Tok::kLParen) {
        add_variable(out, value);
      } else {
        out.constant += value;
      }
      return;
    }
    if (t.kind == Tok::kIdent) {
      if (peek(1).kind == Tok::kLBracket || peek(1).kind == Tok::kLParen) {
        fail("'" + t.text + "' cannot appear inside a term");
      }
      add_variable(out, 1);
      return;
    }
    if (t.kind == Tok::kMinus) fail("subtraction is not supported; introduce a fresh variable");
    fail(t.kind == Tok::kEnd ? "unexpected end of input in a term" : "expected a term, found '" + t.text + "'");
  }

  void add_variable(Term& out, std::int64_t coefficient) {
    const std::string name = variable_name();
    if (coefficient != 0) out.coefficients[name] += coefficient;
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<Definition> parse_program(std::string_view text) { return Parser(text).program(); }

FormulaPtr parse_formula(std::string_view text) { return Parser(text).sentence(); }

}  // namespace wordlogic::logic
