#ifndef SUBIOTA_PARSE_HPP
#define SUBIOTA_PARSE_HPP

// Recursive-descent parser for the ASCII formula grammar.
//
//   formula  := imp ('<->' imp)?                (the arrow chain is sugar)
//   imp      := or ('->' imp)?
//   or       := and ('|' or)?
//   and      := unary ('&' and)?
//   unary    := '!' unary | 'forall' v '.' formula | 'exists' v '.' formula
//             | primary
//   primary  := 'bot' | '(' formula ')' | 'the' qset NAME 'is' NAME
//             | '-'? NAME '(' arg (',' arg)* ')' | NAME eq qset NAME
//   arg      := 'iota' qset v '.' formula | NAME
//   eq       := '=+' | '=-'
//   qset     := '[' ('*' | '{'? NAME (',' NAME)* '}'?) ']'
//
// Names are identifiers (hyphens allowed between letters). A name is a
// nominal variable iff it matches [u-z][0-9]*; all other names are nominal
// constants or predicate symbols. '!A' abbreviates 'A -> bot', 'A <-> B'
// abbreviates '(A -> B) & (B -> A)', and 'the[q] F is G' abbreviates
// 'G(iota[q] x. F(x))'. A '*' qualified set denotes the full predicate set
// of the ambient base and needs one in scope to resolve.

#include <cctype>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "subiota/base.hpp"
#include "subiota/formula.hpp"

namespace subiota {

namespace detail {

enum class Tok {
  Ident, LParen, RParen, LBracket, RBracket, LBrace, RBrace, Comma, Dot,
  Amp, Pipe, Bang, Minus, Arrow, Iff, EqPlus, EqMinus, Star, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token take() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  void advance() {
    while (i_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[i_]))) ++i_;
    std::size_t start = i_;
    if (i_ >= src_.size()) {
      tok_ = {Tok::End, "", start};
      return;
    }
    char c = src_[i_];
    auto one = [&](Tok k) {
      ++i_;
      tok_ = {k, std::string(1, c), start};
    };
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_ + 1;
      while (j < src_.size()) {
        char d = src_[j];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          ++j;
        } else if (d == '-' && j + 1 < src_.size() &&
                   std::isalpha(static_cast<unsigned char>(src_[j + 1]))) {
          j += 2;
        } else {
          break;
        }
      }
      tok_ = {Tok::Ident, src_.substr(i_, j - i_), start};
      i_ = j;
      return;
    }
    switch (c) {
      case '(': one(Tok::LParen); return;
      case ')': one(Tok::RParen); return;
      case '[': one(Tok::LBracket); return;
      case ']': one(Tok::RBracket); return;
      case '{': one(Tok::LBrace); return;
      case '}': one(Tok::RBrace); return;
      case ',': one(Tok::Comma); return;
      case '.': one(Tok::Dot); return;
      case '&': one(Tok::Amp); return;
      case '|': one(Tok::Pipe); return;
      case '!': one(Tok::Bang); return;
      case '*': one(Tok::Star); return;
      case '-':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '>') {
          i_ += 2;
          tok_ = {Tok::Arrow, "->", start};
        } else {
          one(Tok::Minus);
        }
        return;
      case '<':
        if (i_ + 2 < src_.size() + 1 && src_.compare(i_, 3, "<->") == 0) {
          i_ += 3;
          tok_ = {Tok::Iff, "<->", start};
          return;
        }
        throw ParseError("unexpected '<'", start);
      case '=':
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '+') {
          i_ += 2;
          tok_ = {Tok::EqPlus, "=+", start};
          return;
        }
        if (i_ + 1 < src_.size() && src_[i_ + 1] == '-') {
          i_ += 2;
          tok_ = {Tok::EqMinus, "=-", start};
          return;
        }
        throw ParseError("expected '=+' or '=-'", start);
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", start);
    }
  }

  const std::string& src_;
  std::size_t i_ = 0;
  Token tok_{Tok::End, "", 0};
};

inline bool is_keyword(const std::string& s) {
  return s == "forall" || s == "exists" || s == "iota" || s == "the" || s == "is" || s == "bot";
}

struct ParsedDesc {
  QSet q;
  std::string var;
  FormulaPtr phi;
};

class Parser {
 public:
  Parser(const std::string& src, const SubatomicBase* base) : lex_(src), base_(base) {}

  FormulaPtr parse() {
    FormulaPtr f = formula();
    expect(Tok::End, "trailing input after formula");
    return f;
  }

 private:
  Lexer lex_;
  const SubatomicBase* base_;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, lex_.peek().pos); }
  Token expect(Tok k, const std::string& msg) {
    if (lex_.peek().kind != k) fail(msg);
    return lex_.take();
  }
  bool accept(Tok k) {
    if (lex_.peek().kind != k) return false;
    lex_.take();
    return true;
  }

  FormulaPtr formula() {
    FormulaPtr lhs = imp();
    if (accept(Tok::Iff)) {
      FormulaPtr rhs = imp();
      return make_iff(lhs, rhs);
    }
    return lhs;
  }

  FormulaPtr imp() {
    FormulaPtr lhs = or_();
    if (accept(Tok::Arrow)) return make_implies(lhs, imp());
    return lhs;
  }

  FormulaPtr or_() {
    FormulaPtr lhs = and_();
    if (accept(Tok::Pipe)) return make_or(lhs, or_());
    return lhs;
  }

  FormulaPtr and_() {
    FormulaPtr lhs = unary();
    if (accept(Tok::Amp)) return make_and(lhs, and_());
    return lhs;
  }

  FormulaPtr unary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::Bang) {
      lex_.take();
      return make_not(unary());
    }
    if (t.kind == Tok::Ident && (t.text == "forall" || t.text == "exists")) {
      bool is_forall = t.text == "forall";
      lex_.take();
      std::string var = binder_variable();
      expect(Tok::Dot, "expected '.' after binder variable");
      FormulaPtr body = formula();
      return is_forall ? make_forall(var, body) : make_exists(var, body);
    }
    return primary();
  }

  std::string binder_variable() {
    Token v = expect(Tok::Ident, "expected a variable");
    if (!is_variable_name(v.text))
      throw ParseError("binder variable must match [u-z][0-9]*, got '" + v.text + "'", v.pos);
    return v.text;
  }

  FormulaPtr primary() {
    const Token& t = lex_.peek();
    if (t.kind == Tok::LParen) {
      lex_.take();
      FormulaPtr f = formula();
      expect(Tok::RParen, "expected ')'");
      return f;
    }
    if (t.kind == Tok::Minus) {
      std::size_t pos = t.pos;
      lex_.take();
      if (lex_.peek().kind != Tok::Ident || is_keyword(lex_.peek().text))
        throw ParseError("'-' (predication failure) applies to atomic predications only", pos);
      return application(Polarity::Negative);
    }
    if (t.kind == Tok::Ident) {
      if (t.text == "bot") {
        lex_.take();
        return make_bottom();
      }
      if (t.text == "the") return the_sugar();
      if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'");
      if (lookahead_is_application()) return application(Polarity::Positive);
      return qident();
    }
    fail("expected a formula");
  }

  // After the current Ident, an '(' means predicate application.
  bool lookahead_is_application() {
    Token id = lex_.take();
    bool app = lex_.peek().kind == Tok::LParen;
    pushed_ = id;
    return app;
  }

  Token take_ident() {
    if (pushed_) {
      Token t = *pushed_;
      pushed_.reset();
      return t;
    }
    return expect(Tok::Ident, "expected a name");
  }

  std::optional<Token> pushed_;

  FormulaPtr qident() {
    Token lhs = take_ident();
    Polarity sign;
    if (accept(Tok::EqPlus)) {
      sign = Polarity::Positive;
    } else if (accept(Tok::EqMinus)) {
      sign = Polarity::Negative;
    } else {
      throw ParseError("expected '=+', '=-' or a predication after '" + lhs.text + "'", lhs.pos);
    }
    QSet q = qset();
    Token rhs = expect(Tok::Ident, "expected a term on the right of the identity");
    return make_qident(sign, Term::from_name(lhs.text), Term::from_name(rhs.text), q);
  }

  FormulaPtr application(Polarity polarity) {
    Token name = take_ident();
    if (is_keyword(name.text)) throw ParseError("'" + name.text + "' is a reserved word", name.pos);
    expect(Tok::LParen, "expected '(' after predicate name");
    std::vector<std::variant<Term, ParsedDesc>> args;
    while (true) {
      if (lex_.peek().kind == Tok::Ident && lex_.peek().text == "iota") {
        args.push_back(description());
      } else {
        Token a = expect(Tok::Ident, "expected a term or description argument");
        if (is_keyword(a.text)) throw ParseError("'" + a.text + "' is a reserved word", a.pos);
        args.emplace_back(Term::from_name(a.text));
      }
      if (!accept(Tok::Comma)) break;
    }
    expect(Tok::RParen, "expected ')'");
    PredicateSymbol pred = predicate(name, args.size());

    const ParsedDesc* main_desc = nullptr;
    for (const auto& a : args)
      if (const auto* d = std::get_if<ParsedDesc>(&a)) {
        main_desc = d;
        break;
      }
    if (!main_desc) {
      std::vector<Term> terms;
      terms.reserve(args.size());
      for (auto& a : args) terms.push_back(std::get<Term>(a));
      return make_predication(polarity, pred, std::move(terms));
    }
    // Identical descriptions corefer (they share one scope); distinct ones
    // nest, outermost first in argument order.
    std::vector<PsiSlot> slots;
    for (const auto& a : args) {
      if (const auto* term = std::get_if<Term>(&a)) {
        slots.emplace_back(*term);
      } else {
        const auto& d = std::get<ParsedDesc>(a);
        if (d.q == main_desc->q && d.var == main_desc->var && equal(d.phi, main_desc->phi))
          slots.emplace_back(PsiHole{});
        else
          slots.emplace_back(DescriptionTerm{d.q, d.var, d.phi});
      }
    }
    return make_iota_pred(polarity, pred, std::move(slots), main_desc->q, main_desc->var,
                          main_desc->phi);
  }

  ParsedDesc description() {
    lex_.take();  // 'iota'
    QSet q = qset();
    std::string var = binder_variable();
    expect(Tok::Dot, "expected '.' after description variable");
    FormulaPtr phi = formula();
    return ParsedDesc{q, var, phi};
  }

  QSet qset() {
    expect(Tok::LBracket, "expected '[' to open a predicate set");
    if (accept(Tok::Star)) {
      expect(Tok::RBracket, "expected ']'");
      if (!base_)
        fail("'*' (the full predicate set) needs a base in scope");
      return QSet::of(std::vector<PredicateSymbol>(base_->predicates().begin(),
                                                   base_->predicates().end()));
    }
    bool braced = accept(Tok::LBrace);
    std::vector<PredicateSymbol> preds;
    do {
      Token name = expect(Tok::Ident, "expected a predicate name");
      preds.push_back(predicate(name, std::nullopt));
    } while (accept(Tok::Comma));
    if (braced) expect(Tok::RBrace, "expected '}'");
    expect(Tok::RBracket, "expected ']'");
    return QSet::of(std::move(preds));
  }

  // Resolve a predicate name to a symbol: applied occurrences carry their
  // arity; set members take it from the base (default 1 without one).
  PredicateSymbol predicate(const Token& name, std::optional<std::size_t> applied_arity) {
    if (base_) {
      if (auto p = base_->find_predicate(name.text)) {
        if (applied_arity && *applied_arity != p->arity)
          throw ParseError("predicate '" + name.text + "' has arity " +
                               std::to_string(p->arity) + ", applied to " +
                               std::to_string(*applied_arity) + " argument(s)",
                           name.pos);
        return *p;
      }
      throw ParseError("predicate '" + name.text + "' is not declared by the base", name.pos);
    }
    return PredicateSymbol(name.text, applied_arity.value_or(1));
  }

  FormulaPtr the_sugar() {
    lex_.take();  // 'the'
    QSet q = qset();
    Token f = expect(Tok::Ident, "expected a predicate name after 'the[...]'");
    Token is = expect(Tok::Ident, "expected 'is'");
    if (is.text != "is") throw ParseError("expected 'is'", is.pos);
    Token g = expect(Tok::Ident, "expected a predicate name after 'is'");
    PredicateSymbol fp = predicate(f, 1);
    PredicateSymbol gp = predicate(g, 1);
    FormulaPtr phi = make_atom(fp, {Term::variable("x")});
    return make_iota_pred(Polarity::Positive, gp, {PsiSlot{PsiHole{}}}, q, "x", phi);
  }
};

}  // namespace detail

inline FormulaPtr parse_formula(const std::string& text, const SubatomicBase* base = nullptr) {
  return detail::Parser(text, base).parse();
}

inline Term parse_term(const std::string& text) {
  std::string t = text;
  // trim
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.front()))) t.erase(t.begin());
  while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back()))) t.pop_back();
  if (!is_identifier(t)) throw ParseError("expected a nominal term, got '" + text + "'", 0);
  return Term::from_name(t);
}

}  // namespace subiota

#endif
