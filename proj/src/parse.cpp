#include "diffalg/parse.hpp"

#include <cctype>

#include "diffalg/errors.hpp"

namespace diffalg {

namespace {

struct Token {
  enum Kind { Num, Ident, Op, End } kind = End;
  std::string text;
  Rat value;
};

class Lexer {
 public:
  explicit Lexer(const std::string& s) : s_(s) { advance(); }

  const Token& cur() const { return cur_; }

  void advance() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
      ++pos_;
    if (pos_ >= s_.size()) {
      cur_ = Token{Token::End, "", 0};
      return;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             std::isdigit(static_cast<unsigned char>(s_[pos_])))
        ++pos_;
      cur_ = Token{Token::Num, s_.substr(start, pos_ - start),
                   Rat(Int(s_.substr(start, pos_ - start)))};
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) ||
              s_[pos_] == '_' || s_[pos_] == '@'))
        ++pos_;
      cur_ = Token{Token::Ident, s_.substr(start, pos_ - start), 0};
      return;
    }
    if (std::string("+-*/^()").find(c) != std::string::npos) {
      cur_ = Token{Token::Op, std::string(1, c), 0};
      ++pos_;
      return;
    }
    fail("ParseError", std::string("unexpected character '") + c + "'");
  }

 private:
  const std::string& s_;
  std::size_t pos_ = 0;
  Token cur_;
};

class Parser {
 public:
  Parser(const RingPtr& r, const std::string& text) : r_(r), lex_(text) {}

  RingElem parse() {
    RingElem e = expr();
    if (lex_.cur().kind != Token::End)
      fail("ParseError", "trailing input after expression");
    return e;
  }

 private:
  RingElem expr() {
    bool neg = false;
    while (lex_.cur().kind == Token::Op &&
           (lex_.cur().text == "+" || lex_.cur().text == "-")) {
      if (lex_.cur().text == "-") neg = !neg;
      lex_.advance();
    }
    RingElem e = term();
    if (neg) e = -e;
    while (lex_.cur().kind == Token::Op &&
           (lex_.cur().text == "+" || lex_.cur().text == "-")) {
      bool minus = lex_.cur().text == "-";
      lex_.advance();
      RingElem rhs = term();
      e = minus ? e - rhs : e + rhs;
    }
    return e;
  }

  RingElem term() {
    RingElem e = factor();
    for (;;) {
      if (lex_.cur().kind != Token::Op) return e;
      if (lex_.cur().text == "*") {
        lex_.advance();
        e = e * factor();
      } else if (lex_.cur().text == "/") {
        lex_.advance();
        RingElem rhs = factor();
        auto inv = rhs.inverse();
        if (!inv)
          fail("NotAUnit", "division by a non-unit: " + rhs.to_string());
        e = e * *inv;
      } else {
        return e;
      }
    }
  }

  RingElem factor() {
    RingElem e = atom();
    if (lex_.cur().kind == Token::Op && lex_.cur().text == "^") {
      lex_.advance();
      bool neg = false;
      if (lex_.cur().kind == Token::Op && lex_.cur().text == "-") {
        neg = true;
        lex_.advance();
      }
      if (lex_.cur().kind != Token::Num)
        fail("ParseError", "exponent must be an integer literal");
      Rat v = lex_.cur().value;
      lex_.advance();
      uint32_t k = static_cast<uint32_t>(numerator(v));
      if (neg) {
        auto inv = e.inverse();
        if (!inv)
          fail("NotAUnit",
               "negative power of a non-unit: " + e.to_string());
        e = *inv;
      }
      e = e.pow(k);
    }
    return e;
  }

  RingElem atom() {
    const Token& t = lex_.cur();
    if (t.kind == Token::Num) {
      Rat v = t.value;
      lex_.advance();
      return r_->constant(v);
    }
    if (t.kind == Token::Ident) {
      auto idx = r_->find_gen(t.text);
      if (!idx) fail("UnknownVariable", "unknown name '" + t.text + "'");
      lex_.advance();
      return r_->gen_elem(*idx);
    }
    if (t.kind == Token::Op && t.text == "(") {
      lex_.advance();
      RingElem e = expr();
      if (!(lex_.cur().kind == Token::Op && lex_.cur().text == ")"))
        fail("ParseError", "expected ')'");
      lex_.advance();
      return e;
    }
    if (t.kind == Token::Op && t.text == "-") {
      lex_.advance();
      return -atom();
    }
    fail("ParseError", "expected an operand");
  }

  RingPtr r_;
  Lexer lex_;
};

DiffRing::DerivCallback parsed_derivs(
    const std::vector<std::string>& vars,
    const std::map<std::string, std::string>& derivs) {
  return [vars, derivs](const RingPtr& r) {
    std::vector<RingElem> out;
    for (const auto& v : vars) {
      auto it = derivs.find(v);
      if (it == derivs.end())
        fail("DeclarationError", "no derivative given for '" + v + "'");
      out.push_back(parse_expr(r, it->second));
    }
    return out;
  };
}

}  // namespace

RingElem parse_expr(const RingPtr& r, const std::string& text) {
  return Parser(r, text).parse();
}

RingPtr make_base(const std::vector<std::string>& vars,
                  const std::map<std::string, std::string>& derivs) {
  return DiffRing::base(vars, parsed_derivs(vars, derivs));
}

RingPtr make_adjoin(const RingPtr& parent,
                    const std::vector<std::string>& vars,
                    const std::map<std::string, std::string>& derivs) {
  return DiffRing::adjoin(parent, vars, parsed_derivs(vars, derivs));
}

RingPtr make_localize(const RingPtr& parent, const std::string& f_expr) {
  return DiffRing::localize(parent, parse_expr(parent, f_expr));
}

RingPtr make_monic_quotient(const RingPtr& parent, const std::string& var,
                            const std::vector<std::string>& coeffs) {
  std::vector<RingElem> cc;
  for (const auto& s : coeffs) cc.push_back(parse_expr(parent, s));
  return DiffRing::monic_quotient(parent, var, cc);
}

}  // namespace diffalg
