#include "mcalg/parser.hpp"

#include <cctype>
#include <sstream>

#include "mcalg/errors.hpp"

namespace mcalg {

namespace {

class Cursor {
public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }

  std::size_t pos() const { return pos_; }

  void expect(char c) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != c) {
      fail(std::string("expected '") + c + "'");
    }
    ++pos_;
  }

  bool try_consume(std::string_view word) {
    skip_ws();
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  std::string identifier() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected an identifier");
    return std::string(text_.substr(start, pos_ - start));
  }

  std::string number_token() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a rational literal");
    return std::string(text_.substr(start, pos_ - start));
  }

  [[noreturn]] void fail(const std::string& what) {
    throw ParseError(what, pos_);
  }

private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

Unit parse_rational(Cursor& cur) {
  std::size_t at = cur.pos();
  std::string token = cur.number_token();
  auto v = Unit::try_parse(token);  // RangeError propagates for out-of-range
  if (!v) throw ParseError("malformed rational '" + token + "'", at);
  return *v;
}

Term parse_term_at(Cursor& cur);

SequenceSpec parse_seqspec(Cursor& cur) {
  std::string head = cur.identifier();
  if (head == "constant") {
    cur.expect('(');
    Term value = parse_term_at(cur);
    cur.expect(')');
    return SequenceSpec::constant_seq(std::move(value));
  }
  if (head == "ominus_dyadic") {
    cur.expect('(');
    Term base = parse_term_at(cur);
    cur.expect(')');
    return SequenceSpec::ominus_dyadic(std::move(base));
  }
  if (head == "explicit") {
    cur.expect('[');
    std::vector<Term> prefix;
    prefix.push_back(parse_term_at(cur));
    while (cur.try_consume(",")) prefix.push_back(parse_term_at(cur));
    cur.expect(';');
    if (!cur.try_consume("tail")) cur.fail("expected 'tail='");
    cur.expect('=');
    Term tail = parse_term_at(cur);
    cur.expect(']');
    return SequenceSpec::explicit_then_constant(std::move(prefix), std::move(tail));
  }
  cur.fail("unknown sequence spec '" + head + "'");
}

Term parse_term_at(Cursor& cur) {
  std::size_t at = cur.pos();
  std::string head = cur.identifier();
  if (head == "var") {
    cur.expect('(');
    std::string token = cur.number_token();
    if (token.find('/') != std::string::npos) cur.fail("variable index must be an integer");
    cur.expect(')');
    return Term::var(std::stoull(token));
  }
  if (head == "const") {
    cur.expect('(');
    Unit v = parse_rational(cur);
    cur.expect(')');
    return Term::constant(std::move(v));
  }
  if (head == "oplus" || head == "odot" || head == "join" || head == "meet") {
    cur.expect('(');
    Term lhs = parse_term_at(cur);
    cur.expect(',');
    Term rhs = parse_term_at(cur);
    cur.expect(')');
    if (head == "oplus") return Term::oplus(std::move(lhs), std::move(rhs));
    if (head == "odot") return Term::odot(std::move(lhs), std::move(rhs));
    if (head == "join") return Term::join(std::move(lhs), std::move(rhs));
    return Term::meet(std::move(lhs), std::move(rhs));
  }
  if (head == "ominus") {
    cur.expect('(');
    Term arg = parse_term_at(cur);
    cur.expect(',');
    Unit lambda = parse_rational(cur);
    cur.expect(')');
    return Term::ominus(std::move(arg), std::move(lambda));
  }
  if (head == "delta") {
    cur.expect('(');
    SequenceSpec spec = parse_seqspec(cur);
    cur.expect(')');
    return Term::delta(std::move(spec));
  }
  throw ParseError("unknown operation '" + head + "'", at);
}

void render_to(const Term& term, std::ostream& out);

void render_spec(const SequenceSpec& spec, std::ostream& out) {
  switch (spec.kind()) {
    case SequenceSpec::Kind::ConstantSeq:
      out << "constant(";
      render_to(spec.value(), out);
      out << ")";
      return;
    case SequenceSpec::Kind::OminusDyadic:
      out << "ominus_dyadic(";
      render_to(spec.base(), out);
      out << ")";
      return;
    case SequenceSpec::Kind::ExplicitThenConstant: {
      out << "explicit[";
      bool first = true;
      for (const Term& t : spec.prefix()) {
        if (!first) out << ", ";
        first = false;
        render_to(t, out);
      }
      out << "; tail=";
      render_to(spec.tail(), out);
      out << "]";
      return;
    }
    case SequenceSpec::Kind::Generator:
      throw NotSupportedError("generator specs have no textual form");
  }
}

void render_to(const Term& term, std::ostream& out) {
  switch (term.kind()) {
    case TermKind::Var:
      out << "var(" << term.var_index() << ")";
      return;
    case TermKind::Const:
      out << "const(" << term.const_value().str() << ")";
      return;
    case TermKind::Oplus:
    case TermKind::Odot:
    case TermKind::Join:
    case TermKind::Meet: {
      const char* name = term.kind() == TermKind::Oplus  ? "oplus"
                         : term.kind() == TermKind::Odot ? "odot"
                         : term.kind() == TermKind::Join ? "join"
                                                         : "meet";
      out << name << "(";
      render_to(term.lhs(), out);
      out << ", ";
      render_to(term.rhs(), out);
      out << ")";
      return;
    }
    case TermKind::OminusConst:
      out << "ominus(";
      render_to(term.child(), out);
      out << ", " << term.lambda().str() << ")";
      return;
    case TermKind::Delta:
      out << "delta(";
      render_spec(term.spec(), out);
      out << ")";
      return;
  }
}

}  // namespace

Term parse_term(std::string_view text) {
  Cursor cur(text);
  Term t = parse_term_at(cur);
  if (!cur.at_end()) cur.fail("trailing input after term");
  return t;
}

std::string render_term(const Term& term) {
  std::ostringstream out;
  render_to(term, out);
  return out.str();
}

}  // namespace mcalg
