#include "ioident/model.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace ioident {
namespace {

struct Token {
  enum Kind { Id, Int, Sym, End } kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> tokenize(std::string_view s, int line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    int col = static_cast<int>(i) + 1;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      out.push_back({Token::Id, std::string(s.substr(i, j - i)), line, col});
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
      out.push_back({Token::Int, std::string(s.substr(i, j - i)), line, col});
      i = j;
    } else if (std::string_view("+-*/^()'=:,").find(c) != std::string_view::npos) {
      out.push_back({Token::Sym, std::string(1, c), line, col});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Token::End, "", line, static_cast<int>(s.size()) + 1});
  return out;
}

class TokenStream {
public:
  explicit TokenStream(std::vector<Token> toks) : toks_(std::move(toks)) {}
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_sym(const char* s, std::size_t k = 0) const { return peek(k).kind == Token::Sym && peek(k).text == s; }
  bool accept(const char* s) {
    if (!is_sym(s)) return false;
    next();
    return true;
  }
  const Token& expect(const char* s) {
    if (!is_sym(s)) fail(std::string("expected '") + s + "'");
    return next();
  }
  [[noreturn]] void fail(const std::string& msg) const {
    const Token& t = peek();
    std::string got = t.kind == Token::End ? "end of line" : "'" + t.text + "'";
    throw ParseError(msg + ", got " + got, t.line, t.col);
  }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::uint32_t parse_small_int(const Token& t) {
  if (t.text.size() > 6) throw ParseError("integer too large here", t.line, t.col);
  return static_cast<std::uint32_t>(std::stoul(t.text));
}

// Recursive-descent parser over a value semantics S:
//   expr  := term (('+'|'-') term)*
//   term  := unary (('*'|'/') unary)*
//   unary := ('-'|'+') unary | power
//   power := primary ('^' (INT | '(' INT ')'))?
//   primary := INT | ID | '(' expr ')'
template <class S>
class ExprParser {
public:
  using V = typename S::Value;
  ExprParser(TokenStream& ts, const S& sem) : ts_(ts), sem_(sem) {}

  V expr() {
    V v = term();
    for (;;) {
      if (ts_.accept("+")) v = v + term();
      else if (ts_.accept("-")) v = v - term();
      else return v;
    }
  }

private:
  V term() {
    V v = unary();
    for (;;) {
      if (ts_.accept("*")) {
        v = v * unary();
      } else if (ts_.is_sym("/")) {
        Token at = ts_.next();
        v = sem_.divide(v, unary(), at);
      } else {
        return v;
      }
    }
  }

  V unary() {
    if (ts_.accept("-")) return -unary();
    if (ts_.accept("+")) return unary();
    return power();
  }

  V power() {
    V base = primary();
    if (!ts_.accept("^")) return base;
    bool paren = ts_.accept("(");
    if (ts_.peek().kind != Token::Int) ts_.fail("expected a non-negative integer exponent");
    std::uint32_t k = parse_small_int(ts_.next());
    if (paren) ts_.expect(")");
    return sem_.pow(base, k);
  }

  V primary() {
    const Token& t = ts_.peek();
    if (t.kind == Token::Int) {
      ts_.next();
      return sem_.number(Rat(mpz_class(t.text)));
    }
    if (t.kind == Token::Id) {
      Token id = ts_.next();
      return sem_.identifier(id, ts_);
    }
    if (ts_.accept("(")) {
      V v = expr();
      ts_.expect(")");
      return v;
    }
    ts_.fail("expected a number, identifier or '('");
  }

  TokenStream& ts_;
  const S& sem_;
};

struct RationalSemantics {
  using Value = RatFun;
  RingPtr ring;
  std::set<std::string> outputs;  // names that must not appear

  Value number(const Rat& r) const { return RatFun(r).adopt(ring); }
  Value pow(const Value& v, std::uint32_t k) const { return v.pow(k); }
  Value divide(const Value& a, const Value& b, const Token& at) const {
    if (b.is_zero()) throw ParseError("division by zero", at.line, at.col);
    return a / b;
  }
  Value identifier(const Token& id, TokenStream& ts) const {
    if (outputs.count(id.text)) throw ParseError("output '" + id.text + "' cannot appear on a right-hand side", id.line, id.col);
    auto idx = ring->index_of(id.text);
    if (!idx) throw ParseError("undeclared identifier '" + id.text + "'", id.line, id.col);
    if (ts.is_sym("'")) {
      const Token& t = ts.peek();
      throw ParseError("derivatives are not allowed on a right-hand side", t.line, t.col);
    }
    return RatFun(MPoly::variable(ring, *idx));
  }
};

struct DiffSemantics {
  using Value = DiffPoly;
  const DiffRing* ring;

  Value number(const Rat& r) const { return DiffPoly(RatFun(r)); }
  Value pow(const Value& v, std::uint32_t k) const { return v.pow(k); }
  Value divide(const Value& a, const Value& b, const Token& at) const {
    if (!b.is_constant() || b.is_zero()) throw ParseError("division is only allowed by nonzero coefficients", at.line, at.col);
    return a.scale(b.terms().begin()->second.inverse());
  }
  Value identifier(const Token& id, TokenStream& ts) const {
    if (auto p = ring->params()->index_of(id.text)) {
      return DiffPoly(RatFun(MPoly::variable(ring->params(), *p)));
    }
    auto idx = ring->index_of(id.text);
    if (!idx) throw ParseError("undeclared identifier '" + id.text + "'", id.line, id.col);
    std::uint32_t order = 0;
    while (ts.accept("'")) ++order;
    if (order == 0 && ts.is_sym("^") && ts.is_sym("(", 1)) {
      ts.next();
      ts.next();
      if (ts.peek().kind != Token::Int) ts.fail("expected a derivative order");
      order = parse_small_int(ts.next());
      ts.expect(")");
    }
    return DiffPoly::variable({*idx, order});
  }
};

void check_identifier_list(const std::vector<Token>& toks, std::size_t start, std::vector<std::string>& out) {
  std::size_t i = start;
  for (;;) {
    if (toks[i].kind != Token::Id) throw ParseError("expected an identifier", toks[i].line, toks[i].col);
    out.push_back(toks[i].text);
    ++i;
    if (toks[i].kind == Token::End) return;
    if (toks[i].kind != Token::Sym || toks[i].text != ",") throw ParseError("expected ',' or end of line", toks[i].line, toks[i].col);
    ++i;
  }
}

std::string strip_comment(std::string_view line) {
  auto pos = line.find('#');
  return std::string(pos == std::string_view::npos ? line : line.substr(0, pos));
}

}  // namespace

bool Model::operator==(const Model& o) const {
  return params == o.params && states == o.states && inputs == o.inputs && outputs == o.outputs &&
         f == o.f && g == o.g && Q == o.Q;
}

Model make_model(std::vector<std::string> params, std::vector<std::string> states,
                 std::vector<std::string> inputs, std::vector<std::string> outputs,
                 const std::vector<RatFun>& state_rhs, const std::vector<RatFun>& output_rhs) {
  Model m;
  m.params = std::move(params);
  m.states = std::move(states);
  m.inputs = std::move(inputs);
  m.outputs = std::move(outputs);
  if (state_rhs.size() != m.states.size() || output_rhs.size() != m.outputs.size())
    throw ArityError("make_model: one right-hand side per state and per output is required");
  std::vector<std::string> names = m.params;
  names.insert(names.end(), m.states.begin(), m.states.end());
  names.insert(names.end(), m.inputs.begin(), m.inputs.end());
  m.ring = make_ring(names);
  m.param_ring = make_ring(m.params);

  std::vector<RatFun> all = state_rhs;
  all.insert(all.end(), output_rhs.begin(), output_rhs.end());
  for (auto& r : all) r = r.ring() ? RatFun::fraction(remap_by_name(r.num(), m.ring), remap_by_name(r.den(), m.ring)) : r.adopt(m.ring);

  MPoly q = MPoly::constant(m.ring, Rat(1));
  for (const auto& r : all) q = lcm(q, r.den().adopt(m.ring));
  m.Q = q;
  for (std::size_t i = 0; i < all.size(); ++i) {
    MPoly scaled = all[i].num().adopt(m.ring) * exact_div(q, all[i].den().adopt(m.ring));
    (i < m.states.size() ? m.f : m.g).push_back(scaled);
  }
  return m;
}

Model parse_model(std::string_view text) {
  std::vector<std::string> params, states, inputs, outputs;
  std::set<std::string> declared_kinds;
  struct Equation {
    Token lhs;
    bool derivative;
    std::vector<Token> rhs;
  };
  std::vector<Equation> equations;

  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    std::string line = strip_comment(text.substr(start, end - start));
    start = end + 1;
    auto toks = tokenize(line, line_no);
    if (toks.front().kind == Token::End) {
      if (end == text.size()) break;
      continue;
    }
    const Token& head = toks[0];
    if (head.kind == Token::Id && toks[1].kind == Token::Sym && toks[1].text == ":") {
      static const std::set<std::string> kinds{"params", "states", "inputs", "outputs"};
      if (!kinds.count(head.text)) throw ParseError("unknown declaration '" + head.text + "'", head.line, head.col);
      if (!equations.empty()) throw ParseError("declarations must precede equations", head.line, head.col);
      if (declared_kinds.count(head.text)) throw ParseError("duplicate '" + head.text + ":' declaration", head.line, head.col);
      declared_kinds.insert(head.text);
      auto& list = head.text == "params" ? params : head.text == "states" ? states : head.text == "inputs" ? inputs : outputs;
      check_identifier_list(toks, 2, list);
    } else {
      if (head.kind != Token::Id) throw ParseError("expected an equation or a declaration", head.line, head.col);
      std::size_t i = 1;
      bool deriv = false;
      if (toks[i].kind == Token::Sym && toks[i].text == "'") {
        deriv = true;
        ++i;
      }
      if (toks[i].kind != Token::Sym || toks[i].text != "=") throw ParseError("expected '='", toks[i].line, toks[i].col);
      equations.push_back({head, deriv, std::vector<Token>(toks.begin() + static_cast<long>(i) + 1, toks.end())});
    }
    if (end == text.size()) break;
  }

  for (const char* req : {"params", "states", "outputs"})
    if (!declared_kinds.count(req)) throw ParseError(std::string("missing '") + req + ":' declaration", line_no, 1);

  std::set<std::string> seen;
  for (const auto* list : {&params, &states, &inputs, &outputs})
    for (const auto& name : *list)
      if (!seen.insert(name).second) throw ParseError("identifier '" + name + "' declared twice", 1, 1);

  Model shell = make_model(params, states, inputs, outputs, std::vector<RatFun>(states.size(), RatFun(0)),
                           std::vector<RatFun>(outputs.size(), RatFun(0)));
  RationalSemantics sem{shell.ring, std::set<std::string>(outputs.begin(), outputs.end())};

  std::vector<std::optional<RatFun>> srhs(states.size()), orhs(outputs.size());
  for (const auto& eq : equations) {
    auto find = [&](const std::vector<std::string>& v) -> std::optional<std::size_t> {
      for (std::size_t k = 0; k < v.size(); ++k)
        if (v[k] == eq.lhs.text) return k;
      return std::nullopt;
    };
    std::optional<RatFun>* slot = nullptr;
    if (eq.derivative) {
      auto k = find(states);
      if (!k) throw ParseError("'" + eq.lhs.text + "' is not a declared state", eq.lhs.line, eq.lhs.col);
      slot = &srhs[*k];
    } else {
      auto k = find(outputs);
      if (!k) {
        if (find(states)) throw ParseError("state equations need a derivative mark: " + eq.lhs.text + "'", eq.lhs.line, eq.lhs.col);
        throw ParseError("'" + eq.lhs.text + "' is not a declared output", eq.lhs.line, eq.lhs.col);
      }
      slot = &orhs[*k];
    }
    if (slot->has_value()) throw ParseError("duplicate equation for '" + eq.lhs.text + "'", eq.lhs.line, eq.lhs.col);
    TokenStream ts(eq.rhs);
    if (ts.peek().kind == Token::End) ts.fail("expected an expression");
    ExprParser<RationalSemantics> parser(ts, sem);
    RatFun v = parser.expr();
    if (ts.peek().kind != Token::End) ts.fail("unexpected token");
    *slot = v;
  }

  std::vector<RatFun> sr, outr;
  for (std::size_t k = 0; k < states.size(); ++k) {
    if (!srhs[k]) throw ParseError("missing equation for state '" + states[k] + "'", line_no, 1);
    sr.push_back(*srhs[k]);
  }
  for (std::size_t k = 0; k < outputs.size(); ++k) {
    if (!orhs[k]) throw ParseError("missing equation for output '" + outputs[k] + "'", line_no, 1);
    outr.push_back(*orhs[k]);
  }
  return make_model(params, states, inputs, outputs, sr, outr);
}

RatFun parse_rational(std::string_view text, const RingPtr& ring) {
  auto toks = tokenize(text, 1);
  TokenStream ts(toks);
  if (ts.peek().kind == Token::End) ts.fail("expected an expression");
  RationalSemantics sem{ring, {}};
  ExprParser<RationalSemantics> parser(ts, sem);
  RatFun v = parser.expr();
  if (ts.peek().kind != Token::End) ts.fail("unexpected token");
  return v;
}

DiffPoly parse_diff_poly(std::string_view text, const DiffRing& ring) {
  auto toks = tokenize(text, 1);
  TokenStream ts(toks);
  if (ts.peek().kind == Token::End) ts.fail("expected an expression");
  DiffSemantics sem{&ring};
  ExprParser<DiffSemantics> parser(ts, sem);
  DiffPoly v = parser.expr();
  if (ts.peek().kind != Token::End) ts.fail("unexpected token");
  return v;
}

std::string to_string(const Model& m) {
  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
    return s;
  };
  std::ostringstream os;
  os << "params: " << join(m.params) << "\n";
  os << "states: " << join(m.states) << "\n";
  if (!m.inputs.empty()) os << "inputs: " << join(m.inputs) << "\n";
  os << "outputs: " << join(m.outputs) << "\n";
  for (std::size_t i = 0; i < m.n(); ++i) os << m.states[i] << "' = " << to_string(RatFun::fraction(m.f[i], m.Q)) << "\n";
  for (std::size_t j = 0; j < m.m(); ++j) os << m.outputs[j] << " = " << to_string(RatFun::fraction(m.g[j], m.Q)) << "\n";
  return os.str();
}

DiffRingPtr make_diff_ring(const Model& m) {
  std::vector<std::string> names;
  std::vector<VarKind> kinds;
  for (const auto& s : m.states) names.push_back(s), kinds.push_back(VarKind::State);
  for (const auto& s : m.outputs) names.push_back(s), kinds.push_back(VarKind::Output);
  for (const auto& s : m.inputs) names.push_back(s), kinds.push_back(VarKind::Input);
  return std::make_shared<const DiffRing>(names, kinds, m.param_ring);
}

DiffPoly lift(const MPoly& p, const Model& m, const DiffRing& ring) {
  MPoly q = p.adopt(m.ring);
  DiffPoly out;
  std::size_t np = m.lambda();
  for (const auto& t : q.terms()) {
    Exponents pe(t.exp.begin(), t.exp.begin() + static_cast<long>(np));
    RatFun c(MPoly::monomial(m.param_ring, pe, t.coeff));
    DiffMonomial mono;
    for (std::size_t i = 0; i < m.n(); ++i)
      if (auto e = t.exp[m.state_index(i)]) mono.push_back({{static_cast<std::uint32_t>(i), 0}, e});
    for (std::size_t i = 0; i < m.kappa(); ++i)
      if (auto e = t.exp[m.input_index(i)])
        mono.push_back({{static_cast<std::uint32_t>(m.n() + m.m() + i), 0}, e});
    out += DiffPoly::term(mono, c);
  }
  (void)ring;
  return out;
}

SigmaGenerators build_sigma_generators(const Model& m, const DiffRing& ring) {
  SigmaGenerators s;
  DiffPoly q = lift(m.Q, m, ring);
  for (std::size_t i = 0; i < m.n(); ++i)
    s.diff_eqs.push_back(q * DiffPoly::variable({static_cast<std::uint32_t>(i), 1}) - lift(m.f[i], m, ring));
  for (std::size_t j = 0; j < m.m(); ++j)
    s.out_eqs.push_back(q * DiffPoly::variable({static_cast<std::uint32_t>(m.n() + j), 0}) - lift(m.g[j], m, ring));
  s.saturator = m.Q;
  return s;
}

}  // namespace ioident
