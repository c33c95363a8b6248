#include "specm/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <random>

#include "specm/report.hpp"
#include "specm/zeroset.hpp"

namespace specm {

namespace {

std::string describe(int line, int column, const std::set<std::string>& expected, const std::string& found) {
  std::string s = "line " + std::to_string(line) + ", column " + std::to_string(column) + ": expected ";
  bool first = true;
  for (const auto& e : expected) {
    s += (first ? "" : " | ") + e;
    first = false;
  }
  return s + ", found " + found;
}

}  // namespace

ParseFailure::ParseFailure(int line, int column, std::set<std::string> expected, const std::string& found)
    : Error(ErrorCode::ParseError, describe(line, column, expected, found)),
      line_(line),
      column_(column),
      expected_(std::move(expected)),
      found_(found) {}

namespace {

// ---------------------------------------------------------------- lexer

enum class Tok { Num, Ident, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1, column = 1;
};

std::string in_quotes(const std::string& s) { return "'" + s + "'"; }

std::string show(const Token& t) {
  switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Num: return "number " + t.text;
    default: return in_quotes(t.text);
  }
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else if ((static_cast<unsigned char>(src[i]) & 0xC0) != 0x80) {
        ++col;
      }
      ++i;
    }
  };
  auto digits_at = [&](size_t j) {
    size_t k = j;
    while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
    return k - j;
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token t;
    t.line = line;
    t.column = col;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t n = digits_at(i);
      // "p/q" and "p.q" are single literals.
      if (i + n < src.size() && (src[i + n] == '/' || src[i + n] == '.')) {
        size_t m = digits_at(i + n + 1);
        if (m > 0) n += 1 + m;
      }
      t.kind = Tok::Num;
      t.text = std::string(src.substr(i, n));
      advance(n);
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t n = 1;
      while (i + n < src.size() && (std::isalnum(static_cast<unsigned char>(src[i + n])) || src[i + n] == '_')) ++n;
      t.kind = Tok::Ident;
      t.text = std::string(src.substr(i, n));
      advance(n);
    } else if (std::string_view("{}()[]<>;:,@+-*/^=").find(c) != std::string_view::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance(1);
    } else {
      throw ParseFailure(line, col, {"token"}, in_quotes(std::string(1, c)));
    }
    out.push_back(std::move(t));
  }
  Token end;
  end.line = line;
  end.column = col;
  out.push_back(end);
  return out;
}

const std::set<std::string> kCommands = {"zeros", "unit",     "idem",       "derive", "inf",      "clean",
                                         "classify", "components", "split", "separate", "uf"};
const std::set<std::string> kReserved = {"domain", "let",   "ideal", "piecewise", "osc",  "x",      "shrink",
                                         "tail",   "left",  "right", "M",         "P",    "Jplus",  "Jminus",
                                         "bits",   "mod",   "continuous"};

bool reserved(const std::string& s) { return kReserved.count(s) > 0 || kCommands.count(s) > 0; }

// ---------------------------------------------------------------- parser

/// Exact value of a piece body at b; oscillator values at generic points
/// are rational in the model even where eval reports them as symbolic.
Rational body_value(const PiecewiseFn& body, const Rational& b) {
  if (auto i = body.breakpoint_index(b)) return body.point_values()[*i];
  auto k = body.piece_toward(b, Side::Right);
  if (!k) k = body.piece_toward(b, Side::Left);
  return piece_value(body.pieces()[*k], b);
}

class Parser {
 public:
  Parser(std::string_view text, const Domain& d) : toks_(lex(text)) { script_.domain = d; }

  Script script() {
    bool seen_other = false;
    while (peek().kind != Tok::End) {
      if (accept_word("domain")) {
        if (seen_other) error_here({"'let'", "'ideal'", "command"});
        script_.domain = domain_literal();
        continue;
      }
      seen_other = true;
      if (accept_word("let")) {
        auto name = fresh_name();
        expect("=");
        auto f = expr(script_.domain);
        script_.functions.emplace_back(name, std::move(f));
      } else if (accept_word("ideal")) {
        auto name = fresh_name();
        expect("=");
        auto I = ideal_literal();
        script_.ideals.emplace_back(name, std::move(I));
      } else {
        command();
      }
    }
    return std::move(script_);
  }

  PiecewiseFn single_function() {
    auto f = expr(script_.domain);
    if (peek().kind != Tok::End) error_here({"operator"});
    return f;
  }

  Domain single_domain() {
    auto d = domain_literal();
    if (peek().kind != Tok::End) error_here({"end of input"});
    return d;
  }

 private:
  // ---- token helpers

  const Token& peek() const { return toks_[pos_]; }

  void note(const std::string& what) {
    if (pos_ != expected_pos_) {
      expected_pos_ = pos_;
      expected_.clear();
    }
    expected_.insert(what);
  }

  [[noreturn]] void error_here(std::set<std::string> extra = {}) {
    if (expected_pos_ == pos_) extra.insert(expected_.begin(), expected_.end());
    throw ParseFailure(peek().line, peek().column, extra, show(peek()));
  }

  bool at_punct(const std::string& p) {
    note(in_quotes(p));
    return peek().kind == Tok::Punct && peek().text == p;
  }
  bool accept(const std::string& p) {
    if (!at_punct(p)) return false;
    ++pos_;
    return true;
  }
  void expect(const std::string& p) {
    if (!accept(p)) error_here();
  }
  bool at_word(const std::string& w) {
    note(in_quotes(w));
    return peek().kind == Tok::Ident && peek().text == w;
  }
  bool accept_word(const std::string& w) {
    if (!at_word(w)) return false;
    ++pos_;
    return true;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) error_here();
  }

  std::string name_token(const std::string& what) {
    note(what);
    if (peek().kind != Tok::Ident || reserved(peek().text)) error_here();
    return toks_[pos_++].text;
  }

  std::string fresh_name() {
    size_t at = pos_;
    auto name = name_token("name");
    if (find_function(name) || find_ideal(name)) {
      pos_ = at;
      throw ParseFailure(peek().line, peek().column, {"unused name"}, in_quotes(name));
    }
    return name;
  }

  const PiecewiseFn* find_function(const std::string& n) const {
    for (const auto& [k, f] : script_.functions)
      if (k == n) return &f;
    return nullptr;
  }
  const IdealDesc* find_ideal(const std::string& n) const {
    for (const auto& [k, I] : script_.ideals)
      if (k == n) return &I;
    return nullptr;
  }

  Rational number() {
    note("number");
    if (peek().kind != Tok::Num) error_here();
    return parse_rational(toks_[pos_++].text);
  }

  Rational signed_number() {
    bool neg = accept("-");
    Rational q = number();
    return neg ? Rational(-q) : q;
  }

  long small_int() {
    size_t at = pos_;
    Rational q = number();
    if (q.get_den() != 1 || q > 1000000) {
      pos_ = at;
      error_here({"integer"});
    }
    return q.get_num().get_si();
  }

  /// Rational or an infinite end; sign gives which infinity.
  std::optional<Rational> bound() {
    bool neg = accept("-");
    if (accept_word("inf")) return std::nullopt;
    Rational q = number();
    return neg ? Rational(-q) : q;
  }

  Side side() {
    if (accept_word("left")) return Side::Left;
    if (accept_word("right")) return Side::Right;
    error_here();
  }

  struct IntervalLit {
    std::optional<Rational> lo, hi;
    bool lo_closed, hi_closed;
  };

  IntervalLit interval() {
    IntervalLit iv{};
    if (accept("[")) iv.lo_closed = true;
    else if (accept("(")) iv.lo_closed = false;
    else error_here();
    iv.lo = bound();
    expect(",");
    iv.hi = bound();
    if (accept("]")) iv.hi_closed = true;
    else if (accept(")")) iv.hi_closed = false;
    else error_here();
    return iv;
  }

  Domain domain_literal() {
    auto iv = interval();
    return Domain::make(iv.lo, iv.hi, iv.lo_closed, iv.hi_closed);
  }

  // ---- function expressions

  PiecewiseFn expr(const Domain& d) {
    PiecewiseFn f = term(d);
    while (true) {
      if (accept("+")) f = add(f, term(d));
      else if (accept("-")) f = sub(f, term(d));
      else return f;
    }
  }

  PiecewiseFn term(const Domain& d) {
    PiecewiseFn f = unary(d);
    while (true) {
      if (accept("*")) {
        f = mul(f, unary(d));
      } else if (accept("/")) {
        size_t at = pos_;
        Rational q = number();
        if (q == 0) {
          pos_ = at;
          error_here({"nonzero number"});
        }
        f = scale(1 / q, f);
      } else {
        return f;
      }
    }
  }

  PiecewiseFn unary(const Domain& d) {
    if (accept("-")) return scale(-1, unary(d));
    PiecewiseFn f = atom(d);
    if (accept("^")) {
      long n = small_int();
      PiecewiseFn p = PiecewiseFn::constant(d, 1);
      for (long k = 0; k < n; ++k) p = mul(p, f);
      return p;
    }
    return f;
  }

  PiecewiseFn atom(const Domain& d) {
    note("number");
    if (peek().kind == Tok::Num) return PiecewiseFn::constant(d, number());
    if (accept("(")) {
      auto f = expr(d);
      expect(")");
      return f;
    }
    if (accept_word("x")) return PiecewiseFn::identity(d);
    if (accept_word("piecewise")) return piecewise(d);
    if (accept_word("osc")) return oscillator(d);
    note("function name");
    if (peek().kind == Tok::Ident && !reserved(peek().text)) {
      const PiecewiseFn* f = find_function(peek().text);
      if (!f) throw ParseFailure(peek().line, peek().column, {"defined function"}, in_quotes(peek().text));
      ++pos_;
      return f->domain() == d ? *f : restrict_to(*f, d);
    }
    error_here();
  }

  PiecewiseFn oscillator(const Domain& d) {
    expect("(");
    Rational z = signed_number();
    expect(",");
    Rational c = signed_number();
    expect(",");
    Rational r = signed_number();
    Rational amp = 1, value = 1;
    if (accept(",")) {
      amp = signed_number();
      expect(",");
      value = signed_number();
    }
    expect(")");
    return PiecewiseFn::oscillator(d, OscPrimitive::standard(z, c, r, amp, value));
  }

  /// Domain on which a piece body is evaluated: the script domain when it
  /// is bounded, otherwise the closure of the piece.
  static Domain body_domain(const Domain& d, const IntervalLit& iv) {
    if (d.bounded()) return d;
    if (iv.lo && iv.hi) return Domain::make(iv.lo, iv.hi, true, true);
    return Domain::make(iv.lo, iv.hi, iv.lo.has_value(), iv.hi.has_value());
  }

  PiecewiseFn piecewise(const Domain& d) {
    struct Piece {
      IntervalLit iv;
      PiecewiseFn body;
      Token at;
    };
    std::vector<Piece> pieces;
    expect("{");
    do {
      Token at = peek();
      auto iv = interval();
      expect(":");
      auto body = expr(body_domain(d, iv));
      pieces.push_back({iv, std::move(body), at});
    } while (accept(";"));
    expect("}");
    std::map<Rational, Rational> overrides;
    if (accept("@")) {
      expect("{");
      do {
        Rational b = signed_number();
        expect(":");
        overrides[b] = signed_number();
      } while (accept(","));
      expect("}");
    }

    auto bad = [](const Token& t, const std::string& why) {
      fail(ErrorCode::MalformedPartition,
           "line " + std::to_string(t.line) + ", column " + std::to_string(t.column) + ": " + why);
    };
    const auto& first = pieces.front().iv;
    const auto& last = pieces.back().iv;
    if (first.lo != d.lo || (first.lo && first.lo_closed != d.lo_closed))
      bad(pieces.front().at, "first piece must start at the domain end " + d.to_string());
    if (last.hi != d.hi || (last.hi && last.hi_closed != d.hi_closed))
      bad(pieces.back().at, "last piece must end at the domain end " + d.to_string());

    std::vector<Rational> cuts, values;
    std::vector<PieceExpr> exprs;
    for (size_t i = 0; i < pieces.size(); ++i) {
      const auto& p = pieces[i];
      if (p.iv.lo && p.iv.hi && *p.iv.lo >= *p.iv.hi) bad(p.at, "empty piece");
      // The body may not break strictly inside its piece.
      for (const auto& b : p.body.breakpoints())
        if ((!p.iv.lo || *p.iv.lo < b) && (!p.iv.hi || b < *p.iv.hi)) bad(p.at, "piece body breaks inside the piece");
      Span s{p.iv.lo, p.iv.hi};
      auto k = p.body.piece_containing(s.interior_point());
      exprs.push_back(p.body.pieces()[*k]);
      if (i + 1 == pieces.size()) break;
      const auto& next = pieces[i + 1];
      if (!p.iv.hi || !next.iv.lo || *p.iv.hi != *next.iv.lo) bad(next.at, "pieces must be contiguous");
      const Rational& b = *p.iv.hi;
      if (p.iv.hi_closed && next.iv.lo_closed) {
        Rational l = body_value(p.body, b), r = body_value(next.body, b);
        if (l != r) bad(next.at, "both pieces claim " + to_string(b) + " with different values");
      }
      cuts.push_back(b);
      if (auto it = overrides.find(b); it != overrides.end()) {
        values.push_back(it->second);
        overrides.erase(it);
      } else {
        // Default: the right piece's value, unless only the left piece is closed.
        values.push_back(p.iv.hi_closed && !next.iv.lo_closed ? body_value(p.body, b) : body_value(next.body, b));
      }
    }
    if (!overrides.empty()) bad(pieces.front().at, to_string(overrides.begin()->first) + " is not a breakpoint");
    return PiecewiseFn::build(d, std::move(cuts), std::move(exprs), std::move(values));
  }

  // ---- ideals and descriptors

  SymbolicFamily family() {
    if (accept_word("shrink")) {
      expect("(");
      Rational a = signed_number();
      expect(",");
      Side s = side();
      expect(")");
      return SymbolicFamily::shrink(a, s);
    }
    if (accept_word("tail")) return SymbolicFamily::tail(family_args());
    error_here();
  }

  /// "(anchor, side, c, r [, k_min])" after the opening keyword.
  AccumFamily family_args() {
    expect("(");
    Rational a = signed_number();
    expect(",");
    Side s = side();
    expect(",");
    Rational c = signed_number();
    expect(",");
    Rational r = signed_number();
    Integer k = 1;
    if (accept(",")) k = Integer(small_int());
    expect(")");
    return AccumFamily::make(a, s, c, r, k);
  }

  IdealDesc ideal_literal() {
    expect("<");
    std::vector<PiecewiseFn> gens;
    std::vector<SymbolicFamily> fams;
    if (!at_punct(";") && !at_punct(">")) {
      do gens.push_back(expr(script_.domain));
      while (accept(","));
    }
    if (accept(";")) {
      while (!at_punct(">")) {
        fams.push_back(family());
        accept(",");
      }
    }
    expect(">");
    return IdealDesc::make(script_.domain, std::move(gens), std::move(fams));
  }

  MaxIdealDescriptor max_ideal() {
    if (accept_word("M")) {
      expect("(");
      Rational x = signed_number();
      expect(")");
      return MaxIdealDescriptor::m(x);
    }
    if (accept_word("P")) return MaxIdealDescriptor::p_member(family_args());
    if (accept_word("Jplus")) return MaxIdealDescriptor::j_plus();
    if (accept_word("Jminus")) return MaxIdealDescriptor::j_minus();
    error_here();
  }

  SigmaArg sigma() {
    bool bits = accept_word("bits");
    expect("{");
    std::vector<std::string> labels;
    std::vector<std::vector<int>> primes;
    std::vector<int> bitvals;
    do {
      labels.push_back(name_token("label"));
      expect(":");
      if (bits) {
        bitvals.push_back(static_cast<int>(small_int()));
        continue;
      }
      std::vector<int> ps;
      expect("{");
      if (!at_punct("}")) {
        do ps.push_back(static_cast<int>(small_int()));
        while (accept(","));
      }
      expect("}");
      primes.push_back(std::move(ps));
    } while (accept(","));
    expect("}");
    SigmaArg arg{bits ? SigmaFn::bits(labels, bitvals) : SigmaFn::primes(labels, primes), 0};
    if (accept_word("mod")) arg.modulus = static_cast<int>(small_int());
    return arg;
  }

  // ---- commands

  CommandArg function_arg() {
    if (peek().kind == Tok::Ident && find_function(peek().text)) {
      size_t at = pos_;
      auto f = expr(script_.domain);
      // A bare name echoes as itself; anything longer echoes canonically.
      std::string text = pos_ == at + 1 ? toks_[at].text : print(f);
      return {text, std::move(f)};
    }
    auto f = expr(script_.domain);
    return {print(f), std::move(f)};
  }

  CommandArg ideal_arg() {
    note("ideal name");
    if (peek().kind == Tok::Ident && !reserved(peek().text)) {
      const IdealDesc* I = find_ideal(peek().text);
      if (!I) throw ParseFailure(peek().line, peek().column, {"defined ideal"}, in_quotes(peek().text));
      return {toks_[pos_++].text, *I};
    }
    auto I = ideal_literal();
    return {print(I), std::move(I)};
  }

  void command() {
    note("command");
    if (peek().kind != Tok::Ident || !kCommands.count(peek().text)) error_here({"'domain'", "'let'", "'ideal'"});
    Command c;
    c.name = peek().text;
    c.line = peek().line;
    ++pos_;
    if (c.name == "classify" || c.name == "components" || c.name == "split") {
      c.args.push_back(ideal_arg());
    } else if (c.name == "separate") {
      for (int i = 0; i < 2; ++i) {
        auto m = max_ideal();
        c.args.push_back({print(m), m});
      }
    } else if (c.name == "uf") {
      auto s = sigma();
      std::string text = s.sigma.render(s.sigma.full_mask());
      if (s.sigma.mode == SigmaFn::Mode::Bits) text = "bits " + text;
      if (s.modulus) text += " mod " + std::to_string(s.modulus);
      c.args.push_back({text, std::move(s)});
    } else {
      c.args.push_back(function_arg());
      if (c.name == "clean" && accept_word("continuous")) c.flags.push_back("continuous");
    }
    script_.commands.push_back(std::move(c));
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  size_t expected_pos_ = static_cast<size_t>(-1);
  std::set<std::string> expected_;
  Script script_;
};

}  // namespace

Script parse(std::string_view text, const Domain& default_domain) { return Parser(text, default_domain).script(); }

PiecewiseFn parse_function(std::string_view text, const Domain& d) { return Parser(text, d).single_function(); }

Domain parse_domain(std::string_view text) { return Parser(text, Domain::closed(0, 1)).single_domain(); }

// ---------------------------------------------------------------- printing

namespace {

std::string bound_text(const std::optional<Rational>& q, bool upper) {
  if (q) return to_string(*q);
  return upper ? "inf" : "-inf";
}

std::string osc_text(const OscTerm& t) {
  const OscPrimitive& o = t.osc;
  std::string core = "osc(" + to_string(o.anchor) + ", " + to_string(o.left.c()) + ", " + to_string(o.left.r());
  if (o.amplitude != 1 || o.anchor_value != 1) core += ", " + to_string(o.amplitude) + ", " + to_string(o.anchor_value);
  core += ")";
  if (t.power != 1) core += "^" + std::to_string(t.power);
  std::string s;
  if (t.scale == 1) s = core;
  else if (t.scale == -1) s = "-" + core;
  else s = to_string(t.scale) + "*" + core;
  if (t.shift > 0) s += " + " + to_string(t.shift);
  if (t.shift < 0) s += " - " + to_string(Rational(-t.shift));
  return s;
}

std::string expr_text(const PieceExpr& e) { return e.is_poly() ? e.poly().to_string() : osc_text(e.osc()); }

/// Value the parser assigns to b when the piece holding e is closed there.
Rational closed_value(const PieceExpr& e, const Rational& b) {
  if (!e.is_poly() && e.osc().osc.anchor == b) {
    const OscTerm& t = e.osc();
    Rational v = t.osc.anchor_value;
    if (t.power == 2) v *= v;
    return t.scale * v + t.shift;
  }
  return piece_value(e, b);
}

std::string side_text(Side s) { return s == Side::Left ? "left" : "right"; }

std::string family_text(const std::string& head, const AccumFamily& f) {
  std::string s = head + "(" + to_string(f.anchor()) + ", " + side_text(f.side()) + ", " + to_string(f.c()) + ", " +
                  to_string(f.r());
  if (f.k_min() != AccumFamily::make(f.anchor(), f.side(), f.c(), f.r()).k_min()) s += ", " + f.k_min().get_str();
  return s + ")";
}

}  // namespace

std::string print(const PiecewiseFn& f) {
  const auto& cuts = f.breakpoints();
  const auto& ex = f.pieces();
  if (cuts.empty() && ex[0].is_poly()) return ex[0].poly().to_string();
  const Domain& d = f.domain();
  size_t n = ex.size();
  std::vector<bool> lo_closed(n), hi_closed(n);
  lo_closed[0] = d.lo_closed && d.lo.has_value();
  hi_closed[n - 1] = d.hi_closed && d.hi.has_value();
  std::string at;
  for (size_t i = 0; i < cuts.size(); ++i) {
    const Rational& b = cuts[i];
    const Rational& v = f.point_values()[i];
    if (closed_value(ex[i + 1], b) == v) {
      lo_closed[i + 1] = true;
    } else if (closed_value(ex[i], b) == v) {
      hi_closed[i] = true;
    } else {
      at += (at.empty() ? "" : ", ") + to_string(b) + ": " + to_string(v);
    }
  }
  std::string s = "piecewise { ";
  for (size_t i = 0; i < n; ++i) {
    Span sp = f.span(i);
    if (i) s += "; ";
    s += lo_closed[i] ? "[" : "(";
    s += bound_text(sp.lo, false) + "," + bound_text(sp.hi, true);
    s += hi_closed[i] ? "]" : ")";
    s += ": " + expr_text(ex[i]);
  }
  s += " }";
  if (!at.empty()) s += " @ {" + at + "}";
  return s;
}

std::string print(const IdealDesc& I) {
  std::string s = "<";
  for (size_t i = 0; i < I.generators.size(); ++i) s += (i ? ", " : "") + print(I.generators[i]);
  if (!I.families.empty()) {
    s += I.generators.empty() ? "; " : " ; ";
    for (size_t i = 0; i < I.families.size(); ++i) {
      const auto& fam = I.families[i];
      if (i) s += " ";
      if (fam.kind == SymbolicFamily::Kind::ShrinkingInterval)
        s += "shrink(" + to_string(fam.anchor) + ", " + side_text(fam.side) + ")";
      else
        s += family_text("tail", *fam.family);
    }
  }
  return s + ">";
}

std::string print(const MaxIdealDescriptor& m) {
  switch (m.kind) {
    case MaxIdealDescriptor::Kind::M: return "M(" + to_string(m.x) + ")";
    case MaxIdealDescriptor::Kind::PBlockMember: return family_text("P", *m.family);
    case MaxIdealDescriptor::Kind::JPlus: return "Jplus";
    case MaxIdealDescriptor::Kind::JMinus: return "Jminus";
  }
  return "";
}

// ---------------------------------------------------------------- run

namespace {

/// Sample points of d on a 1/4096 grid of its span (or of [-100, 100]).
std::vector<Rational> sample_points(const Domain& d, std::mt19937_64& rng, size_t n) {
  Rational lo = d.lo ? *d.lo : (d.hi ? Rational(*d.hi - 200) : Rational(-100));
  Rational hi = d.hi ? *d.hi : Rational(lo + 200);
  std::uniform_int_distribution<long> step(0, 4096);
  std::vector<Rational> out;
  while (out.size() < n) {
    Rational q = lo + (hi - lo) * make_rational(step(rng), 4096);
    if (d.contains(q)) out.push_back(q);
  }
  return out;
}

Json limit_json(const LimitResult& l) {
  Json j;
  switch (l.kind) {
    case LimitKind::Value: j["kind"] = "Value"; break;
    case LimitKind::Oscillates: j["kind"] = "Oscillates"; break;
    case LimitKind::Unbounded: j["kind"] = "Unbounded"; break;
  }
  j["value"] = l.kind == LimitKind::Value ? to_json(l.value) : Json(nullptr);
  return j;
}

CommandReport execute(const Script& s, const Command& c, std::mt19937_64& rng) {
  CommandReport r;
  r.command = c.name;
  r.inputs["domain"] = s.domain.to_string();
  r.inputs["args"] = Json::array();
  for (const auto& a : c.args) r.inputs["args"].push_back(a.text);
  if (!c.flags.empty()) r.inputs["flags"] = c.flags;
  try {
    const auto& a0 = c.args.at(0).value;
    if (c.name == "zeros") {
      const auto& f = std::get<PiecewiseFn>(a0);
      ZeroSet z = zero_set(f);
      r.verdict = z.is_empty() ? "Empty" : "NonEmpty";
      r.witnesses = to_json(z);
      r.witnesses["components"] = to_json(component_count(z));
      size_t checked = 0, mismatches = 0;
      for (const auto& x : sample_points(f.domain(), rng, 64)) {
        auto v = eval(f, x);
        if (v.symbolic) continue;
        ++checked;
        if ((v.value == 0) != z.contains(x)) ++mismatches;
      }
      r.certificates["samples_checked"] = checked;
      r.certificates["sample_mismatches"] = mismatches;
    } else if (c.name == "unit") {
      const auto& f = std::get<PiecewiseFn>(a0);
      auto u = is_unit(f);
      r.verdict = u.unit ? "Unit" : "NotUnit";
      if (u.unit) {
        r.certificates["epsilon"] = to_json(u.epsilon);
      } else {
        r.witnesses["witness"] = to_json(*u.witness);
        r.certificates["witness_holds"] = witness_holds(f, *u.witness);
      }
    } else if (c.name == "idem") {
      r.verdict = is_idempotent(std::get<PiecewiseFn>(a0)) ? "Idempotent" : "NotIdempotent";
    } else if (c.name == "derive") {
      r.verdict = "Derivative";
      r.witnesses["derivative"] = print(derivative(std::get<PiecewiseFn>(a0)));
    } else if (c.name == "inf") {
      const auto& f = std::get<PiecewiseFn>(a0);
      r.verdict = "Limits";
      r.witnesses["abs_limit_plus"] = f.domain().hi ? Json(nullptr) : limit_json(limit_at_infinity(f, 1));
      r.witnesses["abs_limit_minus"] = f.domain().lo ? Json(nullptr) : limit_json(limit_at_infinity(f, -1));
    } else if (c.name == "clean") {
      const auto& f = std::get<PiecewiseFn>(a0);
      bool continuous = !c.flags.empty();
      auto cr = clean_decompose(f, continuous ? CleanMode::Continuous : CleanMode::Piecewise);
      r.verdict = cr.clean ? "Clean" : "NotClean";
      if (cr.clean) {
        r.witnesses["e"] = print(*cr.e);
        r.witnesses["u"] = print(*cr.u);
        r.certificates["e_idempotent"] = is_idempotent(*cr.e);
        r.certificates["u_unit"] = is_unit(*cr.u).unit;
        r.certificates["sum_exact"] = add(*cr.e, *cr.u) == f;
      } else {
        r.certificates["certificate"] = to_json(cr.certificate);
        if (!continuous) {
          auto grid = clean_candidate_grid(f);
          r.certificates["grid_size"] = grid.size();
          r.certificates["idempotent_search"] = idempotent_search(f, grid) ? "Found" : "NoneFound";
        }
      }
    } else if (c.name == "classify") {
      const auto& I = std::get<IdealDesc>(a0);
      auto w = is_whole_ring(I);
      if (w.whole) {
        r.verdict = "WholeRing";
        r.certificates["generators"] = w.generators;
        r.certificates["families"] = w.families;
        r.certificates["sum_of_squares_epsilon"] =
            w.sum_of_squares_epsilon ? to_json(*w.sum_of_squares_epsilon) : Json(nullptr);
      } else {
        r.verdict = "Proper";
        r.witnesses = to_json(classify(I));
        r.certificates["condition_A"] = condition_A(I);
        r.certificates["n_set"] = n_set(I);
      }
    } else if (c.name == "components") {
      auto comps = connected_components(classify_or_empty(std::get<IdealDesc>(a0)));
      r.verdict = comps.count.infinite ? "Infinite" : "Finite";
      r.witnesses["classes"] = Json::array();
      for (const auto& k : comps.classes) r.witnesses["classes"].push_back(k.to_string());
      r.certificates["count"] = to_json(comps.count);
    } else if (c.name == "split") {
      auto V = classify(std::get<IdealDesc>(a0));
      auto sr = split(V);
      r.verdict = sr.connected ? "Connected" : "Split";
      if (!sr.connected) {
        r.witnesses["first"] = print(*sr.first);
        r.witnesses["second"] = print(*sr.second);
        r.witnesses["separator"] = sr.separator;
        r.certificates["first_set"] = to_json(*sr.first_set);
        r.certificates["second_set"] = to_json(*sr.second_set);
        r.certificates["partition"] = descriptor_equal(descriptor_union(*sr.first_set, *sr.second_set), V) &&
                                      descriptor_intersection(*sr.first_set, *sr.second_set).is_empty();
      }
    } else if (c.name == "separate") {
      const auto& p = std::get<MaxIdealDescriptor>(a0);
      const auto& q = std::get<MaxIdealDescriptor>(c.args.at(1).value);
      auto sr = separate(s.domain, p, q);
      r.verdict = sr.separable ? "Separable" : "NonSeparable";
      if (sr.separable) {
        r.witnesses["c"] = print(sr.witness->c);
        r.witnesses["d"] = print(sr.witness->d);
        r.certificates["product_zero"] = mul(sr.witness->c, sr.witness->d).is_zero();
        r.certificates["witness_valid"] = witness_valid(s.domain, *sr.witness, p, q);
      } else {
        r.certificates["search"] = to_json(witness_search(s.domain, p, q));
      }
    } else if (c.name == "uf") {
      const auto& sa = std::get<SigmaArg>(a0);
      const SigmaFn& sg = sa.sigma;
      int m = sa.modulus;
      if (m == 0) {
        // Smallest admissible modulus: product of the primes of sigma, or 2.
        m = 1;
        if (sg.mode == SigmaFn::Mode::Bits) m = 2;
        else
          for (const auto& ps : sg.values)
            for (int p : ps)
              if (m % p != 0) m *= p;
      }
      auto ufs = enumerate_ultrafilters(sg);
      r.verdict = "Ultrafilters";
      r.witnesses["ultrafilters"] = Json::array();
      bool round_trip = true;
      for (const auto& f : ufs) {
        auto J = uf_to_ideal(f, m);
        bool back = ideal_to_uf(J, sg).members == f.members;
        round_trip = round_trip && back;
        Json u;
        u["generator"] = f.to_string();
        u["ideal"] = J.to_string();
        u["round_trip"] = back;
        r.witnesses["ultrafilters"].push_back(u);
      }
      r.certificates["count"] = ufs.size();
      r.certificates["modulus"] = m;
      r.certificates["round_trip"] = round_trip;
    }
  } catch (const Error& e) {
    return error_report(c.name, r.inputs, e);
  }
  return r;
}

RunResult render(const std::vector<CommandReport>& reports, ReportFormat format) {
  RunResult out;
  out.exit_code = exit_code(reports);
  if (format == ReportFormat::Json) {
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(to_json(r));
    out.output = arr.dump(2) + "\n";
  } else {
    for (const auto& r : reports) out.output += to_text(r);
  }
  return out;
}

}  // namespace

RunResult run(const Script& script, ReportFormat format, unsigned long seed) {
  std::mt19937_64 rng(seed);
  std::vector<CommandReport> reports;
  for (const auto& c : script.commands) reports.push_back(execute(script, c, rng));
  return render(reports, format);
}

RunResult run_text(std::string_view text, ReportFormat format, const Domain& default_domain, unsigned long seed) {
  Script s;
  try {
    s = parse(text, default_domain);
  } catch (const Error& e) {
    Json inputs;
    if (const auto* pf = dynamic_cast<const ParseFailure*>(&e)) {
      inputs["line"] = pf->line();
      inputs["column"] = pf->column();
      inputs["expected"] = pf->expected();
      inputs["found"] = pf->found();
    }
    return render({error_report("parse", inputs, e)}, format);
  }
  return run(s, format, seed);
}

}  // namespace specm
