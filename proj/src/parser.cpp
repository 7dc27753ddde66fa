#include "gqe/parser.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <string>
#include <vector>

namespace gqe {

namespace {

enum class Tok {
  End, Ident, Int, Float, String,
  LParen, RParen, LBracket, RBracket,
  Comma, Colon, Pipe, Dot, DotDot, Star, Plus, Minus, Slash,
  Lt, Gt, Le, Ge, Eq, Neq,
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
  std::int64_t int_value = 0;
  double float_value = 0;
};

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

bool is_reserved(const std::string& ident) {
  static const char* const kReserved[] = {
      "MATCH", "OPTIONAL", "WHERE", "WITH", "UNWIND", "RETURN", "AS", "DISTINCT",
      "ORDER", "BY", "ASC", "DESC", "SKIP", "LIMIT", "UNION", "ALL", "AND", "OR", "NOT"};
  std::string u = upper(ident);
  for (const char* k : kReserved)
    if (u == k) return true;
  return false;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> toks;
    for (;;) {
      skip_trivia();
      SourcePos pos{line_, col_};
      if (at_end()) {
        toks.push_back({Tok::End, "", pos});
        return toks;
      }
      char c = text_[i_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        toks.push_back(lex_ident(pos));
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        toks.push_back(lex_number(pos));
      } else if (c == '\'' || c == '"') {
        toks.push_back(lex_string(pos));
      } else {
        toks.push_back(lex_punct(pos));
      }
    }
  }

 private:
  bool at_end() const { return i_ >= text_.size(); }
  char peek(std::size_t k = 0) const { return i_ + k < text_.size() ? text_[i_ + k] : '\0'; }

  void advance() {
    if (text_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip_trivia() {
    for (;;) {
      if (!at_end() && std::isspace(static_cast<unsigned char>(text_[i_]))) {
        advance();
      } else if (peek() == '/' && peek(1) == '/') {
        while (!at_end() && text_[i_] != '\n') advance();
      } else {
        return;
      }
    }
  }

  Token lex_ident(SourcePos pos) {
    std::string s;
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[i_])) || text_[i_] == '_')) {
      s += text_[i_];
      advance();
    }
    return {Tok::Ident, std::move(s), pos};
  }

  Token lex_number(SourcePos pos) {
    std::string s;
    bool is_float = false;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
      s += text_[i_];
      advance();
    }
    // a '.' starts a fraction only when followed by a digit ("1..2" keeps
    // the integer and leaves the range dots alone)
    if (peek() == '.' && std::isdigit(static_cast<unsigned char>(peek(1)))) {
      is_float = true;
      s += '.';
      advance();
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        s += text_[i_];
        advance();
      }
    }
    if (peek() == 'e' || peek() == 'E') {
      std::size_t k = 1;
      if (peek(1) == '+' || peek(1) == '-') k = 2;
      if (std::isdigit(static_cast<unsigned char>(peek(k)))) {
        is_float = true;
        for (std::size_t j = 0; j <= k; ++j) {
          s += text_[i_];
          advance();
        }
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
          s += text_[i_];
          advance();
        }
      }
    }
    Token t{is_float ? Tok::Float : Tok::Int, s, pos};
    if (is_float)
      t.float_value = std::stod(s);
    else
      t.int_value = std::stoll(s);
    return t;
  }

  Token lex_string(SourcePos pos) {
    char quote = text_[i_];
    advance();
    std::string s;
    while (!at_end() && text_[i_] != quote) {
      char c = text_[i_];
      if (c == '\\') {
        advance();
        if (at_end()) break;
        char e = text_[i_];
        switch (e) {
          case 'n': s += '\n'; break;
          case 't': s += '\t'; break;
          case 'r': s += '\r'; break;
          case '\\': case '\'': case '"': s += e; break;
          default:
            throw ParseError(std::string("unknown escape '\\") + e + "'", {line_, col_});
        }
        advance();
      } else {
        s += c;
        advance();
      }
    }
    if (at_end()) throw ParseError("unterminated string literal", pos);
    advance();  // closing quote
    return {Tok::String, std::move(s), pos};
  }

  Token lex_punct(SourcePos pos) {
    char c = text_[i_];
    advance();
    switch (c) {
      case '(': return {Tok::LParen, "(", pos};
      case ')': return {Tok::RParen, ")", pos};
      case '[': return {Tok::LBracket, "[", pos};
      case ']': return {Tok::RBracket, "]", pos};
      case ',': return {Tok::Comma, ",", pos};
      case ':': return {Tok::Colon, ":", pos};
      case '|': return {Tok::Pipe, "|", pos};
      case '*': return {Tok::Star, "*", pos};
      case '+': return {Tok::Plus, "+", pos};
      case '-': return {Tok::Minus, "-", pos};
      case '/': return {Tok::Slash, "/", pos};
      case '=': return {Tok::Eq, "=", pos};
      case '.':
        if (peek() == '.') {
          advance();
          return {Tok::DotDot, "..", pos};
        }
        return {Tok::Dot, ".", pos};
      case '<':
        if (peek() == '>') {
          advance();
          return {Tok::Neq, "<>", pos};
        }
        if (peek() == '=') {
          advance();
          return {Tok::Le, "<=", pos};
        }
        return {Tok::Lt, "<", pos};
      case '>':
        if (peek() == '=') {
          advance();
          return {Tok::Ge, ">=", pos};
        }
        return {Tok::Gt, ">", pos};
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
  }

  std::string_view text_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(Lexer(text).run()) {}

  QueryAst parse_query() {
    QueryAst ast;
    ast.singles.push_back(parse_single());
    while (at_keyword("UNION")) {
      next();
      bool all = false;
      if (at_keyword("ALL")) {
        next();
        all = true;
      }
      ast.union_all.push_back(all);
      ast.singles.push_back(parse_single());
    }
    if (!at(Tok::End)) {
      if (at_keyword("MATCH") || at_keyword("OPTIONAL") || at_keyword("WITH") ||
          at_keyword("UNWIND") || at_keyword("RETURN"))
        fail(upper(cur().text) + " cannot follow a completed RETURN clause; expected UNION or end of query");
      fail("expected UNION or end of query");
    }
    return ast;
  }

  ExprPtr parse_standalone_expr() {
    ExprPtr e = parse_expr();
    if (!at(Tok::End)) fail("unexpected trailing input after expression");
    return e;
  }

 private:
  // ---- token plumbing ------------------------------------------------

  const Token& cur() const { return toks_[i_]; }
  const Token& peek(std::size_t k = 1) const {
    return toks_[std::min(i_ + k, toks_.size() - 1)];
  }
  void next() { i_ = std::min(i_ + 1, toks_.size() - 1); }
  bool at(Tok k) const { return cur().kind == k; }

  bool at_keyword(const char* kw) const {
    return cur().kind == Tok::Ident && upper(cur().text) == kw;
  }

  void expect_keyword(const char* kw) {
    if (!at_keyword(kw)) fail(std::string("expected ") + kw);
    next();
  }

  std::string expect_ident(const char* what) {
    if (!at(Tok::Ident)) fail(std::string("expected ") + what);
    if (is_reserved(cur().text)) fail("reserved word '" + cur().text + "' used as " + what);
    std::string s = cur().text;
    next();
    return s;
  }

  void expect(Tok k, const char* what) {
    if (!at(k)) fail(std::string("expected ") + what);
    next();
  }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, cur().pos); }

  // ---- clause structure ----------------------------------------------

  SingleQuery parse_single() {
    SingleQuery single;
    for (;;) {
      QueryPart part;
      while (at_keyword("MATCH") || at_keyword("OPTIONAL")) part.matches.push_back(parse_match());
      if (at_keyword("WITH")) {
        part.tail = parse_with_tail();
        single.parts.push_back(std::move(part));
        continue;
      }
      if (at_keyword("UNWIND")) {
        part.tail = UnwindOnlyTail{parse_unwind_item()};
        single.parts.push_back(std::move(part));
        continue;
      }
      if (at_keyword("RETURN")) {
        part.tail = parse_return_tail();
        single.parts.push_back(std::move(part));
        return single;
      }
      fail("expected MATCH, WITH, UNWIND or RETURN");
    }
  }

  MatchClause parse_match() {
    MatchClause clause;
    if (at_keyword("OPTIONAL")) {
      next();
      clause.optional = true;
    }
    expect_keyword("MATCH");
    clause.patterns.push_back(parse_pattern_part());
    while (at(Tok::Comma)) {
      next();
      clause.patterns.push_back(parse_pattern_part());
    }
    if (at_keyword("WHERE")) {
      next();
      clause.where = parse_expr();
    }
    return clause;
  }

  UnwindItem parse_unwind_item() {
    expect_keyword("UNWIND");
    ExprPtr source = parse_expr();
    expect_keyword("AS");
    std::string alias = expect_ident("identifier after AS");
    return {std::move(source), std::move(alias)};
  }

  std::vector<ReturnItem> parse_item_list() {
    std::vector<ReturnItem> items;
    for (;;) {
      ReturnItem item;
      item.expr = parse_expr();
      if (at_keyword("AS")) {
        next();
        item.alias = expect_ident("identifier after AS");
      }
      items.push_back(std::move(item));
      if (!at(Tok::Comma)) return items;
      next();
    }
  }

  WithTail parse_with_tail() {
    expect_keyword("WITH");
    WithTail tail;
    if (at_keyword("DISTINCT")) {
      next();
      tail.distinct = true;
    }
    tail.items = parse_item_list();
    if (at_keyword("WHERE")) {
      next();
      tail.where = parse_expr();
    }
    if (at_keyword("UNWIND")) tail.unwind = parse_unwind_item();
    return tail;
  }

  ReturnTail parse_return_tail() {
    expect_keyword("RETURN");
    ReturnTail tail;
    if (at_keyword("DISTINCT")) {
      next();
      tail.distinct = true;
    }
    tail.items = parse_item_list();
    if (at_keyword("ORDER")) {
      next();
      expect_keyword("BY");
      for (;;) {
        OrderKey key;
        key.expr = parse_expr();
        if (at_keyword("ASC")) {
          next();
        } else if (at_keyword("DESC")) {
          next();
          key.ascending = false;
        }
        tail.order_by.push_back(std::move(key));
        if (!at(Tok::Comma)) break;
        next();
      }
    }
    if (at_keyword("SKIP")) {
      next();
      tail.skip = expect_count("row count after SKIP");
    }
    if (at_keyword("LIMIT")) {
      next();
      tail.limit = expect_count("row count after LIMIT");
    }
    return tail;
  }

  std::size_t expect_count(const char* what) {
    if (!at(Tok::Int)) fail(std::string("expected ") + what);
    std::size_t n = static_cast<std::size_t>(cur().int_value);
    next();
    return n;
  }

  // ---- patterns --------------------------------------------------------

  NodePattern parse_node_pattern() {
    expect(Tok::LParen, "'('");
    NodePattern node;
    if (at(Tok::Ident)) {
      if (is_reserved(cur().text)) fail("reserved word '" + cur().text + "' used as variable");
      node.var = cur().text;
      next();
    }
    while (at(Tok::Colon)) {
      next();
      node.labels.push_back(expect_ident("label name"));
    }
    expect(Tok::RParen, "')'");
    return node;
  }

  bool at_rel_start() const {
    if (at(Tok::Minus)) return peek().kind == Tok::LBracket;
    if (at(Tok::Lt)) return peek().kind == Tok::Minus && peek(2).kind == Tok::LBracket;
    return false;
  }

  RelPattern parse_rel_pattern() {
    bool left_arrow = false;
    if (at(Tok::Lt)) {
      next();
      left_arrow = true;
    }
    expect(Tok::Minus, "'-'");
    expect(Tok::LBracket, "'['");
    RelPattern rel;
    if (at(Tok::Ident)) {
      if (is_reserved(cur().text)) fail("reserved word '" + cur().text + "' used as variable");
      rel.var = cur().text;
      next();
    }
    if (at(Tok::Colon)) {
      next();
      rel.types.push_back(expect_ident("relationship type"));
      while (at(Tok::Pipe)) {
        next();
        if (at(Tok::Colon)) next();  // ":A|:B" spelling
        rel.types.push_back(expect_ident("relationship type"));
      }
    }
    if (at(Tok::Star)) {
      next();
      HopRange range{1, std::nullopt};
      if (at(Tok::Int)) {
        range.min = static_cast<std::size_t>(cur().int_value);
        range.max = range.min;
        next();
        if (at(Tok::DotDot)) {
          next();
          range.max.reset();
          if (at(Tok::Int)) {
            range.max = static_cast<std::size_t>(cur().int_value);
            next();
          }
        }
      } else if (at(Tok::DotDot)) {
        next();
        if (!at(Tok::Int)) fail("expected hop count after '..'");
        range.max = static_cast<std::size_t>(cur().int_value);
        next();
      }
      rel.range = range;
    }
    expect(Tok::RBracket, "']'");
    expect(Tok::Minus, "'-'");
    bool right_arrow = false;
    if (at(Tok::Gt)) {
      next();
      right_arrow = true;
    }
    // <-[]-> is the undirected spelling from the mapping table;
    // <-[]- is inbound, -[]-> outbound, -[]- undirected
    if (left_arrow && right_arrow) rel.dir = Direction::Both;
    else if (left_arrow) rel.dir = Direction::In;
    else if (right_arrow) rel.dir = Direction::Out;
    else rel.dir = Direction::Both;
    return rel;
  }

  PatternPart parse_pattern_part() {
    PatternPart part;
    part.nodes.push_back(parse_node_pattern());
    while (at_rel_start()) {
      part.rels.push_back(parse_rel_pattern());
      part.nodes.push_back(parse_node_pattern());
    }
    return part;
  }

  // ---- expressions -----------------------------------------------------

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (at_keyword("OR")) {
      next();
      e = lor(std::move(e), parse_and());
    }
    return e;
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_not();
    while (at_keyword("AND")) {
      next();
      e = land(std::move(e), parse_not());
    }
    return e;
  }

  ExprPtr parse_not() {
    if (at_keyword("NOT")) {
      next();
      return lnot(parse_not());
    }
    return parse_comparison();
  }

  ExprPtr parse_comparison() {
    ExprPtr e = parse_additive();
    for (;;) {
      CmpOp op;
      if (at(Tok::Eq)) op = CmpOp::Eq;
      else if (at(Tok::Neq)) op = CmpOp::Ne;
      else if (at(Tok::Lt)) op = CmpOp::Lt;
      else if (at(Tok::Le)) op = CmpOp::Le;
      else if (at(Tok::Gt)) op = CmpOp::Gt;
      else if (at(Tok::Ge)) op = CmpOp::Ge;
      else return e;
      next();
      e = cmp(op, std::move(e), parse_additive());
    }
  }

  ExprPtr parse_additive() {
    ExprPtr e = parse_multiplicative();
    for (;;) {
      if (at(Tok::Plus)) {
        next();
        e = arith(ArithOp::Add, std::move(e), parse_multiplicative());
      } else if (at(Tok::Minus)) {
        next();
        e = arith(ArithOp::Sub, std::move(e), parse_multiplicative());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_multiplicative() {
    ExprPtr e = parse_unary();
    for (;;) {
      if (at(Tok::Star)) {
        next();
        e = arith(ArithOp::Mul, std::move(e), parse_unary());
      } else if (at(Tok::Slash)) {
        next();
        e = arith(ArithOp::Div, std::move(e), parse_unary());
      } else {
        return e;
      }
    }
  }

  ExprPtr parse_unary() {
    if (at(Tok::Minus)) {
      next();
      return make_expr(expr::Neg{parse_unary()});
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    if (at(Tok::Int)) {
      Value v(cur().int_value);
      next();
      return lit(std::move(v));
    }
    if (at(Tok::Float)) {
      Value v(cur().float_value);
      next();
      return lit(std::move(v));
    }
    if (at(Tok::String)) {
      Value v(cur().text);
      next();
      return lit(std::move(v));
    }
    if (at(Tok::LParen)) return parse_paren_or_pattern();
    if (at(Tok::Ident)) {
      if (is_reserved(cur().text)) fail("expected expression");
      std::string name = cur().text;
      if (peek().kind == Tok::LParen) {
        next();
        return parse_call(name);
      }
      next();
      // postfix: property access or a label test
      if (at(Tok::Dot)) {
        next();
        std::string p = expect_ident("property name");
        return prop(std::move(name), std::move(p));
      }
      if (at(Tok::Colon)) {
        std::vector<std::string> labels;
        while (at(Tok::Colon)) {
          next();
          labels.push_back(expect_ident("label name"));
        }
        return make_expr(expr::HasLabels{std::move(name), std::move(labels)});
      }
      return var(std::move(name));
    }
    fail("expected expression");
  }

  ExprPtr parse_call(const std::string& name) {
    // only the aggregate functions exist in this fragment
    std::string lower;
    for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    AggFn fn;
    if (lower == "count") fn = AggFn::Count;
    else if (lower == "sum") fn = AggFn::Sum;
    else if (lower == "avg") fn = AggFn::Avg;
    else if (lower == "min") fn = AggFn::Min;
    else if (lower == "max") fn = AggFn::Max;
    else if (lower == "collect") fn = AggFn::Collect;
    else fail("unknown function '" + name + "'");
    expect(Tok::LParen, "'('");
    if (fn == AggFn::Count && at(Tok::Star)) {
      next();
      expect(Tok::RParen, "')'");
      return count_star();
    }
    bool distinct = false;
    if (at_keyword("DISTINCT")) {
      if (fn != AggFn::Count) fail("DISTINCT is only supported inside count()");
      next();
      distinct = true;
    }
    ExprPtr arg = parse_expr();
    expect(Tok::RParen, "')'");
    return agg(distinct ? AggFn::CountDistinct : fn, std::move(arg));
  }

  /// '(' can open a parenthesized expression, a label predicate
  /// `(v:Label)` or a full pattern predicate. Try the pattern shape
  /// first and fall back to an expression on failure.
  ExprPtr parse_paren_or_pattern() {
    std::size_t saved = i_;
    try {
      PatternPart pattern = parse_pattern_part();
      if (!pattern.rels.empty()) return make_expr(expr::PatternPredicate{std::move(pattern)});
      const NodePattern& only = pattern.nodes.front();
      if (only.var && !only.labels.empty())
        return make_expr(expr::HasLabels{*only.var, only.labels});
    } catch (const ParseError&) {
      // not a pattern; re-parse as a parenthesized expression
    }
    i_ = saved;
    expect(Tok::LParen, "'('");
    ExprPtr e = parse_expr();
    expect(Tok::RParen, "')'");
    return e;
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
};

}  // namespace

QueryAst parse(std::string_view text) { return Parser(text).parse_query(); }

ExprPtr parse_expr(std::string_view text) { return Parser(text).parse_standalone_expr(); }

}  // namespace gqe
