#include "chaincalc/spec_doc.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <sstream>

#include "chaincalc/errors.hpp"
#include "chaincalc/finite_group.hpp"
#include "chaincalc/group.hpp"

namespace chaincalc {

namespace {

[[noreturn]] void fail_at(int line, int col, const std::string& msg) {
  validation_error("line " + std::to_string(line) + ", col " +
                   std::to_string(col) + ": " + msg);
}

struct Token {
  enum Kind { Ident, Number, Punct, End } kind = End;
  std::string text;
  int line = 1, col = 1;
};

bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit((unsigned char)c); }

std::vector<Token> lex(const std::string& text) {
  std::vector<Token> toks;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      line++, col = 1, i++;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      col++, i++;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') i++;
      continue;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (ident_start(c)) {
      size_t j = i;
      while (j < text.size() && ident_char(text[j])) j++;
      t.kind = Token::Ident;
      t.text = text.substr(i, j - i);
      col += (int)(j - i);
      i = j;
    } else if (std::isdigit((unsigned char)c)) {
      size_t j = i;
      while (j < text.size() && std::isdigit((unsigned char)text[j])) j++;
      t.kind = Token::Number;
      t.text = text.substr(i, j - i);
      col += (int)(j - i);
      i = j;
    } else if (std::string("{}[]()=,;^*+-").find(c) != std::string::npos) {
      t.kind = Token::Punct;
      t.text = std::string(1, c);
      col++, i++;
    } else {
      fail_at(line, col, std::string("unexpected character '") + c + "'");
    }
    toks.push_back(std::move(t));
  }
  Token end;
  end.kind = Token::End;
  end.line = line;
  end.col = col;
  toks.push_back(end);
  return toks;
}

class Parser {
public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  ChainSpecDocument parse() {
    ChainSpecDocument doc;
    expect_keyword("group");
    parse_group(doc.group);
    expect_keyword("chain");
    parse_chain(doc.chain);
    if (at_keyword("analysis")) {
      eat();
      parse_analysis(doc.analysis);
    }
    if (cur().kind != Token::End)
      fail("expected end of file or an analysis block");
    return doc;
  }

private:
  const Token& cur() const { return toks_[pos_]; }
  Token eat() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    fail_at(cur().line, cur().col, msg + ", got '" +
                                       (cur().kind == Token::End
                                            ? std::string("end of file")
                                            : cur().text) +
                                       "'");
  }
  bool at_punct(const char* p) const {
    return cur().kind == Token::Punct && cur().text == p;
  }
  bool at_keyword(const char* k) const {
    return cur().kind == Token::Ident && cur().text == k;
  }
  Token expect_punct(const char* p) {
    if (!at_punct(p)) fail(std::string("expected '") + p + "'");
    return eat();
  }
  Token expect_ident() {
    if (cur().kind != Token::Ident) fail("expected a name");
    return eat();
  }
  void expect_keyword(const char* k) {
    if (!at_keyword(k)) fail(std::string("expected '") + k + "' block");
    eat();
  }
  Token expect_number() {
    if (cur().kind != Token::Number) fail("expected a number");
    return eat();
  }

  Int parse_int_value() {
    bool neg = false;
    if (at_punct("-")) {
      eat();
      neg = true;
    }
    Int v(expect_number().text);
    return neg ? -v : v;
  }

  int parse_small_int(const char* what, int lo, int hi) {
    Token t = cur();
    Int v = parse_int_value();
    if (v < lo || v > hi)
      fail_at(t.line, t.col, std::string(what) + " must be between " +
                                 std::to_string(lo) + " and " +
                                 std::to_string(hi));
    return (int)v.get_si();
  }

  // expr := term (('+'|'-') term)*
  SpecExpr parse_expr() {
    SpecExpr e = parse_term();
    while (at_punct("+") || at_punct("-")) {
      Token op = eat();
      SpecExpr rhs = parse_term();
      SpecExpr n;
      n.op = op.text == "+" ? SpecExpr::Op::Add : SpecExpr::Op::Sub;
      n.line = op.line;
      n.col = op.col;
      n.kids = {std::move(e), std::move(rhs)};
      e = std::move(n);
    }
    return e;
  }

  SpecExpr parse_term() {
    SpecExpr e = parse_factor();
    while (at_punct("*")) {
      Token op = eat();
      SpecExpr rhs = parse_factor();
      SpecExpr n;
      n.op = SpecExpr::Op::Mul;
      n.line = op.line;
      n.col = op.col;
      n.kids = {std::move(e), std::move(rhs)};
      e = std::move(n);
    }
    return e;
  }

  // factor := atom ('^' atom)?
  SpecExpr parse_factor() {
    SpecExpr e = parse_atom();
    if (at_punct("^")) {
      Token op = eat();
      SpecExpr ex = parse_atom();
      SpecExpr n;
      n.op = SpecExpr::Op::Pow;
      n.line = op.line;
      n.col = op.col;
      n.kids = {std::move(e), std::move(ex)};
      e = std::move(n);
    }
    return e;
  }

  SpecExpr parse_atom() {
    SpecExpr e;
    e.line = cur().line;
    e.col = cur().col;
    if (at_punct("-")) {
      eat();
      e.op = SpecExpr::Op::Neg;
      e.kids = {parse_factor()};
      return e;
    }
    if (at_punct("(")) {
      eat();
      e = parse_expr();
      expect_punct(")");
      return e;
    }
    if (cur().kind == Token::Number) {
      e.op = SpecExpr::Op::Const;
      e.value = Int(eat().text);
      return e;
    }
    if (cur().kind == Token::Ident) {
      Token t = eat();
      if (t.text == "i") {
        e.op = SpecExpr::Op::Level;
      } else {
        e.op = SpecExpr::Op::Param;
        e.name = t.text;
      }
      return e;
    }
    fail("expected a number, parameter, 'i' or '('");
  }

  std::vector<SpecExpr> parse_expr_row() {
    expect_punct("[");
    std::vector<SpecExpr> row;
    row.push_back(parse_expr());
    while (at_punct(",")) {
      eat();
      row.push_back(parse_expr());
    }
    expect_punct("]");
    return row;
  }

  std::vector<std::vector<SpecExpr>> parse_expr_matrix() {
    Token open = expect_punct("[");
    std::vector<std::vector<SpecExpr>> rows;
    rows.push_back(parse_expr_row());
    while (at_punct(",")) {
      eat();
      rows.push_back(parse_expr_row());
    }
    expect_punct("]");
    for (const auto& r : rows)
      if (r.size() != rows[0].size())
        fail_at(open.line, open.col, "matrix rows have unequal lengths");
    return rows;
  }

  // element literal: balanced parentheses, re-assembled verbatim
  std::string parse_elem_literal() {
    expect_punct("(");
    std::string s = "(";
    int depth = 1;
    while (depth > 0) {
      if (cur().kind == Token::End) fail("unterminated element literal");
      Token t = eat();
      if (t.kind == Token::Punct && t.text == "(") depth++;
      if (t.kind == Token::Punct && t.text == ")") depth--;
      s += t.text;
    }
    return s;
  }

  std::vector<std::string> parse_name_list() {
    expect_punct("{");
    std::vector<std::string> names;
    if (!at_punct("}")) {
      names.push_back(expect_ident().text);
      while (at_punct(",")) {
        eat();
        names.push_back(expect_ident().text);
      }
    }
    expect_punct("}");
    return names;
  }

  // word: ident ('^' '-'? number)? ('*' ...)*
  std::string parse_word() {
    std::string w = expect_ident().text;
    if (at_punct("^")) {
      eat();
      w += "^";
      if (at_punct("-")) {
        eat();
        w += "-";
      }
      w += expect_number().text;
    }
    while (at_punct("*")) {
      eat();
      w += "*" + parse_word();
    }
    return w;
  }

  std::vector<std::string> parse_word_list() {
    expect_punct("{");
    std::vector<std::string> ws;
    if (!at_punct("}")) {
      ws.push_back(parse_word());
      while (at_punct(",")) {
        eat();
        ws.push_back(parse_word());
      }
    }
    expect_punct("}");
    return ws;
  }

  void parse_group(GroupSpec& g) {
    expect_punct("{");
    bool familySet = false;
    while (!at_punct("}")) {
      Token key = expect_ident();
      expect_punct("=");
      if (key.text == "family") {
        Token v = expect_ident();
        if (v.text == "lattice")
          g.family = Family::LatticeSemidirect;
        else if (v.text == "heisenberg")
          g.family = Family::Heisenberg;
        else
          fail_at(v.line, v.col, "family must be lattice or heisenberg");
        familySet = true;
      } else if (key.text == "rank") {
        g.rank = parse_small_int("rank", 1, 16);
      } else if (key.text == "finite") {
        g.finite = expect_ident().text;
      } else if (key.text == "action") {
        g.actions.push_back(parse_expr_matrix());
        while (at_punct(",")) {
          eat();
          g.actions.push_back(parse_expr_matrix());
        }
      } else if (key.text == "generators") {
        expect_punct("{");
        if (!at_punct("}")) {
          parse_generator_entry(g);
          while (at_punct(",")) {
            eat();
            parse_generator_entry(g);
          }
        }
        expect_punct("}");
      } else {
        fail_at(key.line, key.col,
                "unknown group key '" + key.text +
                    "' (family, rank, finite, action, generators)");
      }
    }
    expect_punct("}");
    if (!familySet) validation_error("group block needs a family line");
  }

  void parse_generator_entry(GroupSpec& g) {
    std::string name = expect_ident().text;
    expect_punct("=");
    g.generators.emplace_back(name, parse_elem_literal());
  }

  void parse_level_fields(LevelSpec& ls, bool inLevelBlock) {
    Token key = expect_ident();
    expect_punct("=");
    if (key.text == "lattice") {
      ls.lattice = parse_expr_matrix();
    } else if (key.text == "finite") {
      if (at_punct("{"))
        ls.finiteElems = parse_name_list();
      else
        ls.finiteSub = expect_ident().text;
    } else if (key.text == "trans") {
      expect_punct("{");
      if (!at_punct("}")) {
        parse_trans_entry(ls);
        while (at_punct(",")) {
          eat();
          parse_trans_entry(ls);
        }
      }
      expect_punct("}");
    } else if (key.text == "matrix") {
      ls.matrix = parse_expr_matrix();
    } else if (key.text == "m") {
      ls.m = parse_expr();
    } else if (key.text == "twist") {
      expect_punct("(");
      ls.twist.push_back(parse_expr());
      expect_punct(",");
      ls.twist.push_back(parse_expr());
      expect_punct(")");
    } else {
      fail_at(key.line, key.col,
              "unknown " + std::string(inLevelBlock ? "level" : "chain") +
                  " key '" + key.text + "'");
    }
  }

  void parse_trans_entry(LevelSpec& ls) {
    std::string name = expect_ident().text;
    expect_punct("=");
    expect_punct("(");
    std::vector<SpecExpr> coords;
    coords.push_back(parse_expr());
    while (at_punct(",")) {
      eat();
      coords.push_back(parse_expr());
    }
    expect_punct(")");
    ls.trans.emplace_back(name, std::move(coords));
  }

  void parse_chain(ChainSpec& c) {
    Token open = expect_punct("{");
    bool depthSet = false;
    bool templateSet = false;
    while (!at_punct("}")) {
      if (at_keyword("level")) {
        eat();
        expect_punct("{");
        LevelSpec ls;
        while (!at_punct("}")) parse_level_fields(ls, true);
        expect_punct("}");
        c.levels.push_back(std::move(ls));
        c.isExplicit = true;
        continue;
      }
      Token key = cur();
      if (key.text == "params") {
        eat();
        expect_punct("=");
        expect_punct("{");
        if (!at_punct("}")) {
          parse_param_entry(c);
          while (at_punct(",")) {
            eat();
            parse_param_entry(c);
          }
        }
        expect_punct("}");
      } else if (key.text == "primes") {
        eat();
        expect_punct("=");
        c.primes = parse_name_list();
      } else if (key.text == "depth") {
        eat();
        expect_punct("=");
        c.depth = parse_small_int("depth", 1, 10000);
        depthSet = true;
      } else {
        parse_level_fields(c.tmpl, false);
        templateSet = true;
      }
    }
    expect_punct("}");
    if (!depthSet)
      fail_at(open.line, open.col, "chain block needs a depth line");
    if (c.isExplicit && templateSet)
      fail_at(open.line, open.col,
              "chain mixes a level template with explicit level blocks");
    if (!c.isExplicit && !templateSet)
      fail_at(open.line, open.col, "chain block defines no levels");
    if (c.isExplicit && (int)c.levels.size() != c.depth)
      fail_at(open.line, open.col,
              "chain depth is " + std::to_string(c.depth) + " but " +
                  std::to_string(c.levels.size()) +
                  " level blocks are given");
  }

  void parse_param_entry(ChainSpec& c) {
    Token name = expect_ident();
    expect_punct("=");
    Int v = parse_int_value();
    for (const auto& [n, old] : c.params)
      if (n == name.text)
        fail_at(name.line, name.col, "duplicate parameter '" + name.text + "'");
    c.params.emplace_back(name.text, v);
  }

  void parse_analysis(AnalysisSpec& a) {
    expect_punct("{");
    while (!at_punct("}")) {
      Token key = expect_ident();
      expect_punct("=");
      if (key.text == "depth") {
        a.depth = parse_small_int("depth", 0, 10000);
      } else if (key.text == "probeDepth") {
        a.probeDepth = parse_small_int("probeDepth", 0, 10000);
      } else if (key.text == "cosetCap") {
        a.cosetCap = (long)parse_small_int("cosetCap", 1, 2000000000);
      } else if (key.text == "permCap") {
        a.permCap = (long)parse_small_int("permCap", 1, 2000000000);
      } else if (key.text == "cellCap") {
        Token t = cur();
        Int v = parse_int_value();
        if (v < 1 || v > Int("4000000000000000000"))
          fail_at(t.line, t.col, "cellCap out of range");
        a.cellCap = (long long)v.get_si();
      } else if (key.text == "kernelGens") {
        a.kernelGens = parse_word_list();
      } else if (key.text == "kernelSamples") {
        a.kernelSamples = parse_small_int("kernelSamples", 0, 1000000);
      } else if (key.text == "reports") {
        a.reports = parse_name_list();
        for (const std::string& r : a.reports)
          if (r != "levels" && r != "verdict" && r != "flags" &&
              r != "kernel" && r != "factorization" && r != "stable")
            fail_at(key.line, key.col,
                    "unknown report '" + r +
                        "' (levels, verdict, flags, kernel, factorization, "
                        "stable)");
      } else {
        fail_at(key.line, key.col,
                "unknown analysis key '" + key.text + "'");
      }
    }
    expect_punct("}");
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

int expr_prec(SpecExpr::Op op) {
  switch (op) {
    case SpecExpr::Op::Add:
    case SpecExpr::Op::Sub:
      return 1;
    case SpecExpr::Op::Mul:
      return 2;
    case SpecExpr::Op::Neg:
      return 3;
    case SpecExpr::Op::Pow:
      return 4;
    default:
      return 5;
  }
}

std::string expr_child(const SpecExpr& kid, int minBare) {
  std::string s = expr_str(kid);
  if (expr_prec(kid.op) < minBare) return "(" + s + ")";
  return s;
}

Mat transpose_rows(const std::vector<Vec>& rows) {
  Mat cols(rows.empty() ? 0 : rows[0].size(), Vec(rows.size()));
  for (size_t r = 0; r < rows.size(); r++)
    for (size_t c = 0; c < rows[r].size(); c++) cols[c][r] = rows[r][c];
  return cols;
}

std::vector<Vec> eval_matrix(const std::vector<std::vector<SpecExpr>>& m,
                             const std::vector<std::pair<std::string, Int>>& params,
                             std::optional<int> level) {
  std::vector<Vec> rows;
  for (const auto& r : m) {
    Vec row;
    for (const SpecExpr& e : r) row.push_back(eval_expr(e, params, level));
    rows.push_back(std::move(row));
  }
  return rows;
}

SubgroupData build_level(const GroupContext& ctx, const ChainSpecDocument& doc,
                         const LevelSpec& ls, std::optional<int> level) {
  const auto& params = doc.chain.params;
  if (ctx.family == Family::Heisenberg) {
    if (!ls.lattice.empty() || !ls.finiteElems.empty() || !ls.finiteSub.empty())
      validation_error("a heisenberg chain level takes matrix, m and twist");
    if (ls.matrix.empty())
      validation_error("heisenberg chain level needs a matrix");
    if (!ls.m) validation_error("heisenberg chain level needs m");
    Mat m = transpose_rows(eval_matrix(ls.matrix, params, level));
    Int mv = eval_expr(*ls.m, params, level);
    Vec twist;
    for (const SpecExpr& e : ls.twist)
      twist.push_back(eval_expr(e, params, level));
    return make_heisenberg_subgroup(m, mv, twist);
  }
  if (!ls.matrix.empty() || ls.m || !ls.twist.empty())
    validation_error("a lattice chain level takes lattice, finite and trans");
  if (ls.lattice.empty())
    validation_error("lattice chain level needs a lattice matrix");
  Mat l = transpose_rows(eval_matrix(ls.lattice, params, level));
  std::vector<int> k;
  if (!ls.finiteSub.empty()) {
    k = builtin_subgroup(ctx.finitePart, ls.finiteSub);
  } else if (!ls.finiteElems.empty()) {
    for (const std::string& n : ls.finiteElems)
      k.push_back(ctx.finitePart.index_of(n));
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
  } else {
    validation_error("lattice chain level needs a finite set");
  }
  std::vector<Vec> trans(k.size(), Vec(ctx.rank, Int(0)));
  for (const auto& [name, coords] : ls.trans) {
    int idx = ctx.finitePart.index_of(name);
    auto it = std::find(k.begin(), k.end(), idx);
    if (it == k.end())
      validation_error("translation for element '" + name +
                       "' outside the level's finite set");
    if ((int)coords.size() != ctx.rank)
      validation_error("translation for element '" + name + "' needs " +
                       std::to_string(ctx.rank) + " coordinates");
    Vec v;
    for (const SpecExpr& e : coords) v.push_back(eval_expr(e, params, level));
    trans[it - k.begin()] = std::move(v);
  }
  return make_lattice_subgroup(ctx, l, k, trans);
}

void check_primes(const ChainSpec& c) {
  for (size_t i = 0; i < c.primes.size(); i++) {
    const std::string& name = c.primes[i];
    const Int* v = nullptr;
    for (const auto& [n, pv] : c.params)
      if (n == name) v = &pv;
    if (!v)
      validation_error("primes entry '" + name + "' is not a parameter");
    if (*v < 2 || mpz_probab_prime_p(v->get_mpz_t(), 40) == 0)
      validation_error("parameter " + name + " must be prime, got " +
                       v->get_str());
    for (size_t j = 0; j < i; j++)
      for (const auto& [n, pv] : c.params)
        if (n == c.primes[j] && pv == *v)
          validation_error("primes must be distinct: " + c.primes[j] +
                           " = " + name + " = " + v->get_str());
  }
}

std::string render_matrix(const std::vector<std::vector<SpecExpr>>& m) {
  std::string s = "[";
  for (size_t r = 0; r < m.size(); r++) {
    s += (r ? ", [" : "[");
    for (size_t c = 0; c < m[r].size(); c++)
      s += (c ? ", " : "") + expr_str(m[r][c]);
    s += "]";
  }
  return s + "]";
}

void render_level_fields(std::ostream& os, const LevelSpec& ls,
                         const std::string& pad) {
  if (!ls.lattice.empty())
    os << pad << "lattice = " << render_matrix(ls.lattice) << "\n";
  if (!ls.finiteSub.empty()) os << pad << "finite = " << ls.finiteSub << "\n";
  if (!ls.finiteElems.empty()) {
    os << pad << "finite = { ";
    for (size_t i = 0; i < ls.finiteElems.size(); i++)
      os << (i ? ", " : "") << ls.finiteElems[i];
    os << " }\n";
  }
  if (!ls.trans.empty()) {
    os << pad << "trans = { ";
    for (size_t i = 0; i < ls.trans.size(); i++) {
      os << (i ? ", " : "") << ls.trans[i].first << " = (";
      for (size_t c = 0; c < ls.trans[i].second.size(); c++)
        os << (c ? ", " : "") << expr_str(ls.trans[i].second[c]);
      os << ")";
    }
    os << " }\n";
  }
  if (!ls.matrix.empty())
    os << pad << "matrix = " << render_matrix(ls.matrix) << "\n";
  if (ls.m) os << pad << "m = " << expr_str(*ls.m) << "\n";
  if (!ls.twist.empty())
    os << pad << "twist = (" << expr_str(ls.twist[0]) << ", "
       << expr_str(ls.twist[1]) << ")\n";
}

}  // namespace

Int eval_expr(const SpecExpr& e,
              const std::vector<std::pair<std::string, Int>>& params,
              std::optional<int> level) {
  switch (e.op) {
    case SpecExpr::Op::Const:
      return e.value;
    case SpecExpr::Op::Param:
      for (const auto& [n, v] : params)
        if (n == e.name) return v;
      fail_at(e.line, e.col, "unknown parameter '" + e.name + "'");
    case SpecExpr::Op::Level:
      if (!level)
        fail_at(e.line, e.col,
                "level variable i outside a parametric chain");
      return Int(*level);
    case SpecExpr::Op::Add:
      return eval_expr(e.kids[0], params, level) +
             eval_expr(e.kids[1], params, level);
    case SpecExpr::Op::Sub:
      return eval_expr(e.kids[0], params, level) -
             eval_expr(e.kids[1], params, level);
    case SpecExpr::Op::Mul:
      return eval_expr(e.kids[0], params, level) *
             eval_expr(e.kids[1], params, level);
    case SpecExpr::Op::Neg:
      return -eval_expr(e.kids[0], params, level);
    case SpecExpr::Op::Pow: {
      Int b = eval_expr(e.kids[0], params, level);
      Int ex = eval_expr(e.kids[1], params, level);
      if (ex < 0) fail_at(e.line, e.col, "negative exponent");
      if (ex > 4096) fail_at(e.line, e.col, "exponent too large");
      Int r;
      mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), ex.get_ui());
      return r;
    }
  }
  fail_at(e.line, e.col, "malformed expression");
}

std::string expr_str(const SpecExpr& e) {
  switch (e.op) {
    case SpecExpr::Op::Const:
      return e.value.get_str();
    case SpecExpr::Op::Param:
      return e.name;
    case SpecExpr::Op::Level:
      return "i";
    case SpecExpr::Op::Add:
      return expr_child(e.kids[0], 1) + " + " + expr_child(e.kids[1], 2);
    case SpecExpr::Op::Sub:
      return expr_child(e.kids[0], 1) + " - " + expr_child(e.kids[1], 2);
    case SpecExpr::Op::Mul:
      return expr_child(e.kids[0], 2) + "*" + expr_child(e.kids[1], 3);
    case SpecExpr::Op::Neg:
      return "-" + expr_child(e.kids[0], 3);
    case SpecExpr::Op::Pow:
      return expr_child(e.kids[0], 5) + "^" + expr_child(e.kids[1], 5);
  }
  return "";
}

ChainSpecDocument parse_spec(const std::string& text) {
  Parser p(text);
  ChainSpecDocument doc = p.parse();
  if (doc.analysis.probeDepth >= 0 &&
      doc.analysis.probeDepth < analysis_depth(doc))
    validation_error("probeDepth is below the analysis depth");
  // Semantic pass: a trial build evaluates every expression over the
  // declared range and validates each level's subgroup data.
  GroupChain trial = build_chain(doc, doc.chain.depth);
  for (const std::string& w : doc.analysis.kernelGens)
    eval_word(trial.ctx, w);
  return doc;
}

std::string serialize_spec(const ChainSpecDocument& doc) {
  std::ostringstream os;
  os << "group {\n";
  os << "  family = "
     << (doc.group.family == Family::Heisenberg ? "heisenberg" : "lattice")
     << "\n";
  if (doc.group.rank > 0) os << "  rank = " << doc.group.rank << "\n";
  if (!doc.group.finite.empty())
    os << "  finite = " << doc.group.finite << "\n";
  if (!doc.group.actions.empty()) {
    os << "  action = ";
    for (size_t i = 0; i < doc.group.actions.size(); i++)
      os << (i ? ", " : "") << render_matrix(doc.group.actions[i]);
    os << "\n";
  }
  if (!doc.group.generators.empty()) {
    os << "  generators = { ";
    for (size_t i = 0; i < doc.group.generators.size(); i++)
      os << (i ? ", " : "") << doc.group.generators[i].first << " = "
         << doc.group.generators[i].second;
    os << " }\n";
  }
  os << "}\n";

  os << "chain {\n";
  if (!doc.chain.params.empty()) {
    os << "  params = { ";
    for (size_t i = 0; i < doc.chain.params.size(); i++)
      os << (i ? ", " : "") << doc.chain.params[i].first << " = "
         << doc.chain.params[i].second.get_str();
    os << " }\n";
  }
  if (!doc.chain.primes.empty()) {
    os << "  primes = { ";
    for (size_t i = 0; i < doc.chain.primes.size(); i++)
      os << (i ? ", " : "") << doc.chain.primes[i];
    os << " }\n";
  }
  os << "  depth = " << doc.chain.depth << "\n";
  if (doc.chain.isExplicit) {
    for (const LevelSpec& ls : doc.chain.levels) {
      os << "  level {\n";
      render_level_fields(os, ls, "    ");
      os << "  }\n";
    }
  } else {
    render_level_fields(os, doc.chain.tmpl, "  ");
  }
  os << "}\n";

  const AnalysisSpec& a = doc.analysis;
  bool any = a.depth >= 0 || a.probeDepth >= 0 || a.cosetCap || a.permCap ||
             a.cellCap || !a.kernelGens.empty() || a.kernelSamples > 0 ||
             !a.reports.empty();
  if (any) {
    os << "analysis {\n";
    if (a.depth >= 0) os << "  depth = " << a.depth << "\n";
    if (a.probeDepth >= 0) os << "  probeDepth = " << a.probeDepth << "\n";
    if (a.cosetCap) os << "  cosetCap = " << *a.cosetCap << "\n";
    if (a.permCap) os << "  permCap = " << *a.permCap << "\n";
    if (a.cellCap) os << "  cellCap = " << *a.cellCap << "\n";
    if (!a.kernelGens.empty()) {
      os << "  kernelGens = { ";
      for (size_t i = 0; i < a.kernelGens.size(); i++)
        os << (i ? ", " : "") << a.kernelGens[i];
      os << " }\n";
    }
    if (a.kernelSamples > 0)
      os << "  kernelSamples = " << a.kernelSamples << "\n";
    if (!a.reports.empty()) {
      os << "  reports = { ";
      for (size_t i = 0; i < a.reports.size(); i++)
        os << (i ? ", " : "") << a.reports[i];
      os << " }\n";
    }
    os << "}\n";
  }
  return os.str();
}

GroupContext build_group(const GroupSpec& g) {
  GroupContext ctx;
  if (g.family == Family::Heisenberg) {
    if (g.rank > 0 || !g.finite.empty() || !g.actions.empty())
      validation_error(
          "a heisenberg group block takes only family and generators");
    ctx = make_heisenberg_context();
  } else {
    if (g.rank < 1) validation_error("lattice group block needs rank");
    if (g.finite.empty())
      validation_error("lattice group block needs a finite part");
    FiniteGroupTable t = builtin_finite_group(g.finite);
    if (g.actions.size() != t.gens.size())
      validation_error("group block needs " + std::to_string(t.gens.size()) +
                       " action matrices for " + g.finite + ", got " +
                       std::to_string(g.actions.size()));
    std::vector<Mat> acts;
    for (const auto& a : g.actions)
      acts.push_back(transpose_rows(eval_matrix(a, {}, std::nullopt)));
    ctx = make_lattice_context(g.rank, t, acts);
  }
  if (!g.generators.empty()) {
    std::vector<std::string> names;
    std::vector<GroupElement> elems;
    for (const auto& [n, lit] : g.generators) {
      names.push_back(n);
      elems.push_back(parse_elem(ctx, lit));
    }
    set_generators(ctx, names, elems);
  }
  return ctx;
}

GroupChain build_chain(const ChainSpecDocument& doc, int levels) {
  if (levels < 0) validation_error("level count must be nonnegative");
  check_primes(doc.chain);
  GroupContext ctx = build_group(doc.group);
  if (doc.chain.isExplicit && levels > (int)doc.chain.levels.size())
    validation_error("chain defines " +
                     std::to_string(doc.chain.levels.size()) +
                     " levels but " + std::to_string(levels) +
                     " were requested");
  std::vector<SubgroupData> subs{whole_group_subgroup(ctx)};
  for (int i = 1; i <= levels; i++) {
    try {
      if (doc.chain.isExplicit)
        subs.push_back(build_level(ctx, doc, doc.chain.levels[i - 1],
                                   std::nullopt));
      else
        subs.push_back(build_level(ctx, doc, doc.chain.tmpl, i));
    } catch (const ChainError& e) {
      throw ChainError(e.kind(),
                       "level " + std::to_string(i) + ": " + e.what());
    }
  }
  return make_chain(ctx, subs, "specfile");
}

GroupElement eval_word(const GroupContext& ctx, const std::string& word) {
  GroupElement acc = identity(ctx);
  size_t i = 0;
  auto skip = [&] { while (i < word.size() && word[i] == ' ') i++; };
  skip();
  if (i == word.size()) validation_error("empty word");
  while (i < word.size()) {
    if (!ident_start(word[i]))
      validation_error("bad word '" + word + "': expected a generator name");
    size_t j = i;
    while (j < word.size() && ident_char(word[j])) j++;
    std::string name = word.substr(i, j - i);
    i = j;
    skip();
    long ex = 1;
    if (i < word.size() && word[i] == '^') {
      i++;
      skip();
      bool neg = false;
      if (i < word.size() && word[i] == '-') neg = true, i++;
      size_t d = i;
      while (d < word.size() && std::isdigit((unsigned char)word[d])) d++;
      if (d == i) validation_error("bad word '" + word + "': missing exponent");
      if (d - i > 4)
        validation_error("bad word '" + word + "': exponent too large");
      ex = std::stol(word.substr(i, d - i));
      if (ex > 4096) validation_error("bad word '" + word + "': exponent too large");
      if (neg) ex = -ex;
      i = d;
      skip();
    }
    GroupElement g = ctx.generators[ctx.generator_index(name)];
    if (ex < 0) {
      g = inverse(ctx, g);
      ex = -ex;
    }
    for (long k = 0; k < ex; k++) acc = multiply(ctx, acc, g);
    if (i < word.size()) {
      if (word[i] != '*')
        validation_error("bad word '" + word + "': expected '*'");
      i++;
      skip();
      if (i == word.size())
        validation_error("bad word '" + word + "': trailing '*'");
    }
  }
  return acc;
}

int analysis_depth(const ChainSpecDocument& doc) {
  return doc.analysis.depth >= 0 ? doc.analysis.depth : doc.chain.depth;
}

int analysis_probe_depth(const ChainSpecDocument& doc) {
  if (doc.analysis.probeDepth >= 0) return doc.analysis.probeDepth;
  int probe = analysis_depth(doc) + 2;
  if (doc.chain.isExplicit) probe = std::min(probe, (int)doc.chain.levels.size());
  return probe;
}

Caps analysis_caps(const ChainSpecDocument& doc, const Caps& base) {
  Caps c = base;
  if (doc.analysis.cosetCap) c.cosetCap = *doc.analysis.cosetCap;
  if (doc.analysis.permCap) c.permCap = *doc.analysis.permCap;
  if (doc.analysis.cellCap) c.cellCap = *doc.analysis.cellCap;
  return c;
}

}  // namespace chaincalc
