#include "provel/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace provel {

namespace {

enum class Tok {
  name, top, ex, ran, one, leq, role_leq, amp, dot, colon,
  lparen, rparen, star, end
};

struct Token {
  Tok kind;
  std::string text;
};

bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)); }
bool name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

std::vector<Token> lex(std::string_view s, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '<' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::leq, "<="});
      i += 2;
    } else if (c == '[' && i + 1 < s.size() && s[i + 1] == '=') {
      out.push_back({Tok::role_leq, "[="});
      i += 2;
    } else if (c == '&') {
      out.push_back({Tok::amp, "&"});
      ++i;
    } else if (c == '.') {
      out.push_back({Tok::dot, "."});
      ++i;
    } else if (c == ':') {
      out.push_back({Tok::colon, ":"});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::lparen, "("});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::rparen, ")"});
      ++i;
    } else if (c == '*') {
      out.push_back({Tok::star, "*"});
      ++i;
    } else if (c == '1' &&
               (i + 1 == s.size() || !name_char(s[i + 1]))) {
      out.push_back({Tok::one, "1"});
      ++i;
    } else if (name_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && name_char(s[j])) ++j;
      std::string word(s.substr(i, j - i));
      if (word == "top") {
        out.push_back({Tok::top, word});
      } else if (word == "ex") {
        out.push_back({Tok::ex, word});
      } else if (word == "ran") {
        out.push_back({Tok::ran, word});
      } else {
        out.push_back({Tok::name, word});
      }
      i = j;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line_no);
    }
  }
  out.push_back({Tok::end, ""});
  return out;
}

class LineParser {
 public:
  LineParser(std::string_view s, int line_no)
      : toks_(lex(s, line_no)), line_(line_no) {}

  Axiom parse_axiom() {
    const Token& t = peek();
    if (t.kind == Tok::ex) return parse_qual_exist();
    if (t.kind == Tok::ran) return parse_range();
    if (t.kind == Tok::top || t.kind == Tok::name) return parse_inclusion();
    fail("expected an axiom");
  }

  Word parse_monomial() {
    Word w;
    if (peek().kind == Tok::one) {
      next();
      return w;  // unit
    }
    w.push_back(expect_name("provenance variable"));
    while (peek().kind == Tok::star) {
      next();
      w.push_back(expect_name("provenance variable"));
    }
    return w;
  }

  std::optional<Variable> parse_annotation() {
    if (peek().kind == Tok::one) {
      next();
      return std::nullopt;
    }
    return expect_name("annotation");
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what);
    next();
  }

  void expect_end() {
    if (peek().kind != Tok::end) fail("trailing input after axiom");
  }

  bool at(Tok kind) const { return peek().kind == kind; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, line_);
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  std::string expect_name(const char* what) {
    if (peek().kind != Tok::name)
      fail(std::string("expected ") + what + " name");
    return next().text;
  }

  Concept parse_concept() {
    if (peek().kind == Tok::top) {
      next();
      return Concept::top();
    }
    if (peek().kind == Tok::name) return Concept::named(next().text);
    fail("expected a concept name or 'top'");
  }

  Axiom parse_qual_exist() {
    next();  // ex
    Role role{expect_name("role")};
    expect(Tok::dot, "'.'");
    if (peek().kind == Tok::ex)
      fail("nested existential on the left-hand side is not in normal form");
    Concept filler = parse_concept();
    if (peek().kind == Tok::amp)
      fail("conjunction under an existential is not in normal form");
    expect(Tok::leq, "'<='");
    Concept rhs = parse_concept();
    check_rhs_is_atomic();
    return QualExistGci{std::move(role), std::move(filler), std::move(rhs)};
  }

  Axiom parse_range() {
    next();  // ran
    expect(Tok::lparen, "'('");
    Role role{expect_name("role")};
    expect(Tok::rparen, "')'");
    expect(Tok::leq, "'<='");
    Concept rhs = parse_concept();
    check_rhs_is_atomic();
    return RangeGci{std::move(role), std::move(rhs)};
  }

  // conc <= rhs | conc & conc <= conc | ROLE [= ROLE
  Axiom parse_inclusion() {
    bool lhs_top = peek().kind == Tok::top;
    std::string first = next().text;
    if (peek().kind == Tok::role_leq) {
      if (lhs_top) fail("'top' is not a role");
      next();
      Role sup{expect_name("role")};
      return RoleIncl{Role{std::move(first)}, std::move(sup)};
    }
    Concept lhs = lhs_top ? Concept::top() : Concept::named(std::move(first));
    if (peek().kind == Tok::amp) {
      next();
      Concept right = parse_concept();
      if (peek().kind == Tok::amp)
        fail("more than two conjuncts is not in normal form");
      expect(Tok::leq, "'<='");
      Concept rhs = parse_concept();
      check_rhs_is_atomic();
      return ConjGci{std::move(lhs), std::move(right), std::move(rhs)};
    }
    expect(Tok::leq, "'<='");
    if (peek().kind == Tok::ex) {
      next();
      Role role{expect_name("role")};
      if (peek().kind == Tok::dot)
        fail("qualified existential on the right-hand side is not in normal form");
      return ExistGci{std::move(lhs), std::move(role)};
    }
    Concept rhs = parse_concept();
    check_rhs_is_atomic();
    return AtomicGci{std::move(lhs), std::move(rhs)};
  }

  void check_rhs_is_atomic() {
    if (peek().kind == Tok::amp)
      fail("conjunction on the right-hand side is not in normal form");
    if (peek().kind == Tok::dot) fail("unexpected '.' after concept");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  int line_ = 0;
};

struct NameCollector {
  std::set<std::string>& concepts;
  std::set<std::string>& roles;

  void concept_op(const Concept& c) {
    if (!c.is_top()) concepts.insert(c.name());
  }
  void operator()(const AtomicGci& a) {
    concept_op(a.lhs);
    concept_op(a.rhs);
  }
  void operator()(const ExistGci& a) {
    concept_op(a.lhs);
    roles.insert(a.role.name);
  }
  void operator()(const ConjGci& a) {
    concept_op(a.left);
    concept_op(a.right);
    concept_op(a.rhs);
  }
  void operator()(const QualExistGci& a) {
    roles.insert(a.role.name);
    concept_op(a.filler);
    concept_op(a.rhs);
  }
  void operator()(const RangeGci& a) {
    roles.insert(a.role.name);
    concept_op(a.rhs);
  }
  void operator()(const RoleIncl& a) {
    roles.insert(a.sub.name);
    roles.insert(a.sup.name);
  }
};

}  // namespace

std::string to_string(const Axiom& axiom) {
  std::ostringstream os;
  std::visit(
      [&](const auto& a) {
        using T = std::decay_t<decltype(a)>;
        if constexpr (std::is_same_v<T, AtomicGci>) {
          os << a.lhs.to_string() << " <= " << a.rhs.to_string();
        } else if constexpr (std::is_same_v<T, ExistGci>) {
          os << a.lhs.to_string() << " <= ex " << a.role.name;
        } else if constexpr (std::is_same_v<T, ConjGci>) {
          os << a.left.to_string() << " & " << a.right.to_string() << " <= "
             << a.rhs.to_string();
        } else if constexpr (std::is_same_v<T, QualExistGci>) {
          os << "ex " << a.role.name << " . " << a.filler.to_string() << " <= "
             << a.rhs.to_string();
        } else if constexpr (std::is_same_v<T, RangeGci>) {
          os << "ran(" << a.role.name << ") <= " << a.rhs.to_string();
        } else {
          os << a.sub.name << " [= " << a.sup.name;
        }
      },
      axiom);
  return os.str();
}

AnnotatedTBox::AnnotatedTBox(std::vector<TBoxEntry> entries)
    : entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    auto [it, fresh] = by_axiom_.emplace(e.axiom, e.annotation);
    if (!fresh) throw Error("duplicate axiom: " + to_string(e.axiom));
    std::visit(NameCollector{sig_.concepts, sig_.roles}, e.axiom);
    if (e.annotation) {
      if (!sig_.variables.insert(*e.annotation).second)
        throw Error("annotation variable used on more than one axiom: " +
                    *e.annotation);
    }
  }
  for (const auto& v : sig_.variables) {
    if (sig_.concepts.count(v) || sig_.roles.count(v))
      throw Error("name used both as provenance variable and in axioms: " + v);
  }
  for (const auto& r : sig_.roles) {
    if (sig_.concepts.count(r))
      throw Error("name used both as concept and role: " + r);
  }
}

const std::optional<Variable>* AnnotatedTBox::find_annotation(
    const Axiom& axiom) const {
  auto it = by_axiom_.find(axiom);
  return it == by_axiom_.end() ? nullptr : &it->second;
}

std::string AnnotatedTBox::print() const {
  std::ostringstream os;
  for (const auto& e : entries_) {
    os << to_string(e.axiom) << " : " << (e.annotation ? *e.annotation : "1")
       << '\n';
  }
  return os.str();
}

AnnotatedTBox parse_tbox(std::string_view text) {
  std::vector<TBoxEntry> entries;
  std::set<Axiom> seen;
  std::set<Variable> seen_vars;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(
        start, nl == std::string_view::npos ? text.size() - start : nl - start);
    ++line_no;
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

    std::size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos || line[first] == '#') continue;

    LineParser p(line, line_no);
    Axiom axiom = p.parse_axiom();
    p.expect(Tok::colon, "':'");
    std::optional<Variable> ann = p.parse_annotation();
    p.expect_end();

    if (!seen.insert(axiom).second)
      throw ParseError("duplicate axiom: " + to_string(axiom), line_no);
    if (ann && !seen_vars.insert(*ann).second)
      throw ParseError(
          "annotation variable used on more than one axiom: " + *ann, line_no);
    entries.push_back({std::move(axiom), std::move(ann)});
  }
  return AnnotatedTBox(std::move(entries));
}

Signature signature(const AnnotatedTBox& tbox) { return tbox.signature(); }

bool queryable(const Axiom& axiom) {
  return std::holds_alternative<AtomicGci>(axiom) ||
         std::holds_alternative<ExistGci>(axiom);
}

Query parse_query(std::string_view text) {
  LineParser p(text, 1);
  Query q;
  q.goal = p.parse_axiom();
  if (!queryable(q.goal))
    p.fail("goal must be an atomic or existential inclusion: " +
           to_string(q.goal));
  p.expect(Tok::colon, "':'");
  q.monomial = p.parse_monomial();
  p.expect_end();
  return q;
}

Axiom parse_goal(std::string_view text) {
  LineParser p(text, 1);
  Axiom goal = p.parse_axiom();
  p.expect_end();
  if (!queryable(goal))
    p.fail("goal must be an atomic or existential inclusion: " +
           to_string(goal));
  return goal;
}

}  // namespace provel
