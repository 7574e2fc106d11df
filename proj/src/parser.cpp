#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "lexpe/lexicon_def.hpp"

namespace lexpe {

std::string Diagnostic::str() const {
  return loc.file + ":" + std::to_string(loc.line) + ":" + std::to_string(loc.col) + ": " + message;
}

std::string PathExpr::str() const {
  std::string out;
  for (std::size_t i = 0; i < features.size(); ++i) {
    if (i) out += '^';
    out += features[i];
  }
  return out;
}

const ClassDef* LexiconDef::find_class(const std::string& name) const {
  auto it = class_index.find(name);
  return it == class_index.end() ? nullptr : &classes[it->second];
}

namespace {

enum class Tok {
  ident, string, caret, eq, comma, dot, colon, lbrack, rbrack, lparen, rparen,
  lbrace, rbrace, bar, at, arrow, plus, minus, or_sym, not_sym, end, error
};

struct Token {
  Tok kind = Tok::end;
  std::string text;
  SourceLoc loc;
};

class Lexer {
 public:
  Lexer(const std::string& text, const std::string& file) : s_(text), file_(file) {}

  Token next() {
    skip_space();
    Token t;
    t.loc = SourceLoc{file_, line_, col_};
    if (i_ >= s_.size()) return t;
    const unsigned char c = static_cast<unsigned char>(s_[i_]);
    if (match("\xE2\x88\xA8")) return t.kind = Tok::or_sym, t.text = "or", t;
    if (match("\xC2\xAC")) return t.kind = Tok::not_sym, t.text = "not", t;
    if (match("->")) return t.kind = Tok::arrow, t;
    if (c == '"') return string_token(t);
    if (is_ident(c)) {
      while (i_ < s_.size() && is_ident(static_cast<unsigned char>(s_[i_]))) {
        if (s_.compare(i_, 3, "\xE2\x88\xA8") == 0 || s_.compare(i_, 2, "\xC2\xAC") == 0) break;
        t.text += s_[i_];
        advance();
      }
      t.kind = Tok::ident;
      return t;
    }
    advance();
    switch (c) {
      case '^': t.kind = Tok::caret; break;
      case '=': t.kind = Tok::eq; break;
      case ',': t.kind = Tok::comma; break;
      case '.': t.kind = Tok::dot; break;
      case ':': t.kind = Tok::colon; break;
      case '[': t.kind = Tok::lbrack; break;
      case ']': t.kind = Tok::rbrack; break;
      case '(': t.kind = Tok::lparen; break;
      case ')': t.kind = Tok::rparen; break;
      case '{': t.kind = Tok::lbrace; break;
      case '}': t.kind = Tok::rbrace; break;
      case '|': t.kind = Tok::bar; break;
      case '@': t.kind = Tok::at; break;
      case '+': t.kind = Tok::plus; t.text = "+"; break;
      case '-': t.kind = Tok::minus; t.text = "-"; break;
      default:
        t.kind = Tok::error;
        t.text = std::string(1, static_cast<char>(c));
    }
    return t;
  }

 private:
  static bool is_ident(unsigned char c) { return std::isalnum(c) || c == '_' || c >= 0x80; }

  bool match(const char* lit) {
    const std::size_t n = std::char_traits<char>::length(lit);
    if (s_.compare(i_, n, lit) != 0) return false;
    for (std::size_t k = 0; k < n; ++k) advance();
    return true;
  }

  void advance() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else if ((static_cast<unsigned char>(s_[i_]) & 0xC0) != 0x80) {
      ++col_;
    }
    ++i_;
  }

  void skip_space() {
    while (i_ < s_.size()) {
      const char c = s_[i_];
      if (c == '%') {
        while (i_ < s_.size() && s_[i_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  Token& string_token(Token& t) {
    advance();
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) advance();
      if (s_[i_] == '\n') break;
      t.text += s_[i_];
      advance();
    }
    if (i_ >= s_.size() || s_[i_] != '"') {
      t.kind = Tok::error;
      t.text = "unterminated string";
      return t;
    }
    advance();
    t.kind = Tok::string;
    return t;
  }

  const std::string& s_;
  std::string file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct SyntaxError {
  Diagnostic diag;
};

const std::unordered_set<std::string> kSectionWords{"main", "default", "variant"};

class Parser {
 public:
  Parser(const std::string& text, const std::string& file, LexiconDef& out,
         std::vector<Diagnostic>& diags)
      : lex_(text, file), out_(out), diags_(diags) {
    cur_ = lex_.next();
    peek_ = lex_.next();
  }

  void run() {
    while (cur_.kind != Tok::end) {
      try {
        definition();
      } catch (const SyntaxError& e) {
        diags_.push_back(e.diag);
        recover();
      }
    }
  }

 private:
  void bump() {
    cur_ = std::move(peek_);
    peek_ = lex_.next();
  }

  [[noreturn]] void fail(const std::string& msg) { fail_at(cur_.loc, msg); }
  [[noreturn]] void fail_at(const SourceLoc& loc, const std::string& msg) {
    throw SyntaxError{Diagnostic{loc, msg}};
  }

  void recover() {
    while (cur_.kind != Tok::end && cur_.kind != Tok::dot) bump();
    if (cur_.kind == Tok::dot) bump();
  }

  bool is_word(const char* w) const { return cur_.kind == Tok::ident && cur_.text == w; }

  void expect(Tok k, const char* what) {
    if (cur_.kind != k) fail(std::string("expected ") + what + describe());
    bump();
  }

  std::string describe() const {
    switch (cur_.kind) {
      case Tok::end: return ", found end of input";
      case Tok::error: return ", found invalid input '" + cur_.text + "'";
      case Tok::ident:
      case Tok::string: return ", found '" + cur_.text + "'";
      default: return "";
    }
  }

  std::string name(const char* what) {
    if (cur_.kind != Tok::ident) fail(std::string("expected ") + what + describe());
    auto n = cur_.text;
    bump();
    return n;
  }

  void definition() {
    if (is_word("sort")) return sort_decl();
    if (is_word("type")) return type_decl();
    if (is_word("class")) return class_def();
    if (is_word("generator")) return generator_def();
    fail("expected 'sort', 'type', 'class' or 'generator'" + describe());
  }

  std::string value_word() {
    if (cur_.kind == Tok::ident || cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      auto v = cur_.text;
      bump();
      return v;
    }
    fail("expected a value" + describe());
  }

  void sort_decl() {
    SortDecl d;
    d.loc = cur_.loc;
    bump();
    d.name = name("sort name");
    expect(Tok::eq, "'='");
    if (cur_.kind == Tok::lbrace) {
      bump();
      d.values.push_back(value_word());
      while (cur_.kind == Tok::comma) {
        bump();
        d.values.push_back(value_word());
      }
      expect(Tok::rbrace, "'}'");
    } else {
      d.values.push_back(value_word());
      while (cur_.kind == Tok::bar || cur_.kind == Tok::or_sym || is_word("or")) {
        bump();
        d.values.push_back(value_word());
      }
    }
    expect(Tok::dot, "'.'");
    out_.sorts.push_back(std::move(d));
  }

  void type_decl() {
    TypeDeclExpr d;
    d.loc = cur_.loc;
    bump();
    d.name = name("type name");
    if (cur_.kind == Tok::eq) bump();
    expect(Tok::lbrack, "'['");
    if (cur_.kind != Tok::rbrack) {
      while (true) {
        auto f = name("feature name");
        expect(Tok::colon, "':'");
        auto target = name("sort or type name");
        d.features.emplace_back(f, target);
        if (cur_.kind != Tok::comma) break;
        bump();
      }
    }
    expect(Tok::rbrack, "']'");
    expect(Tok::dot, "'.'");
    out_.types.push_back(std::move(d));
  }

  PathExpr path() {
    PathExpr p;
    p.loc = cur_.loc;
    p.features.push_back(name("feature name"));
    while (cur_.kind == Tok::caret) {
      bump();
      p.features.push_back(name("feature name"));
    }
    return p;
  }

  std::vector<SuperRef> supers(bool allow_locating) {
    std::vector<SuperRef> out;
    while (true) {
      SuperRef s;
      s.loc = cur_.loc;
      s.name = name("superclass name");
      if (cur_.kind == Tok::at) {
        if (!allow_locating) fail("generator superclasses cannot be located");
        bump();
        s.at = path();
      }
      out.push_back(std::move(s));
      if (cur_.kind != Tok::comma) break;
      bump();
    }
    return out;
  }

  bool at_section_end() const {
    return cur_.kind == Tok::dot || cur_.kind == Tok::end ||
           (cur_.kind == Tok::ident && kSectionWords.count(cur_.text) && peek_.kind != Tok::caret &&
            peek_.kind != Tok::eq && peek_.kind != Tok::lparen);
  }

  FsDescription description() {
    FsDescription d;
    d.loc = cur_.loc;
    bump();  // section keyword
    if (at_section_end()) return d;
    while (true) {
      d.constraints.push_back(constraint());
      if (cur_.kind != Tok::comma) break;
      bump();
    }
    return d;
  }

  std::vector<std::string> value_set() {
    std::vector<std::string> vals;
    if (cur_.kind == Tok::lparen) {
      bump();
      vals.push_back(value_word());
      while (is_or()) {
        bump();
        vals.push_back(value_word());
      }
      expect(Tok::rparen, "')'");
    } else {
      vals.push_back(value_word());
    }
    return vals;
  }

  bool is_or() const { return cur_.kind == Tok::or_sym || cur_.kind == Tok::bar || is_word("or"); }

  ConstraintExpr constraint() {
    ConstraintExpr c;
    c.loc = cur_.loc;
    if (cur_.kind == Tok::ident && peek_.kind == Tok::lparen) {
      c.kind = ConstraintExpr::Kind::predicate;
      c.predicate = cur_.text;
      bump();
      bump();
      if (cur_.kind != Tok::rparen) {
        while (true) {
          PredArgExpr a;
          if (cur_.kind == Tok::string) {
            a.is_literal = true;
            a.literal = cur_.text;
            bump();
          } else {
            a.path = path();
          }
          c.args.push_back(std::move(a));
          if (cur_.kind != Tok::comma) break;
          bump();
        }
      }
      expect(Tok::rparen, "')'");
      return c;
    }
    c.kind = ConstraintExpr::Kind::equation;
    c.lhs = path();
    expect(Tok::eq, "'='");
    auto& v = c.rhs;
    if (cur_.kind == Tok::string) {
      v.kind = ValueExpr::Kind::literal;
      v.literal = cur_.text;
      bump();
    } else if (cur_.kind == Tok::not_sym || is_word("not")) {
      bump();
      v.kind = ValueExpr::Kind::negated;
      v.values = value_set();
    } else if (cur_.kind == Tok::plus || cur_.kind == Tok::minus) {
      v.kind = ValueExpr::Kind::values;
      v.values.push_back(value_word());
      while (is_or()) {
        bump();
        v.values.push_back(value_word());
      }
    } else if (cur_.kind == Tok::ident && peek_.kind == Tok::caret) {
      v.kind = ValueExpr::Kind::path;
      v.path = path();
    } else {
      auto loc = cur_.loc;
      auto first = value_word();
      if (is_or()) {
        v.kind = ValueExpr::Kind::values;
        v.values.push_back(first);
        while (is_or()) {
          bump();
          v.values.push_back(value_word());
        }
      } else {
        v.kind = ValueExpr::Kind::word;
        v.values.push_back(first);
        v.path.features.push_back(first);
        v.path.loc = loc;
      }
    }
    return c;
  }

  void class_def() {
    ClassDef d;
    d.loc = cur_.loc;
    bump();
    d.name = name("class name");
    while (true) {
      if (is_word("lexical")) {
        bump();
        d.lexical = true;
      } else if (is_word("id")) {
        bump();
        if (cur_.kind != Tok::ident || !std::all_of(cur_.text.begin(), cur_.text.end(), ::isdigit))
          fail("expected a numeric class id" + describe());
        d.id = std::stoll(cur_.text);
        bump();
      } else if (cur_.kind == Tok::colon) {
        bump();
        d.type = name("type name");
      } else {
        break;
      }
    }
    if (is_word("isa")) {
      bump();
      d.superclasses = supers(true);
    }
    while (cur_.kind == Tok::ident && kSectionWords.count(cur_.text)) {
      const auto word = cur_.text;
      auto loc = cur_.loc;
      if (word == "main") {
        if (d.main) fail_at(loc, "duplicate main section in class '" + d.name + "'");
        d.main = description();
      } else if (word == "default") {
        if (d.defaults) fail_at(loc, "duplicate default section in class '" + d.name + "'");
        d.defaults = description();
      } else {
        d.variants.push_back(description());
      }
    }
    expect(Tok::dot, "'.' or a section keyword");
    out_.classes.push_back(std::move(d));
  }

  void generator_def() {
    GeneratorDef g;
    g.loc = cur_.loc;
    bump();
    g.name = name("generator name");
    while (true) {
      if (is_word("delayed")) {
        bump();
        g.delayed = true;
      } else if (cur_.kind == Tok::colon) {
        bump();
        g.type = name("type name");
      } else {
        break;
      }
    }
    if (is_word("isa")) {
      bump();
      g.superclasses = supers(false);
    }
    if (is_word("map")) {
      bump();
      while (true) {
        MappingExpr m;
        m.from = path();
        expect(Tok::arrow, "'->'");
        m.to = path();
        g.mapping.push_back(std::move(m));
        if (cur_.kind != Tok::comma) break;
        bump();
      }
    }
    if (is_word("main")) g.output = description();
    expect(Tok::dot, "'.'");
    out_.generators.push_back(std::move(g));
  }

  Lexer lex_;
  Token cur_;
  Token peek_;
  LexiconDef& out_;
  std::vector<Diagnostic>& diags_;
};

void validate(LexiconDef& def, std::vector<Diagnostic>& diags) {
  std::set<std::string> sort_names{"string"};
  for (const auto& s : def.sorts) {
    if (!sort_names.insert(s.name).second) diags.push_back({s.loc, "duplicate sort '" + s.name + "'"});
    std::set<std::string> vals;
    for (const auto& v : s.values)
      if (!vals.insert(v).second) diags.push_back({s.loc, "sort '" + s.name + "' repeats value '" + v + "'"});
    if (s.values.size() > 64) diags.push_back({s.loc, "sort '" + s.name + "' has more than 64 values"});
  }
  std::set<std::string> type_names;
  for (const auto& t : def.types) {
    if (sort_names.count(t.name) || !type_names.insert(t.name).second)
      diags.push_back({t.loc, "duplicate type or sort name '" + t.name + "'"});
  }
  for (const auto& t : def.types) {
    std::set<std::string> feats;
    for (const auto& [f, target] : t.features) {
      if (!feats.insert(f).second)
        diags.push_back({t.loc, "type '" + t.name + "' declares feature '" + f + "' twice"});
      if (!sort_names.count(target) && !type_names.count(target))
        diags.push_back({t.loc, "undefined sort or type '" + target + "' in type '" + t.name + "'"});
    }
  }

  def.class_index.clear();
  def.generator_index.clear();
  std::set<std::int64_t> ids;
  for (std::size_t i = 0; i < def.classes.size(); ++i) {
    const auto& c = def.classes[i];
    if (!def.class_index.emplace(c.name, i).second)
      diags.push_back({c.loc, "duplicate class '" + c.name + "'"});
    if (c.type && !type_names.count(*c.type))
      diags.push_back({c.loc, "undefined type '" + *c.type + "' in class '" + c.name + "'"});
    if (c.id) {
      if (!c.lexical) diags.push_back({c.loc, "only lexical classes carry an id ('" + c.name + "')"});
      if (!ids.insert(*c.id).second) diags.push_back({c.loc, "duplicate class id " + std::to_string(*c.id)});
    }
  }
  for (std::size_t i = 0; i < def.generators.size(); ++i) {
    const auto& g = def.generators[i];
    if (def.class_index.count(g.name) || !def.generator_index.emplace(g.name, i).second)
      diags.push_back({g.loc, "duplicate class or generator name '" + g.name + "'"});
    if (g.type && !type_names.count(*g.type))
      diags.push_back({g.loc, "undefined type '" + *g.type + "' in generator '" + g.name + "'"});
    for (const auto& s : g.superclasses)
      if (!def.class_index.count(s.name))
        diags.push_back({s.loc, "undefined superclass '" + s.name + "' in generator '" + g.name + "'"});
  }
  bool refs_ok = true;
  for (const auto& c : def.classes) {
    std::set<std::string> seen;
    for (const auto& s : c.superclasses) {
      if (!def.class_index.count(s.name)) {
        diags.push_back({s.loc, "undefined superclass '" + s.name + "' in class '" + c.name + "'"});
        refs_ok = false;
      }
      if (!seen.insert(s.name).second)
        diags.push_back({s.loc, "superclass '" + s.name + "' listed twice in class '" + c.name + "'"});
    }
  }
  if (!refs_ok) return;

  // Cycle detection over the isa graph.
  std::vector<int> color(def.classes.size(), 0);
  std::function<bool(std::size_t)> visit = [&](std::size_t i) -> bool {
    color[i] = 1;
    for (const auto& s : def.classes[i].superclasses) {
      auto j = def.class_index.at(s.name);
      if (color[j] == 1) {
        diags.push_back({s.loc, "cyclic superclass graph: '" + def.classes[i].name + "' isa '" +
                                    s.name + "' closes a cycle"});
        return false;
      }
      if (color[j] == 0 && !visit(j)) return false;
    }
    color[i] = 2;
    return true;
  };
  for (std::size_t i = 0; i < def.classes.size(); ++i)
    if (color[i] == 0 && !visit(i)) break;
}

}  // namespace

ParseResult parse_lexicon(const std::vector<SourceFile>& files) {
  ParseResult result;
  LexiconDef def;
  for (const auto& f : files) {
    Parser p(f.text, f.name, def, result.diagnostics);
    p.run();
  }
  if (result.diagnostics.empty()) validate(def, result.diagnostics);
  if (result.diagnostics.empty()) result.lexicon = std::move(def);
  return result;
}

ParseResult parse_lexicon(const std::string& text, const std::string& file) {
  return parse_lexicon(std::vector<SourceFile>{SourceFile{file, text}});
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string render_values(const std::vector<std::string>& vals) {
  std::string out;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (i) out += " or ";
    out += vals[i];
  }
  return out;
}

std::string render_constraint(const ConstraintExpr& c) {
  if (c.kind == ConstraintExpr::Kind::predicate) {
    std::string out = c.predicate + "(";
    for (std::size_t i = 0; i < c.args.size(); ++i) {
      if (i) out += ", ";
      out += c.args[i].is_literal ? quote(c.args[i].literal) : c.args[i].path.str();
    }
    return out + ")";
  }
  std::string out = c.lhs.str() + " = ";
  const auto& v = c.rhs;
  switch (v.kind) {
    case ValueExpr::Kind::word: return out + v.values.front();
    case ValueExpr::Kind::path: return out + v.path.str();
    case ValueExpr::Kind::values: return out + render_values(v.values);
    case ValueExpr::Kind::negated:
      return out + (v.values.size() == 1 ? "not " + v.values.front() : "not (" + render_values(v.values) + ")");
    case ValueExpr::Kind::literal: return out + quote(v.literal);
  }
  return out;
}

void render_section(std::ostringstream& os, const char* word, const FsDescription& d) {
  os << "  " << word;
  for (std::size_t i = 0; i < d.constraints.size(); ++i)
    os << (i ? ",\n    " : "\n    ") << render_constraint(d.constraints[i]);
  os << "\n";
}

std::string render_supers(const std::vector<SuperRef>& supers) {
  std::string out;
  for (std::size_t i = 0; i < supers.size(); ++i) {
    if (i) out += ", ";
    out += supers[i].name;
    if (supers[i].at) out += "@" + supers[i].at->str();
  }
  return out;
}

}  // namespace

std::string render_lexicon(const LexiconDef& def) {
  std::ostringstream os;
  for (const auto& s : def.sorts) {
    os << "sort " << s.name << " = ";
    for (std::size_t i = 0; i < s.values.size(); ++i) os << (i ? " | " : "") << s.values[i];
    os << ".\n";
  }
  for (const auto& t : def.types) {
    os << "type " << t.name << " = [";
    for (std::size_t i = 0; i < t.features.size(); ++i)
      os << (i ? ", " : "") << t.features[i].first << ": " << t.features[i].second;
    os << "].\n";
  }
  for (const auto& c : def.classes) {
    os << "\nclass " << c.name;
    if (c.lexical) os << " lexical";
    if (c.id) os << " id " << *c.id;
    if (c.type) os << " : " << *c.type;
    if (!c.superclasses.empty()) os << " isa " << render_supers(c.superclasses);
    os << "\n";
    if (c.main) render_section(os, "main", *c.main);
    if (c.defaults) render_section(os, "default", *c.defaults);
    for (const auto& v : c.variants) render_section(os, "variant", v);
    os << ".\n";
  }
  for (const auto& g : def.generators) {
    os << "\ngenerator " << g.name;
    if (g.delayed) os << " delayed";
    if (g.type) os << " : " << *g.type;
    if (!g.superclasses.empty()) os << " isa " << render_supers(g.superclasses);
    if (!g.mapping.empty()) {
      os << "\n  map ";
      for (std::size_t i = 0; i < g.mapping.size(); ++i)
        os << (i ? ", " : "") << g.mapping[i].from.str() << " -> " << g.mapping[i].to.str();
    }
    os << "\n";
    if (g.output) render_section(os, "main", *g.output);
    os << ".\n";
  }
  return os.str();
}

}  // namespace lexpe
