#pragma once

// Syntax tree of lexicon source files.
//
//   % comment
//   sort case = nom | gen | dat | acc.
//   type agr = [case: case, num: num].
//   class a : word
//     main    syn^cat = a, concat(mor^a_stem, mor^suffix, form)
//     default lemma = mor^stem
//     variant syn^cdegree = pos, mor^a_stem = mor^pos_stem
//     variant ...
//   .
//   class klein lexical id 466 isa a_decl
//     main mor^stem = "klein".
//   generator nominalize : word isa noun map mor^stem -> mor^stem main syn^cat = n.

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace lexpe {

struct SourceLoc {
  std::string file;
  int line = 0;
  int col = 0;
};

struct Diagnostic {
  SourceLoc loc;
  std::string message;
  /// "file:line:col: message"
  std::string str() const;
};

struct PathExpr {
  std::vector<std::string> features;
  SourceLoc loc;
  std::string str() const;
};

/// Right-hand side of an equation. A bare word is kept as `word` until
/// lowering decides whether it is a sort value or a one-step path.
struct ValueExpr {
  enum class Kind { word, path, values, negated, literal };
  Kind kind = Kind::word;
  std::vector<std::string> values;  // word: one entry; values/negated: the set
  PathExpr path;                    // path (and word, as a one-step path)
  std::string literal;              // literal
};

struct PredArgExpr {
  bool is_literal = false;
  PathExpr path;
  std::string literal;
};

struct ConstraintExpr {
  enum class Kind { equation, predicate };
  Kind kind = Kind::equation;
  PathExpr lhs;
  ValueExpr rhs;
  std::string predicate;
  std::vector<PredArgExpr> args;
  SourceLoc loc;
};

struct FsDescription {
  std::vector<ConstraintExpr> constraints;
  SourceLoc loc;
};

struct SuperRef {
  std::string name;
  std::optional<PathExpr> at;  // locating inheritance
  SourceLoc loc;
};

struct ClassDef {
  std::string name;
  SourceLoc loc;
  bool lexical = false;
  std::optional<std::int64_t> id;
  std::optional<std::string> type;
  std::vector<SuperRef> superclasses;
  std::optional<FsDescription> main;
  std::optional<FsDescription> defaults;
  std::vector<FsDescription> variants;
};

struct MappingExpr {
  PathExpr from;
  PathExpr to;
};

struct GeneratorDef {
  std::string name;
  SourceLoc loc;
  bool delayed = false;
  std::optional<std::string> type;
  std::vector<SuperRef> superclasses;
  std::vector<MappingExpr> mapping;
  std::optional<FsDescription> output;
};

struct SortDecl {
  std::string name;
  std::vector<std::string> values;
  SourceLoc loc;
};

struct TypeDeclExpr {
  std::string name;
  std::vector<std::pair<std::string, std::string>> features;
  SourceLoc loc;
};

struct LexiconDef {
  std::vector<SortDecl> sorts;
  std::vector<TypeDeclExpr> types;
  std::vector<ClassDef> classes;  // source order
  std::vector<GeneratorDef> generators;
  std::unordered_map<std::string, std::size_t> class_index;
  std::unordered_map<std::string, std::size_t> generator_index;

  const ClassDef* find_class(const std::string& name) const;
};

struct SourceFile {
  std::string name;
  std::string text;
};

struct ParseResult {
  std::optional<LexiconDef> lexicon;
  std::vector<Diagnostic> diagnostics;
  bool ok() const { return lexicon.has_value(); }
};

/// Parses and validates names (superclasses, sorts, types), duplicate
/// definitions and superclass cycles. Files are read as one concatenated
/// lexicon.
ParseResult parse_lexicon(const std::vector<SourceFile>& files);
ParseResult parse_lexicon(const std::string& text, const std::string& file = "<input>");

/// Source text that parses back to the same definitions.
std::string render_lexicon(const LexiconDef& def);

}  // namespace lexpe
