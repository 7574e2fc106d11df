#include <functional>
#include <set>

#include "lexpe/lexicon.hpp"

namespace lexpe {

namespace {

std::string summarize(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    if (!out.empty()) out += '\n';
    out += d.str();
  }
  return out;
}

Path to_path(const TypeSystem& ts, const PathExpr& p) {
  Path out;
  for (const auto& f : p.features) {
    auto id = ts.find_feature(f);
    if (!id) throw LexiconError({Diagnostic{p.loc, "unknown feature '" + f + "'"}});
    out.push_back(*id);
  }
  return out;
}

std::uint64_t value_mask(const TypeSystem& ts, SortId sort, const std::vector<std::string>& vals,
                         const SourceLoc& loc) {
  std::uint64_t m = 0;
  for (const auto& v : vals) {
    auto idx = ts.value_index(sort, v);
    if (!idx)
      throw LexiconError({Diagnostic{loc, "'" + v + "' is not a value of sort '" + ts.sort(sort).name + "'"}});
    m |= std::uint64_t{1} << *idx;
  }
  return m;
}

void lower_constraint(FsBuilder& b, const ConstraintExpr& c, const TypeSystem& ts, TypeId type) {
  if (c.kind == ConstraintExpr::Kind::predicate) {
    auto pid = find_predicate(c.predicate);
    if (!pid) throw LexiconError({Diagnostic{c.loc, "unknown predicate '" + c.predicate + "'"}});
    std::vector<FsBuilder::Arg> args;
    for (const auto& a : c.args) {
      if (a.is_literal)
        args.emplace_back(a.literal);
      else
        args.emplace_back(to_path(ts, a.path));
    }
    b.add_predicate(*pid, args);
    return;
  }
  const Path lhs = to_path(ts, c.lhs);
  const auto target = ts.resolve(type, lhs);
  const auto& v = c.rhs;
  const auto need_enum = [&]() {
    if (!target.atomic || target.id == kStringSort)
      throw LexiconError({Diagnostic{c.loc, "'" + c.lhs.str() + "' does not take sort values"}});
  };
  switch (v.kind) {
    case ValueExpr::Kind::literal:
      if (!target.atomic || target.id != kStringSort)
        throw LexiconError({Diagnostic{c.loc, "'" + c.lhs.str() + "' does not take a string"}});
      b.constrain(lhs, AtomConstraint::literal(v.literal));
      return;
    case ValueExpr::Kind::values: {
      need_enum();
      auto m = value_mask(ts, target.id, v.values, c.loc);
      b.constrain(lhs, AtomConstraint::values(target.id, m, ts.full_mask(target.id)));
      return;
    }
    case ValueExpr::Kind::negated: {
      need_enum();
      const auto full = ts.full_mask(target.id);
      auto m = full & ~value_mask(ts, target.id, v.values, c.loc);
      if (m == 0) throw LexiconError({Diagnostic{c.loc, "negation excludes every value of the sort"}});
      b.constrain(lhs, AtomConstraint::values(target.id, m, full));
      return;
    }
    case ValueExpr::Kind::word:
      if (target.atomic && target.id != kStringSort) {
        if (auto idx = ts.value_index(target.id, v.values.front())) {
          b.constrain(lhs, AtomConstraint::values(target.id, std::uint64_t{1} << *idx, ts.full_mask(target.id)));
          return;
        }
      }
      if (!ts.find_feature(v.values.front()))
        throw LexiconError({Diagnostic{c.loc, "'" + v.values.front() + "' is neither a value of the sort of '" +
                                                  c.lhs.str() + "' nor a feature"}});
      [[fallthrough]];
    case ValueExpr::Kind::path:
      b.share(lhs, to_path(ts, v.path));
      return;
  }
}

}  // namespace

LexiconError::LexiconError(std::vector<Diagnostic> diags)
    : std::runtime_error(summarize(diags)), diags_(std::move(diags)) {}

LexiconError::LexiconError(const std::string& message) : std::runtime_error(message) {}

std::optional<std::uint32_t> Lexicon::find(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::uint32_t> Lexicon::find_generator(const std::string& name) const {
  for (std::uint32_t i = 0; i < generators.size(); ++i)
    if (generators[i].name == name) return i;
  return std::nullopt;
}

std::optional<std::uint32_t> Lexicon::find_id(ClassId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

std::uint32_t Lexicon::add_class(LoweredClass c) {
  const auto idx = static_cast<std::uint32_t>(classes.size());
  if (!by_name_.emplace(c.name, idx).second) throw LexiconError("duplicate class '" + c.name + "'");
  if (c.lexical && !by_id_.emplace(c.id, idx).second)
    throw LexiconError("duplicate class id " + std::to_string(c.id));
  classes.push_back(std::move(c));
  return idx;
}

void Lexicon::reindex() {
  by_name_.clear();
  by_id_.clear();
  for (std::uint32_t i = 0; i < classes.size(); ++i) {
    by_name_.emplace(classes[i].name, i);
    if (classes[i].lexical) by_id_.emplace(classes[i].id, i);
  }
}

FeatureStructure lower_description(const FsDescription& d, const TypeSystem& ts, TypeId type,
                                   const std::string& what) {
  FsBuilder b(ts, type);
  for (const auto& c : d.constraints) {
    try {
      lower_constraint(b, c, ts, type);
    } catch (const TypeError& e) {
      throw LexiconError({Diagnostic{c.loc, e.what()}});
    }
  }
  auto fs = b.finish();
  if (!fs) throw LexiconError({Diagnostic{d.loc, what + " is inconsistent"}});
  return *fs;
}

LoweredSections lower_class(const ClassDef& def, const TypeSystem& ts, TypeId type) {
  LoweredSections out;
  out.main = def.main ? lower_description(*def.main, ts, type, "main section of class '" + def.name + "'")
                      : FeatureStructure::empty(type);
  out.defaults = def.defaults
                     ? lower_description(*def.defaults, ts, type, "default section of class '" + def.name + "'")
                     : FeatureStructure::empty(type);
  for (std::size_t i = 0; i < def.variants.size(); ++i)
    out.variants.insert(lower_description(def.variants[i], ts, type,
                                          "variant " + std::to_string(i + 1) + " of class '" + def.name + "'"));
  if (def.variants.empty()) out.variants.insert(FeatureStructure::empty(type));
  return out;
}

TypeSystem build_type_system(const LexiconDef& def) {
  std::vector<SortDef> sorts;
  for (const auto& s : def.sorts) sorts.push_back(SortDef{s.name, s.values});
  std::vector<TypeDecl> types;
  for (const auto& t : def.types) types.push_back(TypeDecl{t.name, t.features});
  try {
    return TypeSystem(std::move(sorts), types);
  } catch (const TypeError& e) {
    throw LexiconError(std::string("type declarations: ") + e.what());
  }
}

Lexicon lower_lexicon(const LexiconDef& def) {
  Lexicon lex;
  auto ts = std::make_shared<TypeSystem>(build_type_system(def));
  lex.types = ts;
  std::vector<Diagnostic> diags;

  // Types: explicit, else inherited from the first plain superclass.
  const auto n = def.classes.size();
  std::vector<TypeId> types(n, kNoType);
  std::vector<int> state(n, 0);
  std::function<TypeId(std::size_t)> type_of = [&](std::size_t i) -> TypeId {
    if (state[i] == 2) return types[i];
    if (state[i] == 1) return kNoType;
    state[i] = 1;
    const auto& c = def.classes[i];
    TypeId t = kNoType;
    if (c.type) {
      t = *ts->find_type(*c.type);
    } else {
      for (const auto& s : c.superclasses) {
        if (s.at) continue;
        t = type_of(def.class_index.at(s.name));
        break;
      }
    }
    types[i] = t;
    state[i] = 2;
    return t;
  };

  std::set<ClassId> used;
  for (const auto& c : def.classes)
    if (c.id) used.insert(static_cast<ClassId>(*c.id));
  ClassId next_id = 1;

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = def.classes[i];
    LoweredClass out;
    out.name = c.name;
    out.lexical = c.lexical;
    out.type = type_of(i);
    if (out.type == kNoType) {
      diags.push_back({c.loc, "class '" + c.name + "' has no type (declare one with ': type')"});
      continue;
    }
    if (c.lexical) {
      if (c.id) {
        out.id = static_cast<ClassId>(*c.id);
      } else {
        while (used.count(next_id)) ++next_id;
        out.id = next_id;
        used.insert(next_id);
      }
    }
    try {
      for (const auto& s : c.superclasses) {
        const auto j = def.class_index.at(s.name);
        SuperLink link;
        link.cls = static_cast<std::uint32_t>(j);
        if (s.at) link.at = to_path(*ts, *s.at);
        const auto super_type = type_of(j);
        if (super_type == kNoType) continue;  // reported for that class
        PathTarget host;
        try {
          host = ts->resolve(out.type, link.at);
        } catch (const TypeError& e) {
          throw LexiconError({Diagnostic{s.loc, e.what()}});
        }
        if (host.atomic || host.id != super_type)
          throw LexiconError({Diagnostic{s.loc, "superclass '" + s.name + "' of type '" +
                                                    ts->type(super_type).name + "' cannot be inherited " +
                                                    (link.at.empty() ? std::string("without a locating path")
                                                                     : "at '" + s.at->str() + "'") +
                                                    " by class '" + c.name + "' of type '" +
                                                    ts->type(out.type).name + "'"}});
        out.supers.push_back(std::move(link));
      }
      auto sections = lower_class(c, *ts, out.type);
      out.main = std::move(sections.main);
      out.defaults = std::move(sections.defaults);
      out.variants = std::move(sections.variants);
    } catch (const LexiconError& e) {
      diags.insert(diags.end(), e.diagnostics().begin(), e.diagnostics().end());
      continue;
    }
    lex.classes.push_back(std::move(out));
  }
  if (!diags.empty()) throw LexiconError(std::move(diags));
  lex.reindex();

  for (const auto& g : def.generators) {
    LoweredGenerator out;
    out.name = g.name;
    out.delayed = g.delayed;
    try {
      for (const auto& s : g.superclasses) out.supers.push_back(*lex.find(s.name));
      if (g.type)
        out.type = *ts->find_type(*g.type);
      else if (!out.supers.empty())
        out.type = lex.classes[out.supers.front()].type;
      else
        throw LexiconError({Diagnostic{g.loc, "generator '" + g.name + "' has no type"}});
      for (auto s : out.supers)
        if (lex.classes[s].type != out.type)
          throw LexiconError({Diagnostic{g.loc, "generator '" + g.name + "' superclass '" +
                                                    lex.classes[s].name + "' has a different type"}});
      for (const auto& m : g.mapping) {
        auto to = to_path(*ts, m.to);
        try {
          ts->resolve(out.type, to);
        } catch (const TypeError& e) {
          throw LexiconError({Diagnostic{m.to.loc, e.what()}});
        }
        out.mapping.emplace_back(to_path(*ts, m.from), std::move(to));
      }
      out.output = g.output ? lower_description(*g.output, *ts, out.type, "output of generator '" + g.name + "'")
                            : FeatureStructure::empty(out.type);
    } catch (const LexiconError& e) {
      diags.insert(diags.end(), e.diagnostics().begin(), e.diagnostics().end());
      continue;
    }
    lex.generators.push_back(std::move(out));
  }
  if (!diags.empty()) throw LexiconError(std::move(diags));
  return lex;
}

}  // namespace lexpe
