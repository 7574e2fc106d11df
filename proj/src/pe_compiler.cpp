#include <algorithm>
#include <deque>

#include "lexpe/log.hpp"
#include "lexpe/pe.hpp"

namespace lexpe {

namespace {

class Compiler {
 public:
  explicit Compiler(PeLexicon& pe) : pe_(pe) {
    for (const auto& r : pe_.results) keys_.emplace(r.key, r.id);
  }

  std::uint32_t add_class(std::uint32_t cls) {
    const auto& src = *pe_.source;
    const auto& lc = src.cls(cls);
    const auto& chain = src.chain(cls);
    PeKey key{lc.type, src.cpl(cls).key()};
    std::uint32_t rid;
    if (auto it = keys_.find(key); it != keys_.end()) {
      rid = it->second;
    } else {
      rid = static_cast<std::uint32_t>(pe_.results.size());
      PeResult r;
      r.id = rid;
      r.key = key;
      // Fold from the most general class down to c_2 so that the more
      // general variants number the outer loop.
      FeatureStructureSet acc{FeatureStructure::empty(lc.type)};
      for (auto i = chain.size(); i-- > 1;) {
        acc = set_unify(acc, FeatureStructureSet{chain[i]->main});
        acc = set_unify(acc, chain[i]->variants);
      }
      if (acc.empty()) pe_.warnings.push_back("pe-result for class '" + lc.name + "' is empty");
      r.p_f = std::move(acc);
      for (std::size_t i = 1; i < chain.size(); ++i) {
        if (chain[i]->defaults.is_empty()) continue;
        r.p_d.push_back(chain[i]->defaults);
        r.p_d_atoms.push_back(chain[i]->default_atoms);
      }
      keys_.emplace(r.key, rid);
      pe_.results.push_back(std::move(r));
    }
    PeClass c;
    c.cls = cls;
    c.id = lc.id;
    c.name = lc.name;
    c.type = lc.type;
    c.main = chain[0]->main;
    c.variants = chain[0]->variants;
    c.defaults = chain[0]->defaults;
    c.default_atoms = chain[0]->default_atoms;
    c.pe_result = rid;
    c.depth = lc.depth;
    pe_.classes.push_back(std::move(c));
    return static_cast<std::uint32_t>(pe_.classes.size() - 1);
  }

 private:
  PeLexicon& pe_;
  std::map<PeKey, std::uint32_t> keys_;
};

std::optional<FeatureStructure> apply_generator(const TypeSystem& ts, const LoweredGenerator& g,
                                                const FeatureStructure& input) {
  FsBuilder b(ts, g.type);
  b.embed({}, g.output);
  for (const auto& [from, to] : g.mapping) b.copy(input, from, to);
  return b.finish();
}

}  // namespace

const PeClass* PeLexicon::find(ClassId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &classes[it->second];
}

const PeClass* PeLexicon::find(const std::string& name) const {
  for (const auto& c : classes)
    if (c.name == name) return &c;
  return nullptr;
}

void PeLexicon::reindex() {
  std::stable_sort(classes.begin(), classes.end(), [](const PeClass& a, const PeClass& b) { return a.id < b.id; });
  by_id_.clear();
  for (std::uint32_t i = 0; i < classes.size(); ++i) by_id_.emplace(classes[i].id, i);
}

std::size_t count_structures(const FeatureStructure& main, const FeatureStructureSet& variants,
                             const FeatureStructure& defaults) {
  std::size_t n = (main.is_empty() ? 0 : 1) + (defaults.is_empty() ? 0 : 1);
  for (const auto& v : variants) n += v.is_empty() ? 0 : 1;
  return n;
}

void compute_metadata(PeLexicon& pe) {
  auto& m = pe.meta;
  m = PeMetadata{};
  const auto& lex = pe.source->lexicon();
  for (const auto& c : lex.classes) {
    (c.lexical ? m.n_l : m.n_n) += 1;
    m.n_lfs_original += count_structures(c.main, c.variants, c.defaults);
    if (c.depth > 0) ++m.n_generated;
  }
  m.n_cpl = pe.results.size();
  for (const auto& c : pe.classes) m.n_lfs_pe += count_structures(c.main, c.variants, c.defaults);
  for (const auto& r : pe.results) {
    for (const auto& f : r.p_f) m.n_lfs_pe += f.is_empty() ? 0 : 1;
    for (const auto& d : r.p_d) m.n_lfs_pe += d.is_empty() ? 0 : 1;
  }
}

PeLexicon pe_compile(Lexicon lex, const CompileOptions& opts) {
  PeLexicon pe;
  pe.source = std::make_shared<ResolvedLexicon>(std::move(lex));
  Compiler comp(pe);
  for (auto c : pe.source->lexical_classes()) comp.add_class(c);
  pe.reindex();
  if (opts.generators) expand_generators(pe, opts.generator_depth_limit);
  compute_metadata(pe);
  for (const auto& w : pe.warnings) log_warn(w);
  return pe;
}

void expand_generators(PeLexicon& pe, unsigned depth_limit) {
  auto& src = *pe.source;
  const auto& ts = src.types();
  const auto gener = ts.find_feature("gener");
  if (!gener) return;
  const auto& gens = src.lexicon().generators;
  if (std::none_of(gens.begin(), gens.end(), [](const LoweredGenerator& g) { return !g.delayed; })) return;

  ClassId next_id = 1;
  for (const auto& c : src.lexicon().classes)
    if (c.lexical) next_id = std::max(next_id, c.id + 1);

  Compiler comp(pe);
  std::deque<std::uint32_t> work;
  for (const auto& c : pe.classes) work.push_back(c.cls);
  const Path key{*gener};
  while (!work.empty()) {
    const auto cls = work.front();
    work.pop_front();
    const auto ext = extend(src, cls);
    FeatureStructureSet outputs;
    const std::string src_name = src.cls(cls).name;
    const unsigned depth = src.cls(cls).depth;
    for (const auto& e : ext.elements) {
      auto name = e.literal_at(key);
      if (!name) continue;
      auto gi = src.lexicon().find_generator(std::string(*name));
      if (!gi || gens[*gi].delayed) continue;
      const auto& g = gens[*gi];
      if (depth + 1 > depth_limit)
        throw LexiconError("generator '" + g.name + "' exceeds the derivation depth limit of " +
                           std::to_string(depth_limit) + " at class '" + src_name + "' (generator cycle)");
      std::optional<FeatureStructure> out;
      try {
        out = apply_generator(ts, g, e);
      } catch (const TypeError& err) {
        throw LexiconError("generator '" + g.name + "' applied to class '" + src_name + "': " + err.what());
      }
      if (!out) {
        pe.warnings.push_back("generator '" + g.name + "' fails on an element of class '" + src_name + "'");
        continue;
      }
      if (!outputs.insert(*out)) continue;
      LoweredClass nc;
      nc.name = src_name + "." + g.name;
      if (outputs.size() > 1) nc.name += "." + std::to_string(outputs.size());
      nc.lexical = true;
      nc.id = next_id++;
      nc.type = g.type;
      for (auto s : g.supers) nc.supers.push_back(SuperLink{s, {}});
      nc.main = *out;
      nc.defaults = FeatureStructure::empty(g.type);
      nc.variants.insert(FeatureStructure::empty(g.type));
      nc.depth = depth + 1;
      log_debug("generator " + g.name + " derives class " + nc.name);
      const auto idx = src.add_class(std::move(nc));
      comp.add_class(idx);
      work.push_back(idx);
    }
  }
  pe.reindex();
}

}  // namespace lexpe
