#include "lexpe/extension.hpp"

namespace lexpe {

ResolvedLexicon::ResolvedLexicon(Lexicon lex) : lex_(std::move(lex)) {
  cpls_.resize(lex_.classes.size());
  chains_.resize(lex_.classes.size());
  for (std::uint32_t c = 0; c < lex_.classes.size(); ++c) resolve(c);
}

std::vector<std::uint32_t> ResolvedLexicon::lexical_classes() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < lex_.classes.size(); ++c)
    if (lex_.classes[c].lexical) out.push_back(c);
  return out;
}

std::uint32_t ResolvedLexicon::add_class(LoweredClass c) {
  const auto idx = lex_.add_class(std::move(c));
  cpls_.emplace_back();
  chains_.emplace_back();
  resolve(idx);
  return idx;
}

void ResolvedLexicon::resolve(std::uint32_t c) {
  cpls_[c] = compute_cpl(c, lex_);
  const auto host = lex_.classes[c].type;
  auto& chain = chains_[c];
  chain.clear();
  for (const auto& e : cpls_[c].list) chain.push_back(contribution(e.cls, host, e.at));
}

const Contribution* ResolvedLexicon::contribution(std::uint32_t cls, TypeId host, const Path& at) {
  auto key = std::make_tuple(cls, host, at);
  auto it = pool_.find(key);
  if (it != pool_.end()) return it->second.get();
  const auto& ts = *lex_.types;
  const auto& src = lex_.classes[cls];
  auto c = std::make_unique<Contribution>();
  try {
    c->main = locate(ts, src.main, host, at);
    c->defaults = locate(ts, src.defaults, host, at);
    for (const auto& v : src.variants) c->variants.insert(locate(ts, v, host, at));
  } catch (const TypeError& e) {
    throw LexiconError("class '" + src.name + "' cannot be inherited at '" + ts.path_string(at) + "': " + e.what());
  }
  c->default_atoms = decompose_default(ts, c->defaults);
  return pool_.emplace(std::move(key), std::move(c)).first->second.get();
}

ExtensionSet extend_strict(const ResolvedLexicon& lex, std::uint32_t cls, Counters* counters) {
  struct Item {
    FeatureStructure fs;
    std::vector<std::uint32_t> prov;
  };
  std::vector<Item> cur{{FeatureStructure::empty(lex.cls(cls).type), {}}};
  for (const auto* c : lex.chain(cls)) {
    std::vector<Item> next;
    FeatureStructureSet seen;
    for (const auto& item : cur) {
      if (counters) ++counters->unifications;
      auto m = unify(item.fs, c->main);
      if (!m) continue;
      for (std::uint32_t vi = 0; vi < c->variants.size(); ++vi) {
        if (counters) ++counters->unifications;
        auto r = unify(*m, c->variants[vi]);
        if (!r || !seen.insert(*r)) continue;
        auto prov = item.prov;
        prov.push_back(vi);
        next.push_back(Item{std::move(*r), std::move(prov)});
      }
    }
    cur = std::move(next);
  }
  ExtensionSet out;
  out.cls = cls;
  for (auto& item : cur) {
    out.elements.insert(item.fs);
    out.provenance.push_back(std::move(item.prov));
  }
  return out;
}

FeatureStructure apply_chain_defaults(const FeatureStructure& f, std::span<const Contribution* const> chain,
                                      Counters* counters) {
  FeatureStructure cur = f;
  for (const auto* c : chain)
    for (const auto& a : c->default_atoms) cur = default_add(cur, a, counters);
  return cur;
}

ExtensionSet extend(const ResolvedLexicon& lex, std::uint32_t cls, Counters* counters) {
  auto strict = extend_strict(lex, cls, counters);
  ExtensionSet out;
  out.cls = cls;
  const auto& chain = lex.chain(cls);
  for (std::size_t i = 0; i < strict.elements.size(); ++i) {
    if (out.elements.insert(apply_chain_defaults(strict.elements[i], chain, counters)))
      out.provenance.push_back(strict.provenance[i]);
  }
  return out;
}

FeatureStructureSet lookup_indexed(std::string_view word, const PlainIndex& index, const ResolvedLexicon& lex,
                                   const Path& key, Counters* counters) {
  FeatureStructureSet out;
  auto it = index.find(std::string(word));
  if (it == index.end()) return out;
  for (auto cls : it->second) {
    auto ext = extend(lex, cls, counters);
    for (const auto& fs : ext.elements)
      if (fs.literal_at(key) == word) out.insert(fs);
  }
  return out;
}

}  // namespace lexpe
