#include "lexpe/lookup.hpp"

#include <stdexcept>
#include <unordered_map>

#include "workspace.hpp"

namespace lexpe {

namespace {

class Constrainer {
 public:
  Constrainer(Workspace& ws, const FeatureStructure& small) : ws_(ws), small_(small), map_(small.nodes().size(), kNoNode) {}

  bool walk(std::uint32_t sn, std::uint32_t wn) {
    if (map_[sn] != kNoNode) return ws_.unify(map_[sn], wn);
    map_[sn] = wn;
    const auto& node = small_.nodes()[sn];
    if (node.is_atom()) return ws_.constrain(wn, node.atom);
    for (const auto& arc : small_.arcs(sn)) {
      const auto c = ws_.child(wn, arc.feature);
      if (c == kNoNode) {
        ws_.add_arc(ws_.find(wn), arc.feature, graft(arc.target));
      } else if (!walk(arc.target, c)) {
        return false;
      }
    }
    return true;
  }

  void add_residue() {
    for (const auto& p : small_.residue()) {
      Predicate q = p;
      for (auto& a : q.args)
        if (a.is_node()) a.node = map_[a.node];
      ws_.add_predicate(std::move(q));
    }
  }

 private:
  std::uint32_t graft(std::uint32_t sn) {
    if (map_[sn] != kNoNode) return ws_.find(map_[sn]);
    const auto& node = small_.nodes()[sn];
    std::uint32_t n;
    if (node.is_atom()) {
      n = ws_.add_atom(node.atom);
      map_[sn] = n;
    } else {
      n = ws_.add_complex(node.type);
      map_[sn] = n;
      for (const auto& arc : small_.arcs(sn)) ws_.add_arc(n, arc.feature, graft(arc.target));
    }
    return n;
  }

  Workspace& ws_;
  const FeatureStructure& small_;
  std::vector<std::uint32_t> map_;
};

}  // namespace

std::optional<FeatureStructure> constrain_unify(const FeatureStructure& intermediate, const FeatureStructure& small) {
  if (intermediate.type() != small.type()) return std::nullopt;
  if (small.is_empty()) return intermediate;
  auto& ws = scratch_workspace();
  ws.reset();
  const auto root = ws.import(intermediate);
  Constrainer c(ws, small);
  if (!c.walk(0, root)) return std::nullopt;
  c.add_residue();
  return ws.finish(root);
}

std::vector<Completed> complete(const PeLexicon& pe, const PeClass& c, std::span<const std::uint32_t> selection,
                                LookupStats* stats) {
  std::vector<Completed> out;
  const auto& r = pe.result_of(c);
  Counters* counters = stats ? &stats->counters : nullptr;
  for (auto idx : selection) {
    const auto& p = r.p_f[idx];
    if (stats) {
      ++stats->elements;
      stats->delayed_before += p.delayed_count();
      ++counters->unifications;
    }
    auto m = constrain_unify(p, c.main);
    if (!m) continue;
    for (const auto& v : c.variants) {
      if (counters) ++counters->unifications;
      auto x = constrain_unify(*m, v);
      if (!x) continue;
      FeatureStructure cur = *x;
      for (const auto& a : c.default_atoms) cur = default_add(cur, a, counters);
      for (const auto& seq : r.p_d_atoms)
        for (const auto& a : seq) cur = default_add(cur, a, counters);
      if (stats) stats->delayed_after += cur.delayed_count();
      out.push_back(Completed{std::move(cur), idx});
    }
  }
  return out;
}

std::vector<Completed> complete_all(const PeLexicon& pe, const PeClass& c, LookupStats* stats) {
  std::vector<std::uint32_t> all(pe.result_of(c).p_f.size());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = i;
  return complete(pe, c, all, stats);
}

FeatureStructureSet lookup_pe(std::string_view word, const PeLexicon& pe, const FormIndex& index, LookupStats* stats) {
  FeatureStructureSet out;
  std::vector<std::uint32_t> sel;
  for (const auto& entry : index.lookup(word)) {
    const auto* c = pe.find(entry.cls);
    if (!c) throw std::runtime_error("index refers to unknown class id " + std::to_string(entry.cls));
    const auto& r = pe.result_of(*c);
    sel.clear();
    for (auto i : entry.s) {
      if (i == 0 || i > r.p_f.size())
        throw std::runtime_error("index refers to element " + std::to_string(i) + " of pe-result " +
                                 std::to_string(r.id) + ", which has " + std::to_string(r.p_f.size()));
      sel.push_back(i - 1);
    }
    for (auto& e : complete(pe, *c, sel, stats))
      if (e.fs.literal_at(index.key()) == word) out.insert(e.fs);
  }
  return out;
}

}  // namespace lexpe
