#include "lexpe/hierarchy.hpp"

#include <functional>
#include <unordered_map>

namespace lexpe {

namespace {

using SupersFn = std::function<const std::vector<std::uint32_t>&(std::uint32_t)>;
using NameFn = std::function<std::string(std::uint32_t)>;

std::optional<std::vector<std::uint32_t>> linearize(std::uint32_t cls, const SupersFn& supers_of,
                                                    const NameFn& name_of) {
  // Members in discovery order; 1 = on stack, 2 = done.
  std::vector<std::uint32_t> members;
  std::unordered_map<std::uint32_t, std::uint32_t> slot;
  std::unordered_map<std::uint32_t, int> color;
  std::function<void(std::uint32_t)> visit = [&](std::uint32_t c) {
    auto& col = color[c];
    if (col == 2) return;
    if (col == 1) throw HierarchyError(HierarchyError::Kind::cycle, "cyclic superclass graph through class '" + name_of(c) + "'");
    col = 1;
    slot.emplace(c, static_cast<std::uint32_t>(members.size()));
    members.push_back(c);
    for (auto s : supers_of(c)) visit(s);
    color[c] = 2;
  };
  visit(cls);

  const auto n = members.size();
  std::vector<std::vector<std::uint32_t>> succ(n);
  std::vector<std::uint32_t> indeg(n, 0);
  for (std::uint32_t i = 0; i < n; ++i) {
    std::uint32_t prev = i;
    for (auto s : supers_of(members[i])) {
      const auto j = slot.at(s);
      succ[prev].push_back(j);
      ++indeg[j];
      prev = j;
    }
  }

  std::vector<std::uint32_t> out;
  std::vector<char> placed(n, 0);
  out.reserve(n);
  while (out.size() < n) {
    std::vector<std::uint32_t> cands;
    for (std::uint32_t i = 0; i < n; ++i)
      if (!placed[i] && indeg[i] == 0) cands.push_back(i);
    if (cands.empty()) return std::nullopt;
    std::uint32_t pick = cands.front();
    if (cands.size() > 1) {
      // CLOS tie-break: the candidate that is a direct superclass of the
      // rightmost class already in the list.
      bool found = false;
      for (auto r = out.size(); r-- > 0 && !found;) {
        for (auto s : supers_of(members[out[r]])) {
          const auto j = slot.at(s);
          if (!placed[j] && indeg[j] == 0) {
            pick = j;
            found = true;
            break;
          }
        }
      }
    }
    placed[pick] = 1;
    out.push_back(pick);
    for (auto j : succ[pick]) --indeg[j];
  }
  for (auto& i : out) i = members[i];
  return out;
}

}  // namespace

std::optional<std::vector<std::uint32_t>> clos_linearize(
    std::uint32_t cls, const std::vector<std::vector<std::uint32_t>>& supers) {
  return linearize(
      cls, [&](std::uint32_t c) -> const std::vector<std::uint32_t>& { return supers.at(c); },
      [](std::uint32_t c) { return "#" + std::to_string(c); });
}

Cpl compute_cpl(std::uint32_t cls, const Lexicon& lex) {
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> cache;
  auto supers_of = [&](std::uint32_t c) -> const std::vector<std::uint32_t>& {
    auto it = cache.find(c);
    if (it != cache.end()) return it->second;
    std::vector<std::uint32_t> v;
    for (const auto& s : lex.classes.at(c).supers) v.push_back(s.cls);
    return cache.emplace(c, std::move(v)).first->second;
  };
  auto name_of = [&](std::uint32_t c) { return lex.classes.at(c).name; };
  auto order = linearize(cls, supers_of, name_of);
  if (!order)
    throw HierarchyError(HierarchyError::Kind::linearization,
                         "no class precedence list satisfies the superclass orders of class '" + name_of(cls) + "'");

  std::unordered_map<std::uint32_t, std::optional<Path>> loc;
  loc[cls] = Path{};
  const auto& ts = *lex.types;
  for (auto c : *order) {
    const auto& here = *loc.at(c);
    for (const auto& link : lex.classes[c].supers) {
      Path p = here;
      p.insert(p.end(), link.at.begin(), link.at.end());
      auto& slot = loc[link.cls];
      if (!slot) {
        slot = std::move(p);
      } else if (*slot != p) {
        throw HierarchyError(HierarchyError::Kind::location,
                             "class '" + name_of(link.cls) + "' is inherited by '" + name_of(cls) + "' at both '" +
                                 ts.path_string(*slot) + "' and '" + ts.path_string(p) + "'");
      }
    }
  }

  Cpl out;
  out.cls = cls;
  for (auto c : *order) out.list.push_back(CplEntry{c, *loc.at(c)});
  return out;
}

}  // namespace lexpe
