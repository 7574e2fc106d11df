#include "lexpe/fs_set.hpp"

namespace lexpe {

FeatureStructureSet::FeatureStructureSet(std::initializer_list<FeatureStructure> items) {
  for (const auto& fs : items) insert(fs);
}

std::optional<std::size_t> FeatureStructureSet::index_of(const FeatureStructure& fs) const {
  const auto h = fs.hash();
  for (std::size_t i = 0; i < hashes_.size(); ++i)
    if (hashes_[i] == h && equivalent(items_[i], fs)) return i;
  return std::nullopt;
}

bool FeatureStructureSet::insert(const FeatureStructure& fs) {
  if (index_of(fs)) return false;
  items_.push_back(fs);
  hashes_.push_back(fs.hash());
  return true;
}

FeatureStructureSet set_unify(const FeatureStructureSet& a, const FeatureStructureSet& b,
                              Counters* counters) {
  FeatureStructureSet out;
  for (const auto& x : a) {
    for (const auto& y : b) {
      if (counters) ++counters->unifications;
      if (auto r = unify(x, y)) out.insert(*r);
    }
  }
  return out;
}

bool set_equivalent(const FeatureStructureSet& a, const FeatureStructureSet& b) {
  if (a.size() != b.size()) return false;
  for (const auto& x : a)
    if (!b.contains(x)) return false;
  return true;
}

}  // namespace lexpe
