#include "lexpe/types.hpp"

#include <algorithm>
#include <set>

namespace lexpe {

TypeSystem::TypeSystem(std::vector<SortDef> sorts, const std::vector<TypeDecl>& types) {
  sorts_.push_back(SortDef{"string", {}});
  sort_index_.emplace("string", kStringSort);
  for (auto& s : sorts) {
    if (s.name == "string") throw TypeError("sort 'string' is built in");
    if (s.values.empty()) throw TypeError("sort '" + s.name + "' has no values");
    if (s.values.size() > kMaxSortValues)
      throw TypeError("sort '" + s.name + "' has more than 64 values");
    std::set<std::string> seen(s.values.begin(), s.values.end());
    if (seen.size() != s.values.size())
      throw TypeError("sort '" + s.name + "' repeats a value");
    if (!sort_index_.emplace(s.name, static_cast<SortId>(sorts_.size())).second)
      throw TypeError("duplicate sort '" + s.name + "'");
    sorts_.push_back(std::move(s));
  }

  std::set<std::string> names;
  for (const auto& t : types)
    for (const auto& [f, target] : t.features) names.insert(f);
  for (const auto& n : names) {
    feature_index_.emplace(n, static_cast<FeatureId>(features_.size()));
    features_.push_back(n);
  }

  for (const auto& t : types) {
    if (sort_index_.count(t.name))
      throw TypeError("type '" + t.name + "' clashes with a sort name");
    if (!type_index_.emplace(t.name, static_cast<TypeId>(types_.size())).second)
      throw TypeError("duplicate type '" + t.name + "'");
    types_.push_back(TypeDef{t.name, {}});
  }
  for (std::size_t i = 0; i < types.size(); ++i) {
    auto& def = types_[i];
    for (const auto& [f, target] : types[i].features) {
      FeatureDecl decl;
      decl.feature = feature_index_.at(f);
      if (auto s = sort_index_.find(target); s != sort_index_.end()) {
        decl.atomic = true;
        decl.target = s->second;
      } else if (auto ty = type_index_.find(target); ty != type_index_.end()) {
        decl.atomic = false;
        decl.target = ty->second;
      } else {
        throw TypeError("type '" + def.name + "': unknown sort or type '" + target + "'");
      }
      def.features.push_back(decl);
    }
    std::sort(def.features.begin(), def.features.end(),
              [](const FeatureDecl& a, const FeatureDecl& b) { return a.feature < b.feature; });
    for (std::size_t k = 1; k < def.features.size(); ++k)
      if (def.features[k].feature == def.features[k - 1].feature)
        throw TypeError("type '" + def.name + "' declares feature '" +
                        features_[def.features[k].feature] + "' twice");
  }
}

std::optional<SortId> TypeSystem::find_sort(std::string_view name) const {
  auto it = sort_index_.find(std::string(name));
  if (it == sort_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<TypeId> TypeSystem::find_type(std::string_view name) const {
  auto it = type_index_.find(std::string(name));
  if (it == type_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<FeatureId> TypeSystem::find_feature(std::string_view name) const {
  auto it = feature_index_.find(std::string(name));
  if (it == feature_index_.end()) return std::nullopt;
  return it->second;
}

const FeatureDecl* TypeSystem::appropriate(TypeId type, FeatureId feature) const {
  const auto& fs = types_.at(type).features;
  auto it = std::lower_bound(fs.begin(), fs.end(), feature,
                             [](const FeatureDecl& d, FeatureId f) { return d.feature < f; });
  if (it == fs.end() || it->feature != feature) return nullptr;
  return &*it;
}

std::optional<std::uint32_t> TypeSystem::value_index(SortId sort, std::string_view value) const {
  const auto& vals = sorts_.at(sort).values;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] == value) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint64_t TypeSystem::full_mask(SortId sort) const {
  const auto n = sorts_.at(sort).values.size();
  if (n >= 64) return ~std::uint64_t{0};
  return (std::uint64_t{1} << n) - 1;
}

PathTarget TypeSystem::resolve(TypeId root, const Path& path) const {
  PathTarget cur{false, root};
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (cur.atomic)
      throw TypeError("path '" + path_string(path) + "' continues past an atomic value");
    const FeatureDecl* decl = appropriate(cur.id, path[i]);
    if (!decl)
      throw TypeError("feature '" + features_.at(path[i]) + "' is not appropriate for type '" +
                      types_.at(cur.id).name + "'");
    cur = PathTarget{decl->atomic, decl->target};
  }
  return cur;
}

Path TypeSystem::parse_path(std::string_view text) const {
  Path out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    auto pos = text.find('^', start);
    auto part = text.substr(start, pos == std::string_view::npos ? text.npos : pos - start);
    auto id = find_feature(part);
    if (!id) throw TypeError("unknown feature '" + std::string(part) + "'");
    out.push_back(*id);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string TypeSystem::path_string(const Path& path) const {
  std::string out;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) out += '^';
    out += features_.at(path[i]);
  }
  return out;
}

}  // namespace lexpe
