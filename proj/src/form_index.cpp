#include "lexpe/form_index.hpp"

#include <algorithm>

#include "lexpe/log.hpp"
#include "lexpe/lookup.hpp"

namespace lexpe {

void FormIndex::add(const std::string& form, ClassId cls, std::uint32_t index) {
  auto& list = entries_[form];
  auto it = std::find_if(list.begin(), list.end(), [&](const IndexEntry& e) { return e.cls == cls; });
  if (it == list.end()) {
    list.push_back(IndexEntry{cls, {}});
    std::sort(list.begin(), list.end(), [](const IndexEntry& a, const IndexEntry& b) { return a.cls < b.cls; });
    it = std::find_if(list.begin(), list.end(), [&](const IndexEntry& e) { return e.cls == cls; });
  }
  auto pos = std::lower_bound(it->s.begin(), it->s.end(), index);
  if (pos == it->s.end() || *pos != index) it->s.insert(pos, index);
}

std::span<const IndexEntry> FormIndex::lookup(std::string_view form) const {
  auto it = entries_.find(std::string(form));
  if (it == entries_.end()) return {};
  return it->second;
}

std::vector<std::string> FormIndex::forms() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [f, _] : entries_) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

PlainIndex FormIndex::plain(const PeLexicon& pe) const {
  PlainIndex out;
  for (const auto& [f, list] : entries_) {
    auto& classes = out[f];
    for (const auto& e : list) classes.push_back(pe.find(e.cls)->cls);
  }
  return out;
}

std::string FormIndex::dump() const {
  std::string out;
  for (const auto& f : forms()) {
    out += f;
    out += '\t';
    bool first_entry = true;
    for (const auto& e : entries_.at(f)) {
      if (!first_entry) out += ' ';
      first_entry = false;
      out += std::to_string(e.cls) + ",{";
      for (std::size_t i = 0; i < e.s.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(e.s[i]);
      }
      out += '}';
    }
    out += '\n';
  }
  return out;
}

Path default_index_key(const TypeSystem& ts) {
  auto f = ts.find_feature("form");
  if (!f) return {};
  return Path{*f};
}

FormIndex build_index(const PeLexicon& pe, const Path& key, std::vector<std::string>* warnings) {
  FormIndex index(key);
  if (key.empty()) return index;
  for (const auto& c : pe.classes) {
    std::size_t skipped = 0;
    for (const auto& e : complete_all(pe, c)) {
      auto form = e.fs.literal_at(key);
      if (!form) {
        ++skipped;
        continue;
      }
      index.add(std::string(*form), c.id, e.pf_index + 1);
    }
    if (skipped) {
      auto msg = "class '" + c.name + "': " + std::to_string(skipped) + " element(s) without a literal " +
                 pe.types().path_string(key) + " left unindexed";
      log_info(msg);
      if (warnings) warnings->push_back(std::move(msg));
    }
  }
  return index;
}

FormIndex build_index(const PeLexicon& pe) { return build_index(pe, default_index_key(pe.types())); }

}  // namespace lexpe
