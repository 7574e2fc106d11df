#pragma once

// Word-form index W -> C_l x 2^N: each form maps to the classes producing it
// together with the (1-based) pe-result elements it comes from.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lexpe/extension.hpp"
#include "lexpe/pe.hpp"

namespace lexpe {

struct IndexEntry {
  ClassId cls = kNoClassId;
  std::vector<std::uint32_t> s;  // sorted, 1-based
  friend bool operator==(const IndexEntry&, const IndexEntry&) = default;
};

class FormIndex {
 public:
  FormIndex() = default;
  explicit FormIndex(Path key) : key_(std::move(key)) {}

  const Path& key() const { return key_; }

  void add(const std::string& form, ClassId cls, std::uint32_t index);
  std::span<const IndexEntry> lookup(std::string_view form) const;

  std::size_t size() const { return entries_.size(); }
  /// All forms, sorted bytewise.
  std::vector<std::string> forms() const;
  /// Index of the plain indexed lexicon (sets dropped), by source class.
  PlainIndex plain(const PeLexicon& pe) const;
  /// "form<TAB>class,{i,j}" lines sorted by form.
  std::string dump() const;

  friend bool operator==(const FormIndex& a, const FormIndex& b) {
    return a.key_ == b.key_ && a.entries_ == b.entries_;
  }

 private:
  Path key_;
  std::unordered_map<std::string, std::vector<IndexEntry>> entries_;
};

/// Path of the `form` feature.
Path default_index_key(const TypeSystem& ts);

/// Completes every element of every class once and records its key value.
/// Elements without a literal key are skipped with a warning.
FormIndex build_index(const PeLexicon& pe, const Path& key, std::vector<std::string>* warnings = nullptr);
FormIndex build_index(const PeLexicon& pe);

}  // namespace lexpe
