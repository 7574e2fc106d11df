#include "lexpe/synthetic.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "json.hpp"

namespace lexpe {

namespace {

constexpr const char* kPieces[] = {"e", "en", "er", "es", "st", "t", "n", "s", "em", "ern", "et", "est"};
constexpr const char* kOnsets[] = {"b", "d", "f", "g", "h", "k", "l", "m", "n", "p", "r", "s", "t", "w", "z", "sch", "kr", "st"};
constexpr const char* kNuclei[] = {"a", "e", "i", "o", "u", "au", "ei", "ie"};
constexpr const char* kCats[] = {"n", "v", "a"};

// Portable draws: only the raw engine output is used, never a std
// distribution, so the text is identical across standard libraries.
struct Rng {
  std::mt19937_64 engine;
  std::uint64_t below(std::uint64_t n) { return n ? engine() % n : 0; }
};

std::string stem_for(unsigned index, Rng& rng) {
  std::string s = kOnsets[rng.below(std::size(kOnsets))];
  s += kNuclei[rng.below(std::size(kNuclei))];
  // The index, spelled in syllables, keeps stems distinct.
  unsigned i = index;
  do {
    s += kOnsets[i % std::size(kOnsets)];
    i /= static_cast<unsigned>(std::size(kOnsets));
    s += kNuclei[i % std::size(kNuclei)];
    i /= static_cast<unsigned>(std::size(kNuclei));
  } while (i);
  return s;
}

}  // namespace

SyntheticProfile SyntheticProfile::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SyntheticProfile p;
  auto get = [&](const char* key, unsigned& v) {
    if (j.contains(key)) v = j.at(key).get<unsigned>();
  };
  get("lexical", p.lexical);
  get("paradigms", p.paradigms);
  get("mixins", p.mixins);
  get("variants", p.variants);
  get("mixins_per_paradigm", p.mixins_per_paradigm);
  get("depth", p.depth);
  if (j.contains("default_conflicts")) p.default_conflicts = j.at("default_conflicts").get<double>();
  if (p.variants == 0 || p.variants > 64) throw std::invalid_argument("profile: variants must be in 1..64");
  if (p.mixins_per_paradigm > p.mixins)
    throw std::invalid_argument("profile: mixins_per_paradigm exceeds mixins");
  if (p.paradigms == 0 && p.lexical > 0) throw std::invalid_argument("profile: lexical classes need a paradigm");
  return p;
}

std::string SyntheticProfile::to_json() const {
  nlohmann::json j{{"lexical", lexical},
                   {"paradigms", paradigms},
                   {"mixins", mixins},
                   {"variants", variants},
                   {"mixins_per_paradigm", mixins_per_paradigm},
                   {"depth", depth},
                   {"default_conflicts", default_conflicts}};
  return j.dump(2);
}

std::string gen_synthetic(const SyntheticProfile& p, std::uint64_t seed) {
  Rng rng{std::mt19937_64(seed)};
  std::ostringstream out;
  out << "% synthetic lexicon, seed " << seed << "\n";
  out << "% " << p.lexical << " lexical classes over " << p.paradigms << " paradigms\n\n";
  if (p.lexical == 0) return out.str();

  const unsigned chain = std::max(1u, p.mixins_per_paradigm);
  out << "sort cat = n | v | a.\n";
  out << "sort val =";
  for (unsigned v = 0; v < p.variants; ++v) out << (v ? " | " : " ") << "v" << v;
  out << ".\n";
  out << "type syn = [cat: cat";
  for (unsigned m = 0; m < p.mixins; ++m) out << ", d" << m << ": val";
  out << "].\n";
  out << "type mor = [stem: string, note: string";
  for (unsigned m = 0; m < p.mixins; ++m) out << ", s" << m << ": string";
  for (unsigned k = 1; k < chain; ++k) out << ", t" << k << ": string";
  out << "].\n";
  out << "type word = [form: string, lemma: string, mor: mor, syn: syn].\n\n";

  out << "class base : word\n  default lemma = mor^stem.\n";
  const unsigned width = 3;
  for (unsigned l = 1; l <= p.depth; ++l) {
    for (unsigned j = 0; j < width; ++j) {
      out << "class g" << l << "_" << j << " isa ";
      if (l == 1)
        out << "base\n  main syn^cat = " << kCats[j] << "\n";
      else
        out << "g" << l - 1 << "_" << j << "\n";
      out << "  default mor^note = \"g" << l << "_" << j << "\".\n";
    }
  }
  out << '\n';

  for (unsigned m = 0; m < p.mixins; ++m) {
    out << "class m" << m << " : word\n";
    std::vector<std::string> used{""};
    for (unsigned v = 0; v < p.variants; ++v) {
      std::string piece;
      if (v > 0) {
        // Distinct pieces per mixin while the pool lasts.
        for (int tries = 0; tries < 8; ++tries) {
          piece = kPieces[rng.below(std::size(kPieces))];
          if (std::find(used.begin(), used.end(), piece) == used.end()) break;
        }
        used.push_back(piece);
      }
      out << "  variant syn^d" << m << " = v" << v << ", mor^s" << m << " = \"" << piece << "\"\n";
    }
    out << "  .\n";
  }
  out << '\n';

  for (unsigned k = 0; k < p.paradigms; ++k) {
    std::vector<unsigned> all(p.mixins);
    for (unsigned m = 0; m < p.mixins; ++m) all[m] = m;
    for (unsigned i = 0; i + 1 < all.size(); ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
    std::vector<unsigned> mix(all.begin(), all.begin() + std::min<std::size_t>(p.mixins_per_paradigm, all.size()));
    std::sort(mix.begin(), mix.end());
    out << "class p" << k << " isa ";
    for (auto m : mix) out << "m" << m << ", ";
    if (p.depth == 0)
      out << "base";
    else
      out << "g" << p.depth << "_" << k % width;
    out << "\n  main ";
    if (mix.empty()) {
      out << "form = mor^stem";
    } else {
      std::string prev = "mor^stem";
      for (std::size_t i = 0; i < mix.size(); ++i) {
        const std::string next = i + 1 == mix.size() ? "form" : "mor^t" + std::to_string(i + 1);
        if (i) out << ",\n       ";
        out << "concat(" << prev << ", mor^s" << mix[i] << ", " << next << ")";
        prev = next;
      }
    }
    out << ".\n";
  }
  out << '\n';

  for (unsigned i = 0; i < p.lexical; ++i) {
    const auto stem = stem_for(i, rng);
    out << "class w" << i << " lexical isa p" << i % p.paradigms << " main mor^stem = \"" << stem << "\"";
    const bool conflict = double(rng.below(1000000)) < p.default_conflicts * 1000000.0;
    if (conflict) out << " default lemma = \"" << stem << "_lemma\"";
    out << ".\n";
  }
  return out.str();
}

}  // namespace lexpe
