#include "lexpe/defaults.hpp"

namespace lexpe {

namespace {

FeatureStructure atom_structure(const TypeSystem& ts, TypeId host, const AtomicDefault& a) {
  FsBuilder b(ts, host);
  switch (a.kind) {
    case AtomicDefault::Kind::assign:
      b.constrain(a.path, a.value);
      break;
    case AtomicDefault::Kind::share:
      b.share(a.path, a.other);
      break;
    case AtomicDefault::Kind::predicate:
      b.add_predicate(a.predicate, a.args);
      break;
  }
  auto fs = b.finish();
  return fs ? *fs : FeatureStructure();
}

}  // namespace

DefaultSequence decompose_default(const TypeSystem& ts, const FeatureStructure& d, unsigned priority) {
  DefaultSequence out;
  for_each_path(d, [&](const Path& p, std::uint32_t n, bool first, const Path& first_path) {
    if (p.empty()) return;
    AtomicDefault a;
    a.priority = priority;
    if (!first) {
      a.kind = AtomicDefault::Kind::share;
      a.path = first_path;
      a.other = p;
    } else {
      const auto& node = d.nodes()[n];
      if (!node.is_atom() || node.atom.unconstrained()) return;
      a.kind = AtomicDefault::Kind::assign;
      a.path = p;
      a.value = node.atom;
    }
    out.push_back(std::move(a));
  });
  if (!d.residue().empty()) {
    const auto paths = d.first_paths();
    for (const auto& p : d.residue()) {
      AtomicDefault a;
      a.priority = priority;
      a.kind = AtomicDefault::Kind::predicate;
      a.predicate = p.id;
      for (const auto& arg : p.args) {
        if (arg.is_node())
          a.args.emplace_back(paths[arg.node]);
        else
          a.args.emplace_back(arg.constant);
      }
      out.push_back(std::move(a));
    }
  }
  for (auto& a : out) a.fs = atom_structure(ts, d.type(), a);
  return out;
}

FeatureStructure default_add(const FeatureStructure& f, const AtomicDefault& a, Counters* counters) {
  if (counters) ++counters->default_atoms_tried;
  if (a.fs.valid()) {
    if (auto r = unify(f, a.fs)) return *r;
  }
  if (counters) ++counters->default_atoms_skipped;
  return f;
}

FeatureStructure apply_defaults(const FeatureStructure& f, std::span<const DefaultSequence> seq,
                                Counters* counters) {
  FeatureStructure cur = f;
  for (const auto& atoms : seq)
    for (const auto& a : atoms) cur = default_add(cur, a, counters);
  return cur;
}

FeatureStructureSet default_unify_seq(const FeatureStructureSet& s, std::span<const DefaultSequence> seq,
                                      Counters* counters) {
  FeatureStructureSet out;
  for (const auto& f : s) out.insert(apply_defaults(f, seq, counters));
  return out;
}

FeatureStructureSet default_unify_seq(const TypeSystem& ts, const FeatureStructureSet& s,
                                      std::span<const FeatureStructure> ds) {
  std::vector<DefaultSequence> seq;
  for (std::size_t i = 0; i < ds.size(); ++i)
    seq.push_back(decompose_default(ts, ds[i], static_cast<unsigned>(i)));
  return default_unify_seq(s, seq);
}

std::string render_default(const TypeSystem& ts, const AtomicDefault& a) {
  switch (a.kind) {
    case AtomicDefault::Kind::assign:
      return ts.path_string(a.path) + " = " + a.value.render(ts);
    case AtomicDefault::Kind::share:
      return ts.path_string(a.path) + " = " + ts.path_string(a.other);
    case AtomicDefault::Kind::predicate: {
      std::string out = predicate(a.predicate).name + "(";
      for (std::size_t i = 0; i < a.args.size(); ++i) {
        if (i) out += ", ";
        if (const auto* p = std::get_if<Path>(&a.args[i]))
          out += ts.path_string(*p);
        else
          out += "\"" + std::get<std::string>(a.args[i]) + "\"";
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace lexpe
