#include "lexpe/artifact.hpp"

#include <array>
#include <cstring>
#include <fstream>
#include <sstream>

#include "workspace.hpp"

namespace lexpe {

namespace {

constexpr char kMagic[8] = {'L', 'E', 'X', 'P', 'E', 'P', 'E', 'L'};

constexpr std::uint32_t tag(const char (&s)[5]) {
  return std::uint32_t(std::uint8_t(s[0])) | std::uint32_t(std::uint8_t(s[1])) << 8 |
         std::uint32_t(std::uint8_t(s[2])) << 16 | std::uint32_t(std::uint8_t(s[3])) << 24;
}

constexpr std::uint32_t kTypes = tag("TYPE");
constexpr std::uint32_t kLexicon = tag("LEXI");
constexpr std::uint32_t kResults = tag("PERS");
constexpr std::uint32_t kClasses = tag("CLAS");
constexpr std::uint32_t kIndex = tag("INDX");

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

class Writer {
 public:
  void u8(std::uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
  }
  void str(std::string_view s) {
    u32(static_cast<std::uint32_t>(s.size()));
    out_.append(s);
  }
  void path(const Path& p) {
    u32(static_cast<std::uint32_t>(p.size()));
    for (auto f : p) u32(f);
  }
  void raw(std::string_view s) { out_.append(s); }

  void fs(const FeatureStructure& f) {
    const auto nodes = f.nodes();
    u32(static_cast<std::uint32_t>(nodes.size()));
    for (std::uint32_t i = 0; i < nodes.size(); ++i) {
      const auto& n = nodes[i];
      if (n.is_atom()) {
        u8(0);
        u32(n.atom.sort());
        if (n.atom.is_string()) {
          u8(n.atom.text() ? 1 : 0);
          if (n.atom.text()) str(*n.atom.text());
        } else {
          u64(n.atom.mask());
        }
      } else {
        u8(1);
        u32(n.type);
        const auto arcs = f.arcs(i);
        u32(static_cast<std::uint32_t>(arcs.size()));
        for (const auto& a : arcs) {
          u32(a.feature);
          u32(a.target);
        }
      }
    }
    u32(static_cast<std::uint32_t>(f.residue().size()));
    for (const auto& p : f.residue()) {
      str(predicate(p.id).name);
      u32(static_cast<std::uint32_t>(p.args.size()));
      for (const auto& a : p.args) {
        u8(a.is_node() ? 1 : 0);
        if (a.is_node())
          u32(a.node);
        else
          str(a.constant);
      }
    }
  }

  void set(const FeatureStructureSet& s) {
    u32(static_cast<std::uint32_t>(s.size()));
    for (const auto& f : s) fs(f);
  }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

class Reader {
 public:
  explicit Reader(std::string_view in) : in_(in) {}

  bool done() const { return pos_ == in_.size(); }
  std::size_t remaining() const { return in_.size() - pos_; }

  std::string_view bytes(std::size_t n) {
    if (in_.size() - pos_ < n) throw ArtifactError(ArtifactError::Kind::truncated, "artifact is truncated");
    auto s = in_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(bytes(1)[0]); }
  std::uint32_t u32() {
    auto b = bytes(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t(std::uint8_t(b[i])) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    auto b = bytes(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= std::uint64_t(std::uint8_t(b[i])) << (8 * i);
    return v;
  }
  std::string str() {
    auto n = u32();
    return std::string(bytes(n));
  }
  /// Element count, bounded by the remaining bytes to stop absurd allocations.
  std::uint32_t count(std::size_t min_size = 1) {
    auto n = u32();
    if (n > (in_.size() - pos_) / min_size + 1) throw ArtifactError(ArtifactError::Kind::truncated, "artifact is truncated");
    return n;
  }
  Path path(const TypeSystem& ts) {
    Path p(count(4));
    for (auto& f : p) {
      f = u32();
      if (f >= ts.feature_count()) malformed("feature id out of range");
    }
    return p;
  }

  [[noreturn]] static void malformed(const std::string& what) {
    throw ArtifactError(ArtifactError::Kind::malformed, "malformed artifact: " + what);
  }

  FeatureStructure fs(const TypeSystem& ts) {
    struct RawNode {
      bool atom = false;
      TypeId type = kNoType;
      AtomConstraint value;
      std::vector<Arc> arcs;
    };
    const auto n = count(5);
    if (n == 0) malformed("structure without nodes");
    std::vector<RawNode> nodes(n);
    for (auto& node : nodes) {
      const auto kind = u8();
      if (kind == 0) {
        node.atom = true;
        const auto sort = u32();
        if (sort >= ts.sort_count()) malformed("sort id out of range");
        if (sort == kStringSort) {
          node.value = u8() ? AtomConstraint::literal(str()) : AtomConstraint::any_string();
        } else {
          const auto mask = u64();
          const auto full = ts.full_mask(sort);
          if (mask == 0 || (mask & ~full)) malformed("atom mask outside its sort");
          node.value = AtomConstraint::values(sort, mask, full);
        }
      } else if (kind == 1) {
        node.type = u32();
        if (node.type >= ts.type_count()) malformed("type id out of range");
        node.arcs.resize(count(8));
        for (auto& a : node.arcs) {
          a.feature = u32();
          a.target = u32();
          if (a.target >= n) malformed("arc target out of range");
        }
      } else {
        malformed("unknown node kind");
      }
    }
    if (nodes[0].atom) malformed("atomic root");
    // Typing and acyclicity.
    std::vector<std::uint8_t> state(n, 0);
    std::vector<std::pair<std::uint32_t, std::size_t>> stack{{0, 0}};
    state[0] = 1;
    while (!stack.empty()) {
      auto& [v, i] = stack.back();
      if (i == nodes[v].arcs.size()) {
        state[v] = 2;
        stack.pop_back();
        continue;
      }
      const auto a = nodes[v].arcs[i++];
      const auto* decl = ts.appropriate(nodes[v].type, a.feature);
      if (!decl) malformed("inappropriate feature");
      const auto& t = nodes[a.target];
      if (decl->atomic ? !(t.atom && t.value.sort() == decl->target) : (t.atom || t.type != decl->target))
        malformed("ill-typed arc");
      if (state[a.target] == 1) malformed("cyclic structure");
      if (state[a.target] == 0) {
        state[a.target] = 1;
        stack.emplace_back(a.target, 0);
      }
    }
    auto& ws = scratch_workspace();
    ws.reset();
    std::vector<std::uint32_t> ids(n);
    for (std::uint32_t i = 0; i < n; ++i)
      ids[i] = nodes[i].atom ? ws.add_atom(nodes[i].value) : ws.add_complex(nodes[i].type);
    for (std::uint32_t i = 0; i < n; ++i)
      for (const auto& a : nodes[i].arcs) ws.add_arc(ids[i], a.feature, ids[a.target]);
    const auto preds = count(8);
    for (std::uint32_t k = 0; k < preds; ++k) {
      Predicate p;
      const auto name = str();
      auto id = find_predicate(name);
      if (!id) malformed("unknown predicate '" + name + "'");
      p.id = *id;
      p.args.resize(count(1));
      if (p.args.size() != predicate(p.id).arity) malformed("predicate arity");
      for (auto& a : p.args) {
        if (u8()) {
          const auto node = u32();
          if (node >= n || !nodes[node].atom || !nodes[node].value.is_string()) malformed("predicate argument");
          a.node = ids[node];
        } else {
          a.constant = str();
        }
      }
      ws.add_predicate(std::move(p));
    }
    auto out = ws.finish(ids[0]);
    if (!out) malformed("inconsistent structure");
    return *out;
  }

  FeatureStructureSet set(const TypeSystem& ts) {
    FeatureStructureSet s;
    const auto n = count(4);
    for (std::uint32_t i = 0; i < n; ++i)
      if (!s.insert(fs(ts))) malformed("duplicate set element");
    return s;
  }

 private:
  std::string_view in_;
  std::size_t pos_ = 0;
};

void write_types(Writer& w, const TypeSystem& ts) {
  w.u32(static_cast<std::uint32_t>(ts.sort_count() - 1));
  for (SortId s = 1; s < ts.sort_count(); ++s) {
    w.str(ts.sort(s).name);
    w.u32(static_cast<std::uint32_t>(ts.sort(s).values.size()));
    for (const auto& v : ts.sort(s).values) w.str(v);
  }
  w.u32(static_cast<std::uint32_t>(ts.type_count()));
  for (const auto& t : ts.types()) {
    w.str(t.name);
    w.u32(static_cast<std::uint32_t>(t.features.size()));
    for (const auto& f : t.features) {
      w.str(ts.feature_name(f.feature));
      w.str(f.atomic ? ts.sort(f.target).name : ts.type(f.target).name);
    }
  }
}

TypeSystem read_types(Reader& r) {
  std::vector<SortDef> sorts(r.count(8));
  for (auto& s : sorts) {
    s.name = r.str();
    s.values.resize(r.count(4));
    for (auto& v : s.values) v = r.str();
  }
  std::vector<TypeDecl> types(r.count(8));
  for (auto& t : types) {
    t.name = r.str();
    t.features.resize(r.count(8));
    for (auto& [f, target] : t.features) {
      f = r.str();
      target = r.str();
    }
  }
  try {
    return TypeSystem(std::move(sorts), types);
  } catch (const TypeError& e) {
    Reader::malformed(std::string("type table: ") + e.what());
  }
}

void write_lexicon(Writer& w, const Lexicon& lex) {
  w.u32(static_cast<std::uint32_t>(lex.classes.size()));
  for (const auto& c : lex.classes) {
    w.str(c.name);
    w.u8(c.lexical ? 1 : 0);
    w.u32(c.id);
    w.u32(c.type);
    w.u32(c.depth);
    w.u32(static_cast<std::uint32_t>(c.supers.size()));
    for (const auto& s : c.supers) {
      w.u32(s.cls);
      w.path(s.at);
    }
    w.fs(c.main);
    w.fs(c.defaults);
    w.set(c.variants);
  }
  w.u32(static_cast<std::uint32_t>(lex.generators.size()));
  for (const auto& g : lex.generators) {
    w.str(g.name);
    w.u32(g.type);
    w.u8(g.delayed ? 1 : 0);
    w.u32(static_cast<std::uint32_t>(g.supers.size()));
    for (auto s : g.supers) w.u32(s);
    w.u32(static_cast<std::uint32_t>(g.mapping.size()));
    for (const auto& [from, to] : g.mapping) {
      w.path(from);
      w.path(to);
    }
    w.fs(g.output);
  }
}

Lexicon read_lexicon(Reader& r, std::shared_ptr<const TypeSystem> ts) {
  Lexicon lex;
  lex.types = ts;
  const auto n = r.count(16);
  for (std::uint32_t i = 0; i < n; ++i) {
    LoweredClass c;
    c.name = r.str();
    c.lexical = r.u8() != 0;
    c.id = r.u32();
    c.type = r.u32();
    if (c.type >= ts->type_count()) Reader::malformed("class type out of range");
    c.depth = r.u32();
    c.supers.resize(r.count(8));
    for (auto& s : c.supers) {
      s.cls = r.u32();
      if (s.cls >= n) throw ArtifactError(ArtifactError::Kind::dangling, "dangling superclass reference");
      s.at = r.path(*ts);
    }
    c.main = r.fs(*ts);
    c.defaults = r.fs(*ts);
    c.variants = r.set(*ts);
    if (c.main.type() != c.type || c.defaults.type() != c.type) Reader::malformed("class section type");
    lex.classes.push_back(std::move(c));
  }
  const auto g = r.count(16);
  for (std::uint32_t i = 0; i < g; ++i) {
    LoweredGenerator gen;
    gen.name = r.str();
    gen.type = r.u32();
    if (gen.type >= ts->type_count()) Reader::malformed("generator type out of range");
    gen.delayed = r.u8() != 0;
    gen.supers.resize(r.count(4));
    for (auto& s : gen.supers) {
      s = r.u32();
      if (s >= n) throw ArtifactError(ArtifactError::Kind::dangling, "dangling generator superclass");
    }
    gen.mapping.resize(r.count(8));
    for (auto& [from, to] : gen.mapping) {
      from = r.path(*ts);
      to = r.path(*ts);
    }
    gen.output = r.fs(*ts);
    lex.generators.push_back(std::move(gen));
  }
  lex.reindex();
  return lex;
}

void section(Writer& w, std::uint32_t t, std::string payload) {
  w.u32(t);
  w.u64(payload.size());
  w.raw(payload);
}

}  // namespace

std::string serialize_pe(const PeLexicon& pe, const FormIndex& index) {
  const auto& ts = pe.types();
  Writer out;
  out.raw(std::string_view(kMagic, sizeof kMagic));
  out.u32(kArtifactVersion);
  out.u32(5);
  {
    Writer w;
    write_types(w, ts);
    section(out, kTypes, w.take());
  }
  {
    Writer w;
    write_lexicon(w, pe.source->lexicon());
    section(out, kLexicon, w.take());
  }
  {
    Writer w;
    w.u32(static_cast<std::uint32_t>(pe.results.size()));
    for (const auto& r : pe.results) {
      w.u32(r.id);
      w.u32(r.key.type);
      w.u32(static_cast<std::uint32_t>(r.key.tail.size()));
      for (const auto& e : r.key.tail) {
        w.u32(e.cls);
        w.path(e.at);
      }
      w.set(r.p_f);
      w.u32(static_cast<std::uint32_t>(r.p_d.size()));
      for (const auto& d : r.p_d) w.fs(d);
    }
    section(out, kResults, w.take());
  }
  {
    Writer w;
    w.u32(static_cast<std::uint32_t>(pe.classes.size()));
    for (const auto& c : pe.classes) {
      w.u32(c.cls);
      w.u32(c.pe_result);
      w.fs(c.main);
      w.set(c.variants);
      w.fs(c.defaults);
    }
    section(out, kClasses, w.take());
  }
  {
    Writer w;
    w.path(index.key());
    const auto forms = index.forms();
    w.u32(static_cast<std::uint32_t>(forms.size()));
    for (const auto& f : forms) {
      w.str(f);
      const auto entries = index.lookup(f);
      w.u32(static_cast<std::uint32_t>(entries.size()));
      for (const auto& e : entries) {
        w.u32(e.cls);
        w.u32(static_cast<std::uint32_t>(e.s.size()));
        for (auto i : e.s) w.u32(i);
      }
    }
    section(out, kIndex, w.take());
  }
  auto bytes = out.take();
  Writer tail;
  tail.u64(fnv1a(bytes));
  bytes += tail.take();
  return bytes;
}

Artifact load_pe(std::string_view bytes) {
  const auto head_len = std::min(bytes.size(), sizeof kMagic);
  if (std::memcmp(bytes.data(), kMagic, head_len) != 0)
    throw ArtifactError(ArtifactError::Kind::magic, "not a pe-lexicon artifact");
  if (head_len < sizeof kMagic) throw ArtifactError(ArtifactError::Kind::truncated, "artifact is truncated");
  Reader head(bytes.substr(sizeof kMagic));
  const auto version = head.u32();
  if (version != kArtifactVersion)
    throw ArtifactError(ArtifactError::Kind::version, "unsupported artifact version " + std::to_string(version) +
                                                          " (expected " + std::to_string(kArtifactVersion) + ")");
  Reader r(bytes.substr(sizeof kMagic + 4));
  const auto nsections = r.u32();
  std::map<std::uint32_t, std::string_view> sections;
  for (std::uint32_t i = 0; i < nsections; ++i) {
    const auto t = r.u32();
    const auto len = r.u64();
    if (len > bytes.size()) throw ArtifactError(ArtifactError::Kind::truncated, "artifact is truncated");
    sections[t] = r.bytes(static_cast<std::size_t>(len));
  }
  const auto body_len = bytes.size() - r.remaining();
  Reader sum(r.bytes(8));
  if (!r.done()) Reader::malformed("trailing bytes after the checksum");
  if (sum.u64() != fnv1a(bytes.substr(0, body_len)))
    throw ArtifactError(ArtifactError::Kind::checksum, "artifact checksum mismatch");
  for (auto t : {kTypes, kLexicon, kResults, kClasses, kIndex})
    if (!sections.count(t)) Reader::malformed("missing section");

  Reader tr(sections[kTypes]);
  auto ts = std::make_shared<const TypeSystem>(read_types(tr));
  Reader lr(sections[kLexicon]);
  auto lex = read_lexicon(lr, ts);

  Artifact art;
  auto& pe = art.pe;
  try {
    pe.source = std::make_shared<ResolvedLexicon>(std::move(lex));
  } catch (const std::exception& e) {
    Reader::malformed(std::string("hierarchy: ") + e.what());
  }
  const auto& src = *pe.source;

  Reader rr(sections[kResults]);
  pe.results.resize(rr.count(16));
  for (std::uint32_t i = 0; i < pe.results.size(); ++i) {
    auto& res = pe.results[i];
    res.id = rr.u32();
    if (res.id != i) Reader::malformed("pe-results out of order");
    res.key.type = rr.u32();
    res.key.tail.resize(rr.count(8));
    for (auto& e : res.key.tail) {
      e.cls = rr.u32();
      if (e.cls >= src.size()) throw ArtifactError(ArtifactError::Kind::dangling, "dangling class in pe-result key");
      e.at = rr.path(*ts);
    }
    res.p_f = rr.set(*ts);
    res.p_d.resize(rr.count(8));
    for (auto& d : res.p_d) {
      d = rr.fs(*ts);
      res.p_d_atoms.push_back(decompose_default(*ts, d));
    }
  }

  Reader cr(sections[kClasses]);
  pe.classes.resize(cr.count(16));
  for (auto& c : pe.classes) {
    c.cls = cr.u32();
    if (c.cls >= src.size() || !src.cls(c.cls).lexical)
      throw ArtifactError(ArtifactError::Kind::dangling, "class residue refers to no lexical class");
    c.pe_result = cr.u32();
    if (c.pe_result >= pe.results.size())
      throw ArtifactError(ArtifactError::Kind::dangling,
                          "class '" + src.cls(c.cls).name + "' refers to missing pe-result " + std::to_string(c.pe_result));
    const auto& lc = src.cls(c.cls);
    c.id = lc.id;
    c.name = lc.name;
    c.type = lc.type;
    c.depth = lc.depth;
    c.main = cr.fs(*ts);
    c.variants = cr.set(*ts);
    c.defaults = cr.fs(*ts);
    c.default_atoms = decompose_default(*ts, c.defaults);
  }
  pe.reindex();

  Reader ir(sections[kIndex]);
  FormIndex index(ir.path(*ts));
  const auto nforms = ir.count(8);
  for (std::uint32_t i = 0; i < nforms; ++i) {
    const auto form = ir.str();
    const auto nentries = ir.count(8);
    for (std::uint32_t k = 0; k < nentries; ++k) {
      const auto cls = ir.u32();
      const auto* c = pe.find(cls);
      if (!c) throw ArtifactError(ArtifactError::Kind::dangling, "index entry '" + form + "' refers to unknown class");
      const auto ns = ir.count(4);
      for (std::uint32_t j = 0; j < ns; ++j) {
        const auto s = ir.u32();
        if (s == 0 || s > pe.result_of(*c).p_f.size())
          throw ArtifactError(ArtifactError::Kind::dangling, "index entry '" + form + "' refers to a missing element");
        index.add(form, cls, s);
      }
    }
  }
  art.index = std::move(index);
  compute_metadata(pe);
  return art;
}

void write_artifact(const std::filesystem::path& file, const PeLexicon& pe, const FormIndex& index) {
  const auto bytes = serialize_pe(pe, index);
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  if (!out) throw ArtifactError(ArtifactError::Kind::io, "cannot write '" + file.string() + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ArtifactError(ArtifactError::Kind::io, "cannot write '" + file.string() + "'");
}

Artifact read_artifact(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw ArtifactError(ArtifactError::Kind::io, "cannot read '" + file.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_pe(ss.str());
}

}  // namespace lexpe
