#include "lexpe/feature_structure.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "workspace.hpp"

namespace lexpe {

namespace {

inline void mix(std::size_t& h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
}

std::size_t hash_graph(const detail::Graph& g) {
  std::size_t h = g.nodes.size();
  std::hash<std::string> hs;
  for (const auto& n : g.nodes) {
    mix(h, n.type);
    if (n.is_atom()) {
      mix(h, n.atom.sort());
      mix(h, n.atom.mask());
      if (n.atom.text()) mix(h, hs(*n.atom.text()));
    }
    mix(h, n.arc_end - n.arc_begin);
  }
  for (const auto& a : g.arcs) {
    mix(h, a.feature);
    mix(h, a.target);
  }
  for (const auto& p : g.residue) {
    mix(h, p.id);
    for (const auto& arg : p.args) {
      mix(h, arg.node);
      if (!arg.is_node()) mix(h, hs(arg.constant));
    }
  }
  return h;
}

}  // namespace

// ---------------------------------------------------------------------------
// Workspace

Workspace& scratch_workspace() {
  thread_local Workspace ws;
  return ws;
}

void Workspace::reset() {
  size_ = 0;
  preds_.clear();
}

std::uint32_t Workspace::new_node() {
  if (size_ == nodes_.size()) nodes_.emplace_back();
  auto& w = nodes_[size_];
  w.type = kNoType;
  w.atom = AtomConstraint();
  w.arcs.clear();
  w.parent = size_;
  return size_++;
}

std::uint32_t Workspace::add_complex(TypeId type) {
  auto id = new_node();
  nodes_[id].type = type;
  return id;
}

std::uint32_t Workspace::add_atom(const AtomConstraint& atom) {
  auto id = new_node();
  nodes_[id].atom = atom;
  return id;
}

void Workspace::add_arc(std::uint32_t parent, FeatureId feature, std::uint32_t child) {
  auto& arcs = nodes_[parent].arcs;
  auto it = std::lower_bound(arcs.begin(), arcs.end(), feature,
                             [](const Arc& a, FeatureId f) { return a.feature < f; });
  arcs.insert(it, Arc{feature, child});
}

std::uint32_t Workspace::import(const FeatureStructure& fs) {
  const auto offset = size_;
  const auto nodes = fs.nodes();
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    auto id = new_node();
    auto& w = nodes_[id];
    w.type = nodes[i].type;
    w.atom = nodes[i].atom;
    for (const auto& a : fs.arcs(i)) w.arcs.push_back(Arc{a.feature, a.target + offset});
  }
  for (const auto& p : fs.residue()) {
    Predicate q = p;
    for (auto& arg : q.args)
      if (arg.is_node()) arg.node += offset;
    preds_.push_back(std::move(q));
  }
  return offset;
}

std::uint32_t Workspace::import_from(const FeatureStructure& fs, std::uint32_t start) {
  const auto nodes = fs.nodes();
  std::vector<std::uint32_t> map(nodes.size(), kNoNode);
  std::vector<std::uint32_t> todo{start};
  map[start] = new_node();
  while (!todo.empty()) {
    auto n = todo.back();
    todo.pop_back();
    for (const auto& a : fs.arcs(n)) {
      if (map[a.target] == kNoNode) {
        map[a.target] = new_node();
        todo.push_back(a.target);
      }
    }
  }
  for (std::uint32_t i = 0; i < nodes.size(); ++i) {
    if (map[i] == kNoNode) continue;
    auto& w = nodes_[map[i]];
    w.type = nodes[i].type;
    w.atom = nodes[i].atom;
    for (const auto& a : fs.arcs(i)) w.arcs.push_back(Arc{a.feature, map[a.target]});
  }
  for (const auto& p : fs.residue()) {
    bool inside = std::all_of(p.args.begin(), p.args.end(),
                              [&](const PredArg& a) { return !a.is_node() || map[a.node] != kNoNode; });
    if (!inside) continue;
    Predicate q = p;
    for (auto& arg : q.args)
      if (arg.is_node()) arg.node = map[arg.node];
    preds_.push_back(std::move(q));
  }
  return map[start];
}

std::uint32_t Workspace::find(std::uint32_t n) {
  auto root = n;
  while (nodes_[root].parent != root) root = nodes_[root].parent;
  while (nodes_[n].parent != root) {
    auto next = nodes_[n].parent;
    nodes_[n].parent = root;
    n = next;
  }
  return root;
}

std::uint32_t Workspace::child(std::uint32_t n, FeatureId feature) {
  const auto& arcs = nodes_[find(n)].arcs;
  auto it = std::lower_bound(arcs.begin(), arcs.end(), feature,
                             [](const Arc& a, FeatureId f) { return a.feature < f; });
  if (it == arcs.end() || it->feature != feature) return kNoNode;
  return it->target;
}

std::uint32_t Workspace::ensure_path(const TypeSystem& ts, std::uint32_t n, const Path& path) {
  auto cur = find(n);
  for (auto f : path) {
    const auto type = nodes_[cur].type;
    if (type == kNoType) throw TypeError("path '" + ts.path_string(path) + "' continues past an atomic value");
    const FeatureDecl* decl = ts.appropriate(type, f);
    if (!decl)
      throw TypeError("feature '" + ts.feature_name(f) + "' is not appropriate for type '" +
                      ts.type(type).name + "'");
    auto c = child(cur, f);
    if (c == kNoNode) {
      c = decl->atomic ? add_atom(AtomConstraint::unconstrained(ts, decl->target))
                       : add_complex(decl->target);
      add_arc(cur, f, c);
    }
    cur = find(c);
  }
  return cur;
}

bool Workspace::unify(std::uint32_t a, std::uint32_t b) {
  stack_.clear();
  stack_.emplace_back(a, b);
  std::vector<Arc> merged;
  while (!stack_.empty()) {
    auto [p, q] = stack_.back();
    stack_.pop_back();
    auto x = find(p);
    auto y = find(q);
    if (x == y) continue;
    if (nodes_[x].type != nodes_[y].type) return false;
    if (nodes_[x].type == kNoType) {
      auto r = AtomConstraint::intersect(nodes_[x].atom, nodes_[y].atom);
      if (!r) return false;
      nodes_[x].atom = std::move(*r);
      nodes_[y].parent = x;
      continue;
    }
    nodes_[y].parent = x;
    auto& xa = nodes_[x].arcs;
    auto& ya = nodes_[y].arcs;
    if (ya.empty()) continue;
    if (xa.empty()) {
      xa.swap(ya);
      continue;
    }
    merged.clear();
    std::size_t i = 0, j = 0;
    while (i < xa.size() && j < ya.size()) {
      if (xa[i].feature < ya[j].feature) {
        merged.push_back(xa[i++]);
      } else if (ya[j].feature < xa[i].feature) {
        merged.push_back(ya[j++]);
      } else {
        stack_.emplace_back(xa[i].target, ya[j].target);
        merged.push_back(xa[i++]);
        ++j;
      }
    }
    merged.insert(merged.end(), xa.begin() + i, xa.end());
    merged.insert(merged.end(), ya.begin() + j, ya.end());
    xa.swap(merged);
    ya.clear();
  }
  return true;
}

bool Workspace::constrain(std::uint32_t n, const AtomConstraint& atom) {
  auto x = find(n);
  if (nodes_[x].type != kNoType) return false;
  auto r = AtomConstraint::intersect(nodes_[x].atom, atom);
  if (!r) return false;
  nodes_[x].atom = std::move(*r);
  return true;
}

bool Workspace::solve_predicates() {
  if (preds_.empty()) return true;
  std::vector<char> done(preds_.size(), 0);
  std::vector<std::optional<std::string_view>> vals;
  bool progress = true;
  while (progress) {
    progress = false;
    for (std::size_t i = 0; i < preds_.size(); ++i) {
      if (done[i]) continue;
      const auto& p = preds_[i];
      vals.clear();
      for (const auto& arg : p.args) {
        if (!arg.is_node()) {
          vals.emplace_back(arg.constant);
          continue;
        }
        const auto& w = nodes_[find(arg.node)];
        if (w.type == kNoType && w.atom.text())
          vals.emplace_back(*w.atom.text());
        else
          vals.emplace_back(std::nullopt);
      }
      auto outcome = predicate(p.id).solve(vals);
      if (outcome.status == PredicateStatus::failure) return false;
      if (outcome.status == PredicateStatus::delayed) continue;
      for (auto& [slot, value] : outcome.bindings) {
        const auto& arg = p.args.at(slot);
        if (arg.is_node()) {
          if (!constrain(arg.node, AtomConstraint::literal(std::move(value)))) return false;
        } else if (arg.constant != value) {
          return false;
        }
      }
      done[i] = 1;
      progress = true;
    }
  }
  std::size_t k = 0;
  for (std::size_t i = 0; i < preds_.size(); ++i) {
    if (done[i]) continue;
    if (k != i) preds_[k] = std::move(preds_[i]);
    ++k;
  }
  preds_.resize(k);
  return true;
}

bool Workspace::droppable(std::uint32_t n) {
  if (drop_[n] >= 0) return drop_[n] == 1;
  bool d;
  const auto& w = nodes_[n];
  if (refs_[n] != 1 || pinned_[n]) {
    d = false;
  } else if (w.type == kNoType) {
    d = w.atom.unconstrained();
  } else {
    d = true;
    for (const auto& a : w.arcs) {
      if (!droppable(find(a.target))) {
        d = false;
        break;
      }
    }
  }
  drop_[n] = d ? 1 : 0;
  return d;
}

std::optional<FeatureStructure> Workspace::finish(std::uint32_t root) {
  if (!solve_predicates()) return std::nullopt;
  const auto r = find(root);

  refs_.assign(size_, 0);
  drop_.assign(size_, -1);
  pinned_.assign(size_, 0);
  out_index_.assign(size_, kNoNode);

  // Incoming arc counts over the reachable part; the root counts as shared so
  // it is never dropped.
  std::vector<std::uint32_t> todo{r};
  refs_[r] = 2;
  while (!todo.empty()) {
    auto n = todo.back();
    todo.pop_back();
    for (auto& a : nodes_[n].arcs) {
      a.target = find(a.target);
      if (refs_[a.target]++ == 0) todo.push_back(a.target);
    }
  }
  for (auto& p : preds_) {
    for (auto& arg : p.args) {
      if (!arg.is_node()) continue;
      arg.node = find(arg.node);
      if (refs_[arg.node] == 0) throw std::logic_error("predicate argument unreachable from root");
      pinned_[arg.node] = 1;
    }
  }

  order_.clear();
  // Preorder numbering with an explicit stack that preserves arc order.
  std::vector<std::pair<std::uint32_t, std::uint32_t>> walk;
  out_index_[r] = 0;
  order_.push_back(r);
  walk.emplace_back(r, 0);
  while (!walk.empty()) {
    auto& [n, k] = walk.back();
    const auto& arcs = nodes_[n].arcs;
    if (k == arcs.size()) {
      walk.pop_back();
      continue;
    }
    auto c = arcs[k++].target;
    if (out_index_[c] != kNoNode || droppable(c)) continue;
    out_index_[c] = static_cast<std::uint32_t>(order_.size());
    order_.push_back(c);
    walk.emplace_back(c, 0);
  }

  auto g = std::make_shared<detail::Graph>();
  g->nodes.reserve(order_.size());
  for (auto n : order_) {
    const auto& w = nodes_[n];
    Node out;
    out.type = w.type;
    if (w.type == kNoType) out.atom = w.atom;
    out.arc_begin = static_cast<std::uint32_t>(g->arcs.size());
    for (const auto& a : w.arcs) {
      if (out_index_[a.target] == kNoNode) continue;  // dropped
      g->arcs.push_back(Arc{a.feature, out_index_[a.target]});
    }
    out.arc_end = static_cast<std::uint32_t>(g->arcs.size());
    g->nodes.push_back(std::move(out));
  }
  g->residue.reserve(preds_.size());
  for (auto& p : preds_) {
    for (auto& arg : p.args)
      if (arg.is_node()) arg.node = out_index_[arg.node];
    g->residue.push_back(std::move(p));
  }
  preds_.clear();
  std::sort(g->residue.begin(), g->residue.end());
  g->residue.erase(std::unique(g->residue.begin(), g->residue.end()), g->residue.end());
  g->hash = hash_graph(*g);
  return FeatureStructure(std::shared_ptr<const detail::Graph>(std::move(g)));
}

// ---------------------------------------------------------------------------
// FeatureStructure

FeatureStructure FeatureStructure::empty(TypeId type) {
  auto g = std::make_shared<detail::Graph>();
  Node root;
  root.type = type;
  g->nodes.push_back(root);
  g->hash = hash_graph(*g);
  return FeatureStructure(std::shared_ptr<const detail::Graph>(std::move(g)));
}

std::uint32_t FeatureStructure::child(std::uint32_t node, FeatureId feature) const {
  auto as = arcs(node);
  auto it = std::lower_bound(as.begin(), as.end(), feature,
                             [](const Arc& a, FeatureId f) { return a.feature < f; });
  if (it == as.end() || it->feature != feature) return kNoNode;
  return it->target;
}

std::optional<std::uint32_t> FeatureStructure::find(const Path& path) const {
  std::uint32_t cur = 0;
  for (auto f : path) {
    cur = child(cur, f);
    if (cur == kNoNode) return std::nullopt;
  }
  return cur;
}

std::optional<std::string_view> FeatureStructure::literal_at(const Path& path) const {
  auto n = find(path);
  if (!n) return std::nullopt;
  const auto& node = g_->nodes[*n];
  if (!node.is_atom() || !node.atom.text()) return std::nullopt;
  return std::string_view(*node.atom.text());
}

void for_each_path(const FeatureStructure& fs,
                   const std::function<void(const Path&, std::uint32_t, bool, const Path&)>& visit) {
  std::vector<Path> first(fs.nodes().size());
  std::vector<char> seen(fs.nodes().size(), 0);
  Path path;
  seen[0] = 1;
  visit(path, 0, true, first[0]);
  std::function<void(std::uint32_t)> rec = [&](std::uint32_t n) {
    for (const auto& a : fs.arcs(n)) {
      path.push_back(a.feature);
      if (!seen[a.target]) {
        seen[a.target] = 1;
        first[a.target] = path;
        visit(path, a.target, true, first[a.target]);
        rec(a.target);
      } else {
        visit(path, a.target, false, first[a.target]);
      }
      path.pop_back();
    }
  };
  rec(0);
}

std::vector<Path> FeatureStructure::first_paths() const {
  std::vector<Path> out(nodes().size());
  for_each_path(*this, [&](const Path&, std::uint32_t n, bool first, const Path& fp) {
    if (first) out[n] = fp;
  });
  return out;
}

std::size_t FeatureStructure::atomic_size() const {
  std::size_t count = residue().size();
  for_each_path(*this, [&](const Path& p, std::uint32_t n, bool first, const Path&) {
    if (p.empty()) return;
    if (!first) {
      ++count;
      return;
    }
    const auto& node = g_->nodes[n];
    if (node.is_atom() && !node.atom.unconstrained()) ++count;
  });
  return count;
}

bool equivalent(const FeatureStructure& a, const FeatureStructure& b) {
  if (a.g_ == b.g_) return true;
  if (!a.g_ || !b.g_) return false;
  if (a.g_->hash != b.g_->hash) return false;
  return a.g_->nodes == b.g_->nodes && a.g_->arcs == b.g_->arcs && a.g_->residue == b.g_->residue;
}

std::optional<FeatureStructure> unify(const FeatureStructure& f, const FeatureStructure& g) {
  if (f.type() != g.type()) return std::nullopt;
  if (g.is_empty()) return f;
  if (f.is_empty()) return g;
  auto& ws = scratch_workspace();
  ws.reset();
  auto a = ws.import(f);
  auto b = ws.import(g);
  if (!ws.unify(a, b)) return std::nullopt;
  return ws.finish(a);
}

// ---------------------------------------------------------------------------
// Rendering

std::string render_avm(const TypeSystem& ts, const FeatureStructure& fs) {
  const auto nodes = fs.nodes();
  std::vector<std::uint32_t> indegree(nodes.size(), 0);
  for (std::uint32_t n = 0; n < nodes.size(); ++n)
    for (const auto& a : fs.arcs(n)) ++indegree[a.target];
  std::vector<int> tag(nodes.size(), 0);
  std::vector<char> printed(nodes.size(), 0);
  int next_tag = 0;

  std::string out = "[" + ts.type(fs.type()).name + "]\n";
  std::function<void(std::uint32_t, int)> emit = [&](std::uint32_t n, int indent) {
    for (const auto& a : fs.arcs(n)) {
      const auto c = a.target;
      std::string line(static_cast<std::size_t>(indent), ' ');
      line += ts.feature_name(a.feature) + " = ";
      if (indegree[c] > 1) {
        if (!tag[c]) tag[c] = ++next_tag;
        line += "#" + std::to_string(tag[c]);
        if (printed[c]) {
          out += line + "\n";
          continue;
        }
        line += ' ';
      }
      printed[c] = 1;
      if (nodes[c].is_atom()) {
        out += line + nodes[c].atom.render(ts) + "\n";
      } else {
        out += line + "[" + ts.type(nodes[c].type).name + "]\n";
        emit(c, indent + 2);
      }
    }
  };
  emit(0, 2);
  if (!fs.residue().empty()) {
    const auto paths = fs.first_paths();
    for (const auto& p : fs.residue()) {
      out += "  " + predicate(p.id).name + "(";
      for (std::size_t i = 0; i < p.args.size(); ++i) {
        if (i) out += ", ";
        const auto& arg = p.args[i];
        out += arg.is_node() ? ts.path_string(paths[arg.node]) : "\"" + arg.constant + "\"";
      }
      out += ")  % delayed\n";
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// FsBuilder and locate

FsBuilder::FsBuilder(const TypeSystem& ts, TypeId root)
    : ts_(ts), root_type_(root), ws_(std::make_unique<Workspace>()) {
  root_ = ws_->add_complex(root);
}

FsBuilder::~FsBuilder() = default;

std::uint32_t FsBuilder::node_at(const Path& path) { return ws_->ensure_path(ts_, root_, path); }

FsBuilder& FsBuilder::constrain(const Path& path, const AtomConstraint& value) {
  auto target = ts_.resolve(root_type_, path);
  if (!target.atomic || target.id != value.sort())
    throw TypeError("value of sort '" + ts_.sort(value.sort()).name + "' does not fit path '" +
                    ts_.path_string(path) + "'");
  if (!ok_) return *this;
  ok_ = ws_->constrain(node_at(path), value);
  return *this;
}

FsBuilder& FsBuilder::share(const Path& a, const Path& b) {
  auto ta = ts_.resolve(root_type_, a);
  auto tb = ts_.resolve(root_type_, b);
  if (ta.atomic != tb.atomic || ta.id != tb.id)
    throw TypeError("paths '" + ts_.path_string(a) + "' and '" + ts_.path_string(b) +
                    "' have different types and cannot be shared");
  if (!ok_) return *this;
  auto na = node_at(a);
  auto nb = node_at(b);
  ok_ = ws_->unify(na, nb);
  return *this;
}

FsBuilder& FsBuilder::add_predicate(PredicateId id, const std::vector<Arg>& args) {
  const auto& spec = predicate(id);
  if (args.size() != spec.arity)
    throw TypeError("predicate '" + spec.name + "' takes " + std::to_string(spec.arity) + " arguments");
  Predicate p;
  p.id = id;
  for (const auto& arg : args) {
    PredArg out;
    if (const auto* path = std::get_if<Path>(&arg)) {
      auto t = ts_.resolve(root_type_, *path);
      if (!t.atomic || t.id != kStringSort)
        throw TypeError("argument '" + ts_.path_string(*path) + "' of '" + spec.name +
                        "' is not of sort string");
      out.node = node_at(*path);
    } else {
      out.constant = std::get<std::string>(arg);
    }
    p.args.push_back(std::move(out));
  }
  ws_->add_predicate(std::move(p));
  return *this;
}

FsBuilder& FsBuilder::embed(const Path& path, const FeatureStructure& fs) {
  auto t = ts_.resolve(root_type_, path);
  if (t.atomic || t.id != fs.type())
    throw TypeError("cannot embed a structure of type '" + ts_.type(fs.type()).name + "' at '" +
                    ts_.path_string(path) + "'");
  if (!ok_) return *this;
  auto n = node_at(path);
  auto m = ws_->import(fs);
  ok_ = ws_->unify(n, m);
  return *this;
}

FsBuilder& FsBuilder::copy(const FeatureStructure& src, const Path& from, const Path& to) {
  auto node = src.find(from);
  if (!node) return *this;
  const auto& sn = src.nodes()[*node];
  auto t = ts_.resolve(root_type_, to);
  const bool fits = sn.is_atom() ? (t.atomic && t.id == sn.atom.sort()) : (!t.atomic && t.id == sn.type);
  if (!fits) throw TypeError("cannot copy into '" + ts_.path_string(to) + "': type mismatch");
  if (!ok_) return *this;
  auto n = node_at(to);
  auto m = ws_->import_from(src, *node);
  ok_ = ws_->unify(n, m);
  return *this;
}

std::optional<FeatureStructure> FsBuilder::finish() {
  if (!ok_) return std::nullopt;
  return ws_->finish(root_);
}

FeatureStructure locate(const TypeSystem& ts, const FeatureStructure& fs, TypeId host,
                        const Path& path) {
  if (path.empty()) {
    if (host != fs.type())
      throw TypeError("cannot inherit type '" + ts.type(fs.type()).name + "' into type '" +
                      ts.type(host).name + "' without a locating path");
    return fs;
  }
  FsBuilder b(ts, host);
  b.embed(path, fs);
  auto out = b.finish();
  if (!out) throw std::logic_error("embedding into an empty host cannot fail");
  return *out;
}

}  // namespace lexpe
