#include "lexpe/predicates.hpp"

#include <deque>
#include <stdexcept>

namespace lexpe {

PredicateOutcome solve_concat(std::span<const std::optional<std::string_view>> args) {
  const auto& a = args[0];
  const auto& b = args[1];
  const auto& c = args[2];
  PredicateOutcome out;
  if (a && b) {
    std::string joined;
    joined.reserve(a->size() + b->size());
    joined.append(*a).append(*b);
    if (c) {
      out.status = *c == joined ? PredicateStatus::solved : PredicateStatus::failure;
    } else {
      out.status = PredicateStatus::solved;
      out.bindings.emplace_back(2, std::move(joined));
    }
    return out;
  }
  if (c && a) {
    if (c->substr(0, a->size()) != *a || c->size() < a->size()) {
      out.status = PredicateStatus::failure;
    } else {
      out.status = PredicateStatus::solved;
      out.bindings.emplace_back(1, std::string(c->substr(a->size())));
    }
    return out;
  }
  if (c && b) {
    if (c->size() < b->size() || c->substr(c->size() - b->size()) != *b) {
      out.status = PredicateStatus::failure;
    } else {
      out.status = PredicateStatus::solved;
      out.bindings.emplace_back(0, std::string(c->substr(0, c->size() - b->size())));
    }
    return out;
  }
  out.status = PredicateStatus::delayed;
  return out;
}

namespace {

std::deque<PredicateSpec>& table() {
  static std::deque<PredicateSpec> specs{PredicateSpec{"concat", 3, &solve_concat}};
  return specs;
}

}  // namespace

std::optional<PredicateId> find_predicate(std::string_view name) {
  const auto& specs = table();
  for (std::size_t i = 0; i < specs.size(); ++i)
    if (specs[i].name == name) return static_cast<PredicateId>(i);
  return std::nullopt;
}

const PredicateSpec& predicate(PredicateId id) { return table().at(id); }

PredicateId register_predicate(PredicateSpec spec) {
  if (find_predicate(spec.name)) throw std::invalid_argument("predicate already registered: " + spec.name);
  if (!spec.solve || spec.arity == 0) throw std::invalid_argument("predicate needs a solver and arguments");
  table().push_back(std::move(spec));
  return static_cast<PredicateId>(table().size() - 1);
}

}  // namespace lexpe
