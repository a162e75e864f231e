#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "admarf/ast.hpp"
#include "admarf/expected.hpp"
#include "admarf/value.hpp"

namespace admarf {

/// Qualified entity name. An empty tier means the AS tier; otherwise the
/// tier is an AE name. `str()` gives the trace/display form.
struct Qual {
  std::string tier;
  std::string name;

  std::string str() const { return (tier.empty() ? "AS" : tier) + "." + name; }
  bool operator==(const Qual&) const = default;
  bool operator<(const Qual& o) const {
    return tier != o.tier ? tier < o.tier : name < o.name;
  }
};

enum class EntityKind {
  Event,
  Action,
  Metric,
  Slo,
  Message,
  MessageField,
  Channel,
  InterfaceFn,
  ManagedElement,
  Ae,
  Group,
};

const char* entity_kind_name(EntityKind kind);

/// Result of resolving a dotted path against a model.
struct ResolvedRef {
  EntityKind kind = EntityKind::Event;
  std::string tier;             // "" = AS
  std::string name;             // entity name within its namespace
  std::string member;           // field name / interface-function name
  const void* node = nullptr;   // defining AST node

  Qual qual() const { return {tier, name}; }
};

struct ResolveError {
  std::string message;
  std::string valid_prefix;     // longest prefix that did resolve
};

class SpecModel;

/// Context a path is resolved in: the enclosing AE (if any), the enclosing
/// interaction protocol (inside communication functions), and any FOREACH
/// binders in scope.
struct ResolveCtx {
  const ast::AeDef* current_ae = nullptr;
  const ast::ProtocolDef* current_protocol = nullptr;
  std::map<std::string, const ast::AeDef*> binders;

  ResolveCtx with_binder(const std::string& name, const ast::AeDef* ae) const {
    ResolveCtx copy = *this;
    copy.binders[name] = ae;
    return copy;
  }
};

/// A validated specification: owns the syntax tree and provides name lookup
/// and reference resolution over it. Immutable after construction; safe to
/// share between threads.
class SpecModel {
 public:
  /// Wraps a tree without validating it. `check()` in checker.hpp is the
  /// supported way to obtain a model with all references guaranteed sound.
  explicit SpecModel(std::unique_ptr<ast::SpecTree> tree);

  const ast::SpecTree& tree() const { return *tree_; }

  const ast::AeDef* find_ae(const std::string& name) const;
  /// AEs in declaration order.
  std::vector<const ast::AeDef*> aes() const;
  /// Members of an architecture group, in member order; null group name is
  /// not allowed.
  std::vector<const ast::AeDef*> group_members(const std::string& group) const;
  const ast::ArchGroup* find_group(const std::string& name) const;

  const ast::EventDef* find_event(const std::string& tier, const std::string& name) const;
  const ast::ActionDef* find_action(const std::string& tier, const std::string& name) const;
  const ast::MetricDef* find_metric(const std::string& tier, const std::string& name) const;
  const ast::SloDef* find_slo(const std::string& tier, const std::string& name) const;

  /// All declared SLOs / metrics in deterministic model order (AS tier
  /// first, then AEs in declaration order).
  std::vector<std::pair<Qual, const ast::SloDef*>> all_slos() const;
  std::vector<std::pair<Qual, const ast::MetricDef*>> all_metrics() const;

  /// The protocol owning a message name: the ASIP or an AE's AEIP. Returns
  /// the owning tier through `tier_out` ("" for ASIP).
  const ast::ProtocolDef* protocol_of_message(const std::string& message,
                                              std::string* tier_out) const;

  Expected<ResolvedRef, ResolveError> resolve(const ast::PathRef& path,
                                              const ResolveCtx& ctx) const;

 private:
  std::unique_ptr<ast::SpecTree> tree_;
};

/// True iff `v` is a member of the metric's threshold class. Throws
/// EvalError when `v` is outside the metric's value-type domain.
bool metric_validity(const ast::MetricDef& m, const Value& v);

/// Pure SLO evaluation. `metric_valid` supplies the validity of every
/// referenced metric by qualified name. Nested SLO references evaluate
/// recursively; a reference cycle or an unresolved symbol throws EvalError.
bool evaluate_slo(const SpecModel& model, const Qual& slo,
                  const std::function<bool(const Qual&)>& metric_valid);

}  // namespace admarf
