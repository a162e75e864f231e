#include "admarf/model.hpp"

#include <algorithm>
#include <set>

namespace admarf {

namespace {

using namespace ast;

const EventDef* event_in(const std::vector<EventDef>& events, const std::string& name) {
  for (const auto& e : events)
    if (e.name == name) return &e;
  return nullptr;
}
const ActionDef* action_in(const std::vector<ActionDef>& actions, const std::string& name) {
  for (const auto& a : actions)
    if (a.name == name) return &a;
  return nullptr;
}
const MetricDef* metric_in(const std::vector<MetricDef>& metrics, const std::string& name) {
  for (const auto& m : metrics)
    if (m.name == name) return &m;
  return nullptr;
}
const SloDef* slo_in(const std::vector<SloDef>& slos, const std::string& name) {
  for (const auto& s : slos)
    if (s.name == name) return &s;
  return nullptr;
}

}  // namespace

const char* entity_kind_name(EntityKind kind) {
  switch (kind) {
    case EntityKind::Event: return "event";
    case EntityKind::Action: return "action";
    case EntityKind::Metric: return "metric";
    case EntityKind::Slo: return "SLO";
    case EntityKind::Message: return "message";
    case EntityKind::MessageField: return "message field";
    case EntityKind::Channel: return "channel";
    case EntityKind::InterfaceFn: return "interface function";
    case EntityKind::ManagedElement: return "managed element";
    case EntityKind::Ae: return "AE";
    case EntityKind::Group: return "group";
  }
  return "?";
}

std::string Value::display() const {
  if (is_null()) return "null";
  if (is_bool()) return as_bool() ? "true" : "false";
  if (is_int()) return std::to_string(as_int());
  if (is_string()) return as_string();
  return "cert(" + as_cert().subject + ")";
}

SpecModel::SpecModel(std::unique_ptr<ast::SpecTree> tree) : tree_(std::move(tree)) {}

const AeDef* SpecModel::find_ae(const std::string& name) const {
  for (const auto& ae : tree_->aes)
    if (ae.name == name) return &ae;
  return nullptr;
}

std::vector<const AeDef*> SpecModel::aes() const {
  std::vector<const AeDef*> out;
  out.reserve(tree_->aes.size());
  for (const auto& ae : tree_->aes) out.push_back(&ae);
  return out;
}

const ArchGroup* SpecModel::find_group(const std::string& name) const {
  for (const auto& g : tree_->as_tier.arch_groups)
    if (g.name == name) return &g;
  return nullptr;
}

std::vector<const AeDef*> SpecModel::group_members(const std::string& group) const {
  std::vector<const AeDef*> out;
  const ArchGroup* g = find_group(group);
  if (!g) return out;
  for (const auto& ref : g->members) {
    // Members are written `AES.<name>` or bare `<name>`.
    std::string name = ref.segments.back();
    if (const AeDef* ae = find_ae(name)) out.push_back(ae);
  }
  return out;
}

const EventDef* SpecModel::find_event(const std::string& tier, const std::string& name) const {
  if (tier.empty()) return event_in(tree_->as_tier.events, name);
  const AeDef* ae = find_ae(tier);
  return ae ? event_in(ae->events, name) : nullptr;
}
const ActionDef* SpecModel::find_action(const std::string& tier, const std::string& name) const {
  if (tier.empty()) return action_in(tree_->as_tier.actions, name);
  const AeDef* ae = find_ae(tier);
  return ae ? action_in(ae->actions, name) : nullptr;
}
const MetricDef* SpecModel::find_metric(const std::string& tier, const std::string& name) const {
  if (tier.empty()) return metric_in(tree_->as_tier.metrics, name);
  const AeDef* ae = find_ae(tier);
  return ae ? metric_in(ae->metrics, name) : nullptr;
}
const SloDef* SpecModel::find_slo(const std::string& tier, const std::string& name) const {
  if (tier.empty()) return slo_in(tree_->as_tier.slos, name);
  const AeDef* ae = find_ae(tier);
  return ae ? slo_in(ae->slos, name) : nullptr;
}

std::vector<std::pair<Qual, const SloDef*>> SpecModel::all_slos() const {
  std::vector<std::pair<Qual, const SloDef*>> out;
  for (const auto& s : tree_->as_tier.slos) out.push_back({{"", s.name}, &s});
  for (const auto& ae : tree_->aes)
    for (const auto& s : ae.slos) out.push_back({{ae.name, s.name}, &s});
  return out;
}

std::vector<std::pair<Qual, const MetricDef*>> SpecModel::all_metrics() const {
  std::vector<std::pair<Qual, const MetricDef*>> out;
  for (const auto& m : tree_->as_tier.metrics) out.push_back({{"", m.name}, &m});
  for (const auto& ae : tree_->aes)
    for (const auto& m : ae.metrics) out.push_back({{ae.name, m.name}, &m});
  return out;
}

const ProtocolDef* SpecModel::protocol_of_message(const std::string& message,
                                                  std::string* tier_out) const {
  for (const auto& m : tree_->asip.messages) {
    if (m.name == message) {
      if (tier_out) *tier_out = "";
      return &tree_->asip;
    }
  }
  for (const auto& ae : tree_->aes) {
    for (const auto& m : ae.aeip.messages) {
      if (m.name == message) {
        if (tier_out) *tier_out = ae.name;
        return &ae.aeip;
      }
    }
  }
  return nullptr;
}

namespace {

struct Resolver {
  const SpecModel& model;
  const ResolveCtx& ctx;
  const PathRef& path;

  Expected<ResolvedRef, ResolveError> fail(size_t valid_upto,
                                           const std::string& message) const {
    std::string prefix;
    for (size_t i = 0; i < valid_upto && i < path.segments.size(); ++i) {
      if (i) prefix += '.';
      prefix += path.segments[i];
    }
    return Expected<ResolvedRef, ResolveError>::failure({message, prefix});
  }

  Expected<ResolvedRef, ResolveError> run() const {
    const auto& segs = path.segments;
    if (segs.empty()) return fail(0, "empty path");
    const std::string& head = segs[0];

    if (head == "AS") return resolve_tier_path("", 1);

    if (head == "AES") {
      if (segs.size() < 2) return fail(1, "'AES' requires an element name");
      const AeDef* ae = model.find_ae(segs[1]);
      if (!ae) return fail(1, "unknown AE '" + segs[1] + "'");
      if (segs.size() == 2)
        return ResolvedRef{EntityKind::Ae, ae->name, ae->name, "", ae};
      return resolve_tier_path(ae->name, 2);
    }

    if (head == "ASIP") return resolve_protocol_path(&model.tree().asip, "", 1);

    if (head == "AEIP") {
      if (!ctx.current_ae) return fail(0, "'AEIP' outside an AE");
      return resolve_protocol_path(&ctx.current_ae->aeip, ctx.current_ae->name, 1);
    }

    if (head == "ASSLO") {
      if (segs.size() != 2) return fail(1, "'ASSLO' requires an SLO name");
      const SloDef* s = model.find_slo("", segs[1]);
      if (!s) return fail(1, "unknown SLO '" + segs[1] + "'");
      return ResolvedRef{EntityKind::Slo, "", s->name, "", s};
    }

    if (head == "AESLO") {
      if (!ctx.current_ae) return fail(0, "'AESLO' outside an AE");
      if (segs.size() != 2) return fail(1, "'AESLO' requires an SLO name");
      const SloDef* s = model.find_slo(ctx.current_ae->name, segs[1]);
      if (!s) return fail(1, "unknown SLO '" + segs[1] + "'");
      return ResolvedRef{EntityKind::Slo, ctx.current_ae->name, s->name, "", s};
    }

    if (head == "EVENTS" || head == "METRICS" || head == "ACTIONS") {
      // AE-local first, then the AS tier.
      if (ctx.current_ae) {
        auto local = resolve_section(ctx.current_ae->name, head, 1);
        if (local.ok()) return local;
      }
      return resolve_section("", head, 1);
    }

    if (head == "MESSAGES" || head == "CHANNELS") {
      if (!ctx.current_protocol)
        return fail(0, "'" + head + "' outside a communication function");
      std::string tier = ctx.current_ae ? ctx.current_ae->name : "";
      return resolve_protocol_section(ctx.current_protocol, tier, 0);
    }

    if (head == "ASARCHITECTURE") {
      if (segs.size() != 2) return fail(1, "'ASARCHITECTURE' requires a group name");
      const ArchGroup* g = model.find_group(segs[1]);
      if (!g) return fail(1, "unknown group '" + segs[1] + "'");
      return ResolvedRef{EntityKind::Group, "", g->name, "", g};
    }

    // FOREACH binder bound to an AE.
    if (auto it = ctx.binders.find(head); it != ctx.binders.end()) {
      const AeDef* ae = it->second;
      if (segs.size() == 1)
        return ResolvedRef{EntityKind::Ae, ae->name, ae->name, "", ae};
      return resolve_tier_path(ae->name, 1);
    }

    // Managed element of the enclosing AE: `<me>` or `<me>.<fn>`.
    if (ctx.current_ae) {
      for (const auto& me : ctx.current_ae->aeip.managed_elements) {
        if (me.name != head) continue;
        if (segs.size() == 1)
          return ResolvedRef{EntityKind::ManagedElement, ctx.current_ae->name,
                             me.name, "", &me};
        for (const auto& fn : me.functions) {
          if (fn.name == segs[1]) {
            if (segs.size() > 2) return fail(2, "trailing segments after function");
            ResolvedRef ref{EntityKind::InterfaceFn, ctx.current_ae->name, me.name,
                            fn.name, &fn};
            return ref;
          }
        }
        return fail(1, "managed element '" + me.name + "' has no function '" +
                           segs[1] + "'");
      }
    }

    return fail(0, "cannot resolve '" + head + "'");
  }

  // <tier>.(EVENTS|METRICS|ACTIONS|AESLO|AEIP...).<name> from segment `at`.
  Expected<ResolvedRef, ResolveError> resolve_tier_path(const std::string& tier,
                                                        size_t at) const {
    const auto& segs = path.segments;
    if (at >= segs.size()) return fail(at, "expected a section after tier");
    const std::string& section = segs[at];
    if (section == "EVENTS" || section == "METRICS" || section == "ACTIONS")
      return resolve_section(tier, section, at + 1, at);
    if (section == "AESLO" || section == "ASSLO") {
      if (at + 1 >= segs.size()) return fail(at + 1, "expected an SLO name");
      const SloDef* s = model.find_slo(section == "ASSLO" ? "" : tier, segs[at + 1]);
      if (!s) return fail(at + 1, "unknown SLO '" + segs[at + 1] + "'");
      return ResolvedRef{EntityKind::Slo, section == "ASSLO" ? "" : tier, s->name,
                         "", s};
    }
    if (section == "AEIP" && !tier.empty()) {
      const AeDef* ae = model.find_ae(tier);
      if (!ae) return fail(at, "unknown AE '" + tier + "'");
      return resolve_protocol_path(&ae->aeip, tier, at + 1);
    }
    return fail(at, "unknown section '" + section + "'");
  }

  Expected<ResolvedRef, ResolveError> resolve_section(const std::string& tier,
                                                      const std::string& section,
                                                      size_t name_at,
                                                      size_t section_at = 0) const {
    const auto& segs = path.segments;
    if (name_at >= segs.size())
      return fail(name_at, "expected a name after '" + section + "'");
    const std::string& name = segs[name_at];
    if (name_at + 1 < segs.size())
      return fail(name_at + 1, "trailing segments after '" + name + "'");
    if (section == "EVENTS") {
      if (const EventDef* e = model.find_event(tier, name))
        return ResolvedRef{EntityKind::Event, tier, e->name, "", e};
      return fail(name_at, "unknown event '" + name + "'");
    }
    if (section == "METRICS") {
      if (const MetricDef* m = model.find_metric(tier, name))
        return ResolvedRef{EntityKind::Metric, tier, m->name, "", m};
      return fail(name_at, "unknown metric '" + name + "'");
    }
    if (const ActionDef* a = model.find_action(tier, name))
      return ResolvedRef{EntityKind::Action, tier, a->name, "", a};
    return fail(name_at, "unknown action '" + name + "'");
  }

  // (ASIP|AEIP).(MESSAGES|CHANNELS).<name>[.<field>] from segment `at`.
  Expected<ResolvedRef, ResolveError> resolve_protocol_path(const ProtocolDef* proto,
                                                            const std::string& tier,
                                                            size_t at) const {
    const auto& segs = path.segments;
    if (at >= segs.size())
      return fail(at, "expected MESSAGES or CHANNELS");
    if (segs[at] != "MESSAGES" && segs[at] != "CHANNELS")
      return fail(at, "expected MESSAGES or CHANNELS, got '" + segs[at] + "'");
    return resolve_protocol_section(proto, tier, at);
  }

  Expected<ResolvedRef, ResolveError> resolve_protocol_section(
      const ProtocolDef* proto, const std::string& tier, size_t at) const {
    const auto& segs = path.segments;
    const std::string& section = segs[at];
    if (at + 1 >= segs.size())
      return fail(at + 1, "expected a name after '" + section + "'");
    const std::string& name = segs[at + 1];
    if (section == "MESSAGES") {
      for (const auto& m : proto->messages) {
        if (m.name != name) continue;
        if (at + 2 == segs.size())
          return ResolvedRef{EntityKind::Message, tier, m.name, "", &m};
        if (at + 3 == segs.size()) {
          for (const auto& p : m.parameters)
            if (p.name == segs[at + 2])
              return ResolvedRef{EntityKind::MessageField, tier, m.name,
                                 p.name, &m};
          return fail(at + 2, "message '" + name + "' has no field '" +
                                  segs[at + 2] + "'");
        }
        return fail(at + 3, "trailing segments after message field");
      }
      return fail(at + 1, "unknown message '" + name + "'");
    }
    for (const auto& c : proto->channels) {
      if (c.name != name) continue;
      if (at + 2 < segs.size()) return fail(at + 2, "trailing segments after channel");
      return ResolvedRef{EntityKind::Channel, tier, c.name, "", &c};
    }
    return fail(at + 1, "unknown channel '" + name + "'");
  }
};

}  // namespace

Expected<ResolvedRef, ResolveError> SpecModel::resolve(const PathRef& path,
                                                       const ResolveCtx& ctx) const {
  return Resolver{*this, ctx, path}.run();
}

bool metric_validity(const MetricDef& m, const Value& v) {
  switch (m.threshold.kind) {
    case ThresholdClass::Kind::IntSet:
    case ThresholdClass::Kind::IntRange: {
      if (!v.is_int())
        throw EvalError("metric '" + m.name + "': value " + v.display() +
                        " outside integer domain");
      std::int64_t x = v.as_int();
      if (m.threshold.kind == ThresholdClass::Kind::IntRange)
        return m.threshold.lo <= x && x <= m.threshold.hi;
      return std::find(m.threshold.set_values.begin(), m.threshold.set_values.end(),
                       x) != m.threshold.set_values.end();
    }
    case ThresholdClass::Kind::BoolConst:
      if (!v.is_bool())
        throw EvalError("metric '" + m.name + "': value " + v.display() +
                        " outside boolean domain");
      return v.as_bool() == m.threshold.bool_value;
  }
  return false;
}

namespace {

class SloEvaluator {
 public:
  SloEvaluator(const SpecModel& model,
               const std::function<bool(const Qual&)>& metric_valid)
      : model_(model), metric_valid_(metric_valid) {}

  bool eval_slo(const Qual& slo) {
    const SloDef* def = model_.find_slo(slo.tier, slo.name);
    if (!def) throw EvalError("unknown SLO '" + slo.str() + "'");
    if (!in_progress_.insert(slo).second)
      throw EvalError("SLO reference cycle through '" + slo.str() + "'");
    ResolveCtx ctx;
    ctx.current_ae = slo.tier.empty() ? nullptr : model_.find_ae(slo.tier);
    bool result = eval_expr(*def->expr, ctx);
    in_progress_.erase(slo);
    return result;
  }

 private:
  const SpecModel& model_;
  const std::function<bool(const Qual&)>& metric_valid_;
  std::set<Qual> in_progress_;

  bool eval_expr(const Expr& e, const ResolveCtx& ctx) {
    switch (e.kind) {
      case Expr::Kind::BoolLit:
        return e.bool_value;
      case Expr::Kind::IntLit:
        throw EvalError("integer literal in SLO expression");
      case Expr::Kind::Not:
        return !eval_expr(*e.lhs, ctx);
      case Expr::Kind::And:
        return eval_expr(*e.lhs, ctx) && eval_expr(*e.rhs, ctx);
      case Expr::Kind::Or:
        return eval_expr(*e.lhs, ctx) || eval_expr(*e.rhs, ctx);
      case Expr::Kind::Foreach: {
        std::vector<const AeDef*> members;
        if (e.collection.segments.size() == 1 &&
            e.collection.segments[0] == "AES") {
          members = model_.aes();
        } else if (e.collection.segments.size() == 2 &&
                   e.collection.segments[0] == "ASARCHITECTURE") {
          if (!model_.find_group(e.collection.segments[1]))
            throw EvalError("unknown group '" + e.collection.text() + "'");
          members = model_.group_members(e.collection.segments[1]);
        } else {
          throw EvalError("unknown collection '" + e.collection.text() + "'");
        }
        // FOREACH is the conjunction over members; empty groups hold.
        for (const AeDef* ae : members) {
          if (!eval_expr(*e.body, ctx.with_binder(e.binder, ae))) return false;
        }
        return true;
      }
      case Expr::Kind::Ref: {
        auto resolved = model_.resolve(e.ref, ctx);
        if (!resolved.ok())
          throw EvalError("unresolved reference '" + e.ref.text() + "': " +
                          resolved.error().message);
        const ResolvedRef& ref = resolved.value();
        if (ref.kind == EntityKind::Metric) return metric_valid_(ref.qual());
        if (ref.kind == EntityKind::Slo) return eval_slo(ref.qual());
        throw EvalError("reference '" + e.ref.text() + "' is a " +
                        entity_kind_name(ref.kind) +
                        ", not a metric or SLO");
      }
      case Expr::Kind::Call:
        throw EvalError("call expression in SLO");
    }
    return false;
  }
};

}  // namespace

bool evaluate_slo(const SpecModel& model, const Qual& slo,
                  const std::function<bool(const Qual&)>& metric_valid) {
  return SloEvaluator(model, metric_valid).eval_slo(slo);
}

}  // namespace admarf
