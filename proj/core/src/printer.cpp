#include "admarf/printer.hpp"

#include <sstream>

namespace admarf {

namespace {

using namespace ast;

class Printer {
 public:
  std::string print(const SpecTree& tree) {
    out_.str("");
    line("AS " + tree.as_name + " {");
    indent_++;
    print_as_tier(tree.as_tier);
    indent_--;
    line("}");
    if (tree.asip.present) print_protocol("ASIP", tree.asip);
    if (!tree.aes.empty()) {
      line("AES {");
      indent_++;
      for (const auto& ae : tree.aes) print_ae(ae);
      indent_--;
      line("}");
    }
    return out_.str();
  }

 private:
  std::ostringstream out_;
  int indent_ = 0;

  void line(const std::string& text) {
    for (int i = 0; i < indent_; ++i) out_ << "  ";
    out_ << text << '\n';
  }

  static std::string refset(const std::vector<PathRef>& refs) {
    std::string s = "{ ";
    for (size_t i = 0; i < refs.size(); ++i) {
      if (i) s += ", ";
      s += refs[i].text();
    }
    if (refs.empty()) s = "{";
    s += " }";
    return s;
  }

  // Precedence: OR < AND < NOT < primary. Parentheses appear only where
  // the tree shape requires them.
  static std::string expr_str(const Expr& e, int parent_prec = 0) {
    auto wrap = [&](const std::string& s, int prec) {
      return prec < parent_prec ? "(" + s + ")" : s;
    };
    switch (e.kind) {
      case Expr::Kind::BoolLit: return e.bool_value ? "true" : "false";
      case Expr::Kind::IntLit: return std::to_string(e.int_value);
      case Expr::Kind::Ref: return e.ref.text();
      case Expr::Kind::Not:
        return wrap("NOT " + expr_str(*e.lhs, 3), 3);
      case Expr::Kind::And:
        return wrap(expr_str(*e.lhs, 2) + " AND " + expr_str(*e.rhs, 3), 2);
      case Expr::Kind::Or:
        return wrap(expr_str(*e.lhs, 1) + " OR " + expr_str(*e.rhs, 2), 1);
      case Expr::Kind::Foreach:
        return wrap("FOREACH " + e.binder + " in " + e.collection.text() + " { " +
                        expr_str(*e.body, 0) + " }",
                    3);
      case Expr::Kind::Call: {
        std::string s = "call " + e.callee.text() + "(";
        for (size_t i = 0; i < e.args.size(); ++i) {
          if (i) s += ", ";
          s += expr_str(*e.args[i], 0);
        }
        s += ")";
        return wrap(s, 3);
      }
    }
    return "?";
  }

  void print_stmt(const Stmt& s) {
    switch (s.kind) {
      case Stmt::Kind::Assign:
        line(s.local + " = " + expr_str(*s.value));
        break;
      case Stmt::Kind::If:
        line("IF " + expr_str(*s.value) + " THEN");
        indent_++;
        for (const auto& sub : s.block) print_stmt(*sub);
        indent_--;
        line("END");
        break;
      case Stmt::Kind::Foreach:
        line("FOREACH " + s.binder + " in " + s.collection.text() + " {");
        indent_++;
        for (const auto& sub : s.block) print_stmt(*sub);
        indent_--;
        line("}");
        break;
      case Stmt::Kind::Call:
        line(expr_str(*s.call));
        break;
      case Stmt::Kind::SetMetric:
        line("set " + s.metric.text() + ".VALUE = " +
             (s.set_is_bool ? std::string(s.set_bool ? "true" : "false")
                            : std::to_string(s.set_int)));
        break;
      case Stmt::Kind::Trigger:
        line("TRIGGER " + s.event.text());
        break;
      case Stmt::Kind::Receive:
        line(s.message.text() + " << " + s.channel.text());
        break;
      case Stmt::Kind::Send:
        line(s.message.text() + " >> " + s.channel.text());
        break;
    }
  }

  void print_slos(const char* section, const std::vector<SloDef>& slos) {
    if (slos.empty()) return;
    line(std::string(section) + " {");
    indent_++;
    for (const auto& slo : slos) {
      line("SLO " + slo.name + " {");
      indent_++;
      line(expr_str(*slo.expr));
      indent_--;
      line("}");
    }
    indent_--;
    line("}");
  }

  void print_policies(const char* section, const std::vector<PolicyDef>& policies) {
    if (policies.empty()) return;
    line(std::string(section) + " {");
    indent_++;
    for (const auto& p : policies) {
      line(std::string(policy_kind_keyword(p.kind)) + " {");
      indent_++;
      for (const auto& f : p.fluents) {
        line("FLUENT " + f.name + " {");
        indent_++;
        line("INITIATED_BY " + refset(f.initiated_by));
        line("TERMINATED_BY " + refset(f.terminated_by));
        indent_--;
        line("}");
      }
      for (const auto& m : p.mappings) {
        line("MAPPING {");
        indent_++;
        line("CONDITIONS " + refset(m.conditions));
        line("DO_ACTIONS " + refset(m.do_actions));
        indent_--;
        line("}");
      }
      indent_--;
      line("}");
    }
    indent_--;
    line("}");
  }

  static std::string params_str(const std::vector<ParamDef>& params) {
    std::string s = "{ ";
    for (size_t i = 0; i < params.size(); ++i) {
      if (i) s += ", ";
      s += params[i].type_name + " " + params[i].name;
    }
    if (params.empty()) s = "{";
    s += " }";
    return s;
  }

  void print_action(const char* kw, const ActionDef& a) {
    std::string head = std::string(kw) + " ";
    if (a.impl) head += "IMPL ";
    head += a.name;
    bool empty = !a.guards && a.parameters.empty() && !a.returns && !a.has_does &&
                 a.triggers.empty() && a.onerr_triggers.empty();
    if (empty) {
      line(head + " { }");
      return;
    }
    line(head + " {");
    indent_++;
    if (a.guards) line("GUARDS { " + expr_str(*a.guards) + " }");
    if (!a.parameters.empty()) line("PARAMETERS " + params_str(a.parameters));
    if (a.returns) line("RETURNS { " + *a.returns + " }");
    if (a.has_does) {
      if (a.body.empty()) {
        line("DOES { }");
      } else {
        line("DOES {");
        indent_++;
        for (const auto& s : a.body) print_stmt(*s);
        indent_--;
        line("}");
      }
    }
    if (!a.triggers.empty()) line("TRIGGERS " + refset(a.triggers));
    if (!a.onerr_triggers.empty()) line("ONERR_TRIGGERS " + refset(a.onerr_triggers));
    indent_--;
    line("}");
  }

  void print_actions(const std::vector<ActionDef>& actions) {
    if (actions.empty()) return;
    line("ACTIONS {");
    indent_++;
    for (const auto& a : actions) print_action("ACTION", a);
    indent_--;
    line("}");
  }

  void print_events(const std::vector<EventDef>& events) {
    if (events.empty()) return;
    line("EVENTS {");
    indent_++;
    for (const auto& e : events) {
      if (!e.guards && !e.activation) {
        line("EVENT " + e.name + " { }");
        continue;
      }
      line("EVENT " + e.name + " {");
      indent_++;
      if (e.guards) line("GUARDS { " + expr_str(*e.guards) + " }");
      if (e.activation) {
        line(std::string("ACTIVATION { ") +
             activation_kind_keyword(e.activation->kind) + " { " +
             e.activation->target.text() + " } }");
      }
      indent_--;
      line("}");
    }
    indent_--;
    line("}");
  }

  static std::string threshold_str(const ThresholdClass& t) {
    switch (t.kind) {
      case ThresholdClass::Kind::IntSet: {
        std::string s = "Integer [";
        for (size_t i = 0; i < t.set_values.size(); ++i) {
          if (i) s += ", ";
          s += std::to_string(t.set_values[i]);
        }
        return s + "]";
      }
      case ThresholdClass::Kind::IntRange:
        return "Integer [" + std::to_string(t.lo) + " .. " + std::to_string(t.hi) + "]";
      case ThresholdClass::Kind::BoolConst:
        return std::string("Boolean [") + (t.bool_value ? "true" : "false") + "]";
    }
    return "?";
  }

  void print_metrics(const std::vector<MetricDef>& metrics) {
    if (metrics.empty()) return;
    line("METRICS {");
    indent_++;
    for (const auto& m : metrics) {
      line("METRIC " + m.name + " {");
      indent_++;
      if (m.kind == MetricKind::Resource) line("METRIC_TYPE { RESOURCE }");
      line(std::string("VALUE { ") +
           (m.initial.is_bool ? std::string(m.initial.b ? "true" : "false")
                              : std::to_string(m.initial.i)) +
           " }");
      line("THRESHOLD_CLASS { " + threshold_str(m.threshold) + " }");
      if (m.source) line("METRIC_SOURCE { " + m.source->text() + " }");
      indent_--;
      line("}");
    }
    indent_--;
    line("}");
  }

  void print_protocol(const char* kw, const ProtocolDef& proto) {
    line(std::string(kw) + " {");
    indent_++;
    if (!proto.messages.empty()) {
      line("MESSAGES {");
      indent_++;
      for (const auto& m : proto.messages) {
        if (m.parameters.empty()) {
          line("MESSAGE " + m.name + " { }");
        } else {
          line("MESSAGE " + m.name + " {");
          indent_++;
          line("PARAMETERS " + params_str(m.parameters));
          indent_--;
          line("}");
        }
      }
      indent_--;
      line("}");
    }
    if (!proto.channels.empty()) {
      line("CHANNELS {");
      indent_++;
      for (const auto& c : proto.channels) {
        if (!c.has_direction && !c.has_discipline) {
          line("CHANNEL " + c.name + " { }");
          continue;
        }
        line("CHANNEL " + c.name + " {");
        indent_++;
        if (c.has_direction) line("DIRECTION { BIDIRECTIONAL }");
        if (c.has_discipline) line("DISCIPLINE { SEQUENTIAL }");
        indent_--;
        line("}");
      }
      indent_--;
      line("}");
    }
    if (!proto.functions.empty()) {
      line("FUNCTIONS {");
      indent_++;
      for (const auto& f : proto.functions) print_action("FUNCTION", f);
      indent_--;
      line("}");
    }
    if (!proto.managed_elements.empty()) {
      line("MANAGED_ELEMENTS {");
      indent_++;
      for (const auto& me : proto.managed_elements) {
        line("MANAGED_ELEMENT " + me.name + " {");
        indent_++;
        for (const auto& fn : me.functions) {
          bool empty = fn.parameters.empty() && !fn.returns && fn.onerr_triggers.empty();
          if (empty) {
            line("INTERFACE_FUNCTION " + fn.name + " { }");
            continue;
          }
          line("INTERFACE_FUNCTION " + fn.name + " {");
          indent_++;
          if (!fn.parameters.empty()) line("PARAMETERS " + params_str(fn.parameters));
          if (fn.returns) line("RETURNS { " + *fn.returns + " }");
          if (!fn.onerr_triggers.empty())
            line("ONERR_TRIGGERS " + refset(fn.onerr_triggers));
          indent_--;
          line("}");
        }
        indent_--;
        line("}");
      }
      indent_--;
      line("}");
    }
    indent_--;
    line("}");
  }

  void print_as_tier(const AsTier& tier) {
    print_slos("ASSLO", tier.slos);
    print_policies("ASSELF_MANAGEMENT", tier.policies);
    if (!tier.arch_groups.empty()) {
      line("ASARCHITECTURE {");
      indent_++;
      for (const auto& g : tier.arch_groups) {
        line("GROUP " + g.name + " {");
        indent_++;
        line("MEMBERS " + refset(g.members));
        indent_--;
        line("}");
      }
      indent_--;
      line("}");
    }
    print_actions(tier.actions);
    print_events(tier.events);
    print_metrics(tier.metrics);
  }

  void print_ae(const AeDef& ae) {
    line("AE " + ae.name + " {");
    indent_++;
    print_slos("AESLO", ae.slos);
    print_policies("AESELF_MANAGEMENT", ae.policies);
    if (!ae.friends.empty()) line("FRIENDS " + refset(ae.friends));
    if (ae.aeip.present) print_protocol("AEIP", ae.aeip);
    for (const auto& blk : ae.opaque_blocks) line(blk.keyword + " { }");
    print_actions(ae.actions);
    print_events(ae.events);
    print_metrics(ae.metrics);
    indent_--;
    line("}");
  }
};

}  // namespace

std::string dump_ast(const ast::SpecTree& tree) { return Printer().print(tree); }

}  // namespace admarf
