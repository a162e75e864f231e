#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "admarf/source.hpp"

namespace admarf::ast {

/// A dotted reference such as `AES.STAGE_AE.EVENTS.selfHealingFailed`.
struct PathRef {
  std::vector<std::string> segments;
  SourceSpan span;

  std::string text() const;
  bool single() const { return segments.size() == 1; }
};

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

/// Expression tree shared by SLO bodies, event/action guards, IF conditions
/// and assignment right-hand sides.
struct Expr {
  enum class Kind { BoolLit, IntLit, Ref, Not, And, Or, Foreach, Call };

  Kind kind = Kind::BoolLit;
  SourceSpan span;

  bool bool_value = false;
  std::int64_t int_value = 0;
  PathRef ref;                    // Ref
  ExprPtr lhs, rhs;               // Not uses lhs only
  std::string binder;             // Foreach
  PathRef collection;             // Foreach: `AES` or `ASARCHITECTURE.<group>`
  ExprPtr body;                   // Foreach
  PathRef callee;                 // Call
  std::vector<ExprPtr> args;      // Call
};

struct Stmt;
using StmtPtr = std::unique_ptr<Stmt>;

struct Stmt {
  enum class Kind { Assign, If, Foreach, Call, SetMetric, Trigger, Receive, Send };

  Kind kind = Kind::Call;
  SourceSpan span;

  std::string local;              // Assign target
  ExprPtr value;                  // Assign RHS, If condition
  std::vector<StmtPtr> block;     // If body, Foreach body
  std::string binder;             // Foreach
  PathRef collection;             // Foreach
  ExprPtr call;                   // Call
  PathRef metric;                 // SetMetric target (`.VALUE` suffix stripped)
  bool set_bool = false;          // SetMetric literal
  std::int64_t set_int = 0;
  bool set_is_bool = true;
  PathRef event;                  // Trigger
  PathRef message;                // Receive / Send
  PathRef channel;                // Receive / Send
};

struct Literal {
  bool is_bool = false;
  bool b = false;
  std::int64_t i = 0;
};

struct SloDef {
  std::string name;
  SourceSpan span;
  ExprPtr expr;
};

struct FluentDef {
  std::string name;
  SourceSpan span;
  std::vector<PathRef> initiated_by;
  std::vector<PathRef> terminated_by;
};

struct MappingDef {
  SourceSpan span;
  std::vector<PathRef> conditions;
  std::vector<PathRef> do_actions;
};

enum class PolicyKind { SelfHealing, SelfProtecting, SelfOptimizing, SelfConfiguring };

const char* policy_kind_keyword(PolicyKind kind);

struct PolicyDef {
  PolicyKind kind = PolicyKind::SelfHealing;
  SourceSpan span;
  std::vector<FluentDef> fluents;
  std::vector<MappingDef> mappings;
};

enum class ActivationKind { Degraded, Normalized, Occurred, Sent, Changed };

const char* activation_kind_keyword(ActivationKind kind);

struct ActivationCond {
  ActivationKind kind = ActivationKind::Occurred;
  PathRef target;
  SourceSpan span;
};

struct EventDef {
  std::string name;
  SourceSpan span;
  ExprPtr guards;                        // optional
  std::optional<ActivationCond> activation;
};

enum class MetricKind { Resource, Plain };
enum class ValueType { Integer, Boolean };

/// Membership rule for valid metric values: a finite integer set, an
/// inclusive integer range, or a boolean constant.
struct ThresholdClass {
  enum class Kind { IntSet, IntRange, BoolConst };
  Kind kind = Kind::IntSet;
  std::vector<std::int64_t> set_values;
  std::int64_t lo = 0, hi = 0;
  bool bool_value = false;
};

struct MetricDef {
  std::string name;
  SourceSpan span;
  MetricKind kind = MetricKind::Plain;
  ValueType value_type = ValueType::Integer;
  Literal initial;
  ThresholdClass threshold;
  std::optional<PathRef> source;         // RESOURCE metrics: managed-element function
};

struct ParamDef {
  std::string type_name;
  std::string name;
  SourceSpan span;
};

struct ActionDef {
  std::string name;
  SourceSpan span;
  bool impl = false;                     // abstract body, host hook supplies behavior
  ExprPtr guards;                        // optional
  std::vector<ParamDef> parameters;
  std::optional<std::string> returns;
  bool has_does = false;
  std::vector<StmtPtr> body;
  std::vector<PathRef> triggers;
  std::vector<PathRef> onerr_triggers;
};

struct MessageDef {
  std::string name;
  SourceSpan span;
  std::vector<ParamDef> parameters;
};

struct ChannelDef {
  std::string name;
  SourceSpan span;
  bool bidirectional = true;
  bool sequential = true;
  bool has_direction = false;
  bool has_discipline = false;
};

struct InterfaceFnDef {
  std::string name;
  SourceSpan span;
  std::vector<ParamDef> parameters;
  std::optional<std::string> returns;
  std::vector<PathRef> onerr_triggers;
};

struct ManagedElementDef {
  std::string name;
  SourceSpan span;
  std::vector<InterfaceFnDef> functions;
};

/// ASIP or AEIP: messages, channels, communication functions and (for the
/// AEIP) managed elements.
struct ProtocolDef {
  bool present = false;
  SourceSpan span;
  std::vector<MessageDef> messages;
  std::vector<ChannelDef> channels;
  std::vector<ActionDef> functions;
  std::vector<ManagedElementDef> managed_elements;
};

struct ArchGroup {
  std::string name;
  SourceSpan span;
  std::vector<PathRef> members;
};

/// Fig. 1 sub-tiers that carry no semantics here; parsed as named blocks
/// with their contents discarded.
struct OpaqueBlock {
  std::string keyword;
  SourceSpan span;
};

struct AsTier {
  std::vector<SloDef> slos;
  std::vector<PolicyDef> policies;
  std::vector<ArchGroup> arch_groups;
  std::vector<ActionDef> actions;
  std::vector<EventDef> events;
  std::vector<MetricDef> metrics;
};

struct AeDef {
  std::string name;
  SourceSpan span;
  std::vector<SloDef> slos;
  std::vector<PolicyDef> policies;
  std::vector<PathRef> friends;
  ProtocolDef aeip;
  std::vector<ActionDef> actions;
  std::vector<EventDef> events;
  std::vector<MetricDef> metrics;
  std::vector<OpaqueBlock> opaque_blocks;
};

/// Root of a parsed specification: the AS block, an optional ASIP and the
/// AE list, in that order.
struct SpecTree {
  std::string as_name;
  SourceSpan span;
  AsTier as_tier;
  ProtocolDef asip;
  std::vector<AeDef> aes;
};

}  // namespace admarf::ast
