#include "admarf/parser.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "admarf/lexer.hpp"

namespace admarf {

namespace {

using namespace ast;

const std::unordered_set<std::string_view>& sync_keywords() {
  static const std::unordered_set<std::string_view> kws = {
      "AS", "ASSLO", "AESLO", "SLO", "ASSELF_MANAGEMENT", "AESELF_MANAGEMENT",
      "ASARCHITECTURE", "ACTIONS", "ACTION", "EVENTS", "EVENT", "METRICS",
      "METRIC", "ASIP", "AEIP", "AES", "AE", "FLUENT", "MAPPING", "MESSAGES",
      "MESSAGE", "CHANNELS", "CHANNEL", "FUNCTIONS", "FUNCTION",
      "MANAGED_ELEMENTS", "MANAGED_ELEMENT", "INTERFACE_FUNCTION", "GROUP",
      "FRIENDS", "RECOVERY_PROTOCOL", "BEHAVIOR_MODELS", "OUTCOMES",
  };
  return kws;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<Diagnostic> lex_diags)
      : tokens_(std::move(tokens)), diags_(std::move(lex_diags)) {}

  ParseResult run() {
    auto tree = std::make_unique<SpecTree>();
    parse_spec(*tree);
    ParseResult result;
    result.diagnostics = std::move(diags_);
    bool has_error = false;
    for (const auto& d : result.diagnostics)
      if (d.severity == Severity::Error) has_error = true;
    if (!has_error) result.tree = std::move(tree);
    return result;
  }

 private:
  std::vector<Token> tokens_;
  std::vector<Diagnostic> diags_;
  size_t pos_ = 0;

  const Token& peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& advance() {
    const Token& t = peek();
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool at_eof() const { return peek().kind == TokenKind::Eof; }

  void error_at(const Token& tok, std::string message,
                std::vector<std::string> expected = {}) {
    diags_.push_back({Severity::Error, tok.span, std::move(message), std::move(expected)});
  }

  bool match_kw(const char* kw) {
    if (peek().is_keyword(kw)) {
      advance();
      return true;
    }
    return false;
  }
  bool match(TokenKind kind) {
    if (peek().kind == kind) {
      advance();
      return true;
    }
    return false;
  }

  bool expect_kw(const char* kw) {
    if (match_kw(kw)) return true;
    error_at(peek(), "unexpected " + describe(peek()), {kw});
    return false;
  }
  bool expect(TokenKind kind) {
    if (peek().kind == kind) {
      advance();
      return true;
    }
    error_at(peek(), "unexpected " + describe(peek()), {token_kind_name(kind)});
    return false;
  }

  static std::string describe(const Token& t) {
    if (t.kind == TokenKind::Eof) return "end of input";
    return std::string(token_kind_name(t.kind)) + " '" + t.text + "'";
  }

  /// Panic-mode recovery: skip ahead to the next section-level keyword or a
  /// closing brace so later declarations still get parsed.
  void synchronize() {
    while (!at_eof()) {
      const Token& t = peek();
      if (t.kind == TokenKind::RBrace) return;
      if (t.kind == TokenKind::Keyword && sync_keywords().count(t.text)) return;
      advance();
    }
  }

  void skip_semicolons() {
    while (match(TokenKind::Semicolon)) {
    }
  }

  PathRef path_from_token(const Token& t) {
    PathRef p;
    p.span = t.span;
    std::string seg;
    for (char c : t.text) {
      if (c == '.') {
        p.segments.push_back(seg);
        seg.clear();
      } else {
        seg += c;
      }
    }
    p.segments.push_back(seg);
    return p;
  }

  /// A reference position accepts a dotted path, a bare identifier, or one
  /// of the section keywords used as a path head (e.g. `AES` in FOREACH).
  bool parse_path(PathRef& out, const char* what) {
    const Token& t = peek();
    if (t.kind == TokenKind::Path || t.kind == TokenKind::Ident ||
        t.kind == TokenKind::Keyword) {
      out = path_from_token(advance());
      return true;
    }
    error_at(t, std::string("expected ") + what + ", found " + describe(t));
    return false;
  }

  // refset := "{" item ("," item)* ","? "}"
  bool parse_refset(std::vector<PathRef>& out, const char* what,
                    bool require_nonempty) {
    if (!expect(TokenKind::LBrace)) return false;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      PathRef p;
      if (!parse_path(p, what)) {
        synchronize();
        break;
      }
      out.push_back(std::move(p));
      if (!match(TokenKind::Comma)) break;
    }
    if (require_nonempty && out.empty())
      error_at(peek(), std::string("expected at least one ") + what);
    return expect(TokenKind::RBrace);
  }

  // ---------------------------------------------------------------- exprs

  ExprPtr parse_expr() { return parse_or(); }

  ExprPtr parse_or() {
    ExprPtr lhs = parse_and();
    while (peek().is_keyword("OR")) {
      SourceSpan span = advance().span;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Or;
      node->span = span;
      node->lhs = std::move(lhs);
      node->rhs = parse_and();
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_and() {
    ExprPtr lhs = parse_unary();
    while (peek().is_keyword("AND")) {
      SourceSpan span = advance().span;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::And;
      node->span = span;
      node->lhs = std::move(lhs);
      node->rhs = parse_unary();
      lhs = std::move(node);
    }
    return lhs;
  }

  ExprPtr parse_unary() {
    if (peek().is_keyword("NOT")) {
      SourceSpan span = advance().span;
      auto node = std::make_unique<Expr>();
      node->kind = Expr::Kind::Not;
      node->span = span;
      node->lhs = parse_unary();
      return node;
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    const Token& t = peek();
    auto node = std::make_unique<Expr>();
    node->span = t.span;

    if (match(TokenKind::LParen)) {
      node = parse_expr();
      expect(TokenKind::RParen);
      return node;
    }
    if (t.kind == TokenKind::Bool) {
      advance();
      node->kind = Expr::Kind::BoolLit;
      node->bool_value = t.bool_value;
      return node;
    }
    if (t.kind == TokenKind::Int) {
      advance();
      node->kind = Expr::Kind::IntLit;
      node->int_value = t.int_value;
      return node;
    }
    if (t.is_keyword("FOREACH")) return parse_foreach_expr();
    if (t.is_ident("call")) return parse_call_expr();
    if (t.kind == TokenKind::Path || t.kind == TokenKind::Ident) {
      advance();
      node->kind = Expr::Kind::Ref;
      node->ref = path_from_token(t);
      return node;
    }
    error_at(t, "expected expression, found " + describe(t));
    advance();
    node->kind = Expr::Kind::BoolLit;
    return node;
  }

  // FOREACH <binder> in <collection> { expr }
  ExprPtr parse_foreach_expr() {
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Foreach;
    node->span = peek().span;
    expect_kw("FOREACH");
    if (peek().kind == TokenKind::Ident) {
      node->binder = advance().text;
    } else {
      error_at(peek(), "expected binder identifier, found " + describe(peek()));
    }
    if (!peek().is_ident("in"))
      error_at(peek(), "expected 'in', found " + describe(peek()), {"in"});
    else
      advance();
    parse_path(node->collection, "collection");
    expect(TokenKind::LBrace);
    node->body = parse_expr();
    expect(TokenKind::RBrace);
    return node;
  }

  // call <path> ( args? )
  ExprPtr parse_call_expr() {
    auto node = std::make_unique<Expr>();
    node->kind = Expr::Kind::Call;
    node->span = peek().span;
    advance();  // `call`
    parse_path(node->callee, "call target");
    if (expect(TokenKind::LParen)) {
      while (!at_eof() && peek().kind != TokenKind::RParen) {
        node->args.push_back(parse_expr());
        if (!match(TokenKind::Comma)) break;
      }
      expect(TokenKind::RParen);
    }
    return node;
  }

  // ------------------------------------------------------------- statements

  std::vector<StmtPtr> parse_stmt_block_until_rbrace() {
    std::vector<StmtPtr> stmts;
    skip_semicolons();
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      if (auto s = parse_stmt()) {
        stmts.push_back(std::move(s));
      } else {
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
      }
      skip_semicolons();
    }
    return stmts;
  }

  std::vector<StmtPtr> parse_stmt_block_until_end() {
    std::vector<StmtPtr> stmts;
    skip_semicolons();
    while (!at_eof() && !peek().is_keyword("END")) {
      if (peek().kind == TokenKind::RBrace) {
        error_at(peek(), "unterminated IF: expected END");
        return stmts;
      }
      if (auto s = parse_stmt()) {
        stmts.push_back(std::move(s));
      } else {
        synchronize();
        if (!at_eof() && peek().kind != TokenKind::RBrace &&
            !peek().is_keyword("END"))
          advance();
        else if (peek().kind == TokenKind::RBrace)
          return stmts;
      }
      skip_semicolons();
    }
    return stmts;
  }

  StmtPtr parse_stmt() {
    const Token& t = peek();
    auto stmt = std::make_unique<Stmt>();
    stmt->span = t.span;

    if (t.is_keyword("IF")) {
      advance();
      stmt->kind = Stmt::Kind::If;
      stmt->value = parse_expr();
      expect_kw("THEN");
      stmt->block = parse_stmt_block_until_end();
      expect_kw("END");
      return stmt;
    }

    if (t.is_keyword("FOREACH")) {
      advance();
      stmt->kind = Stmt::Kind::Foreach;
      if (peek().kind == TokenKind::Ident) {
        stmt->binder = advance().text;
      } else {
        error_at(peek(), "expected binder identifier, found " + describe(peek()));
      }
      if (!peek().is_ident("in"))
        error_at(peek(), "expected 'in', found " + describe(peek()), {"in"});
      else
        advance();
      parse_path(stmt->collection, "collection");
      expect(TokenKind::LBrace);
      stmt->block = parse_stmt_block_until_rbrace();
      expect(TokenKind::RBrace);
      return stmt;
    }

    if (t.is_keyword("TRIGGER")) {
      advance();
      stmt->kind = Stmt::Kind::Trigger;
      if (!parse_path(stmt->event, "event reference")) return nullptr;
      return stmt;
    }

    if (t.is_ident("call")) {
      stmt->kind = Stmt::Kind::Call;
      stmt->call = parse_call_expr();
      return stmt;
    }

    if (t.is_ident("set")) {
      advance();
      stmt->kind = Stmt::Kind::SetMetric;
      PathRef target;
      if (!parse_path(target, "metric path")) return nullptr;
      if (!target.segments.empty() && target.segments.back() == "VALUE") {
        target.segments.pop_back();
      } else {
        error_at(t, "set target must end in '.VALUE'");
      }
      stmt->metric = std::move(target);
      if (!expect(TokenKind::Equals)) return nullptr;
      const Token& lit = peek();
      if (lit.kind == TokenKind::Bool) {
        advance();
        stmt->set_is_bool = true;
        stmt->set_bool = lit.bool_value;
      } else if (lit.kind == TokenKind::Int) {
        advance();
        stmt->set_is_bool = false;
        stmt->set_int = lit.int_value;
      } else {
        error_at(lit, "expected literal, found " + describe(lit));
        return nullptr;
      }
      return stmt;
    }

    // message << channel  |  message >> channel
    if ((t.kind == TokenKind::Path || t.kind == TokenKind::Ident) &&
        (peek(1).kind == TokenKind::ShiftLeft ||
         peek(1).kind == TokenKind::ShiftRight)) {
      stmt->message = path_from_token(advance());
      stmt->kind = advance().kind == TokenKind::ShiftLeft ? Stmt::Kind::Receive
                                                          : Stmt::Kind::Send;
      if (!parse_path(stmt->channel, "channel reference")) return nullptr;
      return stmt;
    }

    // local = expr
    if (t.kind == TokenKind::Ident && peek(1).kind == TokenKind::Equals) {
      stmt->kind = Stmt::Kind::Assign;
      stmt->local = advance().text;
      advance();  // '='
      stmt->value = parse_expr();
      return stmt;
    }

    error_at(t, "expected statement, found " + describe(t));
    return nullptr;
  }

  // ------------------------------------------------------------ declarations

  void parse_slo_section(std::vector<SloDef>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      if (!peek().is_keyword("SLO")) {
        error_at(peek(), "expected SLO declaration, found " + describe(peek()), {"SLO"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        continue;
      }
      advance();
      SloDef slo;
      if (peek().kind == TokenKind::Ident) {
        const Token& name = advance();
        slo.name = name.text;
        slo.span = name.span;
      } else {
        error_at(peek(), "expected SLO name, found " + describe(peek()));
        synchronize();
        continue;
      }
      if (expect(TokenKind::LBrace)) {
        slo.expr = parse_expr();
        expect(TokenKind::RBrace);
      }
      out.push_back(std::move(slo));
    }
    expect(TokenKind::RBrace);
  }

  void parse_policy_section(std::vector<PolicyDef>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      PolicyKind kind;
      const Token& t = peek();
      if (t.is_keyword("SELF_HEALING")) kind = PolicyKind::SelfHealing;
      else if (t.is_keyword("SELF_PROTECTING")) kind = PolicyKind::SelfProtecting;
      else if (t.is_keyword("SELF_OPTIMIZING")) kind = PolicyKind::SelfOptimizing;
      else if (t.is_keyword("SELF_CONFIGURING")) kind = PolicyKind::SelfConfiguring;
      else {
        error_at(t, "expected policy kind, found " + describe(t),
                 {"SELF_HEALING", "SELF_PROTECTING", "SELF_OPTIMIZING",
                  "SELF_CONFIGURING"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        continue;
      }
      PolicyDef policy;
      policy.kind = kind;
      policy.span = advance().span;
      if (!expect(TokenKind::LBrace)) continue;
      while (!at_eof() && peek().kind != TokenKind::RBrace) {
        if (peek().is_keyword("FLUENT")) {
          advance();
          FluentDef fl;
          if (peek().kind == TokenKind::Ident) {
            const Token& name = advance();
            fl.name = name.text;
            fl.span = name.span;
          } else {
            error_at(peek(), "expected fluent name, found " + describe(peek()));
            synchronize();
            continue;
          }
          if (expect(TokenKind::LBrace)) {
            if (expect_kw("INITIATED_BY"))
              parse_refset(fl.initiated_by, "event reference", true);
            if (expect_kw("TERMINATED_BY"))
              parse_refset(fl.terminated_by, "event reference", true);
            expect(TokenKind::RBrace);
          }
          policy.fluents.push_back(std::move(fl));
        } else if (peek().is_keyword("MAPPING")) {
          MappingDef mp;
          mp.span = advance().span;
          if (expect(TokenKind::LBrace)) {
            if (expect_kw("CONDITIONS"))
              parse_refset(mp.conditions, "fluent reference", false);
            if (expect_kw("DO_ACTIONS"))
              parse_refset(mp.do_actions, "action reference", false);
            expect(TokenKind::RBrace);
          }
          policy.mappings.push_back(std::move(mp));
        } else {
          error_at(peek(), "expected FLUENT or MAPPING, found " + describe(peek()),
                   {"FLUENT", "MAPPING"});
          synchronize();
          if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        }
      }
      expect(TokenKind::RBrace);
      out.push_back(std::move(policy));
    }
    expect(TokenKind::RBrace);
  }

  void parse_events_section(std::vector<EventDef>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      if (!peek().is_keyword("EVENT")) {
        error_at(peek(), "expected EVENT declaration, found " + describe(peek()),
                 {"EVENT"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        continue;
      }
      advance();
      EventDef ev;
      if (peek().kind == TokenKind::Ident) {
        const Token& name = advance();
        ev.name = name.text;
        ev.span = name.span;
      } else {
        error_at(peek(), "expected event name, found " + describe(peek()));
        synchronize();
        continue;
      }
      if (expect(TokenKind::LBrace)) {
        if (match_kw("GUARDS")) {
          if (expect(TokenKind::LBrace)) {
            ev.guards = parse_expr();
            expect(TokenKind::RBrace);
          }
        }
        if (match_kw("ACTIVATION")) {
          ActivationCond act;
          act.span = peek().span;
          if (expect(TokenKind::LBrace)) {
            const Token& k = peek();
            bool known = true;
            if (k.is_keyword("DEGRADED")) act.kind = ActivationKind::Degraded;
            else if (k.is_keyword("NORMALIZED")) act.kind = ActivationKind::Normalized;
            else if (k.is_keyword("OCCURRED")) act.kind = ActivationKind::Occurred;
            else if (k.is_keyword("SENT")) act.kind = ActivationKind::Sent;
            else if (k.is_keyword("CHANGED")) act.kind = ActivationKind::Changed;
            else {
              known = false;
              error_at(k, "expected activation kind, found " + describe(k),
                       {"DEGRADED", "NORMALIZED", "OCCURRED", "SENT", "CHANGED"});
              synchronize();
            }
            if (known) {
              advance();
              if (expect(TokenKind::LBrace)) {
                parse_path(act.target, "activation target");
                expect(TokenKind::RBrace);
              }
              ev.activation = std::move(act);
            }
          }
          expect(TokenKind::RBrace);
        }
        expect(TokenKind::RBrace);
      }
      out.push_back(std::move(ev));
    }
    expect(TokenKind::RBrace);
  }

  void parse_metrics_section(std::vector<MetricDef>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      if (!peek().is_keyword("METRIC")) {
        error_at(peek(), "expected METRIC declaration, found " + describe(peek()),
                 {"METRIC"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        continue;
      }
      advance();
      MetricDef m;
      if (peek().kind == TokenKind::Ident) {
        const Token& name = advance();
        m.name = name.text;
        m.span = name.span;
      } else {
        error_at(peek(), "expected metric name, found " + describe(peek()));
        synchronize();
        continue;
      }
      if (!expect(TokenKind::LBrace)) continue;

      if (match_kw("METRIC_TYPE")) {
        if (expect(TokenKind::LBrace)) {
          const Token& k = peek();
          if (k.is_keyword("RESOURCE")) m.kind = MetricKind::Resource;
          else if (k.is_keyword("PLAIN")) m.kind = MetricKind::Plain;
          else error_at(k, "expected RESOURCE or PLAIN, found " + describe(k),
                        {"RESOURCE", "PLAIN"});
          if (k.is_keyword("RESOURCE") || k.is_keyword("PLAIN")) advance();
          expect(TokenKind::RBrace);
        }
      }
      if (expect_kw("VALUE") && expect(TokenKind::LBrace)) {
        const Token& lit = peek();
        if (lit.kind == TokenKind::Int) {
          advance();
          m.initial.is_bool = false;
          m.initial.i = lit.int_value;
          m.value_type = ValueType::Integer;
        } else if (lit.kind == TokenKind::Bool) {
          advance();
          m.initial.is_bool = true;
          m.initial.b = lit.bool_value;
          m.value_type = ValueType::Boolean;
        } else {
          error_at(lit, "expected literal, found " + describe(lit));
        }
        expect(TokenKind::RBrace);
      }
      if (expect_kw("THRESHOLD_CLASS") && expect(TokenKind::LBrace)) {
        parse_threshold_class(m);
        expect(TokenKind::RBrace);
      }
      if (match_kw("METRIC_SOURCE")) {
        if (expect(TokenKind::LBrace)) {
          PathRef src;
          if (parse_path(src, "interface-function path")) m.source = std::move(src);
          expect(TokenKind::RBrace);
        }
      }
      expect(TokenKind::RBrace);
      out.push_back(std::move(m));
    }
    expect(TokenKind::RBrace);
  }

  // tclass := "Integer" "[" INT (("," INT)* | ".." INT) "]" | "Boolean" "[" BOOL "]"
  void parse_threshold_class(MetricDef& m) {
    const Token& type_tok = peek();
    if (type_tok.is_ident("Integer")) {
      advance();
      if (m.value_type != ValueType::Integer)
        error_at(type_tok, "threshold class 'Integer' does not match boolean VALUE");
      if (!expect(TokenKind::LBracket)) return;
      const Token& first = peek();
      if (first.kind != TokenKind::Int) {
        error_at(first, "expected integer, found " + describe(first));
        return;
      }
      advance();
      if (match(TokenKind::DotDot)) {
        m.threshold.kind = ThresholdClass::Kind::IntRange;
        m.threshold.lo = first.int_value;
        const Token& hi = peek();
        if (hi.kind == TokenKind::Int) {
          advance();
          m.threshold.hi = hi.int_value;
          if (m.threshold.hi < m.threshold.lo)
            error_at(hi, "empty threshold range");
        } else {
          error_at(hi, "expected integer, found " + describe(hi));
        }
      } else {
        m.threshold.kind = ThresholdClass::Kind::IntSet;
        m.threshold.set_values.push_back(first.int_value);
        while (match(TokenKind::Comma)) {
          const Token& v = peek();
          if (v.kind != TokenKind::Int) {
            error_at(v, "expected integer, found " + describe(v));
            break;
          }
          advance();
          m.threshold.set_values.push_back(v.int_value);
        }
      }
      expect(TokenKind::RBracket);
    } else if (type_tok.is_ident("Boolean")) {
      advance();
      if (m.value_type != ValueType::Boolean)
        error_at(type_tok, "threshold class 'Boolean' does not match integer VALUE");
      if (!expect(TokenKind::LBracket)) return;
      const Token& v = peek();
      if (v.kind == TokenKind::Bool) {
        advance();
        m.threshold.kind = ThresholdClass::Kind::BoolConst;
        m.threshold.bool_value = v.bool_value;
      } else {
        error_at(v, "expected boolean, found " + describe(v));
      }
      expect(TokenKind::RBracket);
    } else {
      error_at(type_tok, "expected 'Integer' or 'Boolean', found " + describe(type_tok),
               {"Integer", "Boolean"});
      synchronize();
    }
  }

  void parse_params(std::vector<ParamDef>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      ParamDef p;
      if (peek().kind == TokenKind::Ident) {
        p.type_name = advance().text;
      } else {
        error_at(peek(), "expected parameter type, found " + describe(peek()));
        synchronize();
        break;
      }
      if (peek().kind == TokenKind::Ident) {
        const Token& name = advance();
        p.name = name.text;
        p.span = name.span;
      } else {
        error_at(peek(), "expected parameter name, found " + describe(peek()));
        synchronize();
        break;
      }
      out.push_back(std::move(p));
      if (!match(TokenKind::Comma)) break;
    }
    expect(TokenKind::RBrace);
  }

  // action := "ACTION" ("IMPL")? IDENT "{" guards? params? returns? does?
  //           triggers? onerr? "}"   (FUNCTION uses the same body sections)
  bool parse_action_body(ActionDef& a) {
    if (!expect(TokenKind::LBrace)) return false;
    bool saw_guards = false, saw_params = false, saw_returns = false,
         saw_does = false, saw_triggers = false, saw_onerr = false;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      const Token& t = peek();
      if (t.is_keyword("GUARDS")) {
        if (saw_guards) error_at(t, "duplicate GUARDS section");
        saw_guards = true;
        advance();
        if (expect(TokenKind::LBrace)) {
          a.guards = parse_expr();
          expect(TokenKind::RBrace);
        }
      } else if (t.is_keyword("PARAMETERS")) {
        if (saw_params) error_at(t, "duplicate PARAMETERS section");
        saw_params = true;
        advance();
        parse_params(a.parameters);
      } else if (t.is_keyword("RETURNS")) {
        if (saw_returns) error_at(t, "duplicate RETURNS section");
        saw_returns = true;
        advance();
        if (expect(TokenKind::LBrace)) {
          if (peek().kind == TokenKind::Ident) {
            a.returns = advance().text;
          } else {
            error_at(peek(), "expected type name, found " + describe(peek()));
          }
          expect(TokenKind::RBrace);
        }
      } else if (t.is_keyword("DOES")) {
        if (saw_does) error_at(t, "duplicate DOES section");
        saw_does = true;
        a.has_does = true;
        advance();
        if (expect(TokenKind::LBrace)) {
          a.body = parse_stmt_block_until_rbrace();
          expect(TokenKind::RBrace);
        }
      } else if (t.is_keyword("TRIGGERS")) {
        if (saw_triggers) error_at(t, "duplicate TRIGGERS section");
        saw_triggers = true;
        advance();
        parse_refset(a.triggers, "event reference", false);
      } else if (t.is_keyword("ONERR_TRIGGERS")) {
        if (saw_onerr) error_at(t, "duplicate ONERR_TRIGGERS section");
        saw_onerr = true;
        advance();
        parse_refset(a.onerr_triggers, "event reference", false);
      } else {
        error_at(t, "unexpected " + describe(t) + " in action body",
                 {"GUARDS", "PARAMETERS", "RETURNS", "DOES", "TRIGGERS",
                  "ONERR_TRIGGERS"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
      }
    }
    return expect(TokenKind::RBrace);
  }

  void parse_actions_section(std::vector<ActionDef>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      if (!peek().is_keyword("ACTION")) {
        error_at(peek(), "expected ACTION declaration, found " + describe(peek()),
                 {"ACTION"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        continue;
      }
      advance();
      ActionDef a;
      a.impl = match_kw("IMPL");
      if (peek().kind == TokenKind::Ident) {
        const Token& name = advance();
        a.name = name.text;
        a.span = name.span;
      } else {
        error_at(peek(), "expected action name, found " + describe(peek()));
        synchronize();
        continue;
      }
      parse_action_body(a);
      out.push_back(std::move(a));
    }
    expect(TokenKind::RBrace);
  }

  void parse_protocol(ProtocolDef& proto) {
    proto.present = true;
    proto.span = peek().span;
    if (!expect(TokenKind::LBrace)) return;
    bool saw_messages = false, saw_channels = false, saw_functions = false,
         saw_mes = false;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      const Token& t = peek();
      if (t.is_keyword("MESSAGES")) {
        if (saw_messages) error_at(t, "duplicate MESSAGES section");
        saw_messages = true;
        advance();
        if (!expect(TokenKind::LBrace)) continue;
        while (!at_eof() && peek().kind != TokenKind::RBrace) {
          if (!expect_kw("MESSAGE")) { synchronize(); break; }
          MessageDef msg;
          if (peek().kind == TokenKind::Ident) {
            const Token& name = advance();
            msg.name = name.text;
            msg.span = name.span;
          } else {
            error_at(peek(), "expected message name, found " + describe(peek()));
            synchronize();
            continue;
          }
          if (expect(TokenKind::LBrace)) {
            if (match_kw("PARAMETERS")) parse_params(msg.parameters);
            expect(TokenKind::RBrace);
          }
          proto.messages.push_back(std::move(msg));
        }
        expect(TokenKind::RBrace);
      } else if (t.is_keyword("CHANNELS")) {
        if (saw_channels) error_at(t, "duplicate CHANNELS section");
        saw_channels = true;
        advance();
        if (!expect(TokenKind::LBrace)) continue;
        while (!at_eof() && peek().kind != TokenKind::RBrace) {
          if (!expect_kw("CHANNEL")) { synchronize(); break; }
          ChannelDef ch;
          if (peek().kind == TokenKind::Ident) {
            const Token& name = advance();
            ch.name = name.text;
            ch.span = name.span;
          } else {
            error_at(peek(), "expected channel name, found " + describe(peek()));
            synchronize();
            continue;
          }
          if (expect(TokenKind::LBrace)) {
            while (!at_eof() && peek().kind != TokenKind::RBrace) {
              if (match_kw("DIRECTION")) {
                ch.has_direction = true;
                if (expect(TokenKind::LBrace)) {
                  if (match_kw("BIDIRECTIONAL")) ch.bidirectional = true;
                  else error_at(peek(), "expected BIDIRECTIONAL", {"BIDIRECTIONAL"});
                  expect(TokenKind::RBrace);
                }
              } else if (match_kw("DISCIPLINE")) {
                ch.has_discipline = true;
                if (expect(TokenKind::LBrace)) {
                  if (match_kw("SEQUENTIAL")) ch.sequential = true;
                  else error_at(peek(), "expected SEQUENTIAL", {"SEQUENTIAL"});
                  expect(TokenKind::RBrace);
                }
              } else {
                error_at(peek(), "unexpected " + describe(peek()) + " in channel",
                         {"DIRECTION", "DISCIPLINE"});
                synchronize();
                break;
              }
            }
            expect(TokenKind::RBrace);
          }
          proto.channels.push_back(std::move(ch));
        }
        expect(TokenKind::RBrace);
      } else if (t.is_keyword("FUNCTIONS")) {
        if (saw_functions) error_at(t, "duplicate FUNCTIONS section");
        saw_functions = true;
        advance();
        if (!expect(TokenKind::LBrace)) continue;
        while (!at_eof() && peek().kind != TokenKind::RBrace) {
          if (!expect_kw("FUNCTION")) { synchronize(); break; }
          ActionDef fn;
          if (peek().kind == TokenKind::Ident) {
            const Token& name = advance();
            fn.name = name.text;
            fn.span = name.span;
          } else {
            error_at(peek(), "expected function name, found " + describe(peek()));
            synchronize();
            continue;
          }
          parse_action_body(fn);
          proto.functions.push_back(std::move(fn));
        }
        expect(TokenKind::RBrace);
      } else if (t.is_keyword("MANAGED_ELEMENTS")) {
        if (saw_mes) error_at(t, "duplicate MANAGED_ELEMENTS section");
        saw_mes = true;
        advance();
        if (!expect(TokenKind::LBrace)) continue;
        while (!at_eof() && peek().kind != TokenKind::RBrace) {
          if (!expect_kw("MANAGED_ELEMENT")) { synchronize(); break; }
          ManagedElementDef me;
          if (peek().kind == TokenKind::Ident) {
            const Token& name = advance();
            me.name = name.text;
            me.span = name.span;
          } else {
            error_at(peek(), "expected managed-element name, found " + describe(peek()));
            synchronize();
            continue;
          }
          if (expect(TokenKind::LBrace)) {
            while (!at_eof() && peek().kind != TokenKind::RBrace) {
              if (!expect_kw("INTERFACE_FUNCTION")) { synchronize(); break; }
              InterfaceFnDef fn;
              if (peek().kind == TokenKind::Ident) {
                const Token& name = advance();
                fn.name = name.text;
                fn.span = name.span;
              } else {
                error_at(peek(), "expected function name, found " + describe(peek()));
                synchronize();
                continue;
              }
              if (expect(TokenKind::LBrace)) {
                while (!at_eof() && peek().kind != TokenKind::RBrace) {
                  if (match_kw("PARAMETERS")) {
                    parse_params(fn.parameters);
                  } else if (match_kw("RETURNS")) {
                    if (expect(TokenKind::LBrace)) {
                      if (peek().kind == TokenKind::Ident) fn.returns = advance().text;
                      else error_at(peek(), "expected type name, found " + describe(peek()));
                      expect(TokenKind::RBrace);
                    }
                  } else if (match_kw("ONERR_TRIGGERS")) {
                    parse_refset(fn.onerr_triggers, "event reference", false);
                  } else {
                    error_at(peek(), "unexpected " + describe(peek()) +
                                         " in interface function",
                             {"PARAMETERS", "RETURNS", "ONERR_TRIGGERS"});
                    synchronize();
                    break;
                  }
                }
                expect(TokenKind::RBrace);
              }
              me.functions.push_back(std::move(fn));
            }
            expect(TokenKind::RBrace);
          }
          proto.managed_elements.push_back(std::move(me));
        }
        expect(TokenKind::RBrace);
      } else {
        error_at(t, "unexpected " + describe(t) + " in interaction protocol",
                 {"MESSAGES", "CHANNELS", "FUNCTIONS", "MANAGED_ELEMENTS"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
      }
    }
    expect(TokenKind::RBrace);
  }

  void parse_arch_section(std::vector<ArchGroup>& out) {
    if (!expect(TokenKind::LBrace)) return;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      if (!expect_kw("GROUP")) {
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        continue;
      }
      ArchGroup grp;
      if (peek().kind == TokenKind::Ident) {
        const Token& name = advance();
        grp.name = name.text;
        grp.span = name.span;
      } else {
        error_at(peek(), "expected group name, found " + describe(peek()));
        synchronize();
        continue;
      }
      if (expect(TokenKind::LBrace)) {
        if (expect_kw("MEMBERS")) parse_refset(grp.members, "AE reference", false);
        expect(TokenKind::RBrace);
      }
      out.push_back(std::move(grp));
    }
    expect(TokenKind::RBrace);
  }

  void skip_opaque_block(const Token& kw, std::vector<OpaqueBlock>& out) {
    OpaqueBlock blk;
    blk.keyword = kw.text;
    blk.span = kw.span;
    if (expect(TokenKind::LBrace)) {
      int depth = 1;
      while (!at_eof() && depth > 0) {
        TokenKind k = advance().kind;
        if (k == TokenKind::LBrace) ++depth;
        if (k == TokenKind::RBrace) --depth;
      }
      if (depth > 0) error_at(peek(), "unterminated " + blk.keyword + " block");
    }
    out.push_back(std::move(blk));
  }

  void parse_ae(AeDef& ae) {
    if (peek().kind == TokenKind::Ident) {
      const Token& name = advance();
      ae.name = name.text;
      ae.span = name.span;
    } else {
      error_at(peek(), "expected AE name, found " + describe(peek()));
      synchronize();
      return;
    }
    if (!expect(TokenKind::LBrace)) return;
    bool saw_slo = false, saw_mgmt = false, saw_friends = false, saw_aeip = false,
         saw_actions = false, saw_events = false, saw_metrics = false;
    while (!at_eof() && peek().kind != TokenKind::RBrace) {
      const Token& t = peek();
      if (t.is_keyword("AESLO")) {
        if (saw_slo) error_at(t, "duplicate AESLO section");
        saw_slo = true;
        advance();
        parse_slo_section(ae.slos);
      } else if (t.is_keyword("AESELF_MANAGEMENT")) {
        if (saw_mgmt) error_at(t, "duplicate AESELF_MANAGEMENT section");
        saw_mgmt = true;
        advance();
        parse_policy_section(ae.policies);
      } else if (t.is_keyword("FRIENDS")) {
        if (saw_friends) error_at(t, "duplicate FRIENDS section");
        saw_friends = true;
        advance();
        parse_refset(ae.friends, "AE reference", false);
      } else if (t.is_keyword("AEIP")) {
        if (saw_aeip) error_at(t, "duplicate AEIP section");
        saw_aeip = true;
        advance();
        parse_protocol(ae.aeip);
      } else if (t.is_keyword("ACTIONS")) {
        if (saw_actions) error_at(t, "duplicate ACTIONS section");
        saw_actions = true;
        advance();
        parse_actions_section(ae.actions);
      } else if (t.is_keyword("EVENTS")) {
        if (saw_events) error_at(t, "duplicate EVENTS section");
        saw_events = true;
        advance();
        parse_events_section(ae.events);
      } else if (t.is_keyword("METRICS")) {
        if (saw_metrics) error_at(t, "duplicate METRICS section");
        saw_metrics = true;
        advance();
        parse_metrics_section(ae.metrics);
      } else if (t.is_keyword("RECOVERY_PROTOCOL") ||
                 t.is_keyword("BEHAVIOR_MODELS") || t.is_keyword("OUTCOMES")) {
        advance();
        skip_opaque_block(t, ae.opaque_blocks);
      } else {
        error_at(t, "unexpected " + describe(t) + " in AE",
                 {"AESLO", "AESELF_MANAGEMENT", "FRIENDS", "AEIP", "ACTIONS",
                  "EVENTS", "METRICS"});
        synchronize();
        if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
      }
    }
    expect(TokenKind::RBrace);
  }

  void parse_spec(SpecTree& tree) {
    if (!expect_kw("AS")) {
      synchronize();
      if (!match_kw("AS")) return;
    }
    if (peek().kind == TokenKind::Ident) {
      const Token& name = advance();
      tree.as_name = name.text;
      tree.span = name.span;
    } else {
      error_at(peek(), "expected AS name, found " + describe(peek()));
    }
    if (expect(TokenKind::LBrace)) {
      bool saw_slo = false, saw_mgmt = false, saw_arch = false,
           saw_actions = false, saw_events = false, saw_metrics = false;
      while (!at_eof() && peek().kind != TokenKind::RBrace) {
        const Token& t = peek();
        if (t.is_keyword("ASSLO")) {
          if (saw_slo) error_at(t, "duplicate ASSLO section");
          saw_slo = true;
          advance();
          parse_slo_section(tree.as_tier.slos);
        } else if (t.is_keyword("ASSELF_MANAGEMENT")) {
          if (saw_mgmt) error_at(t, "duplicate ASSELF_MANAGEMENT section");
          saw_mgmt = true;
          advance();
          parse_policy_section(tree.as_tier.policies);
        } else if (t.is_keyword("ASARCHITECTURE")) {
          if (saw_arch) error_at(t, "duplicate ASARCHITECTURE section");
          saw_arch = true;
          advance();
          parse_arch_section(tree.as_tier.arch_groups);
        } else if (t.is_keyword("ACTIONS")) {
          if (saw_actions) error_at(t, "duplicate ACTIONS section");
          saw_actions = true;
          advance();
          parse_actions_section(tree.as_tier.actions);
        } else if (t.is_keyword("EVENTS")) {
          if (saw_events) error_at(t, "duplicate EVENTS section");
          saw_events = true;
          advance();
          parse_events_section(tree.as_tier.events);
        } else if (t.is_keyword("METRICS")) {
          if (saw_metrics) error_at(t, "duplicate METRICS section");
          saw_metrics = true;
          advance();
          parse_metrics_section(tree.as_tier.metrics);
        } else {
          error_at(t, "unexpected " + describe(t) + " in AS",
                   {"ASSLO", "ASSELF_MANAGEMENT", "ASARCHITECTURE", "ACTIONS",
                    "EVENTS", "METRICS"});
          synchronize();
          if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
        }
      }
      expect(TokenKind::RBrace);
    }

    if (peek().is_keyword("ASIP")) {
      advance();
      parse_protocol(tree.asip);
    }
    if (peek().is_keyword("AES")) {
      advance();
      if (expect(TokenKind::LBrace)) {
        while (!at_eof() && peek().kind != TokenKind::RBrace) {
          if (!expect_kw("AE")) {
            synchronize();
            if (peek().kind != TokenKind::RBrace && !at_eof()) advance();
            continue;
          }
          AeDef ae;
          parse_ae(ae);
          tree.aes.push_back(std::move(ae));
        }
        expect(TokenKind::RBrace);
      }
    }
    if (!at_eof())
      error_at(peek(), "unexpected " + describe(peek()) + " after specification");
  }
};

}  // namespace

namespace ast {

std::string PathRef::text() const {
  std::string out;
  for (size_t i = 0; i < segments.size(); ++i) {
    if (i) out += '.';
    out += segments[i];
  }
  return out;
}

const char* policy_kind_keyword(PolicyKind kind) {
  switch (kind) {
    case PolicyKind::SelfHealing: return "SELF_HEALING";
    case PolicyKind::SelfProtecting: return "SELF_PROTECTING";
    case PolicyKind::SelfOptimizing: return "SELF_OPTIMIZING";
    case PolicyKind::SelfConfiguring: return "SELF_CONFIGURING";
  }
  return "?";
}

const char* activation_kind_keyword(ActivationKind kind) {
  switch (kind) {
    case ActivationKind::Degraded: return "DEGRADED";
    case ActivationKind::Normalized: return "NORMALIZED";
    case ActivationKind::Occurred: return "OCCURRED";
    case ActivationKind::Sent: return "SENT";
    case ActivationKind::Changed: return "CHANGED";
  }
  return "?";
}

}  // namespace ast

bool ParseResult::ok() const {
  if (!tree) return false;
  for (const auto& d : diagnostics)
    if (d.severity == Severity::Error) return false;
  return true;
}

ParseResult parse_spec(std::string_view src, const std::string& file) {
  LexResult lexed = tokenize(src, file);
  Parser parser(std::move(lexed.tokens), std::move(lexed.diagnostics));
  return parser.run();
}

ParseResult parse_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    ParseResult result;
    result.diagnostics.push_back(
        {Severity::Error, SourceSpan{path, 1, 1, 0}, "cannot open file", {}});
    return result;
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_spec(buf.str(), path);
}

std::string Diagnostic::render(bool color) const {
  std::ostringstream out;
  out << span.file << ':' << span.line << ':' << span.column << ": ";
  const char* word = severity == Severity::Error ? "error" : "warning";
  if (color) {
    out << (severity == Severity::Error ? "\x1b[31m" : "\x1b[33m") << word
        << "\x1b[0m";
  } else {
    out << word;
  }
  out << ": " << message;
  if (!expected.empty()) {
    out << " (expected ";
    for (size_t i = 0; i < expected.size(); ++i) {
      if (i) out << ", ";
      out << expected[i];
    }
    out << ')';
  }
  return out.str();
}

std::string render_diagnostics(const std::vector<Diagnostic>& diags, bool color) {
  std::string out;
  for (const auto& d : diags) {
    out += d.render(color);
    out += '\n';
  }
  return out;
}

}  // namespace admarf
