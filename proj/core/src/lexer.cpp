#include "admarf/lexer.hpp"

#include <array>
#include <cctype>
#include <unordered_set>

namespace admarf {

namespace {

const std::unordered_set<std::string_view>& keyword_table() {
  static const std::unordered_set<std::string_view> kws = {
      "AS", "ASSLO", "AESLO", "SLO",
      "ASSELF_MANAGEMENT", "AESELF_MANAGEMENT",
      "SELF_HEALING", "SELF_PROTECTING", "SELF_OPTIMIZING", "SELF_CONFIGURING",
      "FLUENT", "INITIATED_BY", "TERMINATED_BY",
      "MAPPING", "CONDITIONS", "DO_ACTIONS",
      "EVENTS", "EVENT", "GUARDS", "ACTIVATION",
      "DEGRADED", "NORMALIZED", "OCCURRED", "SENT", "CHANGED",
      "METRICS", "METRIC", "METRIC_TYPE", "METRIC_SOURCE",
      "VALUE", "THRESHOLD_CLASS", "RESOURCE", "PLAIN",
      "ACTIONS", "ACTION", "IMPL",
      "PARAMETERS", "RETURNS", "DOES", "TRIGGERS", "ONERR_TRIGGERS",
      "ASIP", "AEIP", "MESSAGES", "MESSAGE", "CHANNELS", "CHANNEL",
      "FUNCTIONS", "FUNCTION",
      "MANAGED_ELEMENTS", "MANAGED_ELEMENT", "INTERFACE_FUNCTION",
      "AES", "AE", "FRIENDS",
      "ASARCHITECTURE", "GROUP", "MEMBERS",
      "RECOVERY_PROTOCOL", "BEHAVIOR_MODELS", "OUTCOMES",
      "IF", "THEN", "END", "FOREACH", "TRIGGER",
      "AND", "OR", "NOT",
      "DIRECTION", "DISCIPLINE", "BIDIRECTIONAL", "SEQUENTIAL",
  };
  return kws;
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct Cursor {
  std::string_view src;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= src.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < src.size() ? src[pos + ahead] : '\0';
  }
  char advance() {
    char c = src[pos++];
    if (c == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    return c;
  }
};

}  // namespace

bool is_reserved_word(std::string_view word) {
  return keyword_table().count(word) > 0 || word == "call" || word == "set" ||
         word == "in" || word == "true" || word == "false";
}

LexResult tokenize(std::string_view src, const std::string& file) {
  LexResult out;
  Cursor cur{src};

  auto make_span = [&](int line, int col, int length) {
    return SourceSpan{file, line, col, length};
  };

  while (!cur.done()) {
    char c = cur.peek();

    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '/') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }

    int line = cur.line, col = cur.col;
    Token tok;

    if (ident_start(c)) {
      // A word, or a dotted path lexed greedily as one token.
      std::string text;
      size_t segments = 1;
      while (!cur.done() && ident_char(cur.peek())) text += cur.advance();
      while (cur.peek() == '.' && ident_start(cur.peek(1))) {
        text += cur.advance();  // '.'
        ++segments;
        while (!cur.done() && ident_char(cur.peek())) text += cur.advance();
      }
      tok.text = text;
      tok.span = make_span(line, col, static_cast<int>(text.size()));
      if (segments > 1) {
        tok.kind = TokenKind::Path;
      } else if (text == "true" || text == "false") {
        tok.kind = TokenKind::Bool;
        tok.bool_value = (text == "true");
      } else if (keyword_table().count(text)) {
        tok.kind = TokenKind::Keyword;
      } else {
        tok.kind = TokenKind::Ident;
      }
      out.tokens.push_back(std::move(tok));
      continue;
    }

    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string text;
      while (!cur.done() && std::isdigit(static_cast<unsigned char>(cur.peek())))
        text += cur.advance();
      tok.kind = TokenKind::Int;
      tok.text = text;
      tok.int_value = std::stoll(text);
      tok.span = make_span(line, col, static_cast<int>(text.size()));
      out.tokens.push_back(std::move(tok));
      continue;
    }

    auto single = [&](TokenKind kind, int length = 1) {
      tok.kind = kind;
      tok.text = std::string(src.substr(cur.pos, length));
      tok.span = make_span(line, col, length);
      for (int i = 0; i < length; ++i) cur.advance();
      out.tokens.push_back(tok);
    };

    switch (c) {
      case '{': single(TokenKind::LBrace); break;
      case '}': single(TokenKind::RBrace); break;
      case '(': single(TokenKind::LParen); break;
      case ')': single(TokenKind::RParen); break;
      case '[': single(TokenKind::LBracket); break;
      case ']': single(TokenKind::RBracket); break;
      case ',': single(TokenKind::Comma); break;
      case ';': single(TokenKind::Semicolon); break;
      case '=': single(TokenKind::Equals); break;
      case '.':
        if (cur.peek(1) == '.') {
          single(TokenKind::DotDot, 2);
        } else {
          single(TokenKind::Dot);
        }
        break;
      case '<':
        if (cur.peek(1) == '<') {
          single(TokenKind::ShiftLeft, 2);
        } else {
          cur.advance();
          out.diagnostics.push_back({Severity::Error, make_span(line, col, 1),
                                     "illegal character '<'", {}});
        }
        break;
      case '>':
        if (cur.peek(1) == '>') {
          single(TokenKind::ShiftRight, 2);
        } else {
          cur.advance();
          out.diagnostics.push_back({Severity::Error, make_span(line, col, 1),
                                     "illegal character '>'", {}});
        }
        break;
      default: {
        cur.advance();
        std::string msg = "illegal character '";
        if (std::isprint(static_cast<unsigned char>(c))) {
          msg += c;
        } else {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\x%02x", static_cast<unsigned char>(c));
          msg += buf;
        }
        msg += "'";
        out.diagnostics.push_back({Severity::Error, make_span(line, col, 1), msg, {}});
        break;
      }
    }
  }

  Token eof;
  eof.kind = TokenKind::Eof;
  eof.span = SourceSpan{file, cur.line, cur.col, 0};
  out.tokens.push_back(eof);
  return out;
}

const char* token_kind_name(TokenKind kind) {
  switch (kind) {
    case TokenKind::Keyword: return "keyword";
    case TokenKind::Ident: return "identifier";
    case TokenKind::Path: return "path";
    case TokenKind::Int: return "integer";
    case TokenKind::Bool: return "boolean";
    case TokenKind::LBrace: return "'{'";
    case TokenKind::RBrace: return "'}'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::LBracket: return "'['";
    case TokenKind::RBracket: return "']'";
    case TokenKind::Comma: return "','";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Equals: return "'='";
    case TokenKind::Dot: return "'.'";
    case TokenKind::DotDot: return "'..'";
    case TokenKind::ShiftLeft: return "'<<'";
    case TokenKind::ShiftRight: return "'>>'";
    case TokenKind::Eof: return "end of input";
  }
  return "?";
}

}  // namespace admarf
