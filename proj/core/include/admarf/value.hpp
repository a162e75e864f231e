#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <variant>

namespace admarf {

/// A node credential: `sig` covers (subject, payload digest) under the
/// subject's key. `payload_hex` carries the signed payload so verification
/// can recompute the digest.
struct Certificate {
  std::string subject;
  std::string sig_hex;
  std::string payload_hex;

  bool operator==(const Certificate&) const = default;
};

/// Runtime value: lives in locals, metric cells, call arguments and results.
class Value {
 public:
  Value() = default;
  explicit Value(bool b) : v_(b) {}
  explicit Value(std::int64_t i) : v_(i) {}
  explicit Value(std::string s) : v_(std::move(s)) {}
  explicit Value(Certificate c) : v_(std::move(c)) {}

  bool is_null() const { return std::holds_alternative<std::monostate>(v_); }
  bool is_bool() const { return std::holds_alternative<bool>(v_); }
  bool is_int() const { return std::holds_alternative<std::int64_t>(v_); }
  bool is_string() const { return std::holds_alternative<std::string>(v_); }
  bool is_cert() const { return std::holds_alternative<Certificate>(v_); }

  bool as_bool() const { return std::get<bool>(v_); }
  std::int64_t as_int() const { return std::get<std::int64_t>(v_); }
  const std::string& as_string() const { return std::get<std::string>(v_); }
  const Certificate& as_cert() const { return std::get<Certificate>(v_); }

  bool operator==(const Value&) const = default;

  /// Compact display form for trace records.
  std::string display() const;

 private:
  std::variant<std::monostate, bool, std::int64_t, std::string, Certificate> v_;
};

/// Raised by evaluation operations on type/domain violations and unresolved
/// symbols.
class EvalError : public std::runtime_error {
 public:
  explicit EvalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace admarf
