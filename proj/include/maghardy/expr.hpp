#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace maghardy {

// Thrown on malformed input text; offset is the byte position in the source
// string where parsing gave up.
struct ExprError : std::runtime_error {
  ExprError(const std::string& msg, std::size_t off)
      : std::runtime_error(msg + " at offset " + std::to_string(off)), offset(off) {}
  std::size_t offset;
};

// A scalar expression over a fixed list of named symbols, compiled to a flat
// postfix program. Supported: + - * / ^, unary minus, parentheses, number
// literals, the constant pi, and the functions
//   sin cos tan exp log sqrt pow atan2.
// Evaluation is pure and reentrant: all state lives in the instruction list,
// the caller supplies one double per symbol.
class Expression {
 public:
  Expression() = default;

  // symbols fixes both the accepted identifiers and the order of the values
  // array passed to eval(). Unknown identifiers are a parse error.
  static Expression parse(const std::string& text, const std::vector<std::string>& symbols);

  double eval(const double* values) const;
  double eval(const std::vector<double>& values) const { return eval(values.data()); }

  const std::string& text() const { return text_; }
  bool references(std::size_t symbol_index) const;

 private:
  enum class Op : std::uint8_t {
    kConst, kVar,
    kAdd, kSub, kMul, kDiv, kNeg, kPow,
    kSin, kCos, kTan, kExp, kLog, kSqrt, kAtan2,
  };
  struct Instr {
    Op op;
    double value = 0.0;  // kConst
    std::int32_t index = 0;  // kVar
  };

  std::vector<Instr> code_;
  std::string text_;
  int stack_need_ = 0;

  friend class ExprParser;
};

}  // namespace maghardy
