#include "maghardy/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>

namespace maghardy {

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return ident_start(c) || std::isdigit(static_cast<unsigned char>(c)); }

}  // namespace

// Recursive-descent parser emitting postfix directly. Precedence, loosest to
// tightest: additive, multiplicative, unary minus, power (right associative).
class ExprParser {
 public:
  ExprParser(const std::string& text, const std::vector<std::string>& symbols, Expression& out)
      : s_(text), syms_(symbols), out_(out) {}

  void run() {
    parse_sum();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    out_.stack_need_ = max_depth_;
  }

 private:
  const std::string& s_;
  const std::vector<std::string>& syms_;
  Expression& out_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  int max_depth_ = 0;

  [[noreturn]] void fail(const std::string& msg) const { throw ExprError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) { ++pos_; return true; }
    return false;
  }

  void push(Expression::Op op, double value = 0.0, std::int32_t index = 0) {
    out_.code_.push_back({op, value, index});
    if (op == Expression::Op::kConst || op == Expression::Op::kVar) {
      ++depth_;
      if (depth_ > max_depth_) max_depth_ = depth_;
    } else if (op != Expression::Op::kNeg && op != Expression::Op::kSin &&
               op != Expression::Op::kCos && op != Expression::Op::kTan &&
               op != Expression::Op::kExp && op != Expression::Op::kLog &&
               op != Expression::Op::kSqrt) {
      --depth_;  // binary ops consume two, produce one
    }
  }

  void parse_sum() {
    parse_product();
    for (;;) {
      if (eat('+')) { parse_product(); push(Expression::Op::kAdd); }
      else if (eat('-')) { parse_product(); push(Expression::Op::kSub); }
      else return;
    }
  }

  void parse_product() {
    parse_unary();
    for (;;) {
      if (eat('*')) { parse_unary(); push(Expression::Op::kMul); }
      else if (eat('/')) { parse_unary(); push(Expression::Op::kDiv); }
      else return;
    }
  }

  void parse_unary() {
    skip_ws();
    if (eat('-')) { parse_unary(); push(Expression::Op::kNeg); return; }
    if (eat('+')) { parse_unary(); return; }
    parse_power();
  }

  void parse_power() {
    parse_primary();
    if (eat('^')) {
      parse_unary();  // right associative, and lets -x bind as exponent
      push(Expression::Op::kPow);
    }
  }

  void parse_primary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      parse_sum();
      if (!eat(')')) fail("expected ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number literal");
      pos_ += static_cast<std::size_t>(end - begin);
      push(Expression::Op::kConst, v);
      return;
    }
    if (ident_start(c)) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
      std::string name = s_.substr(start, pos_ - start);
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '(') {
        parse_call(name, start);
        return;
      }
      if (name == "pi") { push(Expression::Op::kConst, M_PI); return; }
      for (std::size_t i = 0; i < syms_.size(); ++i) {
        if (syms_[i] == name) {
          push(Expression::Op::kVar, 0.0, static_cast<std::int32_t>(i));
          return;
        }
      }
      pos_ = start;
      fail("unknown symbol '" + name + "'");
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void parse_call(const std::string& name, std::size_t name_pos) {
    struct Fn { const char* name; Expression::Op op; int arity; };
    static const Fn fns[] = {
        {"sin", Expression::Op::kSin, 1},  {"cos", Expression::Op::kCos, 1},
        {"tan", Expression::Op::kTan, 1},  {"exp", Expression::Op::kExp, 1},
        {"log", Expression::Op::kLog, 1},  {"sqrt", Expression::Op::kSqrt, 1},
        {"pow", Expression::Op::kPow, 2},  {"atan2", Expression::Op::kAtan2, 2},
    };
    const Fn* fn = nullptr;
    for (const auto& f : fns)
      if (name == f.name) { fn = &f; break; }
    if (!fn) {
      pos_ = name_pos;
      fail("unknown function '" + name + "'");
    }
    if (!eat('(')) fail("expected '('");
    parse_sum();
    for (int i = 1; i < fn->arity; ++i) {
      if (!eat(',')) fail("expected ','");
      parse_sum();
    }
    if (!eat(')')) fail("expected ')'");
    push(fn->op);
  }
};

Expression Expression::parse(const std::string& text, const std::vector<std::string>& symbols) {
  Expression e;
  e.text_ = text;
  ExprParser(text, symbols, e).run();
  return e;
}

bool Expression::references(std::size_t symbol_index) const {
  for (const auto& in : code_)
    if (in.op == Op::kVar && in.index == static_cast<std::int32_t>(symbol_index)) return true;
  return false;
}

double Expression::eval(const double* values) const {
  // stack_need_ is exact, but keep a floor so default-constructed objects
  // (empty program) don't hand a zero-length array to the compiler.
  double local[16];
  std::vector<double> heap;
  double* st = local;
  if (stack_need_ > 16) {
    heap.resize(static_cast<std::size_t>(stack_need_));
    st = heap.data();
  }
  int top = -1;
  for (const auto& in : code_) {
    switch (in.op) {
      case Op::kConst: st[++top] = in.value; break;
      case Op::kVar: st[++top] = values[in.index]; break;
      case Op::kAdd: st[top - 1] += st[top]; --top; break;
      case Op::kSub: st[top - 1] -= st[top]; --top; break;
      case Op::kMul: st[top - 1] *= st[top]; --top; break;
      case Op::kDiv: st[top - 1] /= st[top]; --top; break;
      case Op::kNeg: st[top] = -st[top]; break;
      case Op::kPow: st[top - 1] = std::pow(st[top - 1], st[top]); --top; break;
      case Op::kSin: st[top] = std::sin(st[top]); break;
      case Op::kCos: st[top] = std::cos(st[top]); break;
      case Op::kTan: st[top] = std::tan(st[top]); break;
      case Op::kExp: st[top] = std::exp(st[top]); break;
      case Op::kLog: st[top] = std::log(st[top]); break;
      case Op::kSqrt: st[top] = std::sqrt(st[top]); break;
      case Op::kAtan2: st[top - 1] = std::atan2(st[top - 1], st[top]); --top; break;
    }
  }
  return top >= 0 ? st[top] : 0.0;
}

}  // namespace maghardy
