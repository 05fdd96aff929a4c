#include "lmsr/operator.hpp"

#include <string>

#include "lmsr/errors.hpp"

namespace lmsr {

std::string_view symbol(Op op) noexcept {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
  }
  return "?";
}

std::string_view name(Op op) noexcept {
  switch (op) {
    case Op::Add: return "add";
    case Op::Sub: return "sub";
    case Op::Mul: return "mul";
    case Op::Div: return "div";
    case Op::Sqrt: return "sqrt";
    case Op::Exp: return "exp";
  }
  return "?";
}

Op parse_op(std::string_view token) {
  for (Op op : {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Sqrt, Op::Exp}) {
    if (token == symbol(op) || token == name(op)) return op;
  }
  throw ParseError("unknown operator '" + std::string(token) + "'");
}

}  // namespace lmsr
