#pragma once

#include <string_view>

namespace lmsr {

/// Operators that may label an internal gentree node.
enum class Op { Add, Sub, Mul, Div, Sqrt, Exp };

constexpr int arity(Op op) noexcept { return (op == Op::Sqrt || op == Op::Exp) ? 1 : 2; }

constexpr bool is_commutative(Op op) noexcept { return op == Op::Add || op == Op::Mul; }

constexpr bool is_additive(Op op) noexcept { return op == Op::Add || op == Op::Sub; }

/// Token used in the canonical prefix serialization: + - * / sqrt exp.
std::string_view symbol(Op op) noexcept;

/// Lower-case name used on the command line: add sub mul div sqrt exp.
std::string_view name(Op op) noexcept;

/// Accepts either the symbol or the name. Throws ParseError otherwise.
Op parse_op(std::string_view token);

}  // namespace lmsr
