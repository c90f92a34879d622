#pragma once

// Integer formulas used by the table resources: + - * / // % ( ), comparisons
// and && ||. "/" must divide exactly; "//" floors.

#include <map>
#include <string>

namespace jspec {

using Bindings = std::map<std::string, long>;

/// Throws InvalidInput on syntax errors, unbound names, inexact "/" or division by zero.
long evaluate_formula(const std::string& expr, const Bindings& vars = {});

/// Replaces every "{expr}" in a label with its value, e.g. "A_{n-1}" -> "A_3".
std::string substitute_label(const std::string& label, const Bindings& vars);

}  // namespace jspec
