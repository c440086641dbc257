#pragma once

// Deterministic pretty-printer with minimal parenthesization.  Binder display
// hints are freshened against everything in scope, so printed output reparses
// to an alpha-equal expression.

#include <string>

#include "phoml/syntax.hpp"

namespace phoml {

std::string print(const Type& type);
std::string print(const Term& term);
std::string print(const Proof& proof);
std::string print(const Path& path);
std::string print(const Equation& eq);
std::string print(const Expr& expr);

}  // namespace phoml
