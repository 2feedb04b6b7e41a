// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "edusat/formula.hpp"

namespace edusat {

/// Reads DIMACS CNF. Variable k becomes index k named "x<k>". An empty clause
/// list is Const(true); an empty clause is Const(false).
Formula from_dimacs(std::string_view text);

/// Writes an And of Or-of-literal clauses (a lone clause, literal or constant
/// is also accepted). Indices map to DIMACS numbers unchanged, or shifted by
/// one when the formula uses index 0. Throws DimacsError on non-CNF input.
std::string to_dimacs(const Formula& f);

}  // namespace edusat
