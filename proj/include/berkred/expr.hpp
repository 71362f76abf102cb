#pragma once

#include <string>

#include "berkred/valfield.hpp"

namespace berk {

// num/den as parsed, without cancelling common factors, so that degenerate
// inputs such as (z-1)/(z-1) stay visible to the caller.
struct ScalarFraction {
  Poly<Scalar> num;
  Poly<Scalar> den;
};

// expr := term (('+'|'-') term)*
// term := ['-'|'+'] factor (('*'|'/') factor)*
// factor := base ('^' integer)?
// base := 'z' | integer | 'pi' | 't' | 's' | '(' expr ')'
ScalarFraction parse_expression(const std::string& text, const FieldConfig* cfg);

// An expression without z.
Scalar parse_scalar(const std::string& text, const FieldConfig* cfg);

}  // namespace berk
