#ifndef RHT_PARSE_HPP
#define RHT_PARSE_HPP

#include <string_view>

#include "rht/cdga.hpp"

namespace rht {

/* Polynomial grammar shared by relations, differentials and morphism images:
 * '^' powers, '*' products, integer or rational coefficients, generator
 * names as identifiers, '+'/'-' and parentheses; whitespace insignificant. */
Element parse_element(const DGAlgebra& alg, std::string_view text);

}  // namespace rht

#endif
