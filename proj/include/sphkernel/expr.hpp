#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sphkernel/typ.hpp"

namespace sph {

// Text grammar: elements are sums of  coeff*[e1,...,er]  terms, coefficients
// are integer combinations of q^k and s^k (parenthesized when they are sums),
// e.g.  q^2*[1,-2] + (1-q^2)*[0,-1].  A bare coefficient term denotes a
// rank-0 element.
Element parse_element(const std::string& text);
// Same, but checks the inferred rank.
Element parse_element(const std::string& text, int expected_rank);

Scalar parse_scalar(const std::string& text);

std::string render_element(const Element& e);

// JSON form: array of {"type": [...], "coeff": "<scalar text>"}, support keys
// in lexicographic order. Returned as serialized text to keep headers light.
std::string element_to_json(const Element& e);

// Gram matrix text: rows separated by ';', entries by ',', each entry
// a+b*t (t the quadratic generator), e.g. "1,0;0,3+1*t".
std::vector<std::vector<std::pair<long, long>>> parse_gram(const std::string& text);

// Comma-separated integer list, e.g. "1,1,0".
TypeVec parse_typevec(const std::string& text);

}  // namespace sph
