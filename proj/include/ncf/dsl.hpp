#pragma once

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ncf/fmkernel.hpp"
#include "ncf/ncpoly.hpp"

namespace ncf {

/// Polynomial over the given generator names, e.g. "2*u*z - 1",
/// "(x + y)^2", "1/2*x". Throws ParseError or UnknownGenerator.
NcPoly parse_poly(std::string_view text, const std::vector<std::string>& names);

/// `algebra NAME; gens x:0, d:1; rel d*x - x*d - 1; bound 3;`
/// Weights default to 0, `rel` may repeat or list several relations
/// separated by commas, `#` starts a comment.
Presentation parse_presentation(std::string_view text);
/// Canonical text; parse_presentation inverts it exactly.
std::string print_presentation(const Presentation& p);

/// `Z4xZ2`; Z0 raises ZeroModulus.
FiniteAbGroup parse_group(std::string_view text);

/// Generators of a quasi-special algebra as (shift, twist) indices:
/// `shift=(1,0);twist=(0,1)` or `shift=(1,0),twist=(0,2)` for one generator
/// with both parts. Twists are characters, indexed like the group.
std::vector<std::pair<std::size_t, std::size_t>> parse_fm_algebra(std::string_view text, const FiniteAbGroup& X);
std::string print_fm_algebra(const std::vector<std::pair<std::size_t, std::size_t>>& gens, const FiniteAbGroup& X);

}  // namespace ncf
