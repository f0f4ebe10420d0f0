#pragma once

#include <cstddef>

#include "skelpot/poly.hpp"
#include "text_scanner.hpp"

namespace skelpot::detail {

// Parses a polynomial expression in at most `cap` variables, recording the
// largest variable index seen (1-based) in `max_index`.
Poly parse_poly_expr(Scanner& s, std::size_t cap, std::size_t& max_index);

// The same polynomial in r variables; every used index must be < r.
Poly with_dim(const Poly& p, std::size_t r);

}  // namespace skelpot::detail
