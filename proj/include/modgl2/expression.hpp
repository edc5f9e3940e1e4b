#pragma once

#include "modgl2/grothendieck_ring.hpp"

#include <string_view>
#include <vector>

namespace modgl2 {

// Parses sums like "[L_1(0)]", "2*[L_3(1)] - 1/2*[S_2(0)]". S-basis terms are
// converted, so the result is always in the L basis. A leading '{' is read as
// the RingElement JSON format instead.
RingElement parse_element(const GrothendieckRing& ring, std::string_view text);

// "k:m:j,k:m:j" with m and j optional (default 0), e.g. "50:0" or "8,8:0:1".
std::vector<SymmFactor> parse_factors(const FieldParams& params, std::string_view text);

} // namespace modgl2
