// fixtures.hpp — shared test fixtures. TinyCase is the canonical
// two-point, two-voter instance whose ledger of values is frozen after
// confirmation by the brute-force oracle:
//   gibbs risk 0.5, majority vote risk 0.5, expected disagreement 0.5,
//   expected joint error 0.25, and on the all-positive-label target
//   variant: thm2 rhs 0.5, thm1 rhs 1.5.
#pragma once

#include "dabound/types.hpp"

namespace fixtures {

using dabound::FiniteDomain;
using dabound::Posterior;
using dabound::VoterMatrix;

// P_S uniform on {(x1,+1), (x2,-1)}.
inline FiniteDomain tiny_source() {
    return FiniteDomain({"x1", "x2"}, {0.5, 0.0}, {0.0, 0.5});
}

// Same marginal as tiny_source, every label +1.
inline FiniteDomain tiny_all_positive_target() {
    return FiniteDomain({"x1", "x2"}, {0.5, 0.5}, {0.0, 0.0});
}

// Same marginal as tiny_source, labels flipped.
inline FiniteDomain tiny_flipped_labels() {
    return FiniteDomain({"x1", "x2"}, {0.0, 0.5}, {0.5, 0.0});
}

// Voters {always +1, always -1}.
inline VoterMatrix tiny_voters() { return VoterMatrix({{1, 1}, {-1, -1}}); }

inline Posterior tiny_rho() { return Posterior({0.5, 0.5}); }

} // namespace fixtures
