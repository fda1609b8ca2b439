#ifndef HDLINK_LP_HPP
#define HDLINK_LP_HPP

#include "geom.hpp"

namespace hdl {

// Exact feasibility test for { x >= 0 : A x = b } via a Phase-I simplex
// method with Bland's rule (guaranteed to terminate, all arithmetic exact).
bool lp_feasible(const Mat& A, const std::vector<Rat>& b);

// Exact maximum of c.x over { x >= 0 : A x = b }; nullopt when infeasible.
// Throws on an unbounded program (callers only use bounded polytopes).
std::optional<Rat> lp_max(const Mat& A, const std::vector<Rat>& b,
                          const std::vector<Rat>& c);

} // namespace hdl

#endif
