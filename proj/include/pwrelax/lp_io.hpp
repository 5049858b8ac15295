#ifndef PWRELAX_LP_IO_HPP
#define PWRELAX_LP_IO_HPP

#include <string>

#include "pwrelax/milp.hpp"

namespace pwrelax {

// CPLEX-style LP text. Coefficients print as exact decimals when possible,
// otherwise as 17-digit decimals with the exact p/q carried in a comment line.
std::string write_lp(const MilpModel& model);
// Free-format MPS with the same exactness convention ('*' comments).
std::string write_mps(const MilpModel& model);

// Readers for the files produced above (not general-purpose LP/MPS readers).
MilpModel parse_lp(const std::string& text);
MilpModel parse_mps(const std::string& text);

}  // namespace pwrelax

#endif
