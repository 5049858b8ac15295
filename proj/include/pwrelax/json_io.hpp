#ifndef PWRELAX_JSON_IO_HPP
#define PWRELAX_JSON_IO_HPP

#include <string>

#include "pwrelax/cdc.hpp"
#include "pwrelax/instances.hpp"
#include "pwrelax/relax.hpp"

namespace pwrelax {

// Versioned JSON documents. Rationals are written as exact decimal strings, or
// "p/q" when no terminating decimal exists. Parsers throw UsageError.
inline constexpr int kJsonVersion = 1;

std::string family_to_json(const CdcFamily& fam);
CdcFamily family_from_json(const std::string& text);

std::string relaxation_to_json(const Relaxation1D& r);
Relaxation1D relaxation_from_json(const std::string& text);

std::string instance_to_json(const KinematicsInstance& inst);
std::string instance_to_json(const SocInstance& inst);
// "kinematics" or "share_of_choice".
std::string instance_kind(const std::string& text);
KinematicsInstance kinematics_from_json(const std::string& text);
SocInstance soc_from_json(const std::string& text);

}  // namespace pwrelax

#endif
