#ifndef PWRELAX_SUITES_HPP
#define PWRELAX_SUITES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pwrelax/cdc.hpp"
#include "pwrelax/oracles.hpp"
#include "pwrelax/random.hpp"

namespace pwrelax {

// Random g1d family: a chain of d sets where neighbours share a block of at
// most two elements and every set owns enough private elements not to be
// nested in a neighbour. Element ids are shuffled.
CdcFamily random_g1d_family(Rng& rng, int d, int max_set);

// Random gnd family on a grid: lattice corners kept or dropped as a whole,
// elements shared by facet neighbours, and private elements per cell.
CdcFamily random_gnd_family(Rng& rng, const std::vector<int>& shape);

// Named verification suites used by `pwrelax verify` and the acceptance runner.
struct SuiteInfo {
  std::string name;
  std::string summary;
  double time_limit_seconds;
};

const std::vector<SuiteInfo>& suite_catalog();
// Throws UsageError for unknown names.
VerificationReport run_suite(const std::string& name, std::uint64_t seed);

VerificationReport suite_golden(std::uint64_t seed);
VerificationReport suite_counts(std::uint64_t seed);
VerificationReport suite_rankings(std::uint64_t seed);
VerificationReport suite_codes(std::uint64_t seed);
VerificationReport suite_covers(std::uint64_t seed);
VerificationReport suite_unions(std::uint64_t seed);
VerificationReport suite_ideality(std::uint64_t seed);
VerificationReport suite_grids(std::uint64_t seed);
VerificationReport suite_geometry(std::uint64_t seed);
VerificationReport suite_dual_bounds(std::uint64_t seed);
VerificationReport suite_roundtrip(std::uint64_t seed);

}  // namespace pwrelax

#endif
