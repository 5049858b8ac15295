#ifndef PWRELAX_ORACLES_HPP
#define PWRELAX_ORACLES_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pwrelax/cdc.hpp"
#include "pwrelax/formulations.hpp"
#include "pwrelax/milp.hpp"
#include "pwrelax/random.hpp"
#include "pwrelax/relax.hpp"

namespace pwrelax {

struct OracleResult {
  bool pass = true;
  std::string witness;  // reproducer for a failure
  std::string detail;
};

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;
  std::string detail;
  double seconds = 0.0;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;

  bool passed() const;
  void add(const std::string& name, const OracleResult& r, double seconds = 0.0);
  std::string to_json() const;
  std::string table() const;
};

// For support-killing formulations (rows sum_L lam <= z, sum_R lam <= 1 - z):
// every allowed support A(z) lies in a family set and every set is covered by some A(z).
OracleResult support_union_check(const CdcFamily& fam, const MilpModel& model, const FormulationArtifacts& art);

// Enumerates the integer assignments. Soundness: LP vertices for random
// objectives with z fixed map (through art.lambda_expr) into one family set.
// Completeness: every unit vector and centroid of every set is reachable.
OracleResult extended_union_check(const CdcFamily& fam, const MilpModel& model, const FormulationArtifacts& art, int samples,
                                  std::uint64_t seed);

struct IdealityResult {
  bool pass = true;
  int trials = 0;
  int fractional = 0;
  std::string witness;
};

// LP vertices for random integer objectives over (lambda, z) must have integral z.
// Informational mode always passes and only records the fractional count.
IdealityResult ideality_check(const MilpModel& model, const FormulationArtifacts& art, int trials, std::uint64_t seed,
                              bool informational = false);

OracleResult envelope_soundness(const Relaxation1D& relax, const ScalarFunction& f, int samples, std::uint64_t seed,
                                double tol = 1e-9);

// Relaxed optimum vs. objective values of sampled feasible points. The sampler
// returns nullopt for samples it rejects as infeasible.
OracleResult dual_bound_validity(double relaxed_optimum, bool maximize,
                                 const std::function<std::optional<double>(Rng&)>& sample_objective, int samples,
                                 std::uint64_t seed, double tol = 1e-9);

}  // namespace pwrelax

#endif
