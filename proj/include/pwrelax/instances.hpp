#ifndef PWRELAX_INSTANCES_HPP
#define PWRELAX_INSTANCES_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pwrelax/formulations.hpp"
#include "pwrelax/milp.hpp"
#include "pwrelax/random.hpp"
#include "pwrelax/relax.hpp"

namespace pwrelax {

// Planar arm with n revolute joints. Link i points along links[i] when all
// joint angles are zero.
struct KinematicsInstance {
  int n = 0;
  std::uint64_t seed = 0;
  std::vector<std::array<Rational, 2>> links;
  std::vector<Rational> lower, upper;  // joint angle bounds
  std::array<Rational, 2> x_des;
  Rational theta_des, theta_init, beta;

  void validate() const;
};

// Link lengths in [0.5, 1.5]; joint 1 in [-pi/2, pi/2], the rest in [-pi/4, pi/4];
// target uniform in the disc of radius sum(lengths); beta = 0.1.
KinematicsInstance gen_kinematics(int n, std::uint64_t seed);

// Share-of-choice product design with v customer types, S scenarios and an
// eta-dimensional design x in [0, 1]^eta.
struct SocInstance {
  int v = 0, S = 0, eta = 0;
  std::uint64_t seed = 0;
  Rational C;
  std::vector<Rational> shares;                          // lambda_i, sums to 1
  std::vector<std::vector<std::vector<Rational>>> beta;  // beta[i][s][j]
  std::vector<Rational> u;                               // utility hurdles

  void validate() const;
};

SocInstance gen_soc(int v, int S, int eta, const Rational& C, std::uint64_t seed);

struct InstanceModel {
  MilpModel model;
  std::vector<FormulationArtifacts> blocks;  // one per relaxed function
  std::vector<VarId> decision;               // theta (kinematics) or x (share-of-choice)
};

InstanceModel build_kinematics_model(const KinematicsInstance& inst, const MethodTag& tag, const RelaxationConfig& cfg);
InstanceModel build_soc_model(const SocInstance& inst, const MethodTag& tag, const RelaxationConfig& cfg);

// Nonlinear objective values, evaluated in double precision.
double kinematics_objective(const KinematicsInstance& inst, const std::vector<double>& theta);
// nullopt when a scenario floor constraint is violated.
std::optional<double> soc_objective(const SocInstance& inst, const std::vector<double>& x);

// Uniform points of the feasible box mapped to objective values.
std::optional<double> sample_kinematics(const KinematicsInstance& inst, Rng& rng);
std::optional<double> sample_soc(const SocInstance& inst, Rng& rng);

}  // namespace pwrelax

#endif
