#ifndef PWRELAX_FORMULATIONS_HPP
#define PWRELAX_FORMULATIONS_HPP

#include <optional>
#include <string>
#include <vector>

#include "pwrelax/bicliques.hpp"
#include "pwrelax/cdc.hpp"
#include "pwrelax/codes.hpp"
#include "pwrelax/milp.hpp"
#include "pwrelax/relax.hpp"

namespace pwrelax {

// Base: one formulation per bounding function. Merged: one SOS2 structure over
// the merged breakpoints. PWR: the relaxation polytopes as a CDC. GND: grids.
enum class MethodFamily { Base, Merged, PWR, GND };
enum class Method { Inc, MC, CC, DLog, LogIB, LogE, ZZB, ZZI, SOS2native, Gray, Biclique };
enum class CodeKind { Brgc, Balanced };

struct MethodTag {
  MethodFamily family = MethodFamily::PWR;
  Method method = Method::Biclique;
  CodeKind code = CodeKind::Balanced;  // Gray only

  // "base-loge", "merged-inc", "pwr-brgc", "pwr-balanced", "pwr-biclique", "gnd-gray", ...
  std::string str() const;
  static MethodTag parse(const std::string& text);
  bool operator==(const MethodTag& o) const = default;
};

// Throws UsageError for combinations outside the supported roster.
void validate(const MethodTag& tag);
std::vector<MethodTag> method_roster();
std::string method_name(Method m);

struct FormulationArtifacts {
  MethodTag tag;
  std::vector<VarId> lambda;             // weight variables, when the formulation has them
  std::vector<LinearExpr> lambda_expr;   // weight of ground element v at index v-1
  std::vector<VarId> integers;           // binary / general-integer variables
  std::vector<VarId> aux;                // other continuous variables
  std::vector<ConId> rows;
  std::optional<VarId> x;
  std::vector<VarId> y;
};

// SOS2 over d+1 breakpoints with the given method (CC, LogIB, LogE, ZZB, ZZI, SOS2native).
FormulationArtifacts sos2_formulation(MilpModel& model, int d, Method method, const std::string& block = "");

// Graph of one continuous piecewise-linear function. If `x` is given it is used
// as the input variable; otherwise one is created.
FormulationArtifacts pwl_formulation(MilpModel& model, const Breakpoints& bp, Method method,
                                     const std::string& block = "", std::optional<VarId> x = std::nullopt);

// Several functions over one input, sharing a single SOS2 structure on the
// merged breakpoints. y[k] models functions[k].
FormulationArtifacts merged_formulation(MilpModel& model, const std::vector<Breakpoints>& functions, Method method,
                                        const std::string& block = "", std::optional<VarId> x = std::nullopt);

// Encoding of a g1d family: Inc, DLog, Gray (code) or Biclique (ranking).
struct PwrEncoding {
  Method method = Method::Biclique;
  CodeKind code_kind = CodeKind::Balanced;
  std::optional<GrayCode> code;          // overrides code_kind
  std::optional<EdgeRanking> ranking;    // overrides the balanced ranking
};

FormulationArtifacts cdc_formulation(MilpModel& model, const CdcFamily& fam, const PwrEncoding& enc,
                                     const std::string& block = "");

// Per-axis encoding of a gnd family.
struct AxisEncoding {
  Method method = Method::Gray;           // Gray or Biclique
  std::optional<GrayCode> code;
  std::optional<EdgeRanking> ranking;
};

FormulationArtifacts gnd_formulation(MilpModel& model, const CdcFamily& fam, const std::vector<AxisEncoding>& axes,
                                     const std::string& block = "");

// Graph relaxation of one function: x in [lo, hi] and y between the bounds.
// PWR uses the piece polytopes; Base and Merged use the two bounding functions.
FormulationArtifacts attach_relaxation(MilpModel& model, const Relaxation1D& relax, const MethodTag& tag,
                                       const std::string& block, std::optional<VarId> x = std::nullopt);

// PWR form with the lambda weights over the relaxation's vertex pool.
FormulationArtifacts pwr_attach(MilpModel& model, const Relaxation1D& relax, const PwrEncoding& enc,
                                const std::string& block, std::optional<VarId> x = std::nullopt);

// Number of binaries (or general integers) each method uses.
int expected_integer_count(const MethodTag& tag, int d);

}  // namespace pwrelax

#endif
