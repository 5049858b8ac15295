// pwrelax: build piecewise linear relaxations, emit MILP files, solve, verify.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
// 3 runtime error.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "pwrelax/bicliques.hpp"
#include "pwrelax/codes.hpp"
#include "pwrelax/formulations.hpp"
#include "pwrelax/instances.hpp"
#include "pwrelax/json_io.hpp"
#include "pwrelax/lp_io.hpp"
#include "pwrelax/suites.hpp"

namespace fs = std::filesystem;
using namespace pwrelax;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRuntime = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Directory for output files: --out, else $PWRELAX_OUT_DIR, else none (stdout).
std::optional<fs::path> out_dir(const std::string& flag) {
  if (!flag.empty()) return fs::path(flag);
  if (const char* env = std::getenv("PWRELAX_OUT_DIR"); env && *env) return fs::path(env);
  return std::nullopt;
}

void emit(const std::optional<fs::path>& dir, const std::string& file, const std::string& text) {
  if (!dir) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  fs::create_directories(*dir);
  fs::path p = *dir / file;
  std::ofstream o(p, std::ios::binary);
  if (!o) throw std::runtime_error("cannot write '" + p.string() + "'");
  o << text;
  std::cerr << "wrote " << p.string() << '\n';
}

// Runs fn(0..n-1) on up to `jobs` threads; results are stored by index.
void parallel_for(int n, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, std::min(jobs, n));
  if (jobs == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

struct InstanceFlags {
  std::string kind = "kinematics";
  std::string file;
  int n = 4;
  int v = 10, S = 6, eta = 15;
  std::string C = "0.2";
  std::uint64_t seed = 1;
};

void add_instance_flags(CLI::App* app, InstanceFlags& f, bool with_file) {
  app->add_option("--kind", f.kind, "kinematics or soc")->check(CLI::IsMember({"kinematics", "soc"}));
  if (with_file) app->add_option("--instance", f.file, "instance JSON file (overrides --kind and sizes)");
  app->add_option("--n", f.n, "kinematics: number of joints");
  app->add_option("--v", f.v, "soc: customer types");
  app->add_option("--S", f.S, "soc: scenarios");
  app->add_option("--eta", f.eta, "soc: design dimension");
  app->add_option("--C", f.C, "soc: scenario floor fraction");
  app->add_option("--seed", f.seed, "generator seed");
}

struct LoadedInstance {
  std::optional<KinematicsInstance> kin;
  std::optional<SocInstance> soc;
};

LoadedInstance load_instance(const InstanceFlags& f) {
  LoadedInstance li;
  if (!f.file.empty()) {
    std::string text = read_file(f.file);
    std::string kind = instance_kind(text);
    if (kind == "kinematics") li.kin = kinematics_from_json(text);
    else if (kind == "share_of_choice") li.soc = soc_from_json(text);
    else throw UsageError("unknown instance kind '" + kind + "'");
  } else if (f.kind == "kinematics") {
    li.kin = gen_kinematics(f.n, f.seed);
  } else {
    li.soc = gen_soc(f.v, f.S, f.eta, Rational::parse(f.C), f.seed);
  }
  return li;
}

InstanceModel build_model(const LoadedInstance& li, const MethodTag& tag, const RelaxationConfig& cfg) {
  return li.kin ? build_kinematics_model(*li.kin, tag, cfg) : build_soc_model(*li.soc, tag, cfg);
}

std::string bound_text(const std::optional<Rational>& r) { return r ? r->approx_decimal() : std::string("none"); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Piecewise linear relaxations as MILPs: build, emit, solve, verify"};
  app.require_subcommand(1);

  // relax
  auto* relax = app.add_subcommand("relax", "build a relaxation of one function and emit JSON and LP/MPS");
  std::string r_fn = "sin", r_method = "pwr-biclique", r_emit = "json,lp", r_out;
  double r_lo = 0.0, r_hi = 2.0 * std::numbers::pi, r_u = 0.0;
  RelaxationConfig r_cfg;
  relax->add_option("--f", r_fn, "sin, cos, exp or logistic")->check(CLI::IsMember({"sin", "cos", "exp", "logistic"}));
  relax->add_option("--lo", r_lo, "domain lower end");
  relax->add_option("--hi", r_hi, "domain upper end (default 2*pi)");
  relax->add_option("--u", r_u, "logistic hurdle u");
  relax->add_option("--npre", r_cfg.n_pre, "pre-split grid points");
  relax->add_option("--nseg", r_cfg.n_seg, "tangent segments per piece (power of two)");
  relax->add_option("--digits", r_cfg.snap_digits, "decimal digits kept in vertex coordinates");
  relax->add_option("--method", r_method, "method tag, e.g. pwr-biclique, merged-loge, base-zzi");
  relax->add_option("--emit", r_emit, "comma list of json, lp, mps");
  relax->add_option("--out", r_out, "output directory (default $PWRELAX_OUT_DIR, else stdout)");

  // instance
  auto* instance = app.add_subcommand("instance", "generate an instance and emit its JSON");
  InstanceFlags i_flags;
  std::string i_out;
  add_instance_flags(instance, i_flags, false);
  instance->add_option("--out", i_out, "output directory (default $PWRELAX_OUT_DIR, else stdout)");

  // solve
  auto* solve = app.add_subcommand("solve", "relax an instance and solve it with the built-in branch and bound");
  InstanceFlags s_flags;
  std::string s_method = "pwr-biclique", s_rule = "bland", s_emit;
  RelaxationConfig s_cfg;
  MipOptions s_opts;
  add_instance_flags(solve, s_flags, true);
  solve->add_option("--method", s_method, "method tag");
  solve->add_option("--npre", s_cfg.n_pre, "pre-split grid points");
  solve->add_option("--nseg", s_cfg.n_seg, "tangent segments per piece");
  solve->add_option("--node-limit", s_opts.node_limit, "branch-and-bound node cap");
  solve->add_option("--time-limit", s_opts.time_limit_seconds, "time cap in seconds");
  solve->add_option("--rule", s_rule, "bland or dantzig")->check(CLI::IsMember({"bland", "dantzig"}));
  solve->add_option("--emit", s_emit, "also write the model: lp or mps")->check(CLI::IsMember({"", "lp", "mps"}));

  // verify
  auto* verify = app.add_subcommand("verify", "run verification suites");
  std::vector<std::string> v_suites = {"all"};
  std::uint64_t v_seed = 20240607;
  int v_jobs = 1;
  std::string v_format = "table", v_json;
  verify->add_option("--suite", v_suites, "suite names or 'all'");
  verify->add_option("--seed", v_seed, "seed for randomized suites");
  verify->add_option("--jobs", v_jobs, "parallel suites");
  verify->add_option("--format", v_format, "table or json")->check(CLI::IsMember({"table", "json"}));
  verify->add_option("--json", v_json, "also write the JSON report to this file");
  bool v_list = false;
  verify->add_flag("--list", v_list, "list suites and exit");

  // codes
  auto* codes = app.add_subcommand("codes", "print Gray codes, edge rankings and biclique covers");
  std::string c_gray, c_rule = "mirror", c_family;
  int c_d = 0, c_ranking = 0;
  bool c_cover = false;
  codes->add_option("--gray", c_gray, "balanced or brgc")->check(CLI::IsMember({"balanced", "brgc"}));
  codes->add_option("--d", c_d, "number of words");
  codes->add_option("--ranking", c_ranking, "print the balanced ranking of a path with this many vertices");
  codes->add_option("--rule", c_rule, "odd split rule: mirror, ceil or floor")->check(CLI::IsMember({"mirror", "ceil", "floor"}));
  codes->add_flag("--cover", c_cover, "print Gray and merged biclique covers");
  codes->add_option("--family", c_family, "family JSON for --cover (default: chain of triangles with d sets)");

  // bench
  auto* bench = app.add_subcommand("bench", "seeded instance sweep; CSV on stdout");
  InstanceFlags b_flags;
  std::vector<std::string> b_methods = {"pwr-biclique", "pwr-balanced", "merged-loge"};
  int b_count = 3, b_jobs = 1;
  RelaxationConfig b_cfg;
  MipOptions b_opts;
  b_flags.n = 2;
  b_opts.time_limit_seconds = 60;
  add_instance_flags(bench, b_flags, false);
  bench->add_option("--methods", b_methods, "method tags");
  bench->add_option("--instances", b_count, "instances per method; seeds seed..seed+k-1");
  bench->add_option("--npre", b_cfg.n_pre, "pre-split grid points");
  bench->add_option("--nseg", b_cfg.n_seg, "tangent segments per piece");
  bench->add_option("--time-limit", b_opts.time_limit_seconds, "per-solve time cap");
  bench->add_option("--node-limit", b_opts.node_limit, "per-solve node cap");
  bench->add_option("--jobs", b_jobs, "parallel solves");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (*relax) {
      ScalarFunction f = function_by_name(r_fn, r_u);
      Relaxation1D r = build_relaxation(f, r_lo, r_hi, r_cfg);
      MethodTag tag = MethodTag::parse(r_method);
      MilpModel m("relax_" + r_fn);
      FormulationArtifacts art = attach_relaxation(m, r, tag, r_fn);
      (void)art;
      auto dir = out_dir(r_out);
      std::stringstream ss(r_emit);
      std::string what;
      while (std::getline(ss, what, ',')) {
        if (what == "json") emit(dir, r_fn + ".json", relaxation_to_json(r));
        else if (what == "lp") emit(dir, r_fn + ".lp", write_lp(m));
        else if (what == "mps") emit(dir, r_fn + ".mps", write_mps(m));
        else throw UsageError("unknown --emit format '" + what + "'");
      }
      return 0;
    }

    if (*instance) {
      LoadedInstance li = load_instance(i_flags);
      std::string text = li.kin ? instance_to_json(*li.kin) : instance_to_json(*li.soc);
      emit(out_dir(i_out), (li.kin ? "kinematics_" : "soc_") + std::to_string(i_flags.seed) + ".json", text);
      return 0;
    }

    if (*solve) {
      LoadedInstance li = load_instance(s_flags);
      MethodTag tag = MethodTag::parse(s_method);
      s_opts.rule = s_rule == "dantzig" ? PivotRule::Dantzig : PivotRule::Bland;
      InstanceModel im = build_model(li, tag, s_cfg);
      if (!s_emit.empty()) emit(out_dir(""), im.model.name() + "." + s_emit, s_emit == "lp" ? write_lp(im.model) : write_mps(im.model));
      auto t0 = std::chrono::steady_clock::now();
      MipSolution sol = mip_solve(im.model, s_opts);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      std::cout << "method   " << tag.str() << '\n'
                << "binaries " << im.model.integer_variables().size() << '\n'
                << "status   " << to_string(sol.status) << '\n'
                << "primal   " << bound_text(sol.primal) << '\n'
                << "dual     " << bound_text(sol.dual) << '\n'
                << "nodes    " << sol.nodes << '\n'
                << "seconds  " << secs << '\n';
      if (sol.status == MipStatus::Optimal && !sol.values.empty()) {
        std::vector<double> d;
        for (VarId v : im.decision) d.push_back(sol.values[static_cast<std::size_t>(v)].to_double());
        if (li.kin) {
          std::cout << "nonlinear objective at relaxed solution " << kinematics_objective(*li.kin, d) << '\n';
        } else if (auto o = soc_objective(*li.soc, d)) {
          std::cout << "nonlinear objective at relaxed solution " << *o << '\n';
        } else {
          std::cout << "relaxed solution violates a scenario floor\n";
        }
      }
      return 0;
    }

    if (*verify) {
      if (v_list) {
        for (const auto& s : suite_catalog()) std::cout << s.name << "  " << s.summary << '\n';
        return 0;
      }
      std::vector<std::string> names;
      for (const auto& s : v_suites) {
        if (s == "all") {
          for (const auto& c : suite_catalog()) names.push_back(c.name);
        } else {
          names.push_back(s);
        }
      }
      std::vector<VerificationReport> reports(names.size());
      for (const auto& n : names) {
        bool known = false;
        for (const auto& c : suite_catalog()) known = known || c.name == n;
        if (!known) throw UsageError("unknown suite '" + n + "'");
      }
      parallel_for(static_cast<int>(names.size()), v_jobs, [&](int i) { reports[static_cast<std::size_t>(i)] = run_suite(names[static_cast<std::size_t>(i)], v_seed); });
      bool pass = true;
      std::string json = "[\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        pass = pass && reports[i].passed();
        json += reports[i].to_json() + (i + 1 < reports.size() ? ",\n" : "\n");
        if (v_format == "table") std::cout << "[" << reports[i].suite << "]\n" << reports[i].table();
      }
      json += "]\n";
      if (v_format == "json") std::cout << json;
      if (!v_json.empty()) {
        std::ofstream o(v_json);
        if (!o) throw std::runtime_error("cannot write '" + v_json + "'");
        o << json;
      }
      if (v_format == "table") std::cout << (pass ? "ALL PASS" : "FAILURES") << '\n';
      return pass ? 0 : kExitFail;
    }

    if (*codes) {
      CutRule rule = c_rule == "ceil" ? CutRule::Ceil : c_rule == "floor" ? CutRule::Floor : CutRule::Mirror;
      bool printed = false;
      if (!c_gray.empty()) {
        if (c_d < 1) throw UsageError("--gray needs --d >= 1");
        GrayCode h = c_gray == "brgc" ? brgc_prefix(c_d) : balanced_gray(c_d, rule);
        for (const auto& w : h.words()) {
          for (auto b : w) std::cout << int(b);
          std::cout << '\n';
        }
        printed = true;
      }
      if (c_ranking > 0) {
        std::cout << balanced_ranking(c_ranking, rule).str() << '\n';
        printed = true;
      }
      if (c_cover) {
        CdcFamily fam;
        if (!c_family.empty()) {
          fam = family_from_json(read_file(c_family));
        } else {
          if (c_d < 1) throw UsageError("--cover needs --family or --d");
          std::vector<IndexSet> sets;
          for (int i = 0; i < c_d; ++i) sets.push_back({2 * i + 1, 2 * i + 2, 2 * i + 3});
          fam = CdcFamily(sets);
        }
        auto show = [](const std::string& title, const BicliqueCover& c) {
          std::cout << title << '\n';
          for (int j = 0; j < c.size(); ++j)
            std::cout << "  z" << j + 1 << ": L=" << to_string(c.bicliques[j].left) << " R=" << to_string(c.bicliques[j].right) << '\n';
        };
        show("gray cover (balanced code)", gray_cover(fam, balanced_gray(fam.size(), rule)));
        show("biclique cover (balanced ranking)", merge_cover(fam, balanced_ranking(fam.size(), rule)));
        printed = true;
      }
      if (!printed) throw UsageError("codes needs --gray, --ranking or --cover");
      return 0;
    }

    if (*bench) {
      std::vector<MethodTag> tags;
      for (const auto& m : b_methods) tags.push_back(MethodTag::parse(m));
      struct Row {
        std::string line;
      };
      const int n = static_cast<int>(tags.size()) * b_count;
      std::vector<Row> rows(static_cast<std::size_t>(n));
      parallel_for(n, b_jobs, [&](int k) {
        const MethodTag& tag = tags[static_cast<std::size_t>(k / b_count)];
        InstanceFlags f = b_flags;
        f.seed = b_flags.seed + static_cast<std::uint64_t>(k % b_count);
        std::ostringstream line;
        line << tag.str() << ',' << (f.kind == "kinematics" ? "kinematics" : "soc") << ',' << f.seed << ',';
        try {
          LoadedInstance li = load_instance(f);
          InstanceModel im = build_model(li, tag, b_cfg);
          auto t0 = std::chrono::steady_clock::now();
          MipSolution sol = mip_solve(im.model, b_opts);
          double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
          line << secs << ',' << to_string(sol.status) << ',' << (sol.primal ? sol.primal->approx_decimal() : "") << ','
               << (sol.dual ? sol.dual->approx_decimal() : "");
        } catch (const std::exception& e) {
          line << "0,error,,";
        }
        rows[static_cast<std::size_t>(k)].line = line.str();
      });
      std::cout << "method,instance,seed,time,status,primal,dual\n";
      for (const auto& r : rows) std::cout << r.line << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
