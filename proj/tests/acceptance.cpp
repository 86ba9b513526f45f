// Copyright 2026 The bqt-bench Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Acceptance suite: one PASS/FAIL line per criterion.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "bqt/analytic.hpp"
#include "bqt/channels.hpp"
#include "bqt/resources.hpp"
#include "bqt/sdp.hpp"
#include "bqt/verify.hpp"

#ifndef BQT_BINARY
#error "BQT_BINARY must name the bqt executable"
#endif

namespace {

using namespace bqt;
using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool converged(sdp::SolverStatus s) {
  return s == sdp::SolverStatus::optimal || s == sdp::SolverStatus::nearOptimal;
}

struct Outcome {
  int id;
  std::string title;
  bool pass = true;
  bool tolerated = false;  // failure matches the documented analysis
  std::string detail;
};

std::vector<Outcome> outcomes;

void report(const Outcome& o) {
  std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", o.id, o.title.c_str(), o.detail.c_str());
  std::fflush(stdout);
  outcomes.push_back(o);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// Largest POVM defect over all witnesses seen: completeness and positivity.
double worst_povm_defect = 0.0;
int witnesses_seen = 0;

void record_witness(const PovmTriple& w) {
  const Index n = w.k.rows();
  double defect = (w.k + w.l + w.n - ComplexMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  for (const auto* m : {&w.k, &w.l, &w.n}) defect = std::max(defect, -min_eigenvalue(*m));
  worst_povm_defect = std::max(worst_povm_defect, defect);
  ++witnesses_seen;
}

SdpSolution solve_recorded(const BipartiteState& rho, Index d) {
  SdpSolution s = ppt_simulation_error(rho, d);
  record_witness(s.witness);
  return s;
}

void no_resource() {
  const auto t0 = Clock::now();
  Outcome o{1, "no-resource benchmark", true, false, ""};
  const SdpSolution s = solve_recorded(BipartiteState(2, 2, DensityMatrix::maximally_mixed(4)), 2);
  const double err = std::abs(s.value - 0.75);
  bool exact = true;
  for (Index d = 2; d <= 10; ++d) {
    const double dd = static_cast<double>(d);
    exact = exact && no_resource_error(d) == 1.0 - 1.0 / (dd * dd);
  }
  const double elapsed = seconds_since(t0);
  o.pass = converged(s.status) && err <= 1e-6 && exact && elapsed < 5.0;
  o.detail = "sdp=" + fmt("%.10f", s.value) + " |diff|=" + fmt("%.2e", err) +
             " closed form exact for d=2..10: " + (exact ? "yes" : "no") + " time=" + fmt("%.2fs", elapsed);
  report(o);
}

void isotropic_grid() {
  const auto t0 = Clock::now();
  Outcome o{2, "isotropic grid", true, false, ""};
  double worst = 0.0;
  int points = 0, failures = 0;
  bool seen[3] = {false, false, false};
  std::string timings;
  for (Index dh : {2, 3, 4, 5, 6, 8}) {
    const auto t1 = Clock::now();
    for (int k = 0; k <= 20; ++k) {
      const double f = k / 20.0;
      const ErrorBranch e = isotropic_error(2, f, dh);
      seen[static_cast<int>(e.branch)] = true;
      const SdpSolution s = solve_recorded(isotropic_state({f, dh}), 2);
      const double gap = std::abs(s.value - e.value);
      worst = std::max(worst, gap);
      ++points;
      if (!converged(s.status) || gap > 1e-6) {
        ++failures;
        std::printf("    dHat=%ld F=%.2f sdp=%.10f formula=%.10f status=%s\n", static_cast<long>(dh), f, s.value,
                    e.value, sdp::to_string(s.status));
      }
    }
    timings += " dHat" + std::to_string(dh) + "=" + fmt("%.1fs", seconds_since(t1));
  }
  const bool all_branches = seen[0] && seen[1] && seen[2];
  o.pass = failures == 0 && all_branches;
  o.detail = std::to_string(points) + " points, max |sdp-formula|=" + fmt("%.2e", worst) +
             ", all three branches: " + (all_branches ? "yes" : "no") + ", time=" +
             fmt("%.0fs", seconds_since(t0)) + " (" + timings.substr(1) + ")";
  report(o);
}

void ideal_resource() {
  const auto t0 = Clock::now();
  Outcome o{3, "two-ebit resource", true, false, ""};
  // Two Bell pairs regrouped to (A1 A2)(B1 B2); no noise.
  const BipartiteState two_pairs = gadc_resource_state({0.0, 0.0});
  const SdpSolution s = solve_recorded(two_pairs, 2);
  const SdpSolution t = solve_recorded(max_entangled_state(4), 2);
  const double worst = std::max(std::abs(s.value), std::abs(t.value));
  o.pass = converged(s.status) && converged(t.status) && worst <= 1e-6;
  o.detail = "error=" + fmt("%.2e", s.value) + " (4-dim maximally entangled: " + fmt("%.2e", t.value) +
             ") time=" + fmt("%.2fs", seconds_since(t0));
  report(o);
}

void gadc_surface() {
  const auto t0 = Clock::now();
  Outcome o{4, "GADC surface", true, false, ""};
  double worst = 0.0, worst_corrected = 0.0, worst_symmetry = 0.0;
  int failures = 0, unexplained = 0, solver_trouble = 0;
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double g = i / 10.0, n = j / 10.0;
      const double analytic = gadc_error(g, n);
      worst_symmetry = std::max(worst_symmetry, std::abs(analytic - gadc_error(g, 1.0 - n)));
      const SdpSolution s = solve_recorded(gadc_resource_state({g, n}), 2);
      solver_trouble += converged(s.status) ? 0 : 1;
      const double gap = std::abs(s.value - analytic);
      const double corrected = std::abs(s.value - gadc_twirl_protocol_error(g, n));
      worst = std::max(worst, gap);
      worst_corrected = std::max(worst_corrected, corrected);
      if (gap > 1e-5) {
        ++failures;
        const bool floor_region = gadc_entanglement_fidelity({g, n}) < 0.25;
        if (!floor_region || corrected > 1e-5) ++unexplained;
      }
    }
  }
  o.pass = failures == 0 && worst_symmetry <= 1e-12 && solver_trouble == 0;
  o.tolerated = !o.pass && unexplained == 0 && worst_symmetry <= 1e-12 && solver_trouble == 0;
  o.detail = "121 points, max |sdp - (1 - max{F, 1/16})|=" + fmt("%.3e", worst) + " at " +
             std::to_string(failures) + " points over 1e-5; all of them have F < 1/4 where the SDP equals " +
             "1 - max{F, 1/4} (max |sdp - that|=" + fmt("%.2e", worst_corrected) + ", unexplained=" +
             std::to_string(unexplained) + "); N<->1-N symmetry " + fmt("%.1e", worst_symmetry) +
             "; time=" + fmt("%.0fs", seconds_since(t0));
  report(o);
}

void end_to_end() {
  const auto t0 = Clock::now();
  Outcome o{5, "reconstructed channel end-to-end", true, false, ""};
  struct Instance {
    std::string name;
    BipartiteState rho;
  };
  std::vector<Instance> instances;
  const std::pair<double, Index> iso[] = {{0.3, 2}, {0.6, 3}, {0.8, 4}, {0.9, 4}, {0.5, 5}};
  for (const auto& [f, dh] : iso) {
    instances.push_back({"iso(" + fmt("%.1f", f) + "," + std::to_string(dh) + ")", isotropic_state({f, dh})});
  }
  const std::pair<double, double> gad[] = {{0.1, 0.1}, {0.3, 0.2}, {0.5, 0.5}, {0.2, 0.8}, {0.6, 0.0}};
  for (const auto& [g, n] : gad) {
    instances.push_back({"gadc(" + fmt("%.1f", g) + "," + fmt("%.1f", n) + ")", gadc_resource_state({g, n})});
  }
  double worst = 0.0, lowest_eig = 0.0;
  int failures = 0;
  for (const auto& in : instances) {
    const SdpSolution s = solve_recorded(in.rho, 2);
    const ReconstructedChannel ch = build_reconstructed_channel(s.witness, in.rho, 2);
    const DiamondResult achieved = achieved_error_result(ch);
    const CpptpReport cp = check_cpptp(full_choi(ch), full_dims(ch));
    const double gap = std::abs(achieved.value - s.value);
    worst = std::max(worst, gap);
    lowest_eig = std::min(lowest_eig, cp.minEigenvalue);
    const bool ok = converged(s.status) && converged(achieved.status) && gap <= 1e-4 && cp.ok;
    if (!ok) {
      ++failures;
      std::printf("    %s sdp=%.8f achieved=%.8f cpptp=%d (%.2e)\n", in.name.c_str(), s.value, achieved.value,
                  cp.ok, cp.minEigenvalue);
    }
  }
  o.pass = failures == 0;
  o.detail = "10 instances, max |achieved-sdp|=" + fmt("%.2e", worst) +
             ", C-PPT-P of the full map (min eigenvalue " + fmt("%.1e", lowest_eig) + "), time=" +
             fmt("%.1fs", seconds_since(t0));
  report(o);
}

ChoiMatrix random_channel(Index d, Index rank, Rng& rng) {
  const ComplexMatrix u = haar_unitary(d * rank, rng);
  std::vector<ComplexMatrix> kraus;
  for (Index k = 0; k < rank; ++k) kraus.push_back(u.block(k * d, 0, d, d));
  return choi_of(KrausChannel(d, d, kraus));
}

void properties() {
  const auto t0 = Clock::now();
  Outcome o{6, "property suites", true, false, ""};
  std::vector<std::string> broken;

  Rng rng(20201015);

  // every witness produced above, plus random resources
  for (int t = 0; t < 10; ++t) {
    const Index da = 2 + t % 2;
    solve_recorded(BipartiteState(da, da, random_density_matrix(da * da, rng)), 2);
  }
  if (worst_povm_defect > 1e-7) broken.push_back("witness POVM");

  // twirl
  double twirl_defect = 0.0;
  for (Index d : {2, 3, 4}) {
    const BipartiteState s(d, d, random_density_matrix(d * d, rng));
    const BipartiteState once = twirl_to_isotropic(s);
    twirl_defect = std::max(twirl_defect, (twirl_to_isotropic(once).matrix() - once.matrix()).cwiseAbs().maxCoeff());
    for (int t = 0; t < 20; ++t) {
      const ComplexMatrix u = haar_unitary(d, rng);
      const ComplexMatrix uu = tensor(u, u.conjugate());
      twirl_defect =
          std::max(twirl_defect, (uu * once.matrix() * uu.adjoint() - once.matrix()).cwiseAbs().maxCoeff());
    }
  }
  if (twirl_defect > 1e-9) broken.push_back("twirl");

  // trace preservation of the damping channel
  double tp_defect = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (int j = 0; j < 10; ++j) {
      ComplexMatrix sum = ComplexMatrix::Zero(2, 2);
      const KrausChannel ch = gadc(i / 9.0, j / 9.0);
      for (const auto& a : ch.kraus()) sum += a.adjoint() * a;
      tp_defect = std::max(tp_defect, (sum - ComplexMatrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    }
  }
  if (tp_defect > 1e-12) broken.push_back("GADC trace preservation");

  const bool symmetric = verify_swap_symmetry(2, 50) && verify_swap_symmetry(3, 50);
  if (!symmetric) broken.push_back("swap symmetry");

  double continuity = 0.0;
  for (Index d = 2; d <= 5; ++d) {
    for (Index dh = 2; dh <= 40; ++dh) {
      const double edge = 1.0 / static_cast<double>(dh);
      const Branch next = dh <= d * d ? Branch::midDimension : Branch::highDimension;
      continuity = std::max(continuity, std::abs(isotropic_branch_value(Branch::noEntanglement, d, edge, dh) -
                                                 isotropic_branch_value(next, d, edge, dh)));
    }
    for (int k = 0; k <= 100; ++k) {
      const double f = k / 100.0;
      continuity = std::max(continuity, std::abs(isotropic_branch_value(Branch::midDimension, d, f, d * d) -
                                                 isotropic_branch_value(Branch::highDimension, d, f, d * d)));
    }
  }
  if (continuity > 1e-12) broken.push_back("branch continuity");

  double metric = 0.0;
  for (int t = 0; t < 5; ++t) {
    const ChoiMatrix a = random_channel(2, 1 + t % 3, rng);
    const ChoiMatrix b = random_channel(2, 1 + (t + 1) % 3, rng);
    const ChoiMatrix c = random_channel(2, 2, rng);
    const double ab = diamond_distance(a, b), ba = diamond_distance(b, a);
    const double bc = diamond_distance(b, c), ac = diamond_distance(a, c);
    const double aa = diamond_distance(a, a);
    metric = std::max({metric, std::abs(ab - ba), ac - ab - bc, std::abs(aa)});
  }
  if (metric > 1e-6) broken.push_back("diamond metric");

  o.pass = broken.empty();
  std::string list;
  for (const auto& b : broken) list += " " + b;
  o.detail = "POVM defect " + fmt("%.1e", worst_povm_defect) + " over " + std::to_string(witnesses_seen) +
             " witnesses; twirl " + fmt("%.1e", twirl_defect) + "; trace preservation " + fmt("%.1e", tp_defect) +
             "; swap symmetry " + (symmetric ? "ok" : "broken") + "; continuity " + fmt("%.1e", continuity) +
             "; metric " + fmt("%.1e", metric) + "; time=" + fmt("%.1fs", seconds_since(t0)) +
             (list.empty() ? "" : "; failing:" + list);
  report(o);
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void determinism() {
  const auto t0 = Clock::now();
  Outcome o{7, "sweep determinism", true, false, ""};
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / ("bqt_accept_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string flags = " sweep isotropic --d 2 --fidelity 0:1:0.125 --dim-resource 2:5:1 --method both --jobs 2";
  std::string outputs[2];
  bool ran = true;
  for (int k = 0; k < 2; ++k) {
    const fs::path out = dir / ("run" + std::to_string(k) + ".csv");
    const std::string cmd = std::string(BQT_BINARY) + flags + " --out " + out.string() + " > /dev/null";
    const int status = std::system(cmd.c_str());
    ran = ran && WIFEXITED(status) && WEXITSTATUS(status) == 0;
    outputs[k] = read_file(out);
  }
  fs::remove_all(dir);
  o.pass = ran && !outputs[0].empty() && outputs[0] == outputs[1];
  o.detail = std::string("two runs, ") + std::to_string(outputs[0].size()) + " bytes, identical: " +
             (outputs[0] == outputs[1] ? "yes" : "no") + ", time=" + fmt("%.1fs", seconds_since(t0));
  report(o);
}

}  // namespace

int main(int argc, char** argv) {
  // optional arguments: criterion numbers to run (default all)
  void (*const criteria[])() = {no_resource, isotropic_grid, ideal_resource, gadc_surface,
                                end_to_end,  properties,     determinism};
  std::vector<int> selected;
  for (int a = 1; a < argc; ++a) selected.push_back(std::atoi(argv[a]));
  if (selected.empty()) selected = {1, 2, 3, 4, 5, 6, 7};
  try {
    for (int c : selected) {
      if (c < 1 || c > 7) {
        std::printf("unknown criterion %d\n", c);
        return 2;
      }
      criteria[c - 1]();
    }
  } catch (const std::exception& e) {
    std::printf("[FAIL] aborted: %s\n", e.what());
    return 1;
  }
  int passed = 0, tolerated = 0, failed = 0;
  for (const auto& o : outcomes) {
    if (o.pass) {
      ++passed;
    } else if (o.tolerated) {
      ++tolerated;
    } else {
      ++failed;
    }
  }
  std::printf("summary: %d PASS, %d FAIL", passed, tolerated + failed);
  if (tolerated > 0) {
    std::printf(" (%d matching the documented analysis: the printed GADC expression exceeds the no-resource "
                "value where F < 1/4)",
                tolerated);
  }
  std::printf("\n");
  return failed == 0 ? 0 : 1;
}
