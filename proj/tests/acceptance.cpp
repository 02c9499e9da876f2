// Acceptance gate: one line per criterion, nonzero exit on any failure.
// Parameters and tolerances are pinned here and mirrored by
// fixtures/acceptance_run.json, which the CLI criterion replays.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "csq/harness.hpp"

using namespace csq;
namespace fs = std::filesystem;

namespace {

constexpr std::uint64_t kSeed = 20240211;
int failures = 0;

void line(const char* id, const char* label, bool ok, const std::string& note) {
  std::printf("%-4s %-34s %s (%s)\n", id, label, ok ? "PASS" : "FAIL", note.c_str());
  if (!ok) ++failures;
}

std::string err_note(const ScenarioReport& r, bool relative) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%s=%.3e, tol=%.1e, cases=%d",
                relative ? "max_rel" : "max_abs", relative ? r.max_rel_err : r.max_abs_err,
                r.tolerance, r.cases);
  return buf;
}

int exit_code(const std::string& cmd) {
  const int status = std::system((cmd + " > /dev/null 2>&1").c_str());
  return status == -1 ? -1 : (WIFEXITED(status) ? WEXITSTATUS(status) : -1);
}

}  // namespace

int main() {
  const QuadratureSpec spec{};

  {
    const ScenarioReport r = kernel_law_scenario({1, 2, 3}, 12, 1e-6, kSeed, spec);
    line("A1", "kernel ratio law", r.passed, err_note(r, true));
  }
  {
    const ScenarioReport r = epsilon_scenario({1, 2, 3, 4, 5}, 40, 1e-6, 1e-7, kSeed, spec);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "rel_std=%.3e, m1_err=%.3e", r.max_rel_err,
                  r.metrics["m1_value_err"].get<double>());
    line("A2", "epsilon constancy", r.passed, buf);
  }
  {
    const ScenarioReport r = overcompleteness_scenario({1, 2, 3, 4}, 1e-6, spec);
    line("A3", "overcompleteness identity", r.passed, err_note(r, false));
  }
  {
    const ScenarioReport r1 = cauchy_first_scenario(2, 20, 1e-10, kSeed, spec);
    const ScenarioReport r2 = cauchy_second_scenario(2, 10, 1e-10, kSeed, spec);
    const ScenarioReport r3 = cauchy_third_scenario(2, 8, 2, 1e-8, kSeed, spec);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "first=%.3e, second=%.3e, third_cv=%.3e", r1.max_abs_err,
                  r2.max_abs_err, r3.max_rel_err);
    line("A4", "Cauchy formulas", r1.passed && r2.passed && r3.passed, buf);
  }
  {
    const ScenarioReport r =
        mpoint_scenario({1, 3}, {2, 3, 4, 5}, 3, 1e-12, 1e-10, kSeed, spec);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "exact=%.3e, pullback=%.3e, zero_set=%s", r.max_abs_err,
                  r.metrics["max_pullback_err"].get<double>(),
                  r.metrics["zero_set_ok"].get<bool>() ? "ok" : "bad");
    line("A5", "m-point function laws", r.passed, buf);
  }
  {
    const ScenarioReport r = phase_area_scenario(20, 10, 1e-4, kSeed, spec);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "max_err=%.3e, fixture_phi_err=%.3e", r.max_abs_err,
                  r.metrics["fixture"]["phi_err"].get<double>());
    line("A6", "phase equals symplectic area", r.passed, buf);
  }
  {
    const ScenarioReport r = polar_divisor_scenario({1, 2, 3, 4, 5}, 10, kSeed, spec);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "root_err=%.3e, structure=%s", r.max_abs_err,
                  r.metrics["structure_ok"].get<bool>() ? "ok" : "bad");
    line("A7", "polar divisor structure", r.passed, buf);
  }
  {
    const ScenarioReport r = curvature_scenario({1, 2, 3}, 1e-3, 1e-4, 0.1, spec);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "residual=%.3e, control=%.3e", r.max_abs_err,
                  r.metrics["control_residual"].get<double>());
    line("A8", "quantization curvature condition", r.passed, buf);
  }
  {
    const ScenarioReport r = plucker_scenario(50, 1e-12, kSeed);
    char buf[96];
    std::snprintf(buf, sizeof(buf), "rel=%.3e, quadric=%.3e", r.max_rel_err,
                  r.metrics["max_quadric_err"].get<double>());
    line("A9", "Binet-Cauchy on the Grassmannian", r.passed, buf);
  }
  {
    const fs::path out = fs::temp_directory_path() / "csq_acceptance_cli";
    fs::remove_all(out);
    const std::string cfg = std::string(CSQ_FIXTURE_DIR) + "/acceptance_run.json";
    const int good = exit_code(std::string(CSQ_CLI_PATH) + " run --config " + cfg + " --out " +
                               out.string());
    const fs::path bad_cfg = out / "corrupt.json";
    fs::create_directories(out);
    std::ofstream(bad_cfg) << "{ not json at all";
    const int bad = exit_code(std::string(CSQ_CLI_PATH) + " run --config " + bad_cfg.string() +
                              " --out " + (out / "bad").string());
    char buf[64];
    std::snprintf(buf, sizeof(buf), "fixture_exit=%d, corrupt_exit=%d", good, bad);
    line("A10", "CLI end-to-end", good == 0 && bad == 2, buf);
    fs::remove_all(out);
  }

  std::printf("%s\n", failures == 0 ? "acceptance: all criteria passed"
                                    : "acceptance: criteria failed");
  return failures;
}
