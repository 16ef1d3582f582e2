#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace gammareg::cli {

enum ExitCode : int {
  kOk = 0,
  kVerificationFailed = 1,
  kInputError = 2,
  kNumericError = 3,
  kResolutionRefused = 4,
};

struct RunConfig {
  std::string command;

  std::string input;
  std::string out;
  std::string report;
  std::string svg;
  std::string facets;
  std::string kit_out;

  // conjugate
  bool bi = false;
  std::string bi_out;
  double slope_min = 0.0;
  double slope_max = 0.0;
  std::size_t slope_count = 0;  // 0 = automatic slope grid

  // counterexample
  std::string phi = "power:1";
  double t_min = 1e-4;
  double t_max = 1e-2;
  std::size_t t_count = 9;
  bool linear_t = false;
  std::size_t n1d = 20001;
  double grading = 2.0;
  std::size_t n2d = 161;
  bool with_2d = false;
  double tolerance = 0.02;
  double oeps_threshold = 0.25;
  double eps_band = 1e-3;
  std::size_t samples = 10000;
  std::uint64_t seed = 20240917;

  // verify
  std::vector<std::string> only;
  bool json = false;

  unsigned threads = 0;  // GAMMAREG_THREADS; 0 = auto
};

// Replaces `--config FILE` (JSON object whose keys are flag names) by the
// equivalent flags placed before the explicit ones, so explicit flags win.
// args[0] is the subcommand. Throws ParseError.
std::vector<std::string> expand_config(const std::vector<std::string>& args);

// Full command line without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int cmd_conjugate(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_envelope(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_counterexample(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace gammareg::cli
