#ifndef SIS_CLI_HPP
#define SIS_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "sis/rational.hpp"

namespace sis {

/// One axis of a sweep grid: "min:max:steps" gives `steps` evenly spaced
/// exact values including both ends; a bare value is a single point.
std::vector<Rational> parse_grid_axis(const std::string& text);

/// "r_min:r_max:steps x g_min:g_max:steps" (also accepts the multiplication sign).
struct GridSpec {
  std::vector<Rational> ratios;
  std::vector<Rational> gammas;
};
GridSpec parse_grid(const std::string& text);

/// Runs the `sis` command line (arguments exclude the program name).
/// Returns the process exit code: 0 success, 1 runtime failure (including
/// a sweep with failed points), 2 usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sis

#endif
