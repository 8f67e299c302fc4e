#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "mixcurve/degree4.hpp"
#include "mixcurve/rootfind.hpp"
#include "mixcurve/winding.hpp"

namespace mixcurve::cli {

/// "a+bi", "a", "bi", "-i", "1e-3-2.5i"; no spaces. Throws std::invalid_argument.
Complex parse_complex(std::string_view text);
/// "z1,z2" with both parts in parse_complex syntax.
Point2 parse_point(std::string_view text);
/// "z1,z2;z1,z2;..."
std::vector<Point2> parse_points(std::string_view text);
/// "xmin,xmax,ymin,ymax"
Box parse_box(std::string_view text);

/// Header "theta,re,im", one row per sample, "\n" line ends, shortest round-trip decimals.
std::string format_trace_csv(const std::vector<TracePoint> &rows);
void emit_trace_csv(const std::vector<TracePoint> &rows, const std::string &path);

/// Runs one subcommand; args exclude the program name. Returns the process exit code:
/// 0 success, 1 usage or input error, 2 mathematically inconclusive.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace mixcurve::cli
