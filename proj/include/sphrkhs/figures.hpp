#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sphrkhs/kernels.hpp"

namespace sphrkhs {

enum class Abscissa { Colatitude, Cosine };

/// Curve-family data for one of the kernel figures (ids 2..6).
struct FigureSpec {
  int id = 0;
  KernelKind family = KernelKind::CuiFreden;
  std::string parameter;  // "eta", "rho" or "kappa"
  std::vector<double> values;
  Abscissa abscissa = Abscissa::Colatitude;
  int samples = 181;
};

/// Parameter sweep for a figure id at its fixed increment.
/// Throws ParameterError for ids outside 2..6 or samples < 2.
FigureSpec figure_spec(int id, int samples = 181);

/// Abscissa grid: theta in [0, pi] or z in [-1, 1], endpoints included.
std::vector<double> figure_abscissae(const FigureSpec& spec);

/// Column of k values for one parameter value at every abscissa.
std::vector<double> figure_column(const FigureSpec& spec, double value);

/// Writes "# ..." comment lines, a header row, then one row per abscissa.
void write_figure_csv(const FigureSpec& spec, std::ostream& out);

/// Locale-independent %.17g formatting.
std::string format_real(double v, int digits = 17);

}  // namespace sphrkhs
