#include "sphrkhs/figures.hpp"

#include <cmath>
#include <cstdio>

#include "sphrkhs/error.hpp"

namespace sphrkhs {

namespace {

std::vector<double> sweep(double first, double last, double step) {
  const int count = static_cast<int>(std::lround((last - first) / step)) + 1;
  std::vector<double> values;
  values.reserve(count);
  // Round to 1e-9 so headers read 0.55, not 0.55000000000000004.
  for (int i = 0; i < count; ++i) values.push_back(std::round((first + i * step) * 1e9) / 1e9);
  return values;
}

}  // namespace

std::string format_real(double v, int digits) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*g", digits, v);
  return buffer;
}

FigureSpec figure_spec(int id, int samples) {
  if (samples < 2) throw ParameterError("figure sample count must be >= 2");
  FigureSpec spec;
  spec.id = id;
  spec.samples = samples;
  switch (id) {
    case 2:
      spec.family = KernelKind::CuiFreden;
      spec.parameter = "eta";
      spec.values = sweep(0.5, 2.5, 0.05);
      break;
    case 3:
      spec.family = KernelKind::Lebedev;
      spec.parameter = "eta";
      spec.values = sweep(1.0, 6.0, 0.1);
      spec.abscissa = Abscissa::Cosine;
      break;
    case 4:
      spec.family = KernelKind::LegendreGen;
      spec.parameter = "rho";
      spec.values = sweep(0.05, 0.95, 0.025);
      break;
    case 5:
      spec.family = KernelKind::AltGen;
      spec.parameter = "rho";
      spec.values = sweep(0.2, 2.4, 0.05);
      break;
    case 6:
      spec.family = KernelKind::VonMisesFisher;
      spec.parameter = "kappa";
      spec.values = sweep(0.0, 100.0, 1.0);
      break;
    default: throw ParameterError("figure id must be one of 2, 3, 4, 5, 6");
  }
  return spec;
}

std::vector<double> figure_abscissae(const FigureSpec& spec) {
  std::vector<double> xs(static_cast<std::size_t>(spec.samples));
  const int last = spec.samples - 1;
  for (int i = 0; i <= last; ++i) {
    if (spec.abscissa == Abscissa::Colatitude)
      xs[i] = i == last ? kPi : kPi * i / last;
    else
      xs[i] = i == last ? 1.0 : -1.0 + 2.0 * i / last;
  }
  return xs;
}

std::vector<double> figure_column(const FigureSpec& spec, double value) {
  const auto xs = figure_abscissae(spec);
  std::vector<double> column(xs.size());
  if (spec.family == KernelKind::VonMisesFisher && value == 0.0) {
    column.assign(xs.size(), 1.0 / kFourPi);
    return column;
  }
  const KernelFamily kernel = KernelFamily::from_params(spec.family, {{spec.parameter, value}});
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double z = spec.abscissa == Abscissa::Colatitude ? std::cos(xs[i]) : xs[i];
    column[i] = kernel(z);
  }
  return column;
}

void write_figure_csv(const FigureSpec& spec, std::ostream& out) {
  const KernelFamily probe = KernelFamily::from_params(spec.family, {});
  out << "# figure " << spec.id << ": " << to_string(probe.kind()) << " profile k vs "
      << (spec.abscissa == Abscissa::Colatitude ? "co-latitude theta" : "z = cos(theta)") << '\n';
  if (spec.family == KernelKind::VonMisesFisher)
    out << "# warning: kappa=0 column is the uniform limit 1/(4 pi); kappa=0 is outside the admissible range\n";

  std::vector<std::vector<double>> columns;
  columns.reserve(spec.values.size());
  for (double v : spec.values) columns.push_back(figure_column(spec, v));

  out << (spec.abscissa == Abscissa::Colatitude ? "theta" : "z");
  for (double v : spec.values) out << ',' << spec.parameter << '=' << format_real(v, 10);
  out << '\n';
  const auto xs = figure_abscissae(spec);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << format_real(xs[i]);
    for (const auto& column : columns) out << ',' << format_real(column[i]);
    out << '\n';
  }
}

}  // namespace sphrkhs
