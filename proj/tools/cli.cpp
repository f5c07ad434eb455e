#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "sphrkhs/admissibility.hpp"
#include "sphrkhs/error.hpp"
#include "sphrkhs/figures.hpp"
#include "sphrkhs/kernels.hpp"
#include "sphrkhs/rkhs_space.hpp"
#include "sphrkhs/serialization.hpp"

namespace sphrkhs::cli {

namespace {

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json_argument(const std::string& value) {
  const std::string text = !value.empty() && value.front() == '{' ? value : read_file(value);
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("'" + value + "' is not valid JSON: " + e.what());
  }
}

// Numeric CSV rows; a first line that does not parse as numbers is a header.
// Lines starting with '#' are comments.
std::vector<std::vector<double>> read_csv(const std::string& path, std::size_t columns) {
  std::istringstream in(read_file(path));
  std::vector<std::vector<double>> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line.front() == '#') continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    bool numeric = true;
    while (std::getline(cells, cell, ',')) {
      try {
        std::size_t used = 0;
        row.push_back(std::stod(cell, &used));
        while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used]))) ++used;
        if (used != cell.size()) numeric = false;
      } catch (const std::exception&) {
        numeric = false;
      }
    }
    if (!numeric) {
      if (first) {
        first = false;
        continue;
      }
      throw InputError("non-numeric row in '" + path + "': " + line);
    }
    first = false;
    if (row.size() != columns)
      throw InputError("expected " + std::to_string(columns) + " columns in '" + path + "': " + line);
    rows.push_back(std::move(row));
  }
  return rows;
}

UnivariateCandidate candidate_from_name(const std::string& name) {
  if (name == "cui-raw") return cui_freden_raw();
  if (name == "lebedev-raw") return lebedev_raw();
  if (name.rfind("leggen-deriv-raw", 0) == 0) {
    double rho = 0.5;
    const auto eq = name.find("rho=");
    if (eq != std::string::npos) rho = std::stod(name.substr(eq + 4));
    return legendre_gen_deriv_raw(rho);
  }
  return candidate_from_kernel(parse_kernel_spec(name));
}

// Runs `body` with the stream selected by --output.
int with_output(const std::string& output, std::ostream& out, const std::function<int(std::ostream&)>& body) {
  if (output.empty() || output == "-") return body(out);
  std::ofstream file(output);
  if (!file) throw InputError("cannot write '" + output + "'");
  return body(file);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Reproducing-kernel Hilbert spaces on the 2-sphere"};
  app.require_subcommand(1);

  std::string kernel_spec;
  std::string output = "-";
  int degree = 0;
  double tol = kDefaultPositivityTolerance;
  std::string samples;
  double ridge = 0.0;
  std::string method = "gram";
  std::string f_arg, g_arg;
  std::optional<double> z_arg, theta_arg;
  int figure_id = 0;
  int figure_samples = 181;

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate the kernel profile k(z)");
  eval_cmd->add_option("--kernel", kernel_spec, "Kernel JSON or name:key=value")->required();
  auto* z_opt = eval_cmd->add_option("--z", z_arg, "Dot product z in [-1, 1]");
  eval_cmd->add_option("--theta", theta_arg, "Angular separation in radians")->excludes(z_opt);
  eval_cmd->add_option("--output", output, "Output path or -");

  auto* eigs_cmd = app.add_subcommand("eigs", "Closed-form eigenvalue table");
  eigs_cmd->add_option("--kernel", kernel_spec, "Kernel JSON or name:key=value")->required();
  eigs_cmd->add_option("-L,--degree", degree, "Largest degree")->required()->check(CLI::NonNegativeNumber);
  eigs_cmd->add_option("--output", output, "Output path or -");

  int admit_degree = kDefaultReportTruncation;
  auto* admit_cmd = app.add_subcommand("admit", "Admissibility report for a candidate profile");
  auto* admit_kernel = admit_cmd->add_option("--kernel", kernel_spec, "Built-in candidate or kernel");
  admit_cmd->add_option("--samples", samples, "CSV of z,k samples")->excludes(admit_kernel);
  admit_cmd->add_option("-L,--degree", admit_degree, "Truncation degree")->check(CLI::NonNegativeNumber);
  admit_cmd->add_option("--tol", tol, "Positivity tolerance");
  admit_cmd->add_option("--output", output, "Output path or -");

  auto* figure_cmd = app.add_subcommand("figure", "Curve-family data for figures 2-6");
  figure_cmd->add_option("id,--id", figure_id, "Figure id")->required();
  figure_cmd->add_option("--samples", figure_samples, "Abscissa sample count");
  figure_cmd->add_option("--output", output, "Output path or -");

  auto* inner_cmd = app.add_subcommand("innerprod", "RKHS inner product of two point expansions");
  inner_cmd->add_option("--f", f_arg, "Expansion JSON (inline or file)")->required();
  inner_cmd->add_option("--g", g_arg, "Expansion JSON (inline or file)")->required();
  inner_cmd->add_option("--method", method, "gram or spectral:L");
  inner_cmd->add_option("--output", output, "Output path or -");

  auto* fit_cmd = app.add_subcommand("fit", "Kernel interpolant through nodes");
  fit_cmd->add_option("--kernel", kernel_spec, "Kernel JSON or name:key=value")->required();
  fit_cmd->add_option("--samples", samples, "CSV with columns theta,phi,re,im")->required();
  fit_cmd->add_option("--ridge", ridge, "Diagonal regularization")->check(CLI::NonNegativeNumber);
  fit_cmd->add_option("--output", output, "Output path or -");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  }

  try {
    if (*eval_cmd) {
      const KernelFamily kernel = parse_kernel_spec(kernel_spec);
      if (!z_arg && !theta_arg) throw ParameterError("eval needs --z or --theta");
      const double z = z_arg ? *z_arg : std::cos(*theta_arg);
      const double value = kernel(z);
      return with_output(output, out, [&](std::ostream& os) {
        os << format_real(value, 15) << '\n';
        return kOk;
      });
    }

    if (*eigs_cmd) {
      const KernelFamily kernel = parse_kernel_spec(kernel_spec);
      return with_output(output, out, [&](std::ostream& os) {
        os << "l,lambda,alpha\n";
        for (int l = 0; l <= degree; ++l)
          os << l << ',' << format_real(kernel.eigenvalue(l)) << ',' << format_real(kernel.legendre_coefficient(l))
             << '\n';
        return kOk;
      });
    }

    if (*admit_cmd) {
      UnivariateCandidate candidate;
      if (!samples.empty()) {
        const auto rows = read_csv(samples, 2);
        std::vector<double> zs, ks;
        for (const auto& r : rows) {
          zs.push_back(r[0]);
          ks.push_back(r[1]);
        }
        candidate = candidate_from_samples(std::move(zs), std::move(ks), samples);
      } else if (!kernel_spec.empty()) {
        candidate = candidate_from_name(kernel_spec);
      } else {
        throw ParameterError("admit needs --kernel or --samples");
      }
      const AdmissibilityReport report = check_admissibility(candidate, admit_degree, tol);
      return with_output(output, out, [&](std::ostream& os) {
        os << to_json(report).dump(2) << '\n';
        if (report.admissible) return kOk;
        return report.is_indeterminate() ? kIndeterminate : kInadmissible;
      });
    }

    if (*figure_cmd) {
      const FigureSpec spec = figure_spec(figure_id, figure_samples);
      return with_output(output, out, [&](std::ostream& os) {
        write_figure_csv(spec, os);
        return kOk;
      });
    }

    if (*inner_cmd) {
      const PointExpansion f = expansion_from_json(read_json_argument(f_arg));
      const PointExpansion g = expansion_from_json(read_json_argument(g_arg));
      Complex value;
      if (method == "gram") {
        value = inner_product_gram(f, g);
      } else if (method.rfind("spectral", 0) == 0) {
        int truncation = 200;
        if (method.size() > 8) {
          if (method[8] != ':') throw ParameterError("method must be gram or spectral:L");
          const std::string digits = method.substr(9);
          std::size_t used = 0;
          try {
            truncation = std::stoi(digits, &used);
          } catch (const std::exception&) {
            used = 0;
          }
          if (used == 0 || used != digits.size() || truncation < 0)
            throw ParameterError("spectral truncation must be a non-negative integer");
        }
        if (!(f.kernel == g.kernel)) throw MismatchError("expansions use different kernels");
        const RkhsSpace space(f.kernel, truncation);
        value = inner_product_spectral(sh_analysis(f, truncation), sh_analysis(g, truncation), space);
      } else {
        throw ParameterError("method must be gram or spectral:L");
      }
      return with_output(output, out, [&](std::ostream& os) {
        os << format_real(value.real(), 15) << ' ' << format_real(value.imag(), 15) << '\n';
        return kOk;
      });
    }

    if (*fit_cmd) {
      const KernelFamily kernel = parse_kernel_spec(kernel_spec);
      const auto rows = read_csv(samples, 4);
      std::vector<UnitVector> nodes;
      std::vector<Complex> values;
      for (const auto& r : rows) {
        nodes.push_back(UnitVector::from_spherical(r[0], r[1]));
        values.emplace_back(r[2], r[3]);
      }
      const PointExpansion fitted = fit_interpolant(kernel, nodes, values, ridge);
      double residual = 0.0;
      for (std::size_t q = 0; q < nodes.size(); ++q) residual = std::max(residual, std::abs(eval(fitted, nodes[q]) - values[q]));
      const bool to_stdout = output.empty() || output == "-";
      const int code = with_output(output, out, [&](std::ostream& os) {
        os << to_json(fitted).dump(2) << '\n';
        return kOk;
      });
      (to_stdout ? err : out) << "max_node_residual " << format_real(residual, 15) << '\n';
      return code;
    }
  } catch (const SingularSystemError& e) {
    err << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const MismatchError& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidParameters;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomainOrInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDomainOrInput;
  }
  return kInvalidParameters;
}

}  // namespace sphrkhs::cli
