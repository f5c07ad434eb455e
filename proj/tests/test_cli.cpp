#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "sphrkhs/figures.hpp"
#include "sphrkhs/rkhs_space.hpp"
#include "sphrkhs/serialization.hpp"

using namespace sphrkhs;
using doctest::Approx;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "sphrkhs");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "sphrkhs_cli_tests";
  std::filesystem::create_directories(dir);
  return dir / name;
}

void write(const std::filesystem::path& path, const std::string& text) { std::ofstream(path) << text; }

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

}  // namespace

TEST_CASE("eval") {
  auto r = run({"eval", "--kernel", "leggen:rho=0.5", "--z", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(std::stod(r.out) == Approx(1.0 / (2.0 * kPi)).epsilon(1e-14));

  r = run({"eval", "--kernel", R"({"family": "VonMisesFisher", "params": {"kappa": 4}})", "--z", "1"});
  CHECK(r.code == cli::kOk);
  CHECK(std::stod(r.out) == Approx(4.0 * std::exp(4.0) / (kFourPi * std::sinh(4.0))).epsilon(1e-14));

  r = run({"eval", "--kernel", "lebedev:eta=6", "--z", "-1"});
  CHECK(r.code == cli::kOk);
  CHECK(std::abs(std::stod(r.out)) <= 1e-16);

  r = run({"eval", "--kernel", "vmf:kappa=16", "--theta", "0.5"});
  CHECK(std::stod(r.out) == Approx(0.359167166536776).epsilon(1e-14));

  CHECK(run({"eval", "--kernel", "leggen:rho=1.5", "--z", "0"}).code == cli::kInvalidParameters);
  CHECK(run({"eval", "--kernel", "vmf:kappa=0", "--z", "0"}).code == cli::kInvalidParameters);
  CHECK(run({"eval", "--kernel", "leggen:rho=0.5", "--z", "1.5"}).code == cli::kDomainOrInput);
  CHECK(run({"eval", "--kernel", "nonsense", "--z", "0"}).code == cli::kInvalidParameters);
  CHECK(run({"eval", "--kernel", "leggen", "--z", "0", "--theta", "1"}).code == cli::kInvalidParameters);
  CHECK(run({"eval", "--kernel", "leggen"}).code == cli::kInvalidParameters);
  CHECK(run({}).code == cli::kInvalidParameters);
}

TEST_CASE("eigs") {
  auto r = run({"eigs", "--kernel", "cui:eta=1", "-L", "2"});
  REQUIRE(r.code == cli::kOk);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 4u);
  CHECK(rows[0] == std::vector<std::string>{"l", "lambda", "alpha"});
  CHECK(std::stod(rows[1][1]) == 1.0);
  CHECK(std::stod(rows[2][1]) == Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK(std::stod(rows[3][1]) == Approx(1.0 / 30.0).epsilon(1e-15));
  CHECK(std::stod(rows[3][2]) == Approx(5.0 / (30.0 * kFourPi)).epsilon(1e-15));

  r = run({"eigs", "--kernel", "leggen:rho=0.5", "--degree", "2"});
  rows = csv_rows(r.out);
  CHECK(std::stod(rows[2][1]) == Approx(0.5 / 3.0).epsilon(1e-15));
  CHECK(std::stod(rows[3][1]) == Approx(0.05).epsilon(1e-15));

  r = run({"eigs", "--kernel", "vmf:kappa=4", "-L", "0"});
  rows = csv_rows(r.out);
  REQUIRE(rows.size() == 2u);
  CHECK(std::stod(rows[1][1]) == 1.0);
  CHECK(std::stod(rows[1][2]) == Approx(1.0 / kFourPi).epsilon(1e-15));

  CHECK(run({"eigs", "--kernel", "altgen:rho=-1", "-L", "2"}).code == cli::kInvalidParameters);
  CHECK(run({"eigs", "--kernel", "altgen", "-L", "-2"}).code == cli::kInvalidParameters);
}

TEST_CASE("admit") {
  auto r = run({"admit", "--kernel", "leggen:rho=0.5"});
  CHECK(r.code == cli::kOk);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["admissible"] == true);
  CHECK(j["exception_set"].empty());
  CHECK(j["truncation"] == 64);
  CHECK(j["lambdas"].size() == 65u);
  for (const char* key : {"label", "energy", "hilbert_schmidt_ok", "lambdas", "exception_set", "admissible",
                          "normalized", "nonnegative", "truncation", "tolerance"})
    CHECK(j.contains(key));

  r = run({"admit", "--kernel", "cui-raw", "-L", "50"});
  CHECK(r.code == cli::kInadmissible);
  j = nlohmann::json::parse(r.out);
  CHECK(j["exception_set"] == nlohmann::json::array({0}));

  r = run({"admit", "--kernel", "lebedev:eta=7"});
  CHECK(r.code == cli::kOk);
  j = nlohmann::json::parse(r.out);
  CHECK(j["admissible"] == true);
  CHECK(j["nonnegative"] == false);

  CHECK(run({"admit", "--kernel", "leggen-deriv-raw:rho=0.4", "-L", "20"}).code == cli::kInadmissible);
  CHECK(run({"admit", "--samples", scratch("missing.csv").string()}).code == cli::kDomainOrInput);
  CHECK(run({"admit"}).code == cli::kInvalidParameters);
}

TEST_CASE("admit from samples") {
  // Linear samples are reproduced exactly by the monotone cubic interpolant:
  // lambda_0 = 1, lambda_1 = 5e-13 (indeterminate), lambda_l = 0 beyond.
  const double slope = 3.0 * 5e-13 / kFourPi;
  std::ostringstream csv;
  csv << "z,k\n";
  for (int i = 0; i <= 8; ++i) {
    const double z = -1.0 + i / 4.0;
    csv << format_real(z) << ',' << format_real(1.0 / kFourPi + slope * z) << '\n';
  }
  const auto path = scratch("samples.csv");
  write(path, csv.str());
  auto r = run({"admit", "--samples", path.string(), "-L", "1"});
  CHECK(r.code == cli::kIndeterminate);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["indeterminate"] == nlohmann::json::array({1}));

  r = run({"admit", "--samples", path.string(), "-L", "0"});
  CHECK(r.code == cli::kOk);
  r = run({"admit", "--samples", path.string(), "-L", "2"});
  CHECK(r.code == cli::kInadmissible);

  write(path, "z,k\n-1,1\n0,oops\n1,1\n");
  CHECK(run({"admit", "--samples", path.string()}).code == cli::kDomainOrInput);
}

TEST_CASE("figure") {
  auto r = run({"figure", "6"});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("# warning") != std::string::npos);
  auto rows = csv_rows(r.out);
  REQUIRE(rows.size() == 182u);
  CHECK(rows[0][0] == "theta");
  CHECK(rows[0].size() == 102u);
  CHECK(rows[0][101] == "kappa=100");
  CHECK(std::stod(rows[1][101]) == Approx(100.0 / (2.0 * kPi * -std::expm1(-200.0))).epsilon(1e-14));
  CHECK(std::stod(rows[1][1]) == Approx(1.0 / kFourPi).epsilon(1e-15));

  r = run({"figure", "--id", "4", "--samples", "5"});
  rows = csv_rows(r.out);
  REQUIRE(rows.size() == 6u);
  CHECK(rows[0][1] == "rho=0.05");
  CHECK(std::stod(rows[5][0]) == Approx(kPi).epsilon(1e-15));
  CHECK(std::stod(rows[5][1]) == Approx(1.0 / (kFourPi * 1.05)).epsilon(1e-14));

  r = run({"figure", "3"});
  rows = csv_rows(r.out);
  CHECK(rows[0][0] == "z");
  std::size_t eta6 = 0;
  for (std::size_t c = 0; c < rows[0].size(); ++c)
    if (rows[0][c] == "eta=6") eta6 = c;
  REQUIRE(eta6 > 0);
  CHECK(std::stod(rows.back()[eta6]) == Approx(1.0 / kFourPi + 6.0 / (12.0 * kPi)).epsilon(1e-14));
  CHECK(std::abs(std::stod(rows[1][eta6])) <= 1e-16);

  CHECK(run({"figure", "7"}).code == cli::kInvalidParameters);
  CHECK(run({"figure", "2", "--samples", "1"}).code == cli::kInvalidParameters);
}

TEST_CASE("innerprod") {
  const std::string single = R"({"kernel": {"family": "VonMisesFisher", "params": {"kappa": 4}},
                                 "points": [[0.5, 1.0]], "coeffs": [[1, 0]]})";
  const std::string empty = R"({"kernel": {"family": "VonMisesFisher", "params": {"kappa": 4}},
                                "points": [], "coeffs": []})";
  auto r = run({"innerprod", "--f", single, "--g", single});
  REQUIRE(r.code == cli::kOk);
  double re = 0.0, im = 0.0;
  std::istringstream(r.out) >> re >> im;
  CHECK(re == Approx(KernelFamily::von_mises_fisher(4.0)(1.0)).epsilon(1e-14));
  CHECK(im == 0.0);

  r = run({"innerprod", "--f", single, "--g", empty});
  std::istringstream(r.out) >> re >> im;
  CHECK(re == 0.0);
  CHECK(im == 0.0);

  oracle::Directions rng(3);
  const auto k = KernelFamily::von_mises_fisher(16.0);
  const auto expansion = [&](int n) {
    std::vector<UnitVector> pts;
    std::vector<Complex> c;
    for (int i = 0; i < n; ++i) {
      pts.push_back(rng.next());
      c.push_back(rng.complex());
    }
    return PointExpansion(k, pts, c);
  };
  const auto f = expansion(3), g = expansion(3);
  const auto fpath = scratch("f.json");
  write(fpath, to_json(f).dump());
  const std::string gtext = to_json(g).dump();
  const auto gram = run({"innerprod", "--f", fpath.string(), "--g", gtext, "--method", "gram"});
  const auto spectral = run({"innerprod", "--f", fpath.string(), "--g", gtext, "--method", "spectral:200"});
  REQUIRE(gram.code == cli::kOk);
  REQUIRE(spectral.code == cli::kOk);
  double gr, gi, sr, si;
  std::istringstream(gram.out) >> gr >> gi;
  std::istringstream(spectral.out) >> sr >> si;
  CHECK(std::hypot(gr - sr, gi - si) <= 1e-6 * std::hypot(gr, gi));

  const std::string other = R"({"kernel": {"family": "LegendreGen", "params": {"rho": 0.5}},
                                "points": [[0.5, 1.0]], "coeffs": [[1, 0]]})";
  CHECK(run({"innerprod", "--f", single, "--g", other}).code == cli::kInvalidParameters);
  CHECK(run({"innerprod", "--f", single, "--g", other, "--method", "spectral"}).code == cli::kInvalidParameters);
  CHECK(run({"innerprod", "--f", single, "--g", single, "--method", "spectral:x"}).code == cli::kInvalidParameters);
  CHECK(run({"innerprod", "--f", single, "--g", single, "--method", "fourier"}).code == cli::kInvalidParameters);
  CHECK(run({"innerprod", "--f", "{not json", "--g", single}).code == cli::kDomainOrInput);
}

TEST_CASE("fit") {
  const auto path = scratch("nodes.csv");
  write(path, "theta,phi,re,im\n0.3,0.2,1,0\n");
  const auto out = scratch("fit.json");
  auto r = run({"fit", "--kernel", "vmf:kappa=4", "--samples", path.string(), "--output", out.string()});
  REQUIRE(r.code == cli::kOk);
  CHECK(r.out.find("max_node_residual") != std::string::npos);
  std::ifstream in(out);
  const auto fitted = expansion_from_json(nlohmann::json::parse(in));
  CHECK(fitted.coeffs[0].real() == Approx(1.0 / KernelFamily::von_mises_fisher(4.0)(1.0)).epsilon(1e-14));

  oracle::Directions rng(27);
  std::ostringstream zero_csv, y21_csv;
  for (int i = 0; i < 20; ++i) {
    const UnitVector x = rng.next();
    const Complex y = spherical_harmonic({2, 1}, x);
    zero_csv << format_real(x.theta()) << ',' << format_real(x.phi()) << ",0,0\n";
    y21_csv << format_real(x.theta()) << ',' << format_real(x.phi()) << ',' << format_real(y.real()) << ','
            << format_real(y.imag()) << '\n';
  }
  write(path, zero_csv.str());
  r = run({"fit", "--kernel", "vmf:kappa=16", "--samples", path.string()});
  REQUIRE(r.code == cli::kOk);
  for (const auto& c : nlohmann::json::parse(r.out)["coeffs"]) {
    CHECK(c[0] == 0.0);
    CHECK(c[1] == 0.0);
  }

  write(path, y21_csv.str());
  r = run({"fit", "--kernel", "vmf:kappa=16", "--samples", path.string()});
  REQUIRE(r.code == cli::kOk);
  const auto pos = r.err.find("max_node_residual ");
  REQUIRE(pos != std::string::npos);
  CHECK(std::stod(r.err.substr(pos + 18)) <= 1e-9);

  write(path, "0.3,0.2,1,0\n0.3,0.2,2,0\n");
  r = run({"fit", "--kernel", "vmf:kappa=4", "--samples", path.string()});
  CHECK(r.code == cli::kSingular);
  CHECK(run({"fit", "--kernel", "vmf:kappa=4", "--samples", path.string(), "--ridge", "0.01"}).code == cli::kOk);
}

TEST_CASE("serialization round trips") {
  for (const auto& k : {KernelFamily::cui_freden(2.0), KernelFamily::lebedev(3.0), KernelFamily::legendre_gen(0.25),
                        KernelFamily::legendre_gen_deriv(0.7, 1.5), KernelFamily::alt_gen(0.9),
                        KernelFamily::von_mises_fisher(12.0)}) {
    CHECK(kernel_from_json(to_json(k)) == k);
    CHECK(parse_kernel_spec(to_json(k).dump()) == k);
  }
  CHECK(to_json(KernelFamily::von_mises_fisher(4.0)) == nlohmann::json::parse(R"({"family": "VonMisesFisher", "params": {"kappa": 4}})"));
  CHECK(parse_kernel_spec("leggen-deriv:rho=0.3,c0=2") == KernelFamily::legendre_gen_deriv(0.3, 2.0));
  CHECK(parse_kernel_spec("VonMisesFisher:kappa=2") == KernelFamily::von_mises_fisher(2.0));
  CHECK(parse_kernel_spec("cui") == KernelFamily::cui_freden());

  oracle::Directions rng(5);
  const PointExpansion f(KernelFamily::alt_gen(), {rng.next(), rng.next()}, {Complex(1, 2), Complex(-0.5, 0.25)});
  const auto g = expansion_from_json(to_json(f));
  CHECK(g.kernel == f.kernel);
  CHECK(g.coeffs == f.coeffs);
  for (std::size_t i = 0; i < f.size(); ++i) {
    CHECK(g.points[i].theta() == f.points[i].theta());
    CHECK(g.points[i].phi() == f.points[i].phi());
  }
}

TEST_CASE("commands are deterministic") {
  const std::vector<std::vector<std::string>> commands = {
      {"eigs", "--kernel", "vmf:kappa=16", "-L", "40"},
      {"admit", "--kernel", "lebedev-raw"},
      {"figure", "5"},
      {"eval", "--kernel", "altgen:rho=2", "--theta", "1.234"}};
  for (const auto& c : commands) {
    const auto a = run(c), b = run(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("eigs and admit agree for every builtin") {
  for (const std::string spec : {"cui", "lebedev", "leggen", "leggen-deriv", "altgen", "vmf"}) {
    const auto eigs = csv_rows(run({"eigs", "--kernel", spec, "-L", "20"}).out);
    const auto admit = nlohmann::json::parse(run({"admit", "--kernel", spec, "-L", "20"}).out);
    const bool singular = parse_kernel_spec(spec).singular_at_one();
    for (int l = 0; l <= 20; ++l) {
      const double closed = std::stod(eigs[static_cast<std::size_t>(l + 1)][1]);
      const double quad = admit["lambdas"][static_cast<std::size_t>(l)];
      INFO(spec << " l=" << l);
      CHECK(std::abs(closed - quad) <= (singular ? 1e-6 * closed : 1e-10 * std::max(closed, 1e-4)));
    }
  }
}
