#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "bosestat/lanczos.hpp"
#include "config.hpp"
#include "runner.hpp"
#include "svgplot.hpp"

namespace fs = std::filesystem;
using bosestat::cli::Config;
using bosestat::cli::ConfigError;
using bosestat::cli::GlobalOptions;

namespace {

// Scratch directory, removed on destruction.
struct TempDir {
  fs::path path;

  explicit TempDir(const std::string& tag) {
    path = fs::temp_directory_path() / ("bosestat_" + tag);
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }

  fs::path file(const std::string& name, const std::string& body) const {
    const fs::path p = path / name;
    std::ofstream out(p, std::ios::binary);
    out << body;
    return p;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GlobalOptions out_to(const fs::path& dir, int threads = 1) {
  GlobalOptions options;
  options.out_dir = dir.string();
  options.threads = threads;
  return options;
}

}  // namespace

TEST_CASE("config parser round trip") {
  const Config c = Config::parse(
      "# comment\n"
      "[potential]\n"
      "kind = soft-sphere  \n"
      "v0 = 2.5\n"
      "radius = 0.5\n"
      "\n"
      "[experiment]\n"
      "n_grid = 4, 8,16\n"
      "deltas = 0.05,0.1\n"
      "seed = 12345678901234567890\n"
      "\n"
      "[output]\n"
      "plot = on\n");
  CHECK(c.has_section("potential"));
  CHECK(!c.has_section("lattice"));
  CHECK(c.has("potential", "kind"));
  CHECK(c.str("potential", "kind") == "soft-sphere");
  CHECK(c.number("potential", "v0") == 2.5);
  CHECK(c.str_or("model", "modes", "axis") == "axis");
  CHECK(c.int_list("experiment", "n_grid") == std::vector<int>{4, 8, 16});
  CHECK(c.number_list("experiment", "deltas") ==
        std::vector<double>{0.05, 0.1});
  CHECK(c.seed("experiment", "seed") == 12345678901234567890ull);
  CHECK(c.flag_or("output", "plot", false));
  CHECK(c.flag_or("output", "quiet", false) == false);
}

TEST_CASE("config parser rejects malformed input") {
  CHECK_THROWS_AS(Config::parse("[potential]\nk"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[potential\nkind = zero\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("kind = zero\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[]\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[nonsense]\nkind = zero\n"), ConfigError);
  CHECK_THROWS_AS(Config::parse("[potential]\nflavor = up\n"), ConfigError);
  CHECK_THROWS_AS(
      Config::parse("[potential]\nkind = zero\nkind = zero\n"), ConfigError);

  const Config c = Config::parse("[potential]\nv0 = fast\n");
  CHECK_THROWS_AS(c.number("potential", "v0"), ConfigError);
  CHECK_THROWS_AS(c.integer("potential", "v0"), ConfigError);
  CHECK_THROWS_AS(c.str("potential", "kind"), ConfigError);
  CHECK_THROWS_WITH_AS(c.str("potential", "kind"),
                       doctest::Contains("potential.kind"), ConfigError);
}

TEST_CASE("config error messages carry line numbers") {
  try {
    Config::parse("[potential]\nkind = zero\nbroken line\n");
    FAIL("expected a parse error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("config load reports missing files") {
  CHECK_THROWS_AS(Config::load("/nonexistent/bosestat.ini"), ConfigError);
}

TEST_CASE("exit code mapping") {
  using bosestat::cli::run_guarded;
  CHECK(run_guarded([] {}) == 0);
  CHECK(run_guarded([] { throw ConfigError("bad"); }) == 2);
  CHECK(run_guarded([] { throw std::invalid_argument("bad"); }) == 2);
  CHECK(run_guarded([] { throw std::runtime_error("numeric"); }) == 3);
  CHECK(run_guarded([] { throw bosestat::qsim::ConvergenceError("slow"); }) ==
        4);
}

TEST_CASE("scattering command writes both extractions") {
  TempDir dir("scat");
  const Config c = Config::parse(
      "[potential]\nkind = soft-sphere\nv0 = 2.0\nradius = 1.0\n");
  REQUIRE(bosestat::cli::cmd_scattering(c, out_to(dir.path)) == 0);

  const std::string report = slurp(dir.path / "a0.txt");
  const auto value_of = [&](const std::string& key) {
    const auto pos = report.find(key + "=");
    REQUIRE(pos != std::string::npos);
    return std::stod(report.substr(pos + key.size() + 1));
  };
  const double expected = 1.0 - std::tanh(1.0);  // kappa = 1 closed form
  CHECK(value_of("a0_tail") == doctest::Approx(expected).epsilon(1e-8));
  CHECK(value_of("a0_integral") == doctest::Approx(expected).epsilon(1e-8));
  CHECK(value_of("gap") <= 1e-10);

  const std::string csv = slurp(dir.path / "scattering.csv");
  CHECK(csv.rfind("r,f,V\n", 0) == 0);
}

TEST_CASE("scattering command on the zero potential") {
  TempDir dir("scat0");
  const Config c = Config::parse("[potential]\nkind = zero\n");
  REQUIRE(bosestat::cli::cmd_scattering(c, out_to(dir.path)) == 0);
  const std::string report = slurp(dir.path / "a0.txt");
  CHECK(report.find("a0_tail=0\n") != std::string::npos);
}

TEST_CASE("scattering command without a potential section fails as config") {
  TempDir dir("scatmissing");
  const Config c = Config::parse("[output]\nplot = off\n");
  CHECK(bosestat::cli::cmd_scattering(c, out_to(dir.path)) == 2);
}

TEST_CASE("lln command is deterministic across seeds and threads") {
  TempDir dir("lln");
  const Config c = Config::parse(
      "[lattice]\ncutoff = 1.2\n"
      "[model]\nmodes = axis\nstate_kind = product\n"
      "[experiment]\nn_grid = 4,6\nreplicas = 120\nseed = 5\n");

  REQUIRE(bosestat::cli::cmd_lln(c, out_to(dir.path / "a")) == 0);
  REQUIRE(bosestat::cli::cmd_lln(c, out_to(dir.path / "b")) == 0);
  REQUIRE(bosestat::cli::cmd_lln(c, out_to(dir.path / "t8", 8)) == 0);

  const std::string first = slurp(dir.path / "a" / "lln_results.csv");
  CHECK(first.rfind("N,replicas,delta,p_exceed,mean_w1,stderr_w1,sqrtN_mean_w1",
                    0) == 0);
  CHECK(first == slurp(dir.path / "b" / "lln_results.csv"));
  CHECK(first == slurp(dir.path / "t8" / "lln_results.csv"));

  GlobalOptions reseeded = out_to(dir.path / "c");
  reseeded.seed = 99;
  REQUIRE(bosestat::cli::cmd_lln(c, reseeded) == 0);
  CHECK(first != slurp(dir.path / "c" / "lln_results.csv"));
}

TEST_CASE("clt command writes tables and plots") {
  TempDir dir("clt");
  const Config c = Config::parse(
      "[lattice]\ncutoff = 1.2\n"
      "[model]\nmodes = axis\nstate_kind = product\n"
      "[experiment]\nn_grid = 32\nreplicas = 250\nseed = 3\n"
      "functions = identity | indicator:0.0\n"
      "[output]\nplot = on\n");
  REQUIRE(bosestat::cli::cmd_clt(c, out_to(dir.path, 2)) == 0);

  CHECK(slurp(dir.path / "clt_samples.csv").rfind("N,replica,j,value\n", 0) ==
        0);
  CHECK(slurp(dir.path / "clt_summary.csv")
            .rfind("j,k,sigma_model,sigma_sample,stderr\n", 0) == 0);
  CHECK(slurp(dir.path / "clt_histogram.svg").rfind("<svg", 0) == 0);
}

TEST_CASE("variance command on the free gas reports a vanishing gap") {
  TempDir dir("var0");
  const Config c = Config::parse(
      "[potential]\nkind = zero\n"
      "[lattice]\ncutoff = 1.2\n"
      "[model]\nmodes = axis\nstate_kind = exact-ground-state\n"
      "[experiment]\nn_grid = 3,5\nfunctions = identity\n");
  REQUIRE(bosestat::cli::cmd_variance(c, out_to(dir.path)) == 0);

  const std::string csv = slurp(dir.path / "variance_report.csv");
  CHECK(csv.rfind("N,lhs_times_N,sigma_norm_sq,gap\n", 0) == 0);
  std::istringstream rows(csv.substr(csv.find('\n') + 1));
  std::string row;
  int n_rows = 0;
  while (std::getline(rows, row)) {
    const auto last = row.rfind(',');
    CHECK(std::fabs(std::stod(row.substr(last + 1))) <= 1e-10);
    ++n_rows;
  }
  CHECK(n_rows == 2);
}

TEST_CASE("covariance command with a custom observable file") {
  TempDir dir("cov");
  const fs::path matrix = dir.file("obs.txt",
                                   "3\n"
                                   "0 0 0.25 0\n"
                                   "1 1 -1.0 0\n"
                                   "2 2 1.0 0\n"
                                   "0 1 0.5 0\n"
                                   "0 2 0.5 0\n");
  const Config c = Config::parse(
      "[lattice]\ncutoff = 1.2\n"
      "[model]\nmodes = axis\n"
      "[observable]\nkind = custom-matrix-file\nmatrix_file = " +
      matrix.string() + "\n");
  REQUIRE(bosestat::cli::cmd_covariance(c, out_to(dir.path)) == 0);

  const std::string sigma = slurp(dir.path / "sigma.csv");
  CHECK(sigma.rfind("j,px,py,pz,re,im\n", 0) == 0);
  const std::string cov = slurp(dir.path / "covariance.csv");
  CHECK(cov.rfind("j,k,value\n", 0) == 0);

  // identity on one function: a single 1x1 covariance entry
  CHECK(std::count(cov.begin(), cov.end(), '\n') == 2);
}

TEST_CASE("covariance command rejects bad observable files") {
  TempDir dir("covbad");
  const fs::path outside = dir.file("outside.txt", "2\n0 5 1 0\n");
  const Config base = Config::parse(
      "[lattice]\ncutoff = 1.2\n"
      "[observable]\nkind = custom-matrix-file\nmatrix_file = " +
      outside.string() + "\n");
  CHECK(bosestat::cli::cmd_covariance(base, out_to(dir.path)) == 2);

  const fs::path missing = dir.path / "nope.txt";
  const Config gone = Config::parse(
      "[lattice]\ncutoff = 1.2\n"
      "[observable]\nkind = custom-matrix-file\nmatrix_file = " +
      missing.string() + "\n");
  CHECK(bosestat::cli::cmd_covariance(gone, out_to(dir.path)) == 2);
}

TEST_CASE("configuration errors surface as exit code 2 across commands") {
  TempDir dir("cfg2");
  const Config no_grid = Config::parse(
      "[lattice]\ncutoff = 1.2\n[model]\nstate_kind = product\n");
  CHECK(bosestat::cli::cmd_lln(no_grid, out_to(dir.path)) == 2);

  const Config bad_modes = Config::parse(
      "[lattice]\ncutoff = 1.2\n[model]\nmodes = shell\n"
      "[experiment]\nn_grid = 4\n");
  CHECK(bosestat::cli::cmd_lln(bad_modes, out_to(dir.path)) == 2);

  const Config small_cutoff = Config::parse(
      "[lattice]\ncutoff = 0.5\n[experiment]\nn_grid = 4\n");
  CHECK(bosestat::cli::cmd_lln(small_cutoff, out_to(dir.path)) == 2);

  const Config orphan_potential = Config::parse(
      "[potential]\nkind = zero\n[experiment]\nn_grid = 4\n");
  CHECK(bosestat::cli::cmd_lln(orphan_potential, out_to(dir.path)) == 2);

  const Config quasifree_no_torus = Config::parse(
      "[lattice]\ncutoff = 1.2\n[model]\nstate_kind = quasifree\n"
      "[experiment]\nn_grid = 8\n");
  CHECK(bosestat::cli::cmd_clt(quasifree_no_torus, out_to(dir.path)) == 2);
}

TEST_CASE("svg plots are well formed") {
  bosestat::cli::SvgPlot plot("title text", "x", "y");
  plot.add_points({0.0, 1.0, 2.0}, {1.0, 0.5, 0.25}, "#336699");
  plot.add_line({0.0, 2.0}, {1.0, 0.25}, "#993333");
  plot.add_bars({0.5, 1.5}, {0.7, 0.3}, 0.8, "#339933");
  const std::string svg = plot.render();

  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(svg.find("title text") != std::string::npos);
  CHECK(std::count(svg.begin(), svg.end(), '\n') > 10);

  std::size_t circles = 0;
  for (std::size_t pos = svg.find("<circle"); pos != std::string::npos;
       pos = svg.find("<circle", pos + 1)) {
    ++circles;
  }
  CHECK(circles == 3);
  CHECK(svg.find("<polyline") != std::string::npos);
}

TEST_CASE("lln plot file is emitted when requested") {
  TempDir dir("llnplot");
  const Config c = Config::parse(
      "[lattice]\ncutoff = 1.2\n"
      "[model]\nmodes = axis\nstate_kind = product\n"
      "[experiment]\nn_grid = 4,8,16,32\nreplicas = 60\nseed = 2\n"
      "[output]\nplot = on\n");
  REQUIRE(bosestat::cli::cmd_lln(c, out_to(dir.path, 4)) == 0);
  CHECK(slurp(dir.path / "lln_scaling.svg").rfind("<svg", 0) == 0);
}
