// Command-line driver: runs the verification matrix from a manifest and
// exposes the small demonstrations.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "superheis/manifest.hpp"

namespace sh = superheis;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open manifest file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_report(const sh::Report& rep) {
  std::printf("seed=%llu tolerance=%g\n", static_cast<unsigned long long>(rep.seed),
              rep.tolerance);
  for (auto& c : rep.checks) {
    std::printf("[%-4s] family %d  %-14s samples=%-4d max_residual=%.3e  %s\n",
                c.status.c_str(), c.family, c.check.c_str(), c.samples, c.max_residual,
                c.notes.c_str());
  }
}

int cmd_verify(const std::string& manifest_path, const std::string& report_path,
               std::optional<std::uint64_t> seed, std::optional<double> tolerance) {
  sh::Manifest m;
  try {
    m = sh::parse_manifest(read_file(manifest_path));
  } catch (const std::exception& e) {
    std::cerr << "manifest error: " << e.what() << "\n";
    return 2;
  }
  if (seed) m.seed = *seed;
  if (tolerance) {
    if (*tolerance <= 0.0) {
      std::cerr << "tolerance must be positive\n";
      return 2;
    }
    m.tolerance = *tolerance;
  }
  sh::Report rep = sh::run_manifest(m);
  print_report(rep);
  if (!report_path.empty()) {
    std::ofstream out(report_path, std::ios::binary);
    if (!out) {
      std::cerr << "cannot write report file: " << report_path << "\n";
      return 2;
    }
    out << sh::report_to_json(rep);
  }
  return rep.any_fail() ? 1 : 0;
}

int cmd_demo_r01() {
  sh::DemoR01Report rep = sh::demo_r01();
  std::printf("R^{0|1} regular representation on C^{1|1}, tau(f) = d/dxi\n\n");
  std::printf("part 1: standard super Hilbert space conditions\n");
  std::printf("  skewness system consistent: %s\n",
              rep.standard_shs_consistent ? "yes" : "no");
  std::printf("  %s\n\n", rep.inconsistency.c_str());
  std::printf("part 2: odd super scalar product <<chi,psi>> = conj(chi0) psi1 + conj(chi1) psi0\n");
  std::printf("  graded skew residual of tau(f): %.3e\n", rep.odd_pairing_skew_residual);
  std::printf("  tau(f)^2 residual:             %.3e\n", rep.tau_square_residual);
  return 0;
}

int cmd_list_families() {
  struct Row {
    int fam;
    const char* params;
    const char* space;
    const char* formula;
  };
  static const Row rows[] = {
      {1, "k, ell real; kappa, lambda odd", "C + 0 (p=0, q=0)",
       "rho psi = e^{i(ak + b ell + alpha kappa + beta lambda)} psi"},
      {2, "kappa odd, nonzero", "L2(R^2) + 0 (p=2, q=0)",
       "psi(x+b, y+a) e^{i alpha kappa x} e^{i beta kappa y} e^{i(gamma+(beta a+b alpha)/2)kappa}"},
      {3, "k real, nonzero", "L2(R) + L2(R) (p=1, q=1)",
       "psi(x+ka, xi-k alpha) e^{ibx} e^{-i beta xi} e^{ik(c+(ab-alpha beta)/2)}"},
      {4, "k real; kappa odd, nonzero", "L2(R) + L2(R) (p=1, q=1)",
       "psi(x+a, xi-alpha) e^{ib(k+xi kappa)} e^{i beta kappa x} e^{i(gamma+(beta a-b alpha)/2)kappa}"},
      {5, "k real nonzero; kappa odd nonzero", "L2(R) + L2(R) (p=1, q=1)",
       "psi(x+a, xi-alpha) e^{ib(xk+xi kappa)} e^{i beta(x kappa - xi k)} "
       "e^{i(gamma+(beta a-b alpha)/2)kappa} e^{ik(c+(ab+beta alpha)/2)}"},
      {6, "k, ell real; kappa odd nonzero", "C^2 + C^2 (p=0, q=2)",
       "psi(xi-beta, eta-alpha) e^{ia(xi kappa+k)} e^{ib(eta kappa+ell)} "
       "e^{i(gamma-(beta a+b alpha)/2)kappa}"},
      {7, "k, p real nonzero; kappa odd nonzero", "L2(R)^2 + L2(R)^2 (p=1, q=2)",
       "psi(x+a-pb, xi-alpha, eta-beta) e^{ib(xk+xi kappa+p eta kappa)} "
       "e^{i beta(x kappa-xi k)} e^{i(gamma-pb beta+(beta a-b alpha)/2)kappa} "
       "e^{ik(c+(ab+beta alpha-pb^2)/2)}"},
  };
  for (auto& r : rows) {
    std::printf("family %d\n  parameters: %s\n  Hilbert space: %s\n  rho: %s\n\n", r.fam,
                r.params, r.space, r.formula);
  }
  return 0;
}

int cmd_jacobi() {
  sh::Context ctx = sh::Context::make();
  static const char* names[6] = {"e0", "e1", "e2", "f0", "f1", "f2"};
  double worst = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      for (int k = 0; k < 6; ++k) {
        auto X = sh::AlgebraVector::basis(ctx.pool, i);
        auto Y = sh::AlgebraVector::basis(ctx.pool, j);
        auto Z = sh::AlgebraVector::basis(ctx.pool, k);
        auto sgn = [](int p, int q) { return (p * q) % 2 == 0 ? 1.0 : -1.0; };
        int pi = sh::AlgebraVector::slot_parity(i), pj = sh::AlgebraVector::slot_parity(j),
            pk = sh::AlgebraVector::slot_parity(k);
        auto res = sh::bracket(X, sh::bracket(Y, Z)) * sh::cplx{sgn(pi, pk)} +
                   sh::bracket(Y, sh::bracket(Z, X)) * sh::cplx{sgn(pj, pi)} +
                   sh::bracket(Z, sh::bracket(X, Y)) * sh::cplx{sgn(pk, pj)};
        double r = res.max_abs();
        worst = std::max(worst, r);
        std::printf("(%s,%s,%s) %.1e\n", names[i], names[j], names[k], r);
      }
  std::printf("max residual over 216 triples: %.3e\n", worst);
  return worst <= 1e-12 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification harness for a 3|3 Heisenberg-type super Lie group "
               "and its seven families of super unitary representations"};
  app.require_subcommand(1);

  std::string manifest_path, report_path, demo_name;
  std::optional<std::uint64_t> seed;
  std::optional<double> tolerance;

  auto* verify = app.add_subcommand("verify", "run the verification matrix from a manifest");
  verify->add_option("--manifest", manifest_path, "manifest file")->required();
  verify->add_option("--report", report_path, "write machine-readable JSON report");
  verify->add_option("--seed", seed, "override the run seed");
  verify->add_option("--tolerance", tolerance, "override the pass tolerance");

  auto* demo = app.add_subcommand("demo", "run a demonstration");
  demo->add_option("name", demo_name, "demo name (r01)")->required();

  app.add_subcommand("list-families", "print the seven families");
  app.add_subcommand("jacobi", "print the 216-triple graded Jacobi residual table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (verify->parsed()) return cmd_verify(manifest_path, report_path, seed, tolerance);
    if (demo->parsed()) {
      if (demo_name != "r01") {
        std::cerr << "unknown demo '" << demo_name << "'\n";
        return 2;
      }
      return cmd_demo_r01();
    }
    if (app.get_subcommand("list-families")->parsed()) return cmd_list_families();
    if (app.get_subcommand("jacobi")->parsed()) return cmd_jacobi();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
