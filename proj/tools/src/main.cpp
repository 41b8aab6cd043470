#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "xmod/catalog.hpp"
#include "xmod_io/commands.hpp"

namespace {

std::string read_input(const std::string& path) {
  std::ostringstream ss;
  if (path == "-") {
    ss << std::cin.rdbuf();
  } else {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    ss << in.rdbuf();
  }
  return ss.str();
}

void add_run_flags(CLI::App* sub, xmod::io::Options& o) {
  sub->add_option("--module", o.module, "crossed module name");
  sub->add_option("--module2", o.module2, "second crossed module (connect)");
  sub->add_option("--algebra", o.algebra, "Lie algebra name (cohomology)");
  sub->add_option("--butterfly", o.butterfly, "butterfly name");
  sub->add_option("--second", o.butterfly2, "second butterfly (compose, classify)");
  sub->add_option("--section", o.section, "section matrix name");
  sub->add_option("--section2", o.section2, "second section matrix name");
  sub->add_option("--eta", o.eta, "adjustment cochain name");
  sub->add_option("--eta2", o.eta2, "second adjustment cochain name");
  sub->add_option("--b", o.b, "invariant form cochain name");
  sub->add_option("--xi", o.xi, "Alt^2(f, a) cochain name");
  sub->add_option("--z", o.z, "group element log, comma-separated rationals");
  sub->add_option("--x", o.x, "Lie algebra element, comma-separated rationals");
  sub->add_option("--k", o.k, "cohomological degree")->capture_default_str();
  sub->add_option("--values", o.values, "dimension of the trivial coefficient module")->capture_default_str();
  sub->add_option("--seed", o.seed, "seed for randomized sweeps")->capture_default_str();
  sub->add_option("--samples", o.samples, "samples per randomized sweep")->capture_default_str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations with Lie algebra crossed modules, adjustments and butterflies"};
  app.require_subcommand(1);
  bool verbose = false, timing = false;
  app.add_flag("-v,--verbose", verbose, "human-readable summary on stderr");
  app.add_flag("--timing", timing, "include wall time in the report");

  xmod::io::Options opts;
  std::string spec_path;
  std::string run_command;
  for (const auto& name : xmod::io::command_names()) {
    if (name == "catalog") continue;
    auto* sub = app.add_subcommand(name, "run '" + name + "' on a spec document");
    sub->add_option("spec", spec_path, "spec file, or - for stdin")->required();
    add_run_flags(sub, opts);
    sub->callback([&run_command, name] { run_command = name; });
  }

  xmod::io::CatalogParams cat;
  std::string cat_name, out_path, cat_spec;
  auto* catalog = app.add_subcommand("catalog", "emit a catalog example, or list the contents of a spec");
  catalog->add_option("name", cat_name, "product | torus | matrix_aut | path_truncation | flat_proxy | xi_butterfly");
  catalog->add_option("--spec", cat_spec, "list the named objects of this spec instead");
  catalog->add_option("--base", cat.base, "standard base algebra")->capture_default_str();
  catalog->add_option("--base-params", cat.base_params, "parameters of the base algebra");
  catalog->add_option("--n", cat.n, "torus rank or matrix size")->capture_default_str();
  catalog->add_option("--dim-a", cat.dim_a, "dimension of a for product")->capture_default_str();
  catalog->add_option("--J", cat.j, "torus form, rows separated by ';'");
  catalog->add_option("--B", cat.b, "invariant form on the base, rows separated by ';'");
  catalog->add_option("--degree", cat.degree, "truncation degree")->capture_default_str();
  catalog->add_option("--fine-degree", cat.fine_degree, "degree of the finer truncation (flat_proxy)")
      ->capture_default_str();
  catalog->add_option("--class", cat.cls, "index of the H^2 representative (xi_butterfly)")->capture_default_str();
  catalog->add_option("-o,--out", out_path, "write the spec here instead of stdout");
  catalog->callback([&run_command] { run_command = "catalog"; });

  CLI11_PARSE(app, argc, argv);

  const auto start = std::chrono::steady_clock::now();
  xmod::io::CommandResult result;
  if (run_command == "catalog" && cat_spec.empty()) {
    if (cat_name.empty()) {
      std::cerr << "catalog: pass a name or --spec\n";
      return 2;
    }
    try {
      const auto doc = xmod::io::emit_catalog(cat_name, cat);
      if (out_path.empty()) {
        std::cout << doc.dump(2) << "\n";
        return 0;
      }
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write " + out_path);
      out << doc.dump(2) << "\n";
      result.report = {{"command", "catalog"}, {"status", "ok"}, {"payload", {{"name", cat_name}, {"written", out_path}}}};
    } catch (const xmod::NoFiniteRealization& e) {
      result.exit_code = 1;
      result.report = {{"command", "catalog"}, {"status", "fail"}, {"payload", {{"realizable", false}, {"reason", e.what()}}}};
    } catch (const std::exception& e) {
      result.exit_code = 2;
      result.report = {{"command", "catalog"}, {"status", "fail"}, {"error", {{"message", e.what()}}}};
    }
  } else {
    const std::string path = run_command == "catalog" ? cat_spec : spec_path;
    std::string text;
    try {
      text = read_input(path);
    } catch (const std::exception& e) {
      std::cerr << e.what() << "\n";
      return 2;
    }
    result = xmod::io::run_command_text(run_command, text, opts);
  }
  const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  if (timing) result.report["timing_ms"] = ms;
  std::cout << result.report.dump(2) << "\n";
  if (verbose) {
    std::cerr << run_command << ": " << result.report.value("status", "fail") << " (exit " << result.exit_code << ", "
              << ms << " ms)\n";
    if (result.report.contains("error")) std::cerr << "  " << result.report["error"].value("message", "") << "\n";
  }
  return result.exit_code;
}
