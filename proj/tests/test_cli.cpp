#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "xmod_io/commands.hpp"
#include "xmod_io/spec_document.hpp"

using namespace xmod;
using namespace xmod::io;

namespace {

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string cmd = std::string(XMOD_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n = 0;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string spec_path(const std::string& name) { return std::string(XMOD_SPEC_DIR) + "/" + name; }

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> shipped_specs() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(XMOD_SPEC_DIR))
    if (e.path().extension() == ".json") out.push_back(e.path().filename().string());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("spec examples: kl, adjust-classify and cohomology") {
  const Run kl = run_cli("kl " + spec_path("torus2.json"));
  CHECK(kl.exit_code == 0);
  const json k = json::parse(kl.out);
  CHECK(k["command"] == "kl");
  CHECK(k["status"] == "ok");
  CHECK(k["payload"]["trivial"] == true);

  const Run ac = run_cli("adjust-classify " + spec_path("matrix_aut2.json"));
  CHECK(ac.exit_code == 0);
  const json a = json::parse(ac.out);
  CHECK(a["payload"]["single_point"] == true);
  CHECK(a["payload"]["dim"] == 0);

  const Run co = run_cli("cohomology --k 3 " + spec_path("so3_product.json"));
  CHECK(co.exit_code == 0);
  CHECK(json::parse(co.out)["payload"]["dim"] == 1);
}

TEST_CASE("every shipped spec validates") {
  for (const auto& name : shipped_specs()) {
    CAPTURE(name);
    const CommandResult r = run_command_text("validate", read_file(spec_path(name)), {});
    CHECK(r.exit_code == 0);
    CHECK(r.report["status"] == "ok");
  }
}

TEST_CASE("reports are byte-identical across runs") {
  for (const std::string& args :
       {std::string("validate --seed 7 ") + spec_path("heisenberg3_product.json"),
        std::string("adjust-classify ") + spec_path("torus2.json"),
        std::string("butterfly-classify --butterfly xi ") + spec_path("xi_heisenberg3.json"),
        std::string("catalog torus --n 2 --J '1,2;0,3'")}) {
    CAPTURE(args);
    const Run first = run_cli(args), second = run_cli(args);
    CHECK(first.exit_code == second.exit_code);
    CHECK(first.out == second.out);
  }
  const std::string text = read_file(spec_path("path_abelian2.json"));
  Options opts;
  opts.seed = 3;
  CHECK(run_command_text("validate", text, opts).report.dump() == run_command_text("validate", text, opts).report.dump());
}

TEST_CASE("exit codes") {
  CHECK(run_cli("homotopy " + spec_path("so3_product.json")).exit_code == 0);
  // A mathematical "no": the two k_xi butterflies are not equivalent.
  const Run no = run_cli("butterfly-classify --butterfly xi --second id " + spec_path("xi_heisenberg3.json"));
  CHECK(no.exit_code == 1);
  CHECK(json::parse(no.out)["payload"]["equivalent"] == false);
  CHECK(run_cli("catalog path_truncation --base so3 --B '1,0,0;0,1,0;0,0,1'").exit_code == 1);
  CHECK(run_cli("kl /nonexistent/spec.json").exit_code == 2);
  CHECK(run_cli("kl --module nope " + spec_path("torus2.json")).exit_code == 2);
  CHECK(run_cli("catalog no_such_example").exit_code == 2);
}

TEST_CASE("malformed input reports a location") {
  const CommandResult syntax = run_command_text("validate", "{\n  \"algebras\": {\n    \"l\": [1,\n", {});
  CHECK(syntax.exit_code == 2);
  CHECK(syntax.report["status"] == "fail");
  CHECK(syntax.report["error"]["where"].get<std::string>().rfind("line ", 0) == 0);

  const CommandResult bad_rational = run_command_text(
      "cohomology", R"({"algebras": {"l": {"dim": 2, "brackets": [[0, 1, 1, "1/0"]]}}})", {});
  CHECK(bad_rational.exit_code == 2);
  CHECK(bad_rational.report["error"].contains("where"));

  const CommandResult bad_ref =
      run_command_text("kl", R"({"modules": {"m": {"h": "nope", "g": "nope", "t": "nope", "alpha": "nope"}}})", {});
  CHECK(bad_ref.exit_code == 2);
}

TEST_CASE("invalid crossed module loads and fails validation") {
  SpecBuilder sb;
  const LieAlgebra l = so3();
  Action ad;
  for (std::size_t i = 0; i < 3; ++i) ad.push_back(l.ad_basis(i));
  sb.add_algebra("l", l);
  sb.add_matrix("zero", Matrix(3, 3));
  json doc = sb.document();
  doc["actions"]["ad"] = to_json(ad, 3, 3);
  doc["modules"]["bad"] = {{"h", "l"}, {"g", "l"}, {"t", "zero"}, {"alpha", "ad"}};
  const CommandResult r = run_command_text("validate", doc.dump(), {});
  CHECK(r.exit_code == 1);
  CHECK(r.report["status"] == "fail");
}

TEST_CASE("catalog emit then validate round trip") {
  for (const auto& name : catalog_names()) {
    CAPTURE(name);
    CatalogParams p;
    if (name == "product") p.base = "heisenberg3";
    if (name == "path_truncation" || name == "flat_proxy") {
      p.base = "abelian";
      p.base_params = {2};
      p.b = "1,0;0,2";
    }
    if (name == "xi_butterfly") p.base = "heisenberg3";
    const json doc = emit_catalog(name, p);
    const CommandResult r = run_command_text("validate", doc.dump(), {});
    CHECK_MESSAGE(r.exit_code == 0, r.report.dump());
  }
  CatalogParams so3_zero;
  CHECK(run_command_text("validate", emit_catalog("path_truncation", so3_zero).dump(), {}).exit_code == 0);
  CHECK_THROWS(emit_catalog("nothing", {}));
}

TEST_CASE("catalog through the binary writes a spec that the other commands accept") {
  const auto path = std::filesystem::temp_directory_path() / "xmod_cli_torus.json";
  const Run w = run_cli("catalog torus --n 3 --J '1,0,2;0,1,0;3,0,1' -o " + path.string());
  REQUIRE(w.exit_code == 0);
  const Run classify = run_cli("adjust-classify " + path.string());
  CHECK(classify.exit_code == 0);
  CHECK(json::parse(classify.out)["payload"]["dim"] == 9);
  const Run check = run_cli("adjust-exists " + path.string());
  CHECK(check.exit_code == 0);
  std::filesystem::remove(path);
}

TEST_CASE("spec document round trip preserves objects") {
  SpecBuilder sb;
  sb.add_algebra("h3", heisenberg3());
  Cochain c(3, 2, 1);
  c.at({0, 1}, 0) = frac(2, 3);
  c.at({1, 0}, 0) = frac(-2, 3);
  sb.add_cochain("xi", c);
  Matrix m(2, 3);
  m(0, 2) = frac(-7, 5);
  sb.add_matrix("m", m);
  const SpecDocument doc = SpecDocument::parse(sb.document().dump());
  CHECK(doc.algebra("h3") == heisenberg3());
  CHECK(doc.cochain("xi") == c);
  CHECK(doc.matrix("m") == m);
}

TEST_CASE("parse helpers") {
  CHECK(parse_vector("1, -2/4,3") == Vec{Q(1), frac(-1, 2), Q(3)});
  CHECK(parse_matrix("1,0;2,1/2", 2, 2) == Matrix::from_rows({{Q(1), Q(0)}, {Q(2), frac(1, 2)}}, 2));
  CHECK_THROWS(parse_matrix("1,0;2", 2, 2));
  CHECK_THROWS(parse_vector("1,x"));
}

TEST_CASE("integrate-nilpotent through the command layer") {
  json j = json::parse(read_file(spec_path("heisenberg3_product.json")));
  const SpecDocument plain = SpecDocument::from_json(j);
  const CrossedModule& m = *plain.module("m");
  const TSpace ts = t_space(m.g(), m.h().dim());
  REQUIRE(ts.dim() > 1);
  const Cochain eta = ts.basis[0] + frac(2, 3) * ts.basis[1];
  j["cochains"]["eta"] = to_json(eta);
  const SpecDocument doc = SpecDocument::from_json(j);
  Options opts;
  opts.eta = "eta";
  opts.x = "1,2,3";
  opts.z = "0,0,0";
  const CommandResult zero = run_command("integrate-nilpotent", doc, opts);
  REQUIRE(zero.exit_code == 0);
  for (const auto& v : zero.report["payload"]["kappa"]) CHECK(v == "0");
  opts.z = "1,-1/2,2";
  const CommandResult r = run_command("integrate-nilpotent", doc, opts);
  REQUIRE(r.exit_code == 0);
  CHECK(r.report["payload"]["kappa"] == to_json(integrate_nilpotent(m, eta, parse_vector(opts.z), parse_vector(opts.x))));
  opts.z = "1,2";
  CHECK(run_command("integrate-nilpotent", doc, opts).exit_code == 2);
}
