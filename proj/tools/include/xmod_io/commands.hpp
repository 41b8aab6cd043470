#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "xmod_io/spec_document.hpp"

namespace xmod::io {

enum class Status { ok, fail, undecided };

const char* status_name(Status s);

struct Options {
  std::string module;   // defaults to the only module of the document
  std::string module2;  // second module for `connect`
  std::string algebra;  // for `cohomology`; defaults to f of --module
  std::string butterfly;
  std::string butterfly2;  // second factor for `butterfly-compose`, comparison for `butterfly-classify`
  std::string section;     // matrix names
  std::string section2;
  std::string eta;  // cochain names
  std::string eta2;
  std::string b;
  std::string xi;
  std::string z;  // comma-separated rationals
  std::string x;
  std::size_t k = 2;
  std::size_t values = 1;
  std::uint64_t seed = 0;
  std::size_t samples = 64;
};

struct CommandResult {
  int exit_code = 0;  // 0 ok, 1 mathematical "no", 2 malformed input
  json report;
};

const std::vector<std::string>& command_names();

// Runs one command on a parsed document. Never throws; malformed input and
// violated preconditions come back with exit code 2.
CommandResult run_command(const std::string& command, const SpecDocument& doc, const Options& opts);
// Parses `text` first; syntax and reference errors also give exit code 2.
CommandResult run_command_text(const std::string& command, const std::string& text, const Options& opts);

struct CatalogParams {
  std::string base = "so3";  // standard algebra for product and path_truncation
  std::vector<std::size_t> base_params;
  std::size_t n = 2;      // torus rank, matrix_aut size
  std::size_t dim_a = 1;  // product
  std::string j;          // torus form, rows separated by ';'
  std::string b;          // invariant form on the base, same format; empty means zero
  std::size_t degree = 1;
  std::size_t fine_degree = 2;  // flat_proxy
  std::size_t cls = 0;          // xi_butterfly: index of the H^2(f, a) representative
};

const std::vector<std::string>& catalog_names();
// Self-contained spec for a catalog example, validated by `validate`.
// Throws std::invalid_argument on an unknown name or bad parameters.
json emit_catalog(const std::string& name, const CatalogParams& params);

Vec parse_vector(const std::string& text);
// "1,0;2,1/2" -> 2x2 matrix.
Matrix parse_matrix(const std::string& text, std::size_t rows, std::size_t cols);

}  // namespace xmod::io
