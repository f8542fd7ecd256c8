#pragma once

// JSON and CSV formats for specs, solution requests and reports.

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "wbpr/coupled_constraints.hpp"
#include "wbpr/riesz_pauli.hpp"
#include "wbpr/solution_set.hpp"
#include "wbpr/strip_transfer.hpp"
#include "wbpr/verify_harness.hpp"

namespace wbpr {

using Json = nlohmann::json;

// A spec file: a disc factorization or a strip function. "domain" is
// "disc" or "strip"; disc specs carry no corners / scale / eta.
struct SpecFile {
  bool disc = false;
  StripFunction f;

  Evaluator evaluator() const;
  Grid1D default_grid() const;
};

Json to_json(const ZeroMultiset& z);
Json to_json(const AtomicMeasure& m);
Json to_json(const BoundaryLogModulus& L);
Json to_json(const DiscFactorization& d);
Json to_json(const StripFunction& f);
Json to_json(const SpecFile& s);
Json to_json(const StripData& d);
Json to_json(const VerificationReport& r);

// All parsers throw ParseError with the offending key in the message.
ZeroMultiset zeros_from_json(const Json& j);
AtomicMeasure measure_from_json(const Json& j);
BoundaryLogModulus outer_from_json(const Json& j);
DiscFactorization disc_from_json(const Json& j);
StripFunction strip_from_json(const Json& j);
SpecFile spec_from_json(const Json& j);
StripData strip_data_from_json(const Json& j);

// "i" keeps entry i, "i:k" keeps k copies of it; a JSON array of such
// tokens or integers.
FlipSelection selection_from_tokens(const std::vector<std::string>& tokens);
FlipSelection selection_from_json(const Json& j);

// {"kind": "star"} | {"kind": "exp", "eta": x} |
// {"kind": "odd", "sin_coeffs": [...]} | {"kind": "odd", "samples": [...]}.
OuterModifier outer_modifier_from_json(const Json& j, std::size_t grid_size);

struct SolutionRequest {
  std::optional<FlipSelection> flip;  // absent: keep every zero
  OddSingularPerturbation sigma;
  std::optional<OuterModifier> outer;
  double phase = 0.0;
  double eta = 0.0;
  bool use_star = false;
};

SolutionRequest request_from_json(const Json& j, std::size_t grid_size);
// Applies the request to `spec`. Disc specs reject eta / star / exp.
SpecFile apply_request(const SpecFile& spec, const SolutionRequest& req);

Json load_json(const std::string& path);
std::string read_text(const std::string& path);
// Write to a temporary sibling, then rename over `path`.
void write_atomic(const std::string& path, const std::string& content);
std::string dump(const Json& j);

// x, re, im, |f|, |g|, rel_err per line.
std::string modulus_csv(const std::vector<ModulusSample>& samples);

// The WBPR_GRID_DEFAULT override ("a:b:n") or 257 points on [-4, 4].
Grid1D env_real_grid();
// "a:b:n".
Grid1D parse_grid(const std::string& text, GridKind kind = GridKind::real_line);

}  // namespace wbpr
