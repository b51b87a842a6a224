#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncf/errors.hpp"
#include "ncf/ncpoly.hpp"

namespace ncf::cli {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "ncfourier 0.1.0";

/// Keys come out sorted (nlohmann's default object is a std::map), checks
/// keep their insertion order.
struct Report {
  std::string command;
  Json inputs = Json::object();
  Json data = Json::object();
  Json checks = Json::array();

  void check(const std::string& name, bool pass, const std::optional<std::string>& witness = std::nullopt);
  bool ok() const;
  Json to_json() const;
};

/// Two-space indented JSON followed by a newline.
std::string dump(const Json& j);

/// Error report emitted instead of a normal one.
Json error_json(const std::string& command, const Error& e);
/// 2 for malformed input, 1 for everything else.
int exit_code_for(const Error& e);

Json poly_to_json(const NcPoly& p);
/// Accepts the [{word, coeff}] form or DSL text.
NcPoly poly_from_json(const Json& j, const std::vector<std::string>& names);
Json presentation_to_json(const Presentation& p);
/// Accepts an object {name, gens, relations, bound} or DSL text.
Presentation presentation_from_json(const Json& j);

struct AlgOptions {
  int max_d = 4;   // F^0 .. F^max_d
  int rd_top = 2;  // r_0 .. r_rd_top
};
Report run_alg(const Presentation& P, const AlgOptions& opt);

Report run_etale_lift(const Json& diagram);
Report run_etale_check(const Json& family, const std::optional<Json>& alpha);

struct MicrolocOptions {
  int n = 1;
  std::optional<std::string> localize;  // "f=<poly>"
  std::optional<std::string> lift;
  std::optional<int> order;             // tower shifts, defaults to the bound
};
Report run_microloc(const Presentation& P, const MicrolocOptions& opt);

struct FmOptions {
  std::string group;
  std::string algebra;
  std::string check = "all";
  std::uint64_t seed = 1;
  int samples = 10;
  int modules = 5;
};
Report run_fm(const FmOptions& opt);

struct OracleOptions {
  std::string kind;  // filtration | orthogonality | assoc
  int gens = 2;
  int bound = 4;
  std::string group = "Z6";
  std::uint64_t seed = 1;
  std::size_t budget = 1000000;
};
Report run_oracle(const OracleOptions& opt);

/// Budget from NCF_BUDGET, or the default.
std::size_t budget_from_env(std::size_t fallback = 1000000);

}  // namespace ncf::cli
