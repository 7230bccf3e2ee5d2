#pragma once

// Versioned JSON spec files for groups, states and charge operators, plus
// the loaded bundles the command layer works with.  Unknown fields are
// rejected, not ignored: a typo in a scientific input must not pass silently.

#include <json.hpp>

#include <optional>

#include "resources.hpp"

namespace ssr {

using Json = nlohmann::ordered_json;

struct GroupBundle {
  GroupPtr group;
  Representation rep;  // file-supplied, or the regular representation
  std::string description;
};

struct StateBundle {
  DensityOperator rho;
  std::optional<PureState> pure;
  std::optional<SymmetricPureState> symmetric;
  std::vector<ChargeOperator> charges;  // intrinsic (refbit, spin-plus) or file-supplied
  std::string description;
};

Json load_json_file(const std::string& path);

GroupBundle parse_group_spec(const Json& spec);
// Catalog name ("Z4", "S3", ...) or a path to a group spec file.
GroupBundle load_group(const std::string& name_or_path);

StateBundle parse_state_spec(const Json& spec, const GroupBundle* group);
// Builder shorthand ("refbit", "spin-plus", "spin-plus-2") or a file path.
StateBundle load_state(const std::string& name_or_path, const GroupBundle* group);

std::vector<ChargeOperator> parse_charges_spec(const Json& spec);
std::vector<ChargeOperator> load_charges(const std::string& path);

// Serialization helpers shared with the report layer.
Json complex_to_json(const Complex& z);
Json matrix_to_json(const Matrix& m);  // flat row-major [re, im] pairs
Matrix matrix_from_json(const Json& j, int rows, int cols, const std::string& what);

// Round to 15 significant digits; applied to every number that enters a
// report so that reruns are byte-identical.
double round_sig15(double v);

// FNV-1a digest of a canonical serialization (dims + rounded entries).
std::string state_digest(const DensityOperator& rho);

}  // namespace ssr
