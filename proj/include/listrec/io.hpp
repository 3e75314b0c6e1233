#pragma once

#include <string>

#include <json.hpp>

#include "listrec/bl.hpp"
#include "listrec/bounds.hpp"
#include "listrec/codes.hpp"
#include "listrec/designs.hpp"
#include "listrec/search.hpp"

namespace listrec {

using json = nlohmann::ordered_json;

// Rationals are {"num":a,"den":b}. Parsing also accepts an integer or a string
// like "3/7" or "0.25".
json to_json(const Rational& r);
Rational rational_from_json(const json& j);

json to_json(const MatrixFp& m);  // array of rows
MatrixFp matrix_from_json(std::uint32_t p, std::size_t cols, const json& j);

json to_json(const Subspace& u);

json to_json(const CodeSpec& spec);
/// Missing FRS gamma uses the smallest generator of F_p^*, missing FRS alphas
/// use default_frs_points, missing MULT alphas use 0..n-1.
CodeSpec code_spec_from_json(const json& j);

json to_json(const ListTable& t);
ListTable list_table_from_json(const json& j);

json to_json(const BLInstance& inst);
BLInstance bl_instance_from_json(const json& j);

json to_json(const DiscreteDistribution& x);
DiscreteDistribution distribution_from_json(const json& j);

json to_json(const DesignReport& r);
json to_json(const BoundReport& r);
json to_json(const ZeroErrorListResult& r);
json to_json(const SearchOutcome& r);
json to_json(const ZeroErrorConfirmation& r);

json to_json(const Vec& v);

/// Reads a whole file; throws InvalidArgument when it cannot be opened.
std::string read_file(const std::string& path);
json read_json_file(const std::string& path);

}  // namespace listrec
