#pragma once

// JSON encodings of the library's values. Rationals travel as strings
// ("3", "-7/2", "inf"); tables use lexicographic tuple order. Every parser
// throws ParseError naming the offending location as a JSON pointer.

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "wclone/algebra.hpp"
#include "wclone/cone_lp.hpp"
#include "wclone/counterexamples.hpp"
#include "wclone/galois.hpp"
#include "wclone/improve.hpp"
#include "wclone/rational.hpp"
#include "wclone/reductions.hpp"
#include "wclone/vcsp.hpp"
#include "wclone/wops.hpp"
#include "wclone/wrel.hpp"

namespace wclone::io {

using Json = nlohmann::json;

/// Reads and parses a file; syntax errors carry line and column.
Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(const std::string& text, const std::string& origin = "<input>");

Json to_json(const Rational& q);
Json to_json(const ExtRat& x);
Json to_json(const RatVector& v);
Json to_json(const Operation& f);
Json to_json(const TupleMatrix& x);
Json to_json(const WeightedRelation& gamma);
Json to_json(const Language& language);
Json to_json(const Weighting& w);
Json to_json(const VcspInstance& instance);
Json to_json(const ScaledInstance& instance);
Json to_json(const Solution& solution);
Json to_json(const ConeDecision& decision);
Json to_json(const ExpressionRecipe& recipe);
Json to_json(const MemberCertificate& certificate);
Json to_json(const SeparatedCertificate& certificate);
Json to_json(const MembershipVerdict& verdict);
Json to_json(const WcloneVerdict& verdict);
Json to_json(const ImprovementRows& rows);
Json to_json(const ReductionReport& report);
Json to_json(const NarrowingReport& report);
Json to_json(const ContainmentReport& report);
Json to_json(const OmegaFamily& family);
Json to_json(const lp::Problem& problem);

Rational rational_from_json(const Json& j, const std::string& where = "");
ExtRat ext_rat_from_json(const Json& j, const std::string& where = "");
RatVector rat_vector_from_json(const Json& j, const std::string& where = "");
/// `d` and `k` may be omitted in `j` when supplied by the caller (weighting terms).
Operation operation_from_json(const Json& j, const std::string& where = "", int d = 0, int k = 0);
TupleMatrix tuple_matrix_from_json(const Json& j, int d, const std::string& where = "");
WeightedRelation relation_from_json(const Json& j, const std::string& where = "");
Language language_from_json(const Json& j, const std::string& where = "");
Weighting weighting_from_json(const Json& j, const std::string& where = "");
/// A "language" given as a string is a path resolved against `base`.
VcspInstance instance_from_json(const Json& j, const std::filesystem::path& base = {},
                                const std::string& where = "");
ScaledInstance scaled_instance_from_json(const Json& j, const std::filesystem::path& base = {},
                                         const std::string& where = "");
Solution solution_from_json(const Json& j, const std::string& where = "");
ConeDecision cone_decision_from_json(const Json& j, const std::string& where = "");
ExpressionRecipe recipe_from_json(const Json& j, int d, const std::string& where = "");
MemberCertificate member_certificate_from_json(const Json& j, int d, const std::string& where = "");

}  // namespace wclone::io
