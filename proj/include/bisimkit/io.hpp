#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "bisimkit/epset.hpp"
#include "bisimkit/lts.hpp"
#include "bisimkit/nlmp.hpp"
#include "bisimkit/ordinal.hpp"
#include "bisimkit/rational.hpp"
#include "bisimkit/relation.hpp"
#include "bisimkit/trees.hpp"
#include "bisimkit/uniform.hpp"

namespace bisimkit::io {

using Json = nlohmann::json;

/// Malformed JSON, schema violation or dangling name. The message starts with
/// the location: a source name with line and column, or a field path.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

Json parse_text(const std::string& text, const std::string& source);
Json read_file(const std::string& path);

// Every reader takes the field path of `j` for its error messages.

EPSet epset_from_json(const Json& j, const std::string& where = "$");
Json epset_to_json(const EPSet& x);

/// Accepts "p/q", "p" or a JSON integer.
Rational rational_from_json(const Json& j, const std::string& where = "$");
Json rational_to_json(const Rational& r);

/// [[exponent, coefficient], ...] in Cantor normal form; [] is 0.
Ordinal ordinal_from_json(const Json& j, const std::string& where = "$");
Json ordinal_to_json(const Ordinal& a);

PointedLTS lts_from_json(const Json& j, const std::string& where = "$");
Json lts_to_json(const PointedLTS& l);

/// {"root": n, "edges": {"a": [[i, j], ...]}}
OmegaLTSCode code_from_json(const Json& j, const std::string& where = "$");
Json code_to_json(const OmegaLTSCode& c);

using TreeValue = std::variant<ExplicitTree, SymbolicTree>;
TreeValue tree_from_json(const Json& j, const std::string& where = "$");
Json tree_to_json(const ExplicitTree& t);
Json tree_to_json(const SymbolicTree& t);

/// {"a": [[subtree, "omega"], [subtree, 3]]}; {} is the leaf.
MultiTree::Ptr multitree_from_json(const Json& j, const std::string& where = "$");
Json multitree_to_json(const MultiTree& t);

PointmassNLMP nlmp_from_json(const Json& j, const std::string& where = "$");
Json nlmp_to_json(const PointmassNLMP& n);

/// {"carrier": ["s", "t"]} over the states of n.
StateSet carrier_from_json(const Json& j, const PointmassNLMP& n, const std::string& where = "$");
Json carrier_to_json(const StateSet& a, const PointmassNLMP& n);

/// {"rows": {"s": {"a": [[["1/2", "t"], ["1/2", "u"]], ...]}}}; missing
/// states and labels have no rows.
UniformStructure uniform_from_json(const Json& j, const PointmassNLMP& n, const std::string& where = "$");
Json uniform_to_json(const UniformStructure& u, const PointmassNLMP& n);

/// true | false | {"not": φ} | {"and": [...]} | {"or": [...]} |
/// {"dia": "a", "arg": φ} | {"rank_at_least": ordinal} | {"charset": EPSet}
ModalFormula formula_from_json(const Json& j, const std::string& where = "$");
Json formula_to_json(const ModalFormula& f);

/// [["s", "t"], ...] by state names.
Rel rel_from_json(const Json& j, const std::vector<std::string>& left, const std::vector<std::string>& right,
                  const std::string& where = "$");
Json rel_to_json(const Rel& r, const std::vector<std::string>& left, const std::vector<std::string>& right);

std::string lts_to_dot(const PointedLTS& l);
std::string tree_to_dot(const ExplicitTree& t);
/// Edges carry the label and, when it is not 1, the multiplicity.
std::string multitree_to_dot(const MultiTree& t);
/// Each measure becomes a point node; its edges carry the weights.
std::string nlmp_to_dot(const PointmassNLMP& n);

}  // namespace bisimkit::io
