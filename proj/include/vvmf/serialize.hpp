#pragma once

#include "vvmf/obstruct.hpp"

#include <json.hpp>

namespace vvmf {

using Json = nlohmann::ordered_json;

Json toJson(const FiniteQuadraticModule& fqm);
FiniteQuadraticModule fqmFromJson(const Json& j);

Json toJson(const FormExpansion& f);
FormExpansion formExpansionFromJson(const Json& j);

Json toJson(const PrincipalPart& p);
PrincipalPart principalPartFromJson(const Json& j);

Json toJson(const RelationCertificate& c);
RelationCertificate certificateFromJson(const Json& j);

Json toJson(const RelationLattice& r);
RelationLattice relationLatticeFromJson(const Json& j);

Json toJson(const HeegnerPoint& p);
HeegnerPoint heegnerPointFromJson(const Json& j);

/// "n:gamma=c;..." with gamma an integer (cyclic groups) or a tuple "(a,b,...)".
PrincipalPart parsePrincipalPart(const std::string& text, const FiniteQuadraticModule& fqm);
/// Integer label or "(a,b,...)" tuple to an element index.
std::size_t parseElement(const std::string& text, const FiniteQuadraticModule& fqm);

} // namespace vvmf
