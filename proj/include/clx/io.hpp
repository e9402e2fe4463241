#pragma once
#include "clx/barcx.hpp"
#include "clx/indexcalc.hpp"
#include "clx/labelings.hpp"
#include "clx/strata.hpp"
#include "clx/trees.hpp"

#include "json.hpp"

#include <string>

namespace clx {

using Json = nlohmann::ordered_json;

inline constexpr const char* kPosetSchema = "clx.face-poset/1";
inline constexpr const char* kReportSchema = "clx.run-report/1";

// {"b": leaf slots, "i": interior marks, "col": bool, "children": [...]};
// a leaf slot appears in "children" as the string "leaf"
Json tree_to_json(const Tree& t);
Tree tree_from_json(const Json& j); // ParseError

Json poset_to_json(const FacePoset& p);
std::string poset_to_dot(const FacePoset& p);

Json labeling_to_json(const EdgeLabeling& x);
EdgeLabeling labeling_from_json(const Json& j);
Json sympow_to_json(const SymPow& s);
SymPow sympow_from_json(const Json& j);

// Structure-constant files. For h/k roles the inputs are symbols of `source`
// and the outputs symbols of `target`; both default to the file's own
// generator list.
Json family_to_json(const OperationFamily& f);
OperationFamily family_from_json(const Json& j, const OperationFamily* source = nullptr,
                                 const OperationFamily* target = nullptr);

// a family plus an "open" list of named slots
Json template_to_json(const FamilyTemplate& t);
FamilyTemplate template_from_json(const Json& j);

struct ClusterInput {
    ClusterType ct;
    EndpointCondition ec;
    BoundaryConditionIndex mu;
    int n = 2;
};
Json cluster_to_json(const ClusterInput& c);
ClusterInput cluster_from_json(const Json& j);

Json word_to_json(const std::vector<Generator>& alphabet, const Word& w);
Json comb_to_json(const std::vector<Generator>& alphabet, const LinComb& x);
// witness words are printed over `alphabet`, residues over `out_alphabet`
Json report_to_json(const CheckReport& r, const std::vector<Generator>& alphabet,
                    const std::vector<Generator>& out_alphabet);
Json surgery_to_json(const ClusterSurgeryRecord& r);
Json audit_to_json(const AuditReport& a);

Json read_json_file(const std::string& path); // ParseError on I/O or syntax
void write_json_file(const std::string& path, const Json& j);

} // namespace clx
