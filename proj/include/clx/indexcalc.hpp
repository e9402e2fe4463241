#pragma once
#include "clx/strata.hpp"
#include "clx/trees.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace clx {

// ---------------------------------------------------------------- clusters

enum class EdgeState { Node, Line, Broken };
std::string edge_state_name(EdgeState s);
EdgeState parse_edge_state(const std::string& s);

// A tree of disks: interior edges carry a state; vertex marks are the
// interior markings k(D) of each disk.
struct ClusterType {
    Tree tree;
    std::map<int, EdgeState> edges; // every interior edge id
    int complex_nodes = 0;
    int interior_incidence = 0; // N
};

ClusterType smooth_cluster(const Tree& t); // every edge a finite line
int count_state(const ClusterType& ct, EdgeState s);
void check_cluster(const ClusterType& ct); // ShapeError
// codimension of the collared stratum the type lives on
int cluster_codim(const ClusterType& ct);

struct EndpointCondition {
    int root = 0;                // mu+(A_0)
    std::vector<int> leaves;     // mu+(A_j), j = 1..l
    std::vector<int> breakings;  // one per broken edge, in edge-id order
};

struct BoundaryConditionIndex {
    std::vector<int> per_disk; // Maslov contribution of each disk, preorder
    int total() const;
};

// Maslov contributions must be nonnegative multiples of NL (MonotoneError)
void check_monotone(const BoundaryConditionIndex& mu, int NL);

// mu+(A_0) - sum mu+(A_j) + mu(F), minus n per interior incidence point and
// per complex node; broken edges contribute their endpoint on both sides
int index_cr(const ClusterType& ct, const EndpointCondition& ec, const BoundaryConditionIndex& mu, int n);

// l - 2 + 2k - #breakings - #real nodes - 2 #complex nodes; StabilityError if negative
int coker_dim(const ClusterType& ct, int l, int k);

// glue c2's root onto leaf j of c1 through an edge in state s
struct Glued {
    ClusterType ct;
    EndpointCondition ec;
    BoundaryConditionIndex mu;
};
Glued concatenate(const ClusterType& c1, const EndpointCondition& e1, const BoundaryConditionIndex& m1, int j,
                  const ClusterType& c2, const EndpointCondition& e2, const BoundaryConditionIndex& m2,
                  EdgeState s);

// every cluster type over every stratum of K(l,k); the list form raises
// CapError above 200000 types, the visitor streams any size
long long count_cluster_types(int l, int k);
void for_each_cluster_type(int l, int k, const std::function<void(const ClusterType&)>& fn);
std::vector<ClusterType> enumerate_cluster_types(int l, int k);

// ---------------------------------------------------------------- trajectories

int trajectory_index(int mu_minus, int mu_plus, int muF);
// energy exponent d with omega = tau * muF and d = omega / (tau NL)
int trajectory_energy(int muF, int NL, bool monotone = true);
bool rigid_m(int l, int index);        // index == 2 - l
bool rigid_quilted(int l, int index);  // index == 1 - l

// ---------------------------------------------------------------- reductions

enum class Surgery { I, IIa, IIb, III, GenI, GenII, GenIII };
std::string surgery_name(Surgery s);
Surgery parse_surgery(const std::string& s);

struct SurgeryPlan {
    Surgery kind = Surgery::III;
    int disk = 0;   // I, GenI, GenII: preorder id of the disk
    int d = 1;      // I: covering degree
    int upper = 0;  // IIa/IIb: D2 (removed disk) and D1 (absorbing disk)
    int lower = 0;
    int position = -1; // IIa/IIb: slot of D1 receiving the reattached ends; -1 keeps the planar place
    std::vector<std::pair<int, int>> parts; // GenI: (multiplicity, maslov) per simple piece
    int incidence = 0; // GenII: interior incidence points created
};

struct ClusterSurgeryRecord {
    Surgery kind = Surgery::III;
    ClusterType before, after;
    BoundaryConditionIndex mu_before, mu_after;
    int removed_marks = 0;
    int N = 0;             // interior incidence points
    int complex_nodes = 0;
};

ClusterSurgeryRecord reduce(const ClusterType& ct, const BoundaryConditionIndex& mu, const SurgeryPlan& plan);

struct AuditReport {
    int l = 0, k_before = 0, k_after = 0, n = 3, N = 0;
    int assumed_index = 0;
    int maslov_drop = 0;
    int index_after = 0;      // Ind(r(u)) = Ind(u) - drop
    int cluster_index_after = 0; // lower bound -(l - 2 + 2k(r(C)))
    int quotient_bound = 0;   // Ind(r(u)) - Ind(r(C)) - (n-1)N (n <= 2)
    int closed_form = 0;      // 2k(r(C)) - 1, minus (n-1)N when n <= 2
    bool simple_range = false; // assumed index <= -(l-2)+1
    bool applies = false;      // drop >= 2: cokernel forced, contradiction
    std::string formula;
};

AuditReport reduction_index_audit(const ClusterSurgeryRecord& rec, int assumed_index, int n);

// ---------------------------------------------------------------- end labelings

// (x) labelings of length l: a_0 <= a_1 <= ... <= a_l in 0..c, with
// l(j) = (a_{j-1}, a_j) and l(0) = (a_0, a_l); constant sequences form one class
struct OtimesLabeling {
    std::vector<int> a;
    std::vector<std::pair<int, int>> pairs() const;
    bool trivial() const;
    auto operator<=>(const OtimesLabeling&) const = default;
};
std::vector<OtimesLabeling> enumerate_otimes_labelings(int l, int c);
// component leaves given as consecutive 1-based leaf intervals
OtimesLabeling induced_otimes(const OtimesLabeling& lab, const std::vector<std::pair<int, int>>& intervals);

// bullet labelings: values in 1..c+1, increasing once c+1 is ignored
std::vector<std::vector<int>> enumerate_bullet_labelings(int l, int c);
bool is_bullet_labeling(const std::vector<int>& lab, int c);
// each component leaf lists the original leaves above it; minimum rule
std::vector<int> induced_bullet(const std::vector<int>& lab, int c, const std::vector<std::vector<int>>& above);

} // namespace clx
