#pragma once
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace clx {

// Finite Laurent polynomial in t with integer coefficients; deg t = NL.
struct Laurent {
    std::map<int, long long> c; // exponent -> coefficient, no zeros stored
    static Laurent mono(long long coef, int d);
    Laurent operator+(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    bool operator==(const Laurent& o) const = default;
    bool is_zero() const { return c.empty(); }
    // grading of a homogeneous element, or nullopt if mixed
    std::optional<int> degree(int NL) const;
};

struct Generator {
    std::string sym;
    int coidx = 0;       // mu+ = n - Morse index
    int j1 = -1, j2 = -1; // function label (j1, j2) with j1 < j2, or j1 = -1 for f
    bool is_f() const { return j1 < 0; }
};

// x_1 ... x_q t^d, generators given by index into an alphabet
struct Word {
    std::vector<int> g;
    int d = 0;
    auto operator<=>(const Word&) const = default;
};

using LinComb = std::map<Word, long long>;
void add_term(LinComb& a, const Word& w, long long c);
void add_into(LinComb& a, const LinComb& b, long long scale = 1);

enum class Role { M, H, K };
std::string role_name(Role r);

struct OutTerm {
    int out = 0; // index into the target alphabet
    int d = 0;
    long long coef = 0;
    auto operator<=>(const OutTerm&) const = default;
};

// m: A^l -> A (degree 2 - l); h: A1^l -> A0 (degree 1 - l); k: A1^l -> A0 (degree -l)
struct OperationFamily {
    Role role = Role::M;
    int n = 1;
    int NL = 2;
    int c = 0;
    bool positive = true; // energies d >= 0 only
    bool suspended = false;
    std::vector<Generator> gens;    // source alphabet
    std::vector<Generator> targets; // target alphabet (same as gens for m)
    std::map<std::vector<int>, std::vector<OutTerm>> ops;

    int find(const std::string& sym) const;        // in gens, -1 if absent
    int find_target(const std::string& sym) const; // in targets
    int max_arity() const;
    int op_degree(int arity) const; // in the mu grading
};

// mu and cardinality of a word over an alphabet
int word_mu(const std::vector<Generator>& alphabet, const Word& w, int NL);

// Function-label bookkeeping: the non-f labels of a word must chain
// (j0,j1)(j1,j2)...; returns the merged label (-1,-1 for f).
std::pair<int, int> merged_label(const std::vector<Generator>& alphabet, const std::vector<int>& g);
void check_block(const std::vector<Generator>& alphabet, const Word& w); // BlockError

// Structural validation: labels, degree law, energies. ValidationError / BlockError.
void validate(const OperationFamily& f);

struct Window {
    int qmax = 4; // cardinality of checked words
    int emax = 4; // residue terms are reported up to this energy
    int lmax = 8; // families with longer operations are skipped
    int jobs = 1;
};

// all block-valid words of length 1..qmax over the alphabet, d = 0
std::vector<Word> window_words(const std::vector<Generator>& alphabet, int qmax);

LinComb delta(const OperationFamily& m, const Word& w);
LinComb delta(const OperationFamily& m, const LinComb& x);

struct Witness {
    Word input;
    LinComb residue;
};

struct CheckReport {
    std::string check;
    std::string verdict = "pass"; // pass | fail | skipped
    Window window;
    long long words_checked = 0;
    std::optional<Witness> witness;
    std::vector<std::string> notes;
    bool pass() const { return verdict == "pass"; }
};

// A-infinity relations with Getzler-Jones signs, as a map from input words to
// cardinality-one residues
LinComb gj_relation(const OperationFamily& m, const Word& w);
// unsigned relations of a suspended family (Koszul signs only)
LinComb b_relation(const OperationFamily& b, const Word& w);

OperationFamily suspend(const OperationFamily& m);
OperationFamily unsuspend(const OperationFamily& b);

// delta o delta = 0 and the GJ relations on every window word
CheckReport check_a_infinity(const OperationFamily& m, const Window& win);
// supports of GJ residues and suspended residues agree on every window word
CheckReport check_suspension(const OperationFamily& m, const Window& win);

CheckReport check_unit(const OperationFamily& m, const std::string& unit, const Window& win);

LinComb morphism_H(const OperationFamily& h, const Word& w, int lmax = 8);
LinComb morphism_H(const OperationFamily& h, const LinComb& x, int lmax = 8);
CheckReport check_chain_map(const OperationFamily& h, const OperationFamily& m0,
                            const OperationFamily& m1, const Window& win);

// which morphism sits left of the k factor in K
enum class KSides { ZeroLeft, OneLeft };
LinComb homotopy_K(const OperationFamily& h0, const OperationFamily& h1, const OperationFamily& k,
                   const Word& w, KSides sides, int lmax = 8);
CheckReport check_homotopy(const OperationFamily& h0, const OperationFamily& h1,
                           const OperationFamily& k, const OperationFamily& m0,
                           const OperationFamily& m1, const Window& win,
                           KSides sides = KSides::ZeroLeft);

// Opposite co-operations: output generator -> inputs, and the suspended
// tensor differential they generate.
struct OppositeFamily {
    int NL = 2;
    std::vector<Generator> gens;
    std::map<int, std::vector<std::pair<Word, long long>>> coops; // y -> sum coef * x_1..x_l t^d
};
OppositeFamily opposite(const OperationFamily& m);
OperationFamily transpose_back(const OppositeFamily& op, const OperationFamily& shape);

// the derivation d(y_1..y_q) = sum_j (-1)^{sum_{i<j} mubar(y_i)} y_1..d(y_j)..y_q
LinComb dga_differential(const OppositeFamily& op, const Word& w);
CheckReport check_leibniz(const OppositeFamily& op, const Window& win);
CheckReport check_dga_square(const OppositeFamily& op, const Window& win);

// ---------------------------------------------------------------- library

// named families: poly (Z[x]/x^3), exterior (one odd generator), exterior2,
// circle (perfect Morse function on S^1)
std::map<std::string, OperationFamily> example_library();

// circle family whose t-weighted m2 constants are left open
struct FamilyTemplate {
    OperationFamily base;
    struct Slot {
        std::vector<int> in;
        int out = 0;
        int d = 0;
        std::string name;
    };
    std::vector<Slot> open;
};
FamilyTemplate quantum_circle_template();
// fill open slots by name; ValidationError lists the missing ones
OperationFamily instantiate(const FamilyTemplate& t, const std::map<std::string, long long>& values);

OperationFamily identity_morphism(const OperationFamily& m);
OperationFamily zero_family(const OperationFamily& m, Role role);

// seeded random m-family obeying the degree law
OperationFamily random_family(unsigned long long seed, int ngens, int lmax, int emax);

std::string word_to_string(const std::vector<Generator>& alphabet, const Word& w);
std::string comb_to_string(const std::vector<Generator>& alphabet, const LinComb& x);

} // namespace clx
