// The two group families behind every chain: Z^n x| F with an integral
// F-action, and the integer Heisenberg group (Z^3, *). Elements are exact;
// subgroups are finite-index and carried in a canonical form that makes
// equality syntactic.

#pragma once

#include "chaincalc/arith.hpp"
#include "chaincalc/finite_group.hpp"

#include <optional>
#include <string>
#include <vector>

namespace chaincalc {

enum class Family { LatticeSemidirect, Heisenberg };

struct GroupElement {
  Vec v;     // lattice part; Heisenberg uses (x, y, z)
  int f = 0; // finite-part index; always 0 for Heisenberg
  bool operator==(const GroupElement&) const = default;
};

struct GroupContext {
  Family family = Family::LatticeSemidirect;
  int rank = 0;                // lattice rank; 3 for Heisenberg
  FiniteGroupTable finitePart; // trivial table for Heisenberg
  std::vector<Mat> action;     // per finite-part element, rank x rank
  std::vector<GroupElement> generators;
  std::vector<std::string> generatorNames;

  int generator_index(const std::string& name) const; // throws on unknown
};

// genActions carries one matrix per finitePart.gens entry; the action of every
// other element is derived through words and the whole map is validated as a
// homomorphism into GL(rank, Z) (determinant +-1). Default generators are the
// basis translations t1..tn followed by the finite-part generators.
GroupContext make_lattice_context(int rank, FiniteGroupTable finitePart,
                                  const std::vector<Mat>& genActions);
// Generators x = (1,0,0), y = (0,1,0), z = (0,0,1).
GroupContext make_heisenberg_context();
// Replace the generator list (names unique, nonempty; elements must generate,
// which is only checked operationally by later coset enumerations).
void set_generators(GroupContext& ctx, std::vector<std::string> names,
                    std::vector<GroupElement> gens);

GroupElement identity(const GroupContext& ctx);
bool is_identity(const GroupContext& ctx, const GroupElement& g);
GroupElement multiply(const GroupContext& ctx, const GroupElement& g,
                      const GroupElement& h);
GroupElement inverse(const GroupContext& ctx, const GroupElement& g);
GroupElement elem_pow(const GroupContext& ctx, const GroupElement& g, Int k);
GroupElement conjugate_elem(const GroupContext& ctx, const GroupElement& g,
                            const GroupElement& by); // by g by^-1
std::string elem_str(const GroupContext& ctx, const GroupElement& g);
GroupElement parse_elem(const GroupContext& ctx, const std::string& text);

struct SubgroupData {
  Family family = Family::LatticeSemidirect;
  // LatticeSemidirect: {(v_k + L Z^n, k) : k in K}. L in column Hermite form,
  // K a sorted subgroup of the finite part, trans aligned with K and reduced
  // mod L.
  Mat L;
  std::vector<int> K;
  std::vector<Vec> trans;
  // Heisenberg: {(u, z) : u = M s, z ≡ twist·s (mod m)}. M in column Hermite
  // form, twist reduced mod m. Plain M Z^2 x mZ is twist = (0,0).
  Mat M;
  Int m;
  Vec twist;

  bool operator==(const SubgroupData&) const = default;
};

// Constructors canonicalize and validate closure; they throw ChainError
// (Validation) on inputs that do not describe a subgroup.
SubgroupData make_lattice_subgroup(const GroupContext& ctx, Mat L,
                                   std::vector<int> K, std::vector<Vec> trans);
SubgroupData make_heisenberg_subgroup(Mat M, Int m, Vec twist = {});
SubgroupData whole_group_subgroup(const GroupContext& ctx);

// The catalog's sufficient subgroup test: m divides both entries of one row
// of M. The constructor itself uses the exact criterion
// m | gcd(row1)·gcd(row2), which this implies.
bool heisenberg_row_divisibility(const Mat& M, const Int& m);

Int subgroup_index(const GroupContext& ctx, const SubgroupData& H);
bool contains(const GroupContext& ctx, const SubgroupData& H,
              const GroupElement& g);
std::vector<GroupElement> subgroup_generators(const GroupContext& ctx,
                                              const SubgroupData& H);
SubgroupData conjugate_subgroup(const GroupContext& ctx, const SubgroupData& H,
                                const GroupElement& g);
SubgroupData intersect_subgroups(const GroupContext& ctx,
                                 const SubgroupData& A, const SubgroupData& B);
// Subgroup generated by the given elements; throws Unrepresentable when the
// result has infinite index or (Heisenberg) falls outside the twist shape.
SubgroupData subgroup_from_generators(const GroupContext& ctx,
                                      const std::vector<GroupElement>& gens);
// Largest subgroup of H invariant under conjugation by the group generated by
// `under`: the iteration C <- C ∩ uCu^-1 ∩ u^-1Cu reaches a fixpoint, which
// is the normal core of H relative to that group. The one-argument form uses
// ctx.generators and yields the normal core in G.
SubgroupData core_subgroup(const GroupContext& ctx, const SubgroupData& H,
                           const std::vector<GroupElement>& under);
SubgroupData core_subgroup(const GroupContext& ctx, const SubgroupData& H);
// A ⊆ B, decided through A's generators.
bool subgroup_leq(const GroupContext& ctx, const SubgroupData& A,
                  const SubgroupData& B);
std::string subgroup_str(const GroupContext& ctx, const SubgroupData& H);

// Canonical key of the coset gH: equal strings iff equal cosets. This is what
// makes coset enumeration O(index) hash lookups.
std::string coset_key(const GroupContext& ctx, const SubgroupData& H,
                      const GroupElement& g);

// g as a product of generator powers, for tree labels and reports. Works for
// the default generator layout (or a renamed one whose elements are basis
// translations and finite-part generators); empty optional otherwise.
struct WordFactor {
  int gen;
  Int exp;
};
std::optional<std::vector<WordFactor>> elem_factor(const GroupContext& ctx,
                                                   const GroupElement& g);
std::string word_str(const GroupContext& ctx,
                     const std::vector<WordFactor>& word);
// Label for coset representatives: the factored word when available, the
// tuple form otherwise.
std::string elem_label(const GroupContext& ctx, const GroupElement& g);

} // namespace chaincalc
