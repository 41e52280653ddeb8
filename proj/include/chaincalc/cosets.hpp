#pragma once

#include "chaincalc/group.hpp"

#include <map>
#include <string>
#include <vector>

namespace chaincalc {

// Resource guards for coset enumeration and quotient closure. All three are
// checked arithmetically before any large allocation happens.
struct Caps {
  long cosetCap = 100000;
  long permCap = 1000000;
  long long cellCap = 200000000LL;
};

// Built-in defaults, overridable through CHAINCALC_COSET_CAP,
// CHAINCALC_PERM_CAP and CHAINCALC_CELL_CAP.
Caps default_caps();

// Left coset space G/H with a breadth-first representative per coset.
// reps[0] is the identity; actions[gi][c] is the coset of gen_gi * reps[c].
struct CosetTable {
  GroupContext ctx;
  SubgroupData subgroup;
  std::vector<GroupElement> reps;
  std::vector<std::vector<int>> actions;
  std::map<std::string, int> index;

  int size() const { return (int)reps.size(); }
  int coset_of(const GroupElement& g) const;
};

CosetTable enumerate_cosets(const GroupContext& ctx, const SubgroupData& H,
                            const Caps& caps);

// Permutation induced by left multiplication with g on G/H.
std::vector<int> permutation_rep(const CosetTable& table,
                                 const GroupElement& g);

// The image of G in the symmetric group on G/H, i.e. the quotient of G by
// the normal core of H, together with a witness word per element.
// elements[0] is the identity; words are generator index sequences.
struct FiniteQuotient {
  CosetTable table;
  std::vector<std::vector<int>> elements;
  std::vector<std::vector<int>> words;
  std::vector<int> basepointStabilizer;
  std::map<std::vector<int>, int> lookup;

  int element_index(const std::vector<int>& perm) const;
};

FiniteQuotient finite_quotient(const GroupContext& ctx, const SubgroupData& H,
                               const Caps& caps);

// g lies in the core of H exactly when it acts trivially on G/H.
bool core_membership(const FiniteQuotient& fq, const GroupElement& g);

// A concrete element realizing fq.elements[elemIndex], evaluated from its
// witness word.
GroupElement witness_element(const FiniteQuotient& fq, int elemIndex);

// Closure of the given elements inside fq, as sorted element indices.
std::vector<int> subgroup_image(const FiniteQuotient& fq,
                                const std::vector<GroupElement>& gens);

// Generators of H read off the coset table by Schreier's lemma.
std::vector<GroupElement> schreier_generators(const CosetTable& table);

} // namespace chaincalc
