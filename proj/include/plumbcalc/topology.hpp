#pragma once

#include "plumbcalc/laurent.hpp"
#include "plumbcalc/numeric.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace plumbcalc {

// Words are lists of nonzero integers: k stands for generator k-1, -k for its inverse.
using Word = std::vector<int>;

struct GroupPresentation {
    std::vector<std::string> generators;
    std::vector<Word> relators;

    void validate() const;
    std::string to_string() const;
};

Word free_reduce(const Word& w);
Word inverse_word(const Word& w);
// a b a^-1 b^-1
Word commutator(const Word& a, const Word& b);

// Generators d1, d2, l with relators
//   d1 * [g2, l^-1]^-1,  d2 * [g1, l]^-1,  [g1, g2]   where gj = dj^(dj).
GroupPresentation pi1_presentation(int d1, int d2);

AbelianGroup abelianization(const GroupPresentation& p);

// Multiplication table of a finite group with the identity at index 0.
class FiniteGroupTable {
public:
    // Checks closure, identity at 0, inverses and associativity.
    FiniteGroupTable(std::string name, std::vector<std::vector<int>> table);

    const std::string& name() const { return name_; }
    std::size_t order() const { return table_.size(); }
    int mul(int a, int b) const { return table_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
    int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
    const std::vector<std::vector<int>>& table() const { return table_; }
    bool is_abelian() const;

private:
    std::string name_;
    std::vector<std::vector<int>> table_;
    std::vector<int> inverse_;
};

FiniteGroupTable cyclic_group(int n);
FiniteGroupTable dihedral_group(int n);   // order 2n
FiniteGroupTable dicyclic_group(int m);   // order 4m; m = 2 is the quaternion group
FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b);
FiniteGroupTable alternating_group_4();

// All groups of order <= max_order (at most 12), one per isomorphism class.
std::vector<FiniteGroupTable> small_group_catalog(std::size_t max_order = 12);

// {"order": n, "table": [[...]]}, 0-based, identity at 0.
FiniteGroupTable group_from_json(const nlohmann::json& doc, const std::string& name = "G");
nlohmann::json group_to_json(const FiniteGroupTable& g);

enum class EnumerationOrder {
    first_generator_outermost,
    last_generator_outermost  // also walks group elements in descending order
};

inline constexpr std::uint64_t kHomBudget = 100000000;

// Number of assignments generators -> G under which every relator evaluates to the identity.
std::uint64_t count_homs(const GroupPresentation& p, const FiniteGroupTable& g,
                         EnumerationOrder order = EnumerationOrder::first_generator_outermost,
                         std::uint64_t budget = kHomBudget);

struct HandleData {
    int zero_handles = 0;
    int one_handles = 0;
    int two_handles = 0;
    int three_handles = 0;
    std::vector<long long> framings;  // one per 2-handle
    IntMatrix runs;                   // two_handles x one_handles algebraic run counts
};

HandleData kirby_handle_data(int d1, int d2);

struct HomologyReport {
    AbelianGroup h0;
    AbelianGroup h1;
    AbelianGroup h2;
    long long euler_characteristic = 0;
};

// Homology of the cellular chain complex of a handle decomposition with a single 0-handle.
HomologyReport chain_complex_homology(const HandleData& h);

// p/q = 2*d1 - 1/(2*d2), p odd.
std::pair<Integer, Integer> two_bridge_fraction(int d1, int d2);
// Two-bridge knots p/q and p'/q' agree up to mirror image: p = p', q' = +-q^(+-1) mod p.
bool two_bridge_equivalent(const std::pair<Integer, Integer>& a, const std::pair<Integer, Integer>& b);

IntMatrix seifert_matrix(int d1, int d2);
// det(V - t V^T), shifted to symmetric exponents with positive leading coefficient.
LaurentPoly1 alexander_polynomial(int d1, int d2);
LaurentPoly1 alexander_from_seifert(const IntMatrix& v);

} // namespace plumbcalc
