#pragma once

// Finite groups through their character tables: Abelian groups are generated,
// general groups come in as user tables. On top of that, the orthogonality
// and invariance conditions for g: X x Y -> G, the distance of a class
// function to an "easy" character span and its dual, and the group
// lower-bound evaluators.
//
// Element encoding for Abelian groups Z_{m1} x ... x Z_{mk}: the tuple
// (a1, ..., ak) has index a1 + m1 (a2 + m2 (a3 + ...)), i.e. the first
// component is the least significant digit. Characters use the same indexing
// (chi_a(x) = prod_j exp(2 pi i a_j x_j / m_j)). For Z_2^n this makes element
// indices coincide with boolfn point masks and character indices with
// subset masks.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "commbound/bounds.hpp"
#include "commbound/matrix.hpp"
#include "commbound/simplex.hpp"

namespace commbound::group {

using Complex = std::complex<double>;
using Element = std::size_t;

inline constexpr std::size_t kMaxGroupOrder = std::size_t{1} << 14;

class AbelianGroupSpec {
public:
    /// Throws ArgumentError if a modulus is < 2 or the order exceeds kMaxGroupOrder.
    explicit AbelianGroupSpec(std::vector<std::size_t> moduli);

    const std::vector<std::size_t>& moduli() const { return moduli_; }
    std::size_t order() const { return order_; }

    std::vector<std::size_t> decode(Element e) const;
    Element encode(const std::vector<std::size_t>& tuple) const;
    Element add(Element a, Element b) const;
    Element negate(Element a) const;

    /// "a1:a2:..." and back.
    std::string format(Element e) const;
    Element parse(const std::string& text) const;

    friend bool operator==(const AbelianGroupSpec&, const AbelianGroupSpec&) = default;

private:
    std::vector<std::size_t> moduli_;
    std::size_t order_ = 1;
};

struct CharacterTable {
    std::size_t h = 0;
    std::size_t order = 0;
    ComplexMatrix table;                // h x order
    std::vector<std::size_t> class_of;  // element -> class index
    std::vector<std::size_t> degrees;   // per character

    Complex operator()(std::size_t i, Element g) const { return table(i, g); }
    std::vector<std::size_t> class_sizes() const;
    /// Index of the trivial character (all values 1).
    std::size_t identity() const;
    /// max over i, j of |sum_g chi_i(g) conj(chi_j(g)) - |G| [i = j]|.
    double orthogonality_error() const;
    /// Throws ArgumentError on shape errors, orthogonality error > 1e-9, or
    /// |chi_i(g)| > deg(chi_i) + 1e-12.
    void validate() const;
};

CharacterTable characters_abelian(const AbelianGroupSpec& g);

/// Character table of G_1 x ... x G_t. Elements and characters are indexed
/// with component 1 least significant, matching AbelianGroupSpec.
CharacterTable product_table(const std::vector<CharacterTable>& components);

/// g: X x Y -> G as a table of element indices.
struct GroupMapMatrix {
    std::size_t order = 0;
    std::optional<AbelianGroupSpec> abelian;
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<Element> entries;

    GroupMapMatrix(AbelianGroupSpec g, std::size_t rows, std::size_t cols, std::vector<Element> entries);
    /// Opaque group of the given order (a user-supplied character table).
    GroupMapMatrix(std::size_t order, std::size_t rows, std::size_t cols, std::vector<Element> entries);

    Element operator()(std::size_t x, std::size_t y) const { return entries[x * cols + y]; }

    /// Over Z_2: +1 -> 0, -1 -> 1.
    static GroupMapMatrix from_sign(const SignMatrix& m);
    /// g(x, y) = (g_1(x^1, y^1), ..., g_t(x^t, y^t)); rows and columns use the
    /// composer's order (block 1 most significant), the element tuple puts
    /// block i in component i. Every block must be Abelian.
    static GroupMapMatrix block(const std::vector<GroupMapMatrix>& blocks);
};

/// Group-map text format: "group m1,m2,..." then one line per row of
/// comma-separated element tuples "a1:a2:...".
GroupMapMatrix parse_group_map(std::istream& in);
GroupMapMatrix read_group_map(const std::string& path);
void write_group_map(std::ostream& out, const GroupMapMatrix& m);

/// JSON {h, order, table: [[re, im], ...] row-major, class_of, degrees}.
CharacterTable parse_character_table(std::istream& in);
CharacterTable read_character_table(const std::string& path);

/// Multiset of element pairs, as pair -> multiplicity.
struct PairMultiset {
    std::map<std::pair<Element, Element>, std::size_t> counts;

    void add(Element s, Element t, std::size_t times = 1) { counts[{s, t}] += times; }
    std::size_t total() const;
    friend bool operator==(const PairMultiset&, const PairMultiset&) = default;
};

/// (r, r) T == T for every r in G.
bool g_invariant(const PairMultiset& t, const AbelianGroupSpec& g);

/// max over i != j of |sum_{(s,t) in T} chi_i(s) conj(chi_j(t))|.
double orthogonality_sums(const PairMultiset& t, const CharacterTable& table);

struct PairMultisets {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<PairMultiset> row_pairs;  // S^{x,x'} at x * rows + x'
    std::vector<PairMultiset> col_pairs;  // T^{y,y'} at y * cols + y'

    const PairMultiset& s(std::size_t x, std::size_t xp) const { return row_pairs[x * rows + xp]; }
    const PairMultiset& t(std::size_t y, std::size_t yp) const { return col_pairs[y * cols + yp]; }
};

PairMultisets pair_multisets(const GroupMapMatrix& gmap);

struct RegularityReport {
    bool regular = false;
    std::string reason;
    std::vector<std::size_t> counts;  // occurrences of each element
    // Diagonal-invariance premises (Abelian maps only).
    std::optional<bool> rows_diagonal_invariant;  // every S^{x,x}
    std::optional<bool> cols_diagonal_invariant;  // every T^{y,y}
    /// False only if a premise holds while regularity fails.
    bool premise_consistent = true;
};

RegularityReport regularity_check(const GroupMapMatrix& gmap);

struct OrthogonalityGeneralReport {
    double max_row_sum = 0.0;  // over x, x' and distinct hard i, j
    double max_col_sum = 0.0;
    bool rows_pass = false;    // max_row_sum <= 1e-8 |Y|
    bool cols_pass = false;    // max_col_sum <= 1e-8 |X|
    bool passed() const { return rows_pass && cols_pass; }
};

OrthogonalityGeneralReport orthogonality_general(const GroupMapMatrix& gmap, const CharacterTable& table,
                                                 const std::vector<std::size_t>& hard);

struct TPrimeReport {
    RealMatrix tprime;              // class-averaged T', order x order
    double statement1_max = 0.0;    // orthogonality_sums(T)
    double statement3_offdiag = 0.0;  // max off-diagonal |C T' C^dagger| / |G|^2
    double statement3_residual = 0.0; // max |T' - C^dagger D C|
    bool statement1 = false;
    bool statement3 = false;
    bool agree() const { return statement1 == statement3; }
};

/// Throws ArgumentError when the table has no class data.
TPrimeReport tprime_check(const PairMultiset& t, const CharacterTable& table);

struct HardnessPartition {
    std::vector<std::size_t> easy;
    std::vector<std::size_t> hard;
    std::optional<double> delta;

    /// Throws ArgumentError unless easy and hard partition [0, h).
    void validate(std::size_t h) const;
};

/// Characters of a product group with fewer than d non-identity components
/// are easy, the rest hard.
HardnessPartition degree_partition(const std::vector<CharacterTable>& components, std::size_t d);

struct DistanceResult {
    double delta = 0.0;
    std::vector<Complex> coefficients;  // one per easy character, in order
    std::size_t iterations = 0;
};

/// min delta with |f(g) - Re p(g)| <= delta and |Im p(g)| <= 1e-9 over
/// p in span(easy). Throws SolverError if the LP fails.
DistanceResult distance_to_easy(const std::vector<double>& f, const CharacterTable& table,
                                const std::vector<std::size_t>& easy);

/// Coefficients h_i = |G|^-1 sum_g chi_i(g) conj(h(g)).
std::vector<Complex> character_coefficients(const std::vector<Complex>& h, const CharacterTable& table);

struct DualH {
    std::vector<Complex> h;
    double delta = 0.0;
    double l1 = 0.0;                // sum |h|, scaled to 2
    double correlation = 0.0;       // |sum f conj(h)|
    double max_easy_coefficient = 0.0;
    bool hard_ok = false;           // every easy coefficient <= 1e-9
    bool l1_ok = false;             // l1 <= 2 + 1e-9
    bool correlation_ok = false;    // correlation >= 2 delta - 1e-8
    bool strictly_above_delta = false;
    std::vector<std::string> warnings;
    bool passed() const { return hard_ok && l1_ok && correlation_ok; }
};

DualH dual_h(const std::vector<double>& f, const CharacterTable& table, const std::vector<std::size_t>& easy);

/// log2(sqrt(MN) / max_{hard} (max_g |psi(g)| ||[psi(g(x,y))]||)). The
/// factor log2(delta - 2 epsilon) is reported as an intermediate.
BoundReport general_bound(const GroupMapMatrix& gmap, const std::vector<double>& f, const CharacterTable& table,
                          const HardnessPartition& partition, double epsilon);

struct ProductDegreeResult {
    std::size_t d = 0;
    double delta = 0.0;               // distance at the returned d
    std::vector<double> deltas;       // distance at each d tried
};

ProductDegreeResult product_approx_degree(const std::vector<double>& f,
                                          const std::vector<CharacterTable>& components, double epsilon);

/// min over S with |S| >= deg_{1/3}(f) of sum_{i in S} log2(sqrt(size_i) /
/// (deg(chi) ||M_{chi o g_i}||)), chi over non-identity characters of G_i.
/// f is a class function on the product group (product_table indexing).
BoundReport block_group_bound(const std::vector<GroupMapMatrix>& gmaps, const std::vector<double>& f,
                              const std::vector<CharacterTable>& tables);

struct DegenerationReport {
    bool all_invariant = false;  // every S^{x,x'} and T^{y,y'} of the block map
    bool all_balanced = false;   // every block strongly balanced
    bool equivalent() const { return all_invariant == all_balanced; }
};

DegenerationReport degeneration_check(const std::vector<SignMatrix>& blocks);

struct InvarianceCounterexample {
    GroupMapMatrix gmap;
    std::size_t x = 0, xp = 0;  // a non-invariant S^{x,x'}, or
    std::size_t y = 0, yp = 0;  // T^{y,y'} when row_pair is false
    bool row_pair = true;
};

/// Random search over maps into Z_m whose rows and columns all cover Z_m
/// uniformly, returning those with some non-invariant pair multiset. Seeded,
/// deterministic; asserts nothing.
std::vector<InvarianceCounterexample> invariance_search(std::size_t modulus, std::size_t rows, std::size_t cols,
                                                        std::size_t trials, std::uint64_t seed,
                                                        std::size_t max_results = 5);

}  // namespace commbound::group
