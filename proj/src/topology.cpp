#include "plumbcalc/topology.hpp"

#include "plumbcalc/errors.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace plumbcalc {

// ---------------------------------------------------------------- presentations

void GroupPresentation::validate() const
{
    if (generators.empty() && !relators.empty()) throw DomainError("relators given for a presentation without generators");
    const int n = static_cast<int>(generators.size());
    for (const auto& r : relators)
        for (int x : r)
            if (x == 0 || std::abs(x) > n) throw DomainError("relator letter " + std::to_string(x) + " names no generator");
}

std::string GroupPresentation::to_string() const
{
    auto word = [&](const Word& w) {
        if (w.empty()) return std::string("1");
        std::string out;
        for (std::size_t i = 0; i < w.size();) {
            std::size_t j = i;
            while (j < w.size() && w[j] == w[i]) ++j;
            if (!out.empty()) out += " ";
            out += generators[static_cast<std::size_t>(std::abs(w[i]) - 1)];
            const long long k = static_cast<long long>(j - i) * (w[i] < 0 ? -1 : 1);
            if (k != 1) out += "^" + std::to_string(k);
            i = j;
        }
        return out;
    };
    std::string out = "<";
    for (std::size_t i = 0; i < generators.size(); ++i) out += (i ? ", " : "") + generators[i];
    out += " | ";
    for (std::size_t i = 0; i < relators.size(); ++i) out += (i ? ", " : "") + word(relators[i]);
    return out + ">";
}

Word free_reduce(const Word& w)
{
    Word out;
    for (int x : w) {
        if (!out.empty() && out.back() == -x)
            out.pop_back();
        else
            out.push_back(x);
    }
    return out;
}

Word inverse_word(const Word& w)
{
    Word out(w.rbegin(), w.rend());
    for (int& x : out) x = -x;
    return out;
}

Word commutator(const Word& a, const Word& b)
{
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    const Word ai = inverse_word(a), bi = inverse_word(b);
    out.insert(out.end(), ai.begin(), ai.end());
    out.insert(out.end(), bi.begin(), bi.end());
    return out;
}

GroupPresentation pi1_presentation(int d1, int d2)
{
    if (d1 < 1 || d2 < 1) throw DomainError("pi1_presentation needs d1, d2 >= 1");
    const int delta1 = 1, delta2 = 2, lambda = 3;
    const Word g1(static_cast<std::size_t>(d1), delta1);
    const Word g2(static_cast<std::size_t>(d2), delta2);
    GroupPresentation p;
    p.generators = {"d1", "d2", "l"};
    Word r1{delta1};
    const Word c1 = inverse_word(commutator(g2, {-lambda}));
    r1.insert(r1.end(), c1.begin(), c1.end());
    Word r2{delta2};
    const Word c2 = inverse_word(commutator(g1, {lambda}));
    r2.insert(r2.end(), c2.begin(), c2.end());
    p.relators = {r1, r2, commutator(g1, g2)};
    return p;
}

AbelianGroup abelianization(const GroupPresentation& p)
{
    p.validate();
    // columns are relators, rows generators: the quotient is Z^gens / (exponent sums)
    IntMatrix m(p.generators.size(), p.relators.size());
    for (std::size_t j = 0; j < p.relators.size(); ++j)
        for (int x : p.relators[j]) m(static_cast<std::size_t>(std::abs(x) - 1), j) += x > 0 ? 1 : -1;
    return cokernel(m);
}

// ---------------------------------------------------------------- finite groups

FiniteGroupTable::FiniteGroupTable(std::string name, std::vector<std::vector<int>> table)
    : name_(std::move(name)), table_(std::move(table))
{
    const std::size_t n = table_.size();
    if (n == 0) throw DomainError("group table is empty");
    const int ni = static_cast<int>(n);
    for (const auto& row : table_) {
        if (row.size() != n) throw DomainError("group table is not square");
        std::vector<bool> seen(n, false);
        for (int x : row) {
            if (x < 0 || x >= ni) throw DomainError("group table entry out of range");
            if (seen[static_cast<std::size_t>(x)]) throw DomainError("group table row repeats an element");
            seen[static_cast<std::size_t>(x)] = true;
        }
    }
    for (int a = 0; a < ni; ++a)
        if (mul(0, a) != a || mul(a, 0) != a) throw DomainError("element 0 is not the identity");
    inverse_.assign(n, -1);
    for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
            if (mul(a, b) == 0) {
                if (mul(b, a) != 0) throw DomainError("left and right inverses differ");
                inverse_[static_cast<std::size_t>(a)] = b;
            }
    for (int a = 0; a < ni; ++a)
        for (int b = 0; b < ni; ++b)
            for (int c = 0; c < ni; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c))) throw DomainError("group table is not associative");
}

bool FiniteGroupTable::is_abelian() const
{
    const int n = static_cast<int>(order());
    for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

namespace {

using Perm = std::vector<int>;

// Closure of the generated permutation group, identity first, product p*q = p after q.
FiniteGroupTable group_from_permutations(const std::string& name, const std::vector<Perm>& gens)
{
    const std::size_t points = gens.front().size();
    Perm id(points);
    std::iota(id.begin(), id.end(), 0);
    auto compose = [](const Perm& p, const Perm& q) {
        Perm r(q.size());
        for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[static_cast<std::size_t>(q[i])];
        return r;
    };
    std::vector<Perm> elems{id};
    std::map<Perm, int> index{{id, 0}};
    for (std::size_t head = 0; head < elems.size(); ++head)
        for (const auto& g : gens) {
            Perm next = compose(elems[head], g);
            if (index.emplace(next, static_cast<int>(elems.size())).second) elems.push_back(next);
        }
    std::vector<std::vector<int>> table(elems.size(), std::vector<int>(elems.size()));
    for (std::size_t a = 0; a < elems.size(); ++a)
        for (std::size_t b = 0; b < elems.size(); ++b) table[a][b] = index.at(compose(elems[a], elems[b]));
    return FiniteGroupTable(name, std::move(table));
}

Perm cycle_perm(int n)
{
    Perm p(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (i + 1) % n;
    return p;
}

} // namespace

FiniteGroupTable cyclic_group(int n)
{
    if (n < 1) throw DomainError("cyclic group order must be positive");
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
    return FiniteGroupTable("Z/" + std::to_string(n), std::move(t));
}

FiniteGroupTable dihedral_group(int n)
{
    if (n < 2) throw DomainError("dihedral group needs n >= 2");
    if (n == 2) return direct_product(cyclic_group(2), cyclic_group(2));
    Perm flip(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) flip[static_cast<std::size_t>(i)] = (n - i) % n;
    auto g = group_from_permutations("D" + std::to_string(n), {cycle_perm(n), flip});
    return g;
}

FiniteGroupTable dicyclic_group(int m)
{
    if (m < 2) throw DomainError("dicyclic group needs m >= 2");
    // elements a^k x^e stored as index k + 2m*e
    const int two_m = 2 * m;
    const int n = 4 * m;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int k = i % two_m, e = i / two_m;
            const int l = j % two_m, f = j / two_m;
            int exp = k + (e ? -l : l);
            int xe = e + f;
            if (xe == 2) {
                exp += m;
                xe = 0;
            }
            exp = ((exp % two_m) + two_m) % two_m;
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = exp + two_m * xe;
        }
    return FiniteGroupTable(m == 2 ? "Q8" : "Dic" + std::to_string(m), std::move(t));
}

FiniteGroupTable direct_product(const FiniteGroupTable& a, const FiniteGroupTable& b)
{
    const int na = static_cast<int>(a.order()), nb = static_cast<int>(b.order());
    const int n = na * nb;
    std::vector<std::vector<int>> t(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                a.mul(i / nb, j / nb) * nb + b.mul(i % nb, j % nb);
    return FiniteGroupTable(a.name() + " x " + b.name(), std::move(t));
}

FiniteGroupTable alternating_group_4()
{
    return group_from_permutations("A4", {{1, 2, 0, 3}, {1, 0, 3, 2}});
}

std::vector<FiniteGroupTable> small_group_catalog(std::size_t max_order)
{
    if (max_order > 12) throw DomainError("the built-in catalog stops at order 12");
    std::vector<FiniteGroupTable> out;
    auto add = [&](FiniteGroupTable g) {
        if (g.order() <= max_order) out.push_back(std::move(g));
    };
    const auto z = [](int n) { return cyclic_group(n); };
    for (int n = 1; n <= 12; ++n) {
        add(z(n));
        switch (n) {
        case 4: add(direct_product(z(2), z(2))); break;
        case 6: add(dihedral_group(3)); break;
        case 8:
            add(direct_product(z(2), z(4)));
            add(direct_product(direct_product(z(2), z(2)), z(2)));
            add(dihedral_group(4));
            add(dicyclic_group(2));
            break;
        case 9: add(direct_product(z(3), z(3))); break;
        case 10: add(dihedral_group(5)); break;
        case 12:
            add(direct_product(z(2), z(6)));
            add(dihedral_group(6));
            add(alternating_group_4());
            add(dicyclic_group(3));
            break;
        default: break;
        }
    }
    return out;
}

FiniteGroupTable group_from_json(const nlohmann::json& doc, const std::string& name)
{
    if (!doc.is_object()) throw DomainError("group table must be a JSON object");
    for (const auto& [key, value] : doc.items())
        if (key != "order" && key != "table") throw DomainError("unknown field '" + key + "' in group table");
    if (!doc.contains("order") || !doc["order"].is_number_integer()) throw DomainError("group table needs an integer 'order'");
    if (!doc.contains("table") || !doc["table"].is_array()) throw DomainError("group table needs a 'table' array");
    const long long n = doc["order"].get<long long>();
    std::vector<std::vector<int>> t;
    for (const auto& row : doc["table"]) {
        if (!row.is_array()) throw DomainError("group table rows must be arrays");
        std::vector<int> r;
        for (const auto& x : row) {
            if (!x.is_number_integer()) throw DomainError("group table entries must be integers");
            r.push_back(x.get<int>());
        }
        t.push_back(std::move(r));
    }
    if (static_cast<long long>(t.size()) != n) throw DomainError("group table size does not match 'order'");
    return FiniteGroupTable(name, std::move(t));
}

nlohmann::json group_to_json(const FiniteGroupTable& g)
{
    return {{"order", g.order()}, {"table", g.table()}};
}

// ---------------------------------------------------------------- homomorphism counting

std::uint64_t count_homs(const GroupPresentation& p, const FiniteGroupTable& g, EnumerationOrder order,
                         std::uint64_t budget)
{
    p.validate();
    const std::size_t k = p.generators.size();
    const std::uint64_t n = g.order();
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > budget / n) throw DomainError("count_homs: |G|^generators exceeds the evaluation budget");
        total *= n;
    }
    std::vector<Word> rels;
    for (const auto& r : p.relators) rels.push_back(free_reduce(r));

    const bool reversed = order == EnumerationOrder::last_generator_outermost;
    std::vector<int> image(k), inv(k);
    std::uint64_t count = 0;
    for (std::uint64_t code = 0; code < total; ++code) {
        // digit 0 is the outermost loop
        std::uint64_t c = code;
        for (std::size_t d = k; d-- > 0;) {
            const int digit = static_cast<int>(c % n);
            c /= n;
            const std::size_t gen = reversed ? k - 1 - d : d;
            image[gen] = reversed ? static_cast<int>(n) - 1 - digit : digit;
        }
        for (std::size_t i = 0; i < k; ++i) inv[i] = g.inv(image[i]);
        bool ok = true;
        for (const auto& r : rels) {
            int acc = 0;
            for (int x : r) acc = g.mul(acc, x > 0 ? image[static_cast<std::size_t>(x - 1)] : inv[static_cast<std::size_t>(-x - 1)]);
            if (acc != 0) {
                ok = false;
                break;
            }
        }
        if (ok) ++count;
    }
    return count;
}

// ---------------------------------------------------------------- handles

HandleData kirby_handle_data(int d1, int d2)
{
    if (d1 < 1 || d2 < 1) throw DomainError("kirby_handle_data needs d1, d2 >= 1");
    HandleData h;
    h.zero_handles = 1;
    h.one_handles = 2;
    h.two_handles = 3;
    h.three_handles = 0;
    h.framings = {0, -d1, -d2};
    // h runs along a commutator; a_j once over the j-th 1-handle
    h.runs = IntMatrix{{0, 0}, {1, 0}, {0, 1}};
    return h;
}

HomologyReport chain_complex_homology(const HandleData& h)
{
    if (h.zero_handles != 1) throw DomainError("chain_complex_homology expects exactly one 0-handle");
    if (h.three_handles != 0) throw DomainError("chain_complex_homology does not model 3-handles");
    if (h.runs.rows() != static_cast<std::size_t>(h.two_handles) || h.runs.cols() != static_cast<std::size_t>(h.one_handles))
        throw DomainError("run matrix does not match the handle counts");
    // d1 = 0 with a single 0-handle; d2 : C2 -> C1 is the transposed run matrix
    const IntMatrix d2 = h.runs.transpose();
    const std::size_t r2 = rank(d2);

    HomologyReport out;
    out.h0 = AbelianGroup{1, {}};
    out.h1 = cokernel(d2);
    out.h2 = AbelianGroup{static_cast<std::size_t>(h.two_handles) - r2, {}};
    out.euler_characteristic = h.zero_handles - h.one_handles + h.two_handles - h.three_handles;
    return out;
}

// ---------------------------------------------------------------- two-bridge knots

std::pair<Integer, Integer> two_bridge_fraction(int d1, int d2)
{
    if (d1 < 1 || d2 < 1) throw DomainError("two_bridge_fraction needs d1, d2 >= 1");
    const Rational f = Rational(2 * d1) - Rational(1, 2 * d2);
    return {boost::multiprecision::numerator(f), boost::multiprecision::denominator(f)};
}

bool two_bridge_equivalent(const std::pair<Integer, Integer>& a, const std::pair<Integer, Integer>& b)
{
    const Integer p = abs(a.first);
    if (p != abs(b.first)) return false;
    if (p == 1) return true;
    auto mod = [&](const Integer& x) {
        Integer r = x % p;
        return r < 0 ? Integer(r + p) : r;
    };
    const Integer q = mod(a.second), q2 = mod(b.second);
    for (Integer s = 1; s < p; ++s) {
        if (mod(q * s) != 1) continue;
        // s is the inverse of q
        for (const Integer& c : {q, s})
            if (q2 == c || q2 == mod(-c)) return true;
        return false;
    }
    return false;
}

IntMatrix seifert_matrix(int d1, int d2)
{
    if (d1 < 1 || d2 < 1) throw DomainError("seifert_matrix needs d1, d2 >= 1");
    return IntMatrix{{-d1, 1}, {0, -d2}};
}

namespace {

LaurentPoly1 laurent_det(const std::vector<std::vector<LaurentPoly1>>& m)
{
    const std::size_t n = m.size();
    if (n == 0) return LaurentPoly1(Integer(1));
    if (n == 1) return m[0][0];
    LaurentPoly1 out;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        std::vector<std::vector<LaurentPoly1>> minor;
        for (std::size_t i = 1; i < n; ++i) {
            std::vector<LaurentPoly1> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        const LaurentPoly1 term = m[0][j] * laurent_det(minor);
        if (j % 2 == 0)
            out += term;
        else
            out -= term;
    }
    return out;
}

} // namespace

LaurentPoly1 alexander_from_seifert(const IntMatrix& v)
{
    if (v.rows() != v.cols()) throw DomainError("Seifert matrix must be square");
    const std::size_t n = v.rows();
    const LaurentPoly1 t = LaurentPoly1::var(0);
    std::vector<std::vector<LaurentPoly1>> m(n, std::vector<LaurentPoly1>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = LaurentPoly1(v(i, j)) - t * LaurentPoly1(v(j, i));
    LaurentPoly1 d = laurent_det(m);
    if (d.is_zero()) return d;
    const long long lo = d.terms().begin()->first[0];
    const long long hi = d.terms().rbegin()->first[0];
    if ((lo + hi) % 2 != 0) throw DomainError("determinant has no symmetric normalization");
    d = d.shifted({-(lo + hi) / 2});
    if (d.terms().rbegin()->second < 0) d = -d;
    return d;
}

LaurentPoly1 alexander_polynomial(int d1, int d2) { return alexander_from_seifert(seifert_matrix(d1, d2)); }

} // namespace plumbcalc
