#pragma once

#include "plumbcalc/divisor.hpp"
#include "plumbcalc/graph.hpp"
#include "plumbcalc/laurent.hpp"
#include "plumbcalc/topology.hpp"

#include <set>
#include <string>
#include <vector>

namespace plumbcalc {

// Monic polynomial, coefficients from the leading one down to the constant term.
using Polynomial = std::vector<Rational>;

Polynomial parse_polynomial(const std::string& text);  // "1,3,5" is t^2 + 3t + 5
std::string polynomial_to_string(const Polynomial& p);

struct FamilyParams {
    Polynomial p1{Rational(1)};
    Polynomial p2{Rational(1)};

    FamilyParams() = default;
    FamilyParams(Polynomial a, Polynomial b);  // checks both are monic

    int d1() const { return static_cast<int>(p1.size()); }
    int d2() const { return static_cast<int>(p2.size()); }
};

// Coefficients reversed: t^(d-1) p(1/t), also listed leading coefficient first.
Polynomial reversed_polynomial(const Polynomial& p);

// Vertex ids: L1inf, L2inf, L10, L20, T<j>_<i> (i = 1 meets A<j>), A1, A2.
struct LabeledFamilyGraph {
    WeightedGraph graph;
    std::set<std::string> d_part;  // everything except A1, A2
    int d1 = 0;
    int d2 = 0;

    WeightedGraph boundary() const;  // induced subgraph on d_part
};

LabeledFamilyGraph build_boundary_graph(int d1, int d2);

// The four lines on the quadric as a 4-cycle of 0-vertices.
WeightedGraph quadric_boundary();

// Replays the blowups from the quadric; the log's new_id fields carry the family ids.
struct FamilyRewrite {
    LabeledFamilyGraph family;
    RewriteLog log;
};
FamilyRewrite build_by_blowups(const FamilyParams& params);

// Sets the display labels of every family vertex present in g.
void label_family_vertices(WeightedGraph& g);

struct PicardReport {
    bool unimodular = false;
    Integer det;
    bool relations_verified = false;
};
PicardReport picard_check(const LabeledFamilyGraph& g);

HomologyReport surface_homology(int d1, int d2);

// For exactly one d_k = 1: blow up the point where L1inf meets L2inf,
// then contract L_{k,inf} and L_{k,0}.
Rewrite standardize_mixed_case(const LabeledFamilyGraph& g);

// The boundary in standard form: as built, or after the mixed-case moves.
Rewrite standard_boundary(int d1, int d2);

enum class ChartCase { aa, al1, al2, lc1, lc2 };
ChartCase parse_chart_case(const std::string& text);
std::string to_string(ChartCase c);

struct ChartImage {
    LaurentPoly2 x1, x2, y1, y2;
};

struct ChartReport {
    bool ok = false;
    std::vector<LaurentPoly2> residuals;  // both defining equations after substitution
    bool inverse_ok = false;
    std::vector<std::string> notes;
};

// Throws DomainError when the case's hypothesis on p1, p2 fails.
ChartImage chart_map(ChartCase c, const FamilyParams& params);
ChartReport verify_chart(ChartCase c, const FamilyParams& params);

struct VolumeReport {
    bool ok = false;
    int sign = 0;
    LaurentPoly2 jacobian_times_v;  // det d(x1,x2)/d(v1,v2) * v1 * v2
    LaurentPoly2 x1x2;
};
VolumeReport verify_volume_form(ChartCase c, const FamilyParams& params);

} // namespace plumbcalc
