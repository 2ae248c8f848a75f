#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "tomlink/groebner.hpp"
#include "tomlink/pfaffian.hpp"
#include "tomlink/unprojection.hpp"

namespace tomlink {

// Cyclic quotient singularity 1/r(w0, w1, w2).
struct QuotientPoint {
  long r = 1;
  std::array<long, 3> w{};

  // Weights reduced mod r and replaced by the least sorted vector in the orbit
  // under multiplication by units of Z/r.
  QuotientPoint normalized() const;
  bool is_smooth() const { return r == 1; }
  // Terminal lemma: up to permutation and a unit, (1, a, r - a) with gcd(a, r) = 1.
  bool is_terminal() const;
  std::string to_string() const;

  friend bool operator==(const QuotientPoint& a, const QuotientPoint& b) {
    auto na = a.normalized(), nb = b.normalized();
    return na.r == nb.r && na.w == nb.w;
  }
  friend bool operator!=(const QuotientPoint& a, const QuotientPoint& b) { return !(a == b); }
};

// Accepts "1/6(1,1,5)".
QuotientPoint parse_quotient_point(const std::string& text);

struct BasketPoint {
  QuotientPoint point;
  std::string locus;  // coordinate variable that is nonzero at the point; empty when unknown
};

struct Basket {
  std::vector<BasketPoint> points;

  std::vector<QuotientPoint> types() const;  // normalized and sorted
  std::string to_string() const;             // "{1/2(1,1,1), 1/6(1,1,5)}"
  friend bool operator==(const Basket& a, const Basket& b) { return a.types() == b.types(); }
};

struct FanoCase {
  std::string id;
  long a = 1, b = 1, c = 1;
  std::array<long, 4> d{};
  long r = 1;
  SkewMatrix5 M;  // over the ring (x1, x2, x3, y1..y4) with weights (a, b, c, d)
  TomFormat fmt;
  Basket basket;  // the basket of X, centre included
  std::optional<long> declared_nodes;

  QuotientPoint centre() const { return QuotientPoint{r, {a, b, c}}; }
  std::array<long, 8> ambient() const { return {a, b, c, d[0], d[1], d[2], d[3], r}; }
};

// Ring (x1, x2, x3, y1..y4) of Z for the given weights.
RingPtr z_ring_for(long a, long b, long c, const std::array<long, 4>& d);
// Checks ordering, min(a, b, c) = 1, Tom format of M and the centre in the basket.
void validate_case(const FanoCase& fc);

struct Scroll {
  RingPtr ring;  // (t, s, x1, x2, x3, y1..y4), rank 2
  std::array<std::vector<std::string>, 2> irrelevant{
      std::vector<std::string>{"t", "s"},
      std::vector<std::string>{"x1", "x2", "x3", "y1", "y2", "y3", "y4"}};
  long r = 1;
  std::array<long, 3> x_weights{};
  std::array<long, 4> d{};
};

Scroll kawamata_scroll(const FanoCase& fc);
// Ring of Z (or of its Tom relabeling) must carry the names x1..x3, y1..y4.
std::array<long, 4> compute_deltas(const std::array<Polynomial, 4>& g, const FanoCase& fc);

// h1..h9; throws when a t-division is not exact or h is not bihomogeneous.
Ideal blowup_ideal(const UnprojectionResult& res, const Scroll& scroll, const std::array<long, 4>& deltas);
// The nine generators of X pulled back along the integral form of the weighted blow-up.
Ideal pullback_ideal(const UnprojectionResult& res, const Scroll& scroll);

struct OracleResult {
  bool equal = false;
  std::size_t saturation_size = 0;
  std::string detail;
};
// Saturation of the pullback by t in the block order used for the worked examples,
// compared with <h1..h9> by mutual membership.
OracleResult saturation_oracle(const UnprojectionResult& res, const Scroll& scroll, const Ideal& Y,
                               const GroebnerOptions& opts = {});

enum class CaseTag { I, II, III, IV, V, VI, VII, VIII };
std::string tag_name(CaseTag tag);  // "(i)" .. "(viii)"
CaseTag classify_case(const std::array<long, 4>& d);

struct WeightConfig {
  enum class Kind { A, B, Neither } kind = Kind::Neither;
  long pi = 0;
  // Every matching pattern, e.g. "(a) pi=2" or "(b) a25,a34 pi=5".
  std::vector<std::string> matches;
  // Pi values of the (b) matches among {d1, d2}.
  std::vector<long> b_pis;

  std::string name() const;  // "(a)", "(b)" or "neither"
};
WeightConfig detect_weight_config(const WeightMatrix5& w, const std::array<long, 4>& d);

// Maximal groups of equal ideal weight, in decreasing weight.
std::vector<std::vector<int>> ideal_weight_groups(const std::array<long, 4>& d);

struct FlopOptions {
  GroebnerOptions groebner;
  std::uint64_t seed = 0;
  int samples = 20;
};

struct FlopAnalysis {
  long count = 0;
  // A[i][j] = coefficient of y_{i+1} in Pf_{others[j]} restricted to y = 0.
  std::vector<std::vector<Polynomial>> A;
  RingPtr d_ring;
  bool det_vanishes = false;
  bool rank_at_least_two = false;  // 2x2 minors have no common projective zero
  long nodes_on_x1 = -1;           // length of the node scheme inside {x1 = 0}
  int samples = 0;
  int samples_rank_three = 0;
  std::vector<int> sample_ranks;
};

// Nodes of Z on D as the length of the scheme of 3x3 minors of A.
FlopAnalysis count_flops(const SkewMatrix5& M, const TomFormat& fmt, const FlopOptions& opts = {});

struct FlipData {
  std::string base_point;  // e.g. "P_y1" or "P_(y1:y2)=(1:w)"
  std::vector<std::string> eliminated;
  std::vector<std::pair<std::string, long>> survivors;  // localized top weight, sorted
  std::vector<long> contracted;                          // positive, decreasing
  std::vector<long> extracted;                           // negative, decreasing
  std::optional<long> hypersurface_degree;
  // Survivor pairs (u, v) with u*v in the tangent cone of the hypersurface equation.
  std::vector<std::pair<std::string, std::string>> hypersurface_pairs;
  bool mirrored = false;  // copied from the conjugate base point

  std::string weights_string() const;  // "(6,1,1,-1,-3;3)"
};

enum class StepKind {
  KawamataBlowup,
  Flop,
  Isomorphism,
  Flip,
  SimultaneousFlips,
  DivisorialContraction,
  DelPezzoFibration,
  ConicBundle
};
std::string step_kind_name(StepKind k);

struct EndpointFano {
  RingPtr ring;
  std::vector<Polynomial> equations;  // minimal generators
  std::vector<long> weights;
  std::vector<std::string> eliminated;
  std::string contracted;
  long det = 0;
  bool gorenstein = false;
  bool minimal_certified = false;
  int codimension = 0;
  std::string ambient_string() const;  // "P^5(1,1,1,1,2,3)"
};

struct ConicData {
  long delta = 0;
  long delta_cross_check = 0;
  std::vector<std::string> base;
  std::string line_var;
  std::array<std::string, 2> patch_vars;
  std::array<Polynomial, 2> determinants;            // univariate in the other line coordinate
  std::array<std::vector<std::string>, 2> fibre_vars;
  std::array<std::vector<std::string>, 2> eliminated;
  std::array<Polynomial, 2> conics;
  long shared_roots = 0;
  bool structural_only = false;  // discriminant not computed, reason in note
  std::string note;
};

struct LinkStep {
  StepKind kind = StepKind::KawamataBlowup;
  std::string wall;
  long flop_count = 0;  // -1 when unknown
  std::vector<FlipData> flips;  // one for Flip, two for SimultaneousFlips
  bool predicted_skip = false;  // configuration (b) forces a pure power on this wall
  std::string contraction_type;  // "(2,0)" or "(2,1)"
  std::optional<EndpointFano> endpoint;
  long dp_degree = 0;
  std::optional<ConicData> conic;

  std::string summary() const;
};

struct TraceOptions {
  std::uint64_t seed = 0;
  GroebnerOptions groebner;
  bool verify_unprojection = true;
  bool check_template = true;
  bool track_basket = true;  // needs the full basket of X
};

struct LinkTrace {
  FanoCase input;
  std::array<int, 6> relabel{0, 1, 2, 3, 4, 5};
  CaseTag tag = CaseTag::I;
  WeightConfig config;
  UnprojectionResult unprojection;
  UnprojectionReport unprojection_report;
  Scroll scroll;
  std::array<long, 4> deltas{};
  Ideal Y;
  FlopAnalysis flops;
  std::vector<LinkStep> steps;
  std::vector<Basket> baskets;  // baskets[0] is the basket of X, baskets[i + 1] after steps[i]
  bool template_ok = true;
  std::vector<std::string> template_notes;
  std::vector<std::string> structure;  // step kinds for structural traces
  bool structural = false;
};

LinkTrace trace_link(const FanoCase& fc, const TraceOptions& opts = {});

// Wall analysis in the chart of the wall variables.
LinkStep analyze_wall(const Ideal& Y, const Scroll& scroll, const std::vector<std::string>& wall);

EndpointFano endpoint_fano(const Ideal& Y, const Scroll& scroll, const std::string& contracted,
                           const std::string& previous, const GroebnerOptions& opts = {});
long dp_degree(const Ideal& Y, const Scroll& scroll, const std::array<std::string, 2>& base, std::uint64_t seed,
               const GroebnerOptions& opts = {});
ConicData conic_discriminant(const Ideal& Y, const Scroll& scroll, const std::vector<std::string>& base,
                             const GroebnerOptions& opts = {});

std::vector<Basket> track_basket(const std::vector<LinkStep>& steps, const Basket& initial, const QuotientPoint& centre,
                                 const std::array<long, 3>& x_weights);

// Template check against the link shape of the case tag.
bool check_link_template(CaseTag tag, const WeightConfig& config, const std::array<long, 4>& d,
                         const std::vector<LinkStep>& steps, std::vector<std::string>* notes);

struct PicardReport {
  bool determined = false;
  long rho = 0;
  std::vector<std::string> chain;
  std::string to_string() const;
};
PicardReport picard_report(const FanoCase& fc, const LinkTrace& trace, bool endpoint_quasismooth);

// Link shape from the weights alone, for data without explicit matrices.
LinkTrace structural_trace(const FanoCase& fc);

struct Elimination {
  std::vector<Polynomial> remaining;  // nonzero generators after all substitutions
  std::vector<std::string> eliminated;
  std::vector<Polynomial> solved;  // solved[i] is the expression substituted for eliminated[i]
};
// Repeatedly removes a variable occurring in some generator only as a lone term
// c*v with c a nonzero constant, scanning `priority` in order.
Elimination eliminate_lone_linear(std::vector<Polynomial> gens, const std::vector<std::string>& priority);

// s first, then x- and y-variables by index, then t.
std::vector<std::string> elimination_priority(const Ring& ring);

}  // namespace tomlink
