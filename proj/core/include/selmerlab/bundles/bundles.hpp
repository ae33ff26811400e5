#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "selmerlab/algebra/linalg.hpp"
#include "selmerlab/algebra/poly.hpp"
#include "selmerlab/funcfield/funcfield.hpp"
#include "selmerlab/support/bigint.hpp"
#include "selmerlab/support/random.hpp"
#include "selmerlab/vinberg/vinberg.hpp"

namespace selmerlab::bundles {

using algebra::Field;
using algebra::FieldElem;
using algebra::MatN;
using algebra::Poly;

// An element of ½Z, stored as twice its value.
struct HalfInt {
  std::int64_t twice = 0;

  static constexpr HalfInt whole(std::int64_t v) { return {2 * v}; }
  static constexpr HalfInt half(std::int64_t v) { return {v}; }  // v/2
  bool is_integer() const { return twice % 2 == 0; }
  Rational to_rational() const { return Rational(twice, 2); }
  std::string to_string() const;

  friend constexpr HalfInt operator+(HalfInt a, HalfInt b) { return {a.twice + b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a, HalfInt b) { return {a.twice - b.twice}; }
  friend constexpr HalfInt operator-(HalfInt a) { return {-a.twice}; }
  friend constexpr HalfInt operator*(std::int64_t k, HalfInt a) { return {k * a.twice}; }
  friend constexpr bool operator==(HalfInt, HalfInt) = default;
  friend constexpr auto operator<=>(HalfInt, HalfInt) = default;
};

// Numerical datum of a canonical parabolic reduction of a GSO(2n+2)-bundle:
// Levi GL_{n_1} × … × GL_{n_t} × GSO_{2h}, slopes μ_i of the graded pieces,
// d = deg L, and the genus (kept symbolic; exact counts assume g = 0).
struct SlopeProfile {
  unsigned n = 1;
  unsigned h = 0;
  std::vector<unsigned> ranks;   // n_1..n_t
  std::vector<HalfInt> slopes;   // μ_1..μ_t
  std::int64_t d = 0;
  unsigned genus = 0;

  unsigned t() const { return static_cast<unsigned>(ranks.size()); }
  HalfInt middle_slope() const { return HalfInt::half(d); }
  bool is_borel() const;
  // Slope of X_1, or d/2 when t = 0 (semistable bundle).
  HalfInt top_slope() const;
};

// Empty string when the profile is admissible, otherwise the violated condition.
std::string profile_violation(const SlopeProfile& p);
void validate(const SlopeProfile& p);

// h^0 of a line bundle of the given degree.
std::int64_t h0_line(std::int64_t degree, unsigned genus);
// h^0 of a semistable bundle of the given rank and slope (integral degree).
std::int64_t h0_semistable(std::uint64_t rank, HalfInt slope, unsigned genus);

enum class BlockKind { sym2, sym2_traceless, tensor };

struct Block {
  unsigned row = 0;  // 1-based slot indices, row ≤ col
  unsigned col = 0;
  BlockKind kind = BlockKind::tensor;
  std::uint64_t rank = 0;
  HalfInt slope;
  std::string label;

  HalfInt degree() const { return static_cast<std::int64_t>(rank) * slope; }
};

// Upper-triangular blocks (row ≤ col) of the filtration of Sym²_0(E′) ⊗ L^∨.
// Slots are X_1..X_t, X_{t+1} (only when h > 0), X_t^∨⊗L..X_1^∨⊗L, numbered
// 1..2t+1 with slot t+1 skipped when h = 0. For h = 0 the trace condition is
// charged to the X_t ⊗ X_t^∨ block.
struct FiltrationMatrix {
  unsigned t = 0;
  bool has_middle = false;
  std::vector<Block> blocks;

  const Block& at(unsigned row, unsigned col) const;
  unsigned mirror(unsigned slot) const { return 2 * t + 2 - slot; }
  std::uint64_t total_rank() const;
  HalfInt total_degree() const;
};
FiltrationMatrix filtration_degrees(const SlopeProfile& p);

// Degree of Sym²_0(E′) ⊗ L^∨ computed from the splitting type of E′.
HalfInt splitting_type_degree(const SlopeProfile& p);

std::int64_t block_h0(const Block& b, std::int64_t f, unsigned genus);

struct SectionBound {
  std::int64_t log_q = 0;
  BigInt value = 1;
};
// ∏_{blocks} |H^0(a_ij ⊗ F)| over F_q.
SectionBound section_bound(const SlopeProfile& p, std::int64_t f, std::uint64_t q);

enum class AutCase { with_middle, above_half, at_or_below_half };
std::string_view aut_case_name(AutCase c);
AutCase aut_case(const SlopeProfile& p);

struct AutFactor {
  std::string label;
  unsigned first_index = 0;  // smallest X-index the factor involves
  BigInt size = 1;
};
struct AutBound {
  AutCase kind = AutCase::with_middle;
  std::vector<AutFactor> factors;
  BigInt value = 1;  // lower bound for |Aut(E)(F_q)| up to the genus constant
  long double log_q = 0;
};
AutBound aut_bound(const SlopeProfile& p, std::uint64_t q);
// X_t ↔ X_t^∨ ⊗ L on an h = 0 profile.
SlopeProfile swap_last(const SlopeProfile& p);

enum class CaseRow {
  case1,
  case2_low,
  case2_parabolic,
  case2_borel_equal,
  case2_borel_below,
  case2_borel_above,
  case3_low,
  case3_parabolic,
  case3_borel_equal,
  case3_borel_below,
  case3_borel_above,
  case4,
};
enum class Contribution { zero, one, small, four };

std::string_view row_name(CaseRow r);
std::string_view contribution_name(Contribution c);
Contribution contribution_of(CaseRow r);
unsigned case_number(CaseRow r);

// Case-table row of a profile at twist degree f. The two *_borel_above rows
// cover Borel profiles with 2μ_1 − d > (2n+1)f, which the table leaves out:
// some sub-diagonal line bundle then has negative degree and no section has
// nonzero discriminant.
CaseRow case_classify(const SlopeProfile& p, std::int64_t f);

// Degrees of the line bundles carrying the sub-diagonal entries x_1..x_{n+1}
// of a Borel section (after swapping X_{n+1} when μ_{n+1} < d/2).
std::vector<HalfInt> subdiagonal_degrees(const SlopeProfile& p, std::int64_t f);

struct ContributionRatio {
  unsigned family = 0;  // 1: f + μ_{e+1} < μ_1 ≤ f + μ_e, 2: μ_1 ≤ f + d/2
  unsigned e = 0;
  HalfInt log_h1;
  HalfInt log_h2;
  HalfInt log_ratio;  // the simplified difference
  HalfInt bound;      // n_1(1−e)f or −n_1·e·f
  bool holds = false;
};
// nullopt when the profile is not in either family (h > 0 is required).
std::optional<ContributionRatio> lemma_family(const SlopeProfile& p, std::int64_t f);
// Throws DomainError outside the families.
ContributionRatio contribution_ratio(const SlopeProfile& p, std::int64_t f);

struct ProfileSweep {
  unsigned n = 1;
  std::int64_t f_max = 0;
  std::int64_t d_max = 0;
  std::uint64_t profiles = 0;
  std::vector<std::uint64_t> row_counts;  // indexed by CaseRow
  std::uint64_t gaps = 0;
  std::uint64_t family_checked = 0;
  std::uint64_t family_violations = 0;
  std::uint64_t contribution_one = 0;
  std::uint64_t contribution_one_mismatches = 0;
  std::uint64_t above_without_negative_entry = 0;
};
// Every admissible profile with 0 ≤ f ≤ f_max, 0 ≤ d ≤ d_max and half-integer
// slopes within (2n+2)f + 4 of d/2.
ProfileSweep profile_sweep(unsigned n, std::int64_t f_max, std::int64_t d_max);
template <class Visit>
void for_each_profile(unsigned n, std::int64_t f, std::int64_t d, Visit&& visit);

struct Reduction {
  MatN conjugator;            // g with g·A·g^{-1} = result
  FieldElem multiplier;       // g·g* = multiplier·I; one when the middle entry is a square
  MatN result;                // κ1(invariants)
  vinberg::Invariant invariants;
  std::vector<MatN> stages;   // diagonal stage, then one unipotent stage per row
};
// A must be self-adjoint, traceless and upper Hessenberg with nonzero
// sub-diagonal. Throws DomainError otherwise.
Reduction kostant_reduce(const Field& F, const MatN& A);

// Random element of the upper-triangular Borel of SO: a torus element times
// the Cayley transform of a strictly upper skew-adjoint matrix.
MatN random_borel_orthogonal(const Field& F, unsigned n, SampleEngine& rng);


struct VanishingReport {
  std::optional<std::int64_t> valuation;  // nullopt when Δ ≡ 0
  bool at_least_two = false;
};
// section: self-adjoint traceless Hessenberg matrix over F_q[t]; `index` is the
// 1-based sub-diagonal entry x_index, which must vanish at `place` without
// being a nonzero constant.
VanishingReport disc_vanishing_check(const Field& F, unsigned n, const algebra::Matrix<Poly>& section,
                                     const funcfield::Place& place, unsigned index);

struct Case4Check {
  unsigned n = 1;
  std::uint64_t q = 0;
  std::uint64_t traceless_rank = 0;       // rank of Sym²_0 of a rank-(2n+2) bundle
  bool traceless_rank_matches = false;    // = (2n+3)(n+1) − 1
  bool f_coefficient_cancels = false;     // section count vs curve count
  std::int64_t constant_exponent = 0;     // q^{(1−g)·e} exponent left over
  bool exponent_is_dim_g = false;
  Rational constant;                      // 4ζ(n+1)∏ζ(2i)
  bool matches_average_constants = false;
};
// Random self-adjoint traceless Borel-shaped section over F_q[t] whose
// sub-diagonal entry x_index vanishes at t = root.
algebra::Matrix<Poly> random_vanishing_section(const Field& F, unsigned n, unsigned index, FieldElem root,
                                               SampleEngine& rng);

Case4Check case4_constant_check(unsigned n, std::uint64_t q);

template <class Visit>
void for_each_profile(unsigned n, std::int64_t f, std::int64_t d, Visit&& visit) {
  const std::int64_t window = 2 * (static_cast<std::int64_t>(2 * n + 2) * f + 4);  // in half-units
  // Compositions of n+1 into block ranks plus a middle half-rank h.
  std::vector<unsigned> ranks;
  auto over_slopes = [&](unsigned h) {
    SlopeProfile p;
    p.n = n;
    p.h = h;
    p.ranks = ranks;
    p.d = d;
    p.slopes.assign(ranks.size(), HalfInt{});
    auto rec = [&](auto&& self, std::size_t i) -> void {
      if (i == ranks.size()) {
        if (profile_violation(p).empty()) visit(static_cast<const SlopeProfile&>(p));
        return;
      }
      const std::int64_t hi = i == 0 ? d + window : p.slopes[i - 1].twice - 1;
      for (std::int64_t tw = d - window; tw <= hi; ++tw) {
        if ((static_cast<std::int64_t>(ranks[i]) * tw) % 2 != 0) continue;
        p.slopes[i] = HalfInt{tw};
        self(self, i + 1);
      }
    };
    rec(rec, 0);
  };
  auto compose = [&](auto&& self, unsigned remaining) -> void {
    over_slopes(remaining);
    for (unsigned r = 1; r <= remaining; ++r) {
      ranks.push_back(r);
      self(self, remaining - r);
      ranks.pop_back();
    }
  };
  compose(compose, n + 1);
}

}  // namespace selmerlab::bundles
