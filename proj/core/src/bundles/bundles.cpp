#include "selmerlab/bundles/bundles.hpp"

#include <algorithm>

#include "selmerlab/algebra/matrix.hpp"
#include "selmerlab/algebra/poly_ring.hpp"
#include "selmerlab/quadspace/quadspace.hpp"
#include "selmerlab/support/errors.hpp"
#include "selmerlab/zeta/zeta.hpp"

namespace selmerlab::bundles {

namespace {

std::int64_t as_int(HalfInt v) {
  ensure(v.is_integer(), "expected an integral value");
  return v.twice / 2;
}

BigInt gl_order(std::uint64_t r, std::uint64_t q) {
  BigInt order = 1;
  const BigInt qr = big_pow(q, r);
  for (std::uint64_t i = 0; i < r; ++i) order *= qr - big_pow(q, i);
  return order;
}

HalfInt neg_mu_plus(const SlopeProfile& p, std::int64_t f) {
  // −2μ_1 + d + f
  return HalfInt::whole(p.d + f) - 2 * p.top_slope();
}

}  // namespace

std::string HalfInt::to_string() const {
  if (is_integer()) return std::to_string(twice / 2);
  return std::to_string(twice) + "/2";
}

bool SlopeProfile::is_borel() const {
  return t() == n + 1 && std::all_of(ranks.begin(), ranks.end(), [](unsigned r) { return r == 1; });
}

HalfInt SlopeProfile::top_slope() const { return slopes.empty() ? middle_slope() : slopes.front(); }

std::string profile_violation(const SlopeProfile& p) {
  if (p.n < 1) return "n must be at least 1";
  if (p.slopes.size() != p.ranks.size()) return "one slope per block is required";
  unsigned total = p.h;
  for (unsigned r : p.ranks) {
    if (r == 0) return "block ranks must be positive";
    total += r;
  }
  if (total != p.n + 1) return "2Σn_i + 2h must equal 2n+2";
  for (std::size_t i = 0; i < p.ranks.size(); ++i)
    if ((static_cast<std::int64_t>(p.ranks[i]) * p.slopes[i].twice) % 2 != 0) return "block degrees must be integers";
  for (std::size_t i = 1; i < p.slopes.size(); ++i)
    if (!(p.slopes[i - 1] > p.slopes[i])) return "slopes must strictly decrease";
  const unsigned t = p.t();
  if (p.h > 0 && t > 0 && !(p.slopes.back() > p.middle_slope())) return "μ_t must exceed d/2 when h > 0";
  if (p.h == 0 && t >= 2 && !(p.slopes[t - 2] + p.slopes[t - 1] > HalfInt::whole(p.d)))
    return "μ_{t-1} + μ_t must exceed d when h = 0";
  return {};
}

void validate(const SlopeProfile& p) {
  const auto why = profile_violation(p);
  if (!why.empty()) throw DomainError("inadmissible slope profile: " + why);
}

std::int64_t h0_line(std::int64_t degree, unsigned genus) {
  if (genus == 0) return std::max<std::int64_t>(degree + 1, 0);
  if (degree > 2 * static_cast<std::int64_t>(genus) - 2) return degree + 1 - genus;
  if (degree < 0) return 0;
  throw DomainError("h^0 is not determined by Riemann-Roch alone");
}

std::int64_t h0_semistable(std::uint64_t rank, HalfInt slope, unsigned genus) {
  if (rank == 0) return 0;
  const HalfInt degree = static_cast<std::int64_t>(rank) * slope;
  require(degree.is_integer(), "semistable bundle must have integral degree");
  if (slope < HalfInt{}) return 0;
  if (slope > HalfInt::whole(2 * static_cast<std::int64_t>(genus) - 2))
    return degree.twice / 2 + static_cast<std::int64_t>(rank) * (1 - static_cast<std::int64_t>(genus));
  throw DomainError("h^0 is not determined by Riemann-Roch alone");
}

const Block& FiltrationMatrix::at(unsigned row, unsigned col) const {
  for (const auto& b : blocks)
    if (b.row == row && b.col == col) return b;
  throw DomainError("no such block in the filtration matrix");
}

std::uint64_t FiltrationMatrix::total_rank() const {
  std::uint64_t r = 0;
  for (const auto& b : blocks) r += b.rank;
  return r;
}

HalfInt FiltrationMatrix::total_degree() const {
  HalfInt d;
  for (const auto& b : blocks) d = d + b.degree();
  return d;
}

FiltrationMatrix filtration_degrees(const SlopeProfile& p) {
  validate(p);
  const unsigned t = p.t();
  struct Slot {
    unsigned index;
    std::uint64_t rank;
    HalfInt slope;
    std::string name;
  };
  std::vector<Slot> slots;
  for (unsigned k = 1; k <= t; ++k) slots.push_back({k, p.ranks[k - 1], p.slopes[k - 1], "X" + std::to_string(k)});
  if (p.h > 0) slots.push_back({t + 1, 2ull * p.h, p.middle_slope(), "X" + std::to_string(t + 1)});
  for (unsigned k = t; k >= 1; --k)
    slots.push_back({2 * t + 2 - k, p.ranks[k - 1], HalfInt::whole(p.d) - p.slopes[k - 1], "X" + std::to_string(k) + "^v(L)"});

  FiltrationMatrix m;
  m.t = t;
  m.has_middle = p.h > 0;
  const HalfInt d = HalfInt::whole(p.d);
  for (std::size_t a = 0; a < slots.size(); ++a) {
    for (std::size_t b = a; b < slots.size(); ++b) {
      Block blk;
      blk.row = slots[a].index;
      blk.col = slots[b].index;
      if (a == b) {
        const std::uint64_t r = slots[a].rank;
        const bool middle = m.has_middle && slots[a].index == t + 1;
        blk.kind = middle ? BlockKind::sym2_traceless : BlockKind::sym2;
        blk.rank = r * (r + 1) / 2 - (middle ? 1 : 0);
        blk.slope = 2 * slots[a].slope - d;
        blk.label = std::string(middle ? "Sym2_0(" : "Sym2(") + slots[a].name + ")(-L)";
      } else {
        blk.kind = BlockKind::tensor;
        blk.rank = slots[a].rank * slots[b].rank;
        blk.slope = slots[a].slope + slots[b].slope - d;
        blk.label = slots[a].name + "*" + slots[b].name + "(-L)";
      }
      m.blocks.push_back(blk);
    }
  }
  if (!m.has_middle && t >= 1) {
    for (auto& blk : m.blocks)
      if (blk.row == t && blk.col == t + 2) {
        blk.rank -= 1;
        blk.label += " traceless";
      }
  }
  return m;
}

HalfInt splitting_type_degree(const SlopeProfile& p) {
  std::vector<HalfInt> lambda;
  for (std::size_t i = 0; i < p.ranks.size(); ++i)
    for (unsigned k = 0; k < p.ranks[i]; ++k) {
      lambda.push_back(p.slopes[i]);
      lambda.push_back(HalfInt::whole(p.d) - p.slopes[i]);
    }
  for (unsigned k = 0; k < 2 * p.h; ++k) lambda.push_back(p.middle_slope());
  HalfInt total;
  for (std::size_t a = 0; a < lambda.size(); ++a)
    for (std::size_t b = a; b < lambda.size(); ++b) total = total + lambda[a] + lambda[b] - HalfInt::whole(p.d);
  return total;  // removing the trivial trace summand does not change the degree
}

std::int64_t block_h0(const Block& b, std::int64_t f, unsigned genus) {
  return h0_semistable(b.rank, b.slope + HalfInt::whole(f), genus);
}

SectionBound section_bound(const SlopeProfile& p, std::int64_t f, std::uint64_t q) {
  const auto m = filtration_degrees(p);
  SectionBound out;
  for (const auto& b : m.blocks) out.log_q += block_h0(b, f, p.genus);
  out.value = big_pow(q, static_cast<std::uint64_t>(out.log_q));
  return out;
}

std::string_view aut_case_name(AutCase c) {
  switch (c) {
    case AutCase::with_middle: return "i";
    case AutCase::above_half: return "ii";
    case AutCase::at_or_below_half: return "iii";
  }
  return "?";
}

AutCase aut_case(const SlopeProfile& p) {
  if (p.h > 0) return AutCase::with_middle;
  return 2 * p.slopes.back() > HalfInt::whole(p.d) ? AutCase::above_half : AutCase::at_or_below_half;
}

AutBound aut_bound(const SlopeProfile& p, std::uint64_t q) {
  validate(p);
  const unsigned t = p.t();
  const HalfInt d = HalfInt::whole(p.d);
  AutBound out;
  out.kind = aut_case(p);
  auto add_h0 = [&](std::string label, unsigned first, std::uint64_t rank, HalfInt slope) {
    const auto dim = h0_semistable(rank, slope, p.genus);
    out.factors.push_back({std::move(label), first, big_pow(q, static_cast<std::uint64_t>(dim))});
  };
  for (unsigned i = 1; i <= t; ++i)
    out.factors.push_back({"Aut(X" + std::to_string(i) + ")", i, gl_order(p.ranks[i - 1], q)});
  if (out.kind == AutCase::with_middle) out.factors.push_back({"Aut_GSO(X_mid) floor", t + 1, BigInt(q - 1)});
  for (unsigned i = 1; i <= t; ++i) {
    const std::uint64_t r = p.ranks[i - 1];
    if (out.kind == AutCase::at_or_below_half && i == t)
      add_h0("wedge2(X" + std::to_string(i) + "^v)(L)", i, r * (r - 1) / 2, d - 2 * p.slopes[i - 1]);
    else
      add_h0("wedge2(X" + std::to_string(i) + ")(-L)", i, r * (r - 1) / 2, 2 * p.slopes[i - 1] - d);
  }
  for (unsigned i = 1; i <= t; ++i)
    for (unsigned j = i + 1; j <= t; ++j) {
      const std::uint64_t r = static_cast<std::uint64_t>(p.ranks[i - 1]) * p.ranks[j - 1];
      const auto si = std::to_string(i), sj = std::to_string(j);
      add_h0("X" + si + "*X" + sj + "(-L)", i, r, p.slopes[i - 1] + p.slopes[j - 1] - d);
      add_h0("X" + si + "*X" + sj + "^v", i, r, p.slopes[i - 1] - p.slopes[j - 1]);
    }
  if (out.kind == AutCase::with_middle)
    for (unsigned i = 1; i <= t; ++i)
      add_h0("X" + std::to_string(i) + "*X_mid^v", i, 2ull * p.h * p.ranks[i - 1], p.slopes[i - 1] - p.middle_slope());
  for (const auto& f : out.factors) {
    out.value *= f.size;
    out.log_q += std::log(f.size.convert_to<long double>()) / std::log(static_cast<long double>(q));
  }
  return out;
}

SlopeProfile swap_last(const SlopeProfile& p) {
  require(p.h == 0 && p.t() >= 1, "swap needs h = 0");
  SlopeProfile s = p;
  s.slopes.back() = HalfInt::whole(p.d) - p.slopes.back();
  return s;
}

std::string_view row_name(CaseRow r) {
  switch (r) {
    case CaseRow::case1: return "case1";
    case CaseRow::case2_low: return "case2/low";
    case CaseRow::case2_parabolic: return "case2/high/P!=B";
    case CaseRow::case2_borel_equal: return "case2/high/P=B/equal";
    case CaseRow::case2_borel_below: return "case2/high/P=B/below";
    case CaseRow::case2_borel_above: return "case2/high/P=B/above";
    case CaseRow::case3_low: return "case3/low";
    case CaseRow::case3_parabolic: return "case3/high/P!=B";
    case CaseRow::case3_borel_equal: return "case3/high/P=B/equal";
    case CaseRow::case3_borel_below: return "case3/high/P=B/below";
    case CaseRow::case3_borel_above: return "case3/high/P=B/above";
    case CaseRow::case4: return "case4";
  }
  return "?";
}

std::string_view contribution_name(Contribution c) {
  switch (c) {
    case Contribution::zero: return "0";
    case Contribution::one: return "1";
    case Contribution::small: return "f(q)";
    case Contribution::four: return "4";
  }
  return "?";
}

Contribution contribution_of(CaseRow r) {
  switch (r) {
    case CaseRow::case2_borel_equal:
    case CaseRow::case3_borel_equal: return Contribution::one;
    case CaseRow::case2_borel_below:
    case CaseRow::case3_borel_below: return Contribution::small;
    case CaseRow::case4: return Contribution::four;
    default: return Contribution::zero;
  }
}

unsigned case_number(CaseRow r) {
  if (r == CaseRow::case1) return 1;
  if (r == CaseRow::case4) return 4;
  return r <= CaseRow::case2_borel_above ? 2 : 3;
}

namespace {

constexpr std::size_t kRowCount = static_cast<std::size_t>(CaseRow::case4) + 1;

// Evaluates every row hypothesis independently so that gaps and overlaps are
// detectable rather than ruled out by construction.
std::vector<CaseRow> matching_rows(const SlopeProfile& p, std::int64_t f) {
  const unsigned t = p.t();
  const HalfInt c = neg_mu_plus(p, f);
  const bool big_c = c > HalfInt::whole(2 * static_cast<std::int64_t>(p.genus) - 2);
  std::vector<CaseRow> rows;
  if (t == 0 || big_c) rows.push_back(CaseRow::case4);
  if (t == 0) return rows;
  if (p.h != 0 && !big_c) rows.push_back(CaseRow::case1);
  if (p.h != 0) return rows;

  const HalfInt x = 2 * p.slopes.front() - HalfInt::whole(p.d);
  const HalfInt low = HalfInt::half((4 * static_cast<std::int64_t>(t) - 3) * f);
  const HalfInt top = HalfInt::whole((2 * static_cast<std::int64_t>(p.n) + 1) * f);
  const bool upper = 2 * p.slopes.back() >= HalfInt::whole(p.d);
  const bool borel = p.is_borel();
  auto pick = [&](CaseRow a, CaseRow b) { return upper ? a : b; };
  if (big_c) return rows;
  if (x <= low) rows.push_back(pick(CaseRow::case2_low, CaseRow::case3_low));
  if (x > low && !borel) rows.push_back(pick(CaseRow::case2_parabolic, CaseRow::case3_parabolic));
  if (x > low && borel && x == top) rows.push_back(pick(CaseRow::case2_borel_equal, CaseRow::case3_borel_equal));
  if (x > low && borel && x < top) rows.push_back(pick(CaseRow::case2_borel_below, CaseRow::case3_borel_below));
  if (x > low && borel && x > top) rows.push_back(pick(CaseRow::case2_borel_above, CaseRow::case3_borel_above));
  return rows;
}

}  // namespace

CaseRow case_classify(const SlopeProfile& p, std::int64_t f) {
  validate(p);
  const auto rows = matching_rows(p, f);
  if (rows.size() != 1)
    throw InvariantViolation(rows.empty() ? "profile matches no case-table row" : "profile matches several case-table rows");
  return rows.front();
}

std::vector<HalfInt> subdiagonal_degrees(const SlopeProfile& p, std::int64_t f) {
  require(p.is_borel(), "sub-diagonal degrees need a Borel profile");
  std::vector<HalfInt> lambda = p.slopes;
  if (2 * lambda.back() < HalfInt::whole(p.d)) lambda.back() = HalfInt::whole(p.d) - lambda.back();
  std::vector<HalfInt> out;
  for (unsigned i = 0; i + 1 < lambda.size(); ++i) out.push_back(lambda[i + 1] - lambda[i] + HalfInt::whole(f));
  out.push_back(HalfInt::whole(p.d + f) - 2 * lambda.back());
  return out;
}

std::optional<ContributionRatio> lemma_family(const SlopeProfile& p, std::int64_t f) {
  if (p.h == 0 || p.t() == 0) return std::nullopt;
  const unsigned t = p.t();
  const std::int64_t n1 = p.ranks[0];
  const HalfInt d = HalfInt::whole(p.d), F = HalfInt::whole(f);
  // mu[i] and rank[i] for i = 1..t+1, with X_{t+1} of rank 2h and slope d/2.
  std::vector<HalfInt> mu{HalfInt{}};
  std::vector<std::int64_t> rk{0};
  for (unsigned i = 0; i < t; ++i) {
    mu.push_back(p.slopes[i]);
    rk.push_back(p.ranks[i]);
  }
  mu.push_back(p.middle_slope());
  rk.push_back(2 * static_cast<std::int64_t>(p.h));
  const HalfInt mu1 = mu[1];

  ContributionRatio r;
  bool gaps_ok = true;
  for (unsigned i = 1; i <= t; ++i)
    gaps_ok = gaps_ok && mu[i] - mu[i + 1] > HalfInt{} && mu[i] - mu[i + 1] <= F;
  for (unsigned e = 2; e <= t && gaps_ok; ++e)
    if (F + mu[e + 1] < mu1 && mu1 <= F + mu[e]) {
      r.family = 1;
      r.e = e;
    }
  if (r.family == 0 && 2 * mu1 > F + d && mu1 <= F + p.middle_slope()) {
    r.family = 2;
    for (unsigned e = 1; e <= t; ++e)
      if (mu1 + mu[e] - d > F) r.e = e;
    ensure(r.e >= 1, "family 2 index must exist");
  }
  if (r.family == 0) return std::nullopt;

  const unsigned e = r.e;
  const std::int64_t h2_f = 4 * n1 * (2 * static_cast<std::int64_t>(p.n) + 2 - n1) + 2 * n1;
  HalfInt h1 = (n1 * (n1 + 1) / 2) * (2 * mu1 + F - d);
  HalfInt h2 = (n1 * (n1 - 1) / 2) * (2 * mu1 - d);
  for (unsigned i = 2; i <= t; ++i) {
    h1 = h1 + (n1 * rk[i]) * (mu1 + mu[i] + F - d) + (n1 * rk[i]) * (mu1 - mu[i] + F);
    h2 = h2 + (n1 * rk[i]) * (mu1 + mu[i] - d) + (n1 * rk[i]) * (mu1 - mu[i]);
  }
  h1 = h1 + (2 * static_cast<std::int64_t>(p.h) * n1) * (mu1 - p.middle_slope() + F);
  h2 = h2 + (2 * static_cast<std::int64_t>(p.h) * n1) * (mu1 - p.middle_slope()) + h2_f * F;

  HalfInt simplified = n1 * (2 * mu1 - d);
  if (r.family == 1) {
    for (unsigned i = 1; i <= e; ++i) h1 = h1 + (n1 * rk[i]) * (mu[i] - mu1 + F);
    std::int64_t coeff2 = 0;  // twice the f-coefficient in the simplified form
    for (unsigned i = 2; i <= e; ++i) simplified = simplified + (n1 * rk[i]) * (mu[i] - mu1);
    for (unsigned i = e + 1; i <= t; ++i) coeff2 += 2 * n1 * rk[i];
    coeff2 += 2 * 2 * static_cast<std::int64_t>(p.h) * n1;
    for (unsigned i = 2; i <= t; ++i) coeff2 += 2 * n1 * rk[i];
    coeff2 += n1 * (n1 + 1);
    simplified = simplified - HalfInt::half(coeff2 * f);
    r.bound = HalfInt::whole(n1 * (1 - static_cast<std::int64_t>(e)) * f);
  } else {
    for (unsigned i = 1; i <= t + 1; ++i) h1 = h1 + (n1 * rk[i]) * (mu[i] - mu1 + F);
    for (unsigned i = e + 1; i <= t; ++i) h1 = h1 + (rk[i] * n1) * (d - mu[i] - mu1 + F);
    for (unsigned i = 2; i <= t + 1; ++i) simplified = simplified + (n1 * rk[i]) * (mu[i] - mu1);
    for (unsigned i = e + 1; i <= t; ++i) simplified = simplified + (rk[i] * n1) * (d - mu[i] - mu1);
    std::int64_t coeff2 = n1 * (n1 + 1);
    for (unsigned i = 2; i <= e; ++i) coeff2 += 2 * n1 * rk[i];
    simplified = simplified - HalfInt::half(coeff2 * f);
    r.bound = HalfInt::whole(-n1 * static_cast<std::int64_t>(e) * f);
  }
  r.log_h1 = h1;
  r.log_h2 = h2;
  r.log_ratio = simplified;
  r.holds = simplified <= r.bound && h1 - h2 <= r.bound;
  return r;
}

ContributionRatio contribution_ratio(const SlopeProfile& p, std::int64_t f) {
  validate(p);
  const auto r = lemma_family(p, f);
  if (!r) throw DomainError("profile is outside the zero-contribution lemma families");
  return *r;
}

ProfileSweep profile_sweep(unsigned n, std::int64_t f_max, std::int64_t d_max) {
  require(n >= 1 && f_max >= 0 && d_max >= 0, "sweep bounds must be non-negative");
  ProfileSweep s;
  s.n = n;
  s.f_max = f_max;
  s.d_max = d_max;
  s.row_counts.assign(kRowCount, 0);
  for (std::int64_t f = 0; f <= f_max; ++f)
    for (std::int64_t d = 0; d <= d_max; ++d)
      for_each_profile(n, f, d, [&](const SlopeProfile& p) {
        ++s.profiles;
        const auto rows = matching_rows(p, f);
        if (rows.size() != 1) {
          ++s.gaps;
          return;
        }
        const CaseRow row = rows.front();
        ++s.row_counts[static_cast<std::size_t>(row)];
        if (row == CaseRow::case1)
          if (const auto fam = lemma_family(p, f)) {
            ++s.family_checked;
            if (!fam->holds) ++s.family_violations;
          }
        const bool one = contribution_of(row) == Contribution::one;
        const bool extremal = p.is_borel() && 2 * p.slopes.front() - HalfInt::whole(p.d) ==
                                                  HalfInt::whole((2 * static_cast<std::int64_t>(n) + 1) * f);
        s.contribution_one += one;
        if (one != extremal) ++s.contribution_one_mismatches;
        if (row == CaseRow::case2_borel_above || row == CaseRow::case3_borel_above) {
          const auto degs = subdiagonal_degrees(p, f);
          if (std::none_of(degs.begin(), degs.end(), [](HalfInt v) { return v < HalfInt{}; }))
            ++s.above_without_negative_entry;
        }
      });
  return s;
}

// ---------------------------------------------------------------------------

namespace {

bool is_self_adjoint(const MatN& A) { return quadspace::adjoint(A) == A; }

MatN conjugate(const Field& F, const MatN& g, const MatN& A, const MatN& g_inv) {
  return algebra::mat_mul(F, algebra::mat_mul(F, g, A), g_inv);
}

}  // namespace

Reduction kostant_reduce(const Field& F, const MatN& A) {
  const std::size_t N = A.rows();
  if (!A.is_square() || N < 4 || N % 2 != 0) throw DomainError("expected an even square matrix of size ≥ 4");
  const unsigned n = static_cast<unsigned>(N / 2 - 1);
  if (!is_self_adjoint(A)) throw DomainError("matrix is not self-adjoint");
  if (!F.is_zero(algebra::trace(F, A))) throw DomainError("matrix is not traceless");
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j + 1 < i; ++j)
      if (!F.is_zero(A(i, j))) throw DomainError("matrix is not in the Borel chart (nonzero below the sub-diagonal)");
  for (std::size_t k = 0; k + 1 < N; ++k)
    if (F.is_zero(A(k + 1, k))) throw DomainError("a sub-diagonal entry vanishes: not in the Borel-regular chart");

  Reduction out;
  out.invariants = vinberg::invariants_of(F, A);
  const MatN target = vinberg::kostant1(F, out.invariants);
  const auto charpoly = algebra::charpoly(F, A);

  // Diagonal stage: d_{k+1} s_k / d_k = 1 with d_{N−1−k} = λ/d_k.
  const FieldElem mid = A(n + 1, n);
  std::vector<FieldElem> diag(N);
  FieldElem lambda = F.one();
  if (const auto root = F.sqrt(mid)) {
    diag[n] = *root;
  } else {
    lambda = F.inv(mid);
    diag[n] = F.one();
  }
  for (std::size_t k = n; k-- > 0;) diag[k] = F.mul(diag[k + 1], A(k + 1, k));
  for (std::size_t k = 0; k <= n; ++k) diag[N - 1 - k] = F.div(lambda, diag[k]);
  MatN D = algebra::zero_matrix(F, N, N), D_inv = algebra::zero_matrix(F, N, N);
  for (std::size_t k = 0; k < N; ++k) {
    D(k, k) = diag[k];
    D_inv(k, k) = F.inv(diag[k]);
  }
  MatN H = conjugate(F, D, A, D_inv);
  for (std::size_t k = 0; k + 1 < N; ++k) ensure(H(k + 1, k) == F.one(), "diagonal stage left a non-unit sub-diagonal");
  ensure(algebra::charpoly(F, H) == charpoly, "diagonal stage changed the characteristic polynomial");
  out.stages.push_back(D);
  MatN g = D;

  // Row stages: U = I + X + X²/2 with X skew-adjoint, supported on row k and
  // column N−1−k. The entries of row k are solved left to right.
  const FieldElem half = F.half();
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t last = N - 1 - k;
    std::vector<FieldElem> x(N, F.zero());
    const FieldElem wk = target(k, k);
    x[k + 1] = F.sub(target(k, k), H(k, k));
    for (std::size_t j = k + 1; j + 2 <= last; ++j) {
      FieldElem v = F.sub(target(k, j), H(k, j));
      for (std::size_t i = k + 1; i <= j; ++i) v = F.sub(v, F.mul(x[i], H(i, j)));
      x[j + 1] = F.add(v, F.mul(wk, x[j]));
    }
    MatN X = algebra::zero_matrix(F, N, N);
    for (std::size_t j = k + 1; j < last; ++j) {
      X(k, j) = x[j];
      X(j, last) = F.neg(x[last - j + k]);
    }
    const MatN X2 = algebra::mat_mul(F, X, X);
    MatN U = algebra::identity_matrix(F, N), U_inv = algebra::identity_matrix(F, N);
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        const FieldElem sq = F.mul(half, X2(i, j));
        U(i, j) = F.add(U(i, j), F.add(X(i, j), sq));
        U_inv(i, j) = F.add(U_inv(i, j), F.sub(sq, X(i, j)));
      }
    H = conjugate(F, U, H, U_inv);
    for (std::size_t j = 0; j + 2 <= last; ++j) ensure(H(k, j) == target(k, j), "row stage did not clear its row");
    ensure(algebra::charpoly(F, H) == charpoly, "row stage changed the characteristic polynomial");
    out.stages.push_back(U);
    g = algebra::mat_mul(F, U, g);
  }
  ensure(H == target, "reduction did not land on the Kostant section");
  out.conjugator = g;
  out.multiplier = lambda;
  out.result = H;
  return out;
}

VanishingReport disc_vanishing_check(const Field& F, unsigned n, const algebra::Matrix<Poly>& section,
                                     const funcfield::Place& place, unsigned index) {
  const std::size_t N = 2 * n + 2;
  if (section.rows() != N || section.cols() != N) throw DomainError("section has the wrong size");
  if (index < 1 || index > n + 1) throw DomainError("sub-diagonal index must lie in 1..n+1");
  if (place.is_infinity()) throw DomainError("only finite places are supported");
  Poly trace(F);
  for (std::size_t i = 0; i < N; ++i) {
    trace += section(i, i);
    for (std::size_t j = 0; j < N; ++j) {
      if (!(section(i, j) == section(N - 1 - j, N - 1 - i))) throw DomainError("section is not self-adjoint");
      if (j + 1 < i && !section(i, j).is_zero()) throw DomainError("section is not in Borel shape");
    }
  }
  if (!trace.is_zero()) throw DomainError("section is not traceless");
  const Poly& x = section(index, index - 1);
  if (!x.is_zero() && x.is_constant()) throw DomainError("x_i is a nonzero constant: the check does not apply");
  if (!x.is_zero() && funcfield::val(x, place).value() < 1) throw DomainError("x_i does not vanish at the place");

  const algebra::PolyRing R(F);
  const Poly delta = algebra::discriminant_of_monic(R, algebra::charpoly(R, section));
  VanishingReport out;
  out.valuation = funcfield::val(delta, place);
  out.at_least_two = !out.valuation || *out.valuation >= 2;
  return out;
}

Case4Check case4_constant_check(unsigned n, std::uint64_t q) {
  Case4Check c;
  c.n = n;
  c.q = q;
  const std::uint64_t N = 2 * n + 2;
  c.traceless_rank = N * (N + 1) / 2 - 1;
  c.traceless_rank_matches = c.traceless_rank == (2 * n + 3) * (n + 1) - 1;
  // Sections: rank·(f + 1 − g). Curves: Σ_{i=2}^{2n+2} i · f + (2n+1)(1 − g).
  std::uint64_t curve_f = 0;
  for (std::uint64_t i = 2; i <= N; ++i) curve_f += i;
  c.f_coefficient_cancels = curve_f == c.traceless_rank && curve_f == 2 * (n + 1) * (n + 1) + n;
  c.constant_exponent = static_cast<std::int64_t>(c.traceless_rank) - static_cast<std::int64_t>(2 * n + 1);
  c.exponent_is_dim_g = c.constant_exponent == static_cast<std::int64_t>((n + 1) * (2 * n + 1)) &&
                        c.constant_exponent == static_cast<std::int64_t>(2 * n * n + 3 * n + 1);
  c.constant = 4 * zeta::zeta_value(q, n + 1);
  for (unsigned i = 1; i <= n; ++i) c.constant *= zeta::zeta_value(q, 2 * i);
  c.matches_average_constants = c.constant == zeta::average_constants(n, q).tamagawa_closed;
  return c;
}

}  // namespace selmerlab::bundles

namespace selmerlab::bundles {

MatN random_borel_orthogonal(const Field& F, unsigned n, SampleEngine& rng) {
  const std::size_t N = 2 * n + 2;
  auto draw = [&] { return F.element(static_cast<std::uint32_t>(rng() % F.order())); };
  MatN X = algebra::zero_matrix(F, N, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i + 1; i + j < N - 1; ++j) {
      const FieldElem r = draw();
      X(i, j) = r;
      X(N - 1 - j, N - 1 - i) = F.neg(r);
    }
  MatN plus = algebra::identity_matrix(F, N), minus = algebra::identity_matrix(F, N);
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = 0; j < N; ++j) {
      plus(i, j) = F.add(plus(i, j), X(i, j));
      minus(i, j) = F.sub(minus(i, j), X(i, j));
    }
  const auto minus_inv = algebra::inverse(F, minus);
  ensure(minus_inv.has_value(), "unipotent matrix must be invertible");
  MatN torus = algebra::zero_matrix(F, N, N);
  for (std::size_t i = 0; i <= n; ++i) {
    const FieldElem a = F.element(static_cast<std::uint32_t>(1 + rng() % (F.order() - 1)));
    torus(i, i) = a;
    torus(N - 1 - i, N - 1 - i) = F.inv(a);
  }
  return algebra::mat_mul(F, torus, algebra::mat_mul(F, *minus_inv, plus));
}

algebra::Matrix<Poly> random_vanishing_section(const Field& F, unsigned n, unsigned index, FieldElem root,
                                               SampleEngine& rng) {
  require(index >= 1 && index <= n + 1, "sub-diagonal index must lie in 1..n+1");
  const std::size_t N = 2 * n + 2;
  auto draw_poly = [&](std::size_t deg) {
    std::vector<FieldElem> co;
    for (std::size_t k = 0; k <= deg; ++k) co.push_back(F.element(static_cast<std::uint32_t>(rng() % F.order())));
    return Poly(F, co);
  };
  algebra::Matrix<Poly> M(N, N, Poly(F));
  for (std::size_t i = 0; i < N; ++i)
    for (std::size_t j = i == 0 ? 0 : i - 1; i + j <= N - 1; ++j) {
      const Poly r = draw_poly(2);
      M(i, j) = r;
      M(N - 1 - j, N - 1 - i) = r;
    }
  Poly diag_sum(F);
  for (std::size_t i = 0; i < n; ++i) diag_sum += M(i, i);
  M(n, n) = -diag_sum;
  M(n + 1, n + 1) = -diag_sum;
  const Poly linear(F, {F.neg(root), F.one()});
  Poly x = linear * draw_poly(1);
  if (x.is_zero()) x = linear;
  M(index, index - 1) = x;
  M(N - index, N - 1 - index) = x;
  return M;
}

}  // namespace selmerlab::bundles
