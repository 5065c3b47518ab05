#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "test_util.hpp"
#include "wildmck/oracle.hpp"

using namespace wildmck;

namespace {

std::int64_t prime_to_p_below(std::int64_t j, std::int64_t p) {
  std::int64_t c = 0;
  for (std::int64_t i = 1; i <= j; ++i) c += i % p != 0;
  return c;
}

}  // namespace

TEST(AsEnumeration, LevelCountsMatchClosedForm) {
  for (auto [p, q0, jmax] : {std::tuple<std::uint64_t, std::uint64_t, std::int64_t>{2, 2, 9}, {2, 4, 7}, {2, 8, 5},
                             {3, 3, 7}, {3, 9, 4}}) {
    const auto row = as_level_row(p, q0, jmax);
    EXPECT_TRUE(row.pass) << row.name << ": " << row.detail;
  }
}

TEST(AsEnumeration, TotalClassCountIsPTimesQToTheFreeCoefficients) {
  // Polar parts of order <= J modulo the AS image: p constant classes times one
  // free coefficient per prime-to-p exponent.
  for (auto [p, e, jmax] : {std::tuple<std::int64_t, std::int64_t, std::int64_t>{2, 1, 8}, {2, 2, 6}, {3, 1, 6}, {3, 2, 4},
                            {5, 1, 4}}) {
    const Fq f = make_field(p, e);
    const auto en = enumerate_as_classes(f, {f.q(), jmax, static_cast<std::size_t>(2 * jmax + 2)});
    std::uint64_t total = 1;
    for (const auto& [j, c] : en.classes_per_level) total += c;
    std::uint64_t expected = static_cast<std::uint64_t>(p);
    for (std::int64_t i = 0; i < prime_to_p_below(jmax, p); ++i) expected *= f.q();
    EXPECT_EQ(total, expected) << "p=" << p << " q=" << f.q();
    EXPECT_EQ(en.classes_per_level.at(0), static_cast<std::uint64_t>(p - 1));
    for (const auto& [j, c] : en.classes_per_level) EXPECT_TRUE(j == 0 || j % p != 0);
  }
}

TEST(AsEnumeration, ReducedRepresentativesAreFixedPointsOfReduction) {
  const Fq f = make_field(2, 2);
  const auto reps = reduced_representatives(f, {4, 5, 12});
  std::set<std::vector<Fq::Element>> distinct;
  for (const auto& [r, level] : reps) {
    EXPECT_EQ(detail::rep_key(artin_schreier_reduce(r)), detail::rep_key(r));
    std::vector<Fq::Element> cs;
    for (std::int64_t k = -5; k <= 0; ++k) cs.push_back(r.coefficient(k));
    EXPECT_TRUE(distinct.insert(cs).second);
  }
}

TEST(AsEnumeration, FullAndReducedModesAgree) {
  const Fq f = make_field(2, 1);
  const auto small = enumerate_as_classes(f, {2, 7, 16});
  EXPECT_EQ(small.mode, SupportMode::Full);
  const Fq f8 = make_field(2, 3);
  const auto big = enumerate_as_classes(f8, {8, 7, 16});
  EXPECT_EQ(big.mode, SupportMode::Reduced);
  for (const auto& [j, c] : big.classes_per_level)
    EXPECT_EQ(Rational(static_cast<std::int64_t>(c)), evaluate(as_level_count(2, j), Rational(8)));
}

TEST(PairCensus, Examples) {
  const auto c2 = c2sq_pair_census(make_field(2, 1), {2, 5, 10});
  EXPECT_EQ(c2.ordered_pairs.at({0, 1}), 6u);
  EXPECT_EQ(c2.ordered_pairs.count({1, 1}), 0u);
  const auto c4 = c2sq_pair_census(make_field(2, 2), {4, 5, 10});
  EXPECT_EQ(c4.ordered_pairs.at({1, 1}), 24u);
  for (const auto& [type, n] : c4.ordered_pairs) EXPECT_EQ(n, 6 * c4.planes.at(type));
  EXPECT_CODE(c2sq_pair_census(make_field(3, 1), {3, 4, 8}), Unsupported);
}

TEST(PairCensus, RowsPass) {
  for (auto [q0, jmax] : {std::pair<std::uint64_t, std::int64_t>{2, 9}, {4, 7}}) {
    const auto row = c2sq_pair_row(q0, jmax);
    EXPECT_TRUE(row.pass) << row.name << ": " << row.detail;
  }
}

TEST(Truncation, PermutationFamiliesPass) {
  for (std::uint64_t q0 : {4, 8, 16})
    for (const auto& [fams, closed] : {std::pair{c2sq_families(), f_c2sq()}, std::pair{a4_families(), f_a4()}}) {
      const auto r = truncated_sum_compare(fams, closed, {q0, 9, 18});
      EXPECT_TRUE(r.pass) << r.detail;
      EXPECT_TRUE(r.monotone);
      EXPECT_LE(r.closed - r.partial, r.tail_bound);
      EXPECT_GT(r.closed - r.partial, 0);
    }
}

TEST(Truncation, GapShrinksWithTheWindow) {
  Rational prev = -1;
  for (std::int64_t jmax : {3, 5, 7, 9, 11}) {
    const auto r = truncated_sum_compare(a4_families(), f_a4(), {4, jmax, 22});
    const Rational gap = r.closed - r.partial;
    if (prev >= 0) {
      EXPECT_LT(gap, prev);
    }
    prev = gap;
  }
}

TEST(Truncation, WrongClosedFormsFail) {
  const auto closed = f_c2sq();
  EXPECT_FALSE(truncated_sum_compare(c2sq_families(), closed + QLaurent(Rational(1)), {4, 9, 18}).pass);
  EXPECT_FALSE(truncated_sum_compare(c2sq_families(), closed - QLaurent::q(1), {4, 9, 18}).pass);
  EXPECT_FALSE(truncated_sum_compare(a4_families(), f_c2sq(), {4, 9, 18}).pass);
}

TEST(Truncation, ModularFamiliesAgreeWithClosedForm) {
  const SummandData j2j2{{2, 0}, {2, 0}};
  const auto r = truncated_sum_compare(modular_families(j2j2, 0, 2, 4), QLaurent::q(4) + QLaurent::monomial(2, 3),
                                       {4, 11, 22});
  EXPECT_TRUE(r.pass) << r.detail;
}

TEST(Truncation, DivergenceIsRefused) {
  const SummandData j2_1_1{{2, 0}, {1, 0}, {1, 0}};
  EXPECT_CODE(truncated_sum_compare(modular_families(j2_1_1, 0, 2, 4), QLaurent{}, {4, 9, 18}), DivergentAtQ0);
  EXPECT_TRUE(divergence_row(4).pass);
  EXPECT_CODE(truncated_sum_compare(c2sq_families(), f_c2sq(), {4, -1, 18}), BadLevel);
}

TEST(Truncation, LayeredTailMatchesDirectSum) {
  // Sum over s >= m of C(s + r - 1, r - 1) rho^s, summed far enough that the remainder is negligible.
  for (std::size_t rank : {1u, 2u, 3u})
    for (std::int64_t m : {0, 1, 4})
      for (const Rational& rho : {Rational(1, 2), Rational(1, 4), Rational(1, 8)}) {
        Rational direct = 0;
        for (std::int64_t s = m; s < m + 200; ++s) {
          Integer binom = 1;
          for (std::size_t i = 1; i < rank; ++i) binom = binom * (s + static_cast<std::int64_t>(i)) / static_cast<std::int64_t>(i);
          Rational power = 1;
          for (std::int64_t k = 0; k < s; ++k) power *= rho;
          direct += Rational(binom) * power;
        }
        const Rational exact = detail::layered_geometric_tail(rank, m, rho);
        EXPECT_GE(exact, direct);
        EXPECT_LT(exact - direct, Rational(1, 1000000));
      }
}

TEST(Battery, AllRowsPass) {
  const auto rows = run_oracle_battery();
  EXPECT_GE(rows.size(), 10u);
  for (const auto& row : rows) EXPECT_TRUE(row.pass) << row.name << ": " << row.detail;
}
