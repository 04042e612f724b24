#include <doctest.h>

#include <stdexcept>

#include <cmath>
#include <random>

#include "fairsim/fairness/endorsement_probability.hpp"
#include "fairsim/fairness/order_fairness.hpp"
#include "fairsim/fairness/reception_log.hpp"
#include "fairsim/fairness/score.hpp"

using namespace fairsim;
using namespace fairsim::fairness;

namespace {

ReceptionLog log_of(const std::vector<std::vector<std::uint64_t>>& lists) {
  ReceptionLog log(Role::peer, static_cast<std::uint32_t>(lists.size()));
  for (std::uint32_t n = 0; n < lists.size(); ++n) {
    Tick at = 1;
    for (auto tx : lists[n]) log.record(n, TxId{tx}, at++, 0);
  }
  return log;
}

DeliveryIndex delivered(std::initializer_list<std::pair<std::uint64_t, Position>> items) {
  DeliveryIndex d;
  for (auto [tx, pos] : items) d.add(TxId{tx}, pos);
  return d;
}

const TxId t{1};
const TxId tp{2};
const CompetingPair pair{PuzzleId{1}, t, tp};

// Pascal's triangle in exact integers.
std::uint64_t choose(int n, int k) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + (j <= i - 1 ? c[i - 1][j] : 0);
  }
  return c[n][k];
}

}  // namespace

TEST_CASE("reception log rejects duplicates and out-of-order entries") {
  ReceptionLog log(Role::orderer, 2);
  CHECK(log.record(0, TxId{1}, 5, 10));
  CHECK_FALSE(log.record(0, TxId{1}, 6, 11));
  CHECK(log.record(0, TxId{2}, 5, 11));
  CHECK_THROWS_AS(log.record(0, TxId{3}, 5, 3), std::logic_error);
  CHECK(log.rank(0, TxId{2}) == 1u);
  CHECK_FALSE(log.rank(1, TxId{2}));
  DeliveryIndex d;
  d.add(TxId{1}, {1, 0});
  CHECK_THROWS_AS(d.add(TxId{1}, {2, 0}), std::logic_error);
}

TEST_CASE("majority precedence") {
  CHECK(precedes_majority(log_of({{1, 2}, {1, 2}, {2, 1}}), t, tp));
  CHECK_FALSE(precedes_majority(log_of({{1, 2}, {1, 2}, {2, 1}, {2, 1}}), t, tp));
  CHECK_FALSE(precedes_majority(log_of({{1, 2}, {1, 2}, {2, 1}, {2, 1}}), tp, t));
  // receiving only t counts for t; receiving neither does not
  CHECK(precedes_majority(log_of({{1}, {1}, {}}), t, tp));
  CHECK_FALSE(precedes_majority(log_of({{1}, {}, {}}), t, tp));
}

TEST_CASE("receive-order violations") {
  const auto log = log_of({{1, 2}, {1, 2}, {1, 2}});
  const TxId txs[] = {t, tp};
  const RankMatrix ranks(log, txs);
  const CompetingPair pairs[] = {pair};
  CHECK(count_receive_order_violations(ranks, pairs, delivered({{2, {3, 0}}, {1, {3, 1}}})) == 1);
  CHECK(count_receive_order_violations(ranks, pairs, delivered({{1, {3, 0}}})) == 0);
  CHECK(count_receive_order_violations(ranks, pairs, delivered({{2, {3, 0}}})) == 1);
  CHECK(count_receive_order_violations(ranks, pairs, delivered({})) == 0);
}

TEST_CASE("block-order violations ignore order inside a block") {
  const auto log = log_of({{1, 2}, {1, 2}, {1, 2}});
  const TxId txs[] = {t, tp};
  const RankMatrix ranks(log, txs);
  const CompetingPair pairs[] = {pair};
  CHECK(count_block_order_violations(ranks, pairs, delivered({{1, {5, 3}}, {2, {5, 0}}})) == 0);
  CHECK(count_block_order_violations(ranks, pairs, delivered({{1, {6, 0}}, {2, {5, 9}}})) == 1);
}

TEST_CASE("differential-order violations use honest nodes and a strict 2f margin") {
  const CompetingPair pairs[] = {pair};
  const auto d = delivered({{2, {1, 0}}, {1, {1, 1}}});
  {
    const auto log = log_of({{1, 2}});
    const TxId txs[] = {t, tp};
    const RankMatrix ranks(log, txs);
    const std::int32_t honest[] = {-1};
    CHECK(count_differential_order_violations(ranks, pairs, d, honest, 0) == 1);
  }
  {
    const auto log = log_of({{1, 2}, {1, 2}, {1, 2}, {1, 2}, {1, 2}});
    const TxId txs[] = {t, tp};
    const RankMatrix ranks(log, txs);
    const std::int32_t all[] = {-1, -1, -1, -1, -1};
    const std::int32_t four[] = {-1, -1, -1, -1, 0};
    CHECK(count_differential_order_violations(ranks, pairs, d, four, 2) == 0);  // d = 4, not > 4
    CHECK(count_differential_order_violations(ranks, pairs, d, all, 2) == 1);   // d = 5
  }
  {
    // symmetric: t' majority-first but t delivered first
    const auto log = log_of({{2, 1}, {2, 1}});
    const TxId txs[] = {t, tp};
    const RankMatrix ranks(log, txs);
    const std::int32_t all[] = {-1, -1};
    CHECK(count_differential_order_violations(ranks, pairs, delivered({{1, {1, 0}}, {2, {1, 1}}}), all, 0) == 1);
  }
}

TEST_CASE("competing pairs cover different clients on the same puzzle only") {
  const std::vector<TxInfo> txs = {
      {TxId{1}, 0, PuzzleId{1}}, {TxId{2}, 1, PuzzleId{1}}, {TxId{3}, 2, PuzzleId{1}},
      {TxId{4}, 0, PuzzleId{2}}, {TxId{5}, 0, PuzzleId{2}}, {TxId{6}, 1, PuzzleId{3}},
  };
  const auto pairs = competing_pairs(txs);
  CHECK(pairs.size() == 3);
  for (const auto& p : pairs) CHECK(raw(p.t) < raw(p.t_prime));
}

TEST_CASE("score and game board") {
  CHECK(compute_score(500, 1500, 3) == doctest::Approx(1.0));
  CHECK(compute_score(0, 2000, 3) == doctest::Approx(0.0));
  CHECK_FALSE(compute_score(0, 0, 3));

  GameBoard g(3);
  CHECK(g.on_delivered(PuzzleId{7}, 0));
  CHECK_FALSE(g.on_delivered(PuzzleId{7}, 1));
  CHECK(g.on_delivered(PuzzleId{8}, 2));
  CHECK(g.games() == 2);
  CHECK(g.winner(PuzzleId{7}) == 0u);
  CHECK_FALSE(g.winner(PuzzleId{9}));
  double sum = 0;
  for (std::uint32_t c = 0; c < 3; ++c) sum += *g.score(c);
  CHECK(sum == doctest::Approx(3.0));
}

TEST_CASE("endorsement probability: closed-form checks") {
  // 14893 / 65536 from the exact integer sum
  std::uint64_t num = 0;
  for (int k = 10; k <= 16; ++k) num += choose(16, k);
  CHECK(num == 14893);
  CHECK(endorsement_success_probability(16, 10, 0, 0.5) == doctest::Approx(14893.0 / 65536.0).epsilon(1e-12));
  CHECK(endorsement_success_probability(16, 10, 0, 0.5) == doctest::Approx(0.2272).epsilon(1e-3));

  for (double x : {0.0, 0.3, 0.9, 1.0}) CHECK(endorsement_success_probability(16, 10, 7, x) == 0.0);
  CHECK(endorsement_success_probability(16, 10, 0, 1.0) == doctest::Approx(1.0));
  CHECK(endorsement_success_probability(16, 10, 0, 0.0) == 0.0);
  CHECK(endorsement_success_probability(16, 10, 3, 0.7) < endorsement_success_probability(16, 10, 1, 0.7));
  CHECK_THROWS_AS(endorsement_success_probability(16, 10, 0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(endorsement_success_probability(16, 10, 17, 0.5), std::invalid_argument);

  // exact rational check on a second point against Pascal's triangle
  double y = 0;
  for (int k = 10; k <= 13; ++k) y += choose(13, k) * std::pow(0.8, k) * std::pow(0.2, 13 - k);
  CHECK(endorsement_success_probability(16, 10, 3, 0.8) == doctest::Approx(y).epsilon(1e-12));
}

TEST_CASE("endorsement probability is monotone on a grid") {
  for (std::uint32_t m = 1; m <= 16; ++m) {
    for (std::uint32_t b = 0; b <= 16; ++b) {
      double prev = -1;
      for (int xi = 0; xi <= 20; ++xi) {
        const double x = xi / 20.0;
        const double y = endorsement_success_probability(16, m, b, x);
        CHECK(y >= 0.0);
        CHECK(y <= 1.0);
        CHECK(y >= prev - 1e-12);
        prev = y;
        if (b > 0) CHECK(y <= endorsement_success_probability(16, m, b - 1, x) + 1e-12);
      }
    }
  }
}

TEST_CASE("endorsement probability agrees with sampling") {
  std::mt19937_64 rng(5);
  for (std::uint32_t b : {0u, 4u}) {
    for (double x : {0.3, 0.6, 0.85}) {
      std::bernoulli_distribution answer(x);
      int ok = 0;
      const int trials = 40000;
      for (int i = 0; i < trials; ++i) {
        int got = 0;
        for (std::uint32_t p = 0; p < 16 - b; ++p) got += answer(rng);
        ok += got >= 10;
      }
      CHECK(std::abs(ok / double(trials) - endorsement_success_probability(16, 10, b, x)) < 0.015);
    }
  }
}
