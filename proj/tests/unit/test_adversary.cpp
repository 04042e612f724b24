#include <doctest.h>

#include <stdexcept>

#include <map>
#include <random>
#include <set>

#include "fairsim/adversary/adversary.hpp"
#include "fairsim/adversary/enablement.hpp"

using namespace fairsim;
using namespace fairsim::adversary;
using Comm = CommunicationModel::Kind;

namespace {

// Hand transcription of the enabled-actions table, one row per cell.
const std::map<std::pair<FailureModel, Comm>, std::set<ActionKind>>& table() {
  using K = ActionKind;
  static const std::map<std::pair<FailureModel, Comm>, std::set<ActionKind>> t = {
      {{FailureModel::crash, Comm::synchronous}, {K::reveal, K::listen, K::stop, K::delay}},
      {{FailureModel::crash, Comm::asynchronous}, {K::reveal, K::listen, K::delay}},
      {{FailureModel::crash, Comm::eventually_synchronous}, {K::reveal, K::listen, K::stop, K::delay}},
      {{FailureModel::omission, Comm::synchronous}, {K::reveal, K::listen, K::skip, K::stop, K::delay}},
      {{FailureModel::omission, Comm::asynchronous}, {K::reveal, K::listen, K::delay}},
      {{FailureModel::omission, Comm::eventually_synchronous}, {K::reveal, K::listen, K::skip, K::stop, K::delay}},
      {{FailureModel::performance, Comm::synchronous}, {K::reveal, K::listen, K::delay}},
      {{FailureModel::performance, Comm::asynchronous}, {K::reveal, K::listen, K::delay}},
      {{FailureModel::performance, Comm::eventually_synchronous}, {K::reveal, K::listen, K::delay}},
      {{FailureModel::byzantine, Comm::synchronous},
       {K::reveal, K::listen, K::send, K::delay, K::skip, K::stop, K::inject}},
      {{FailureModel::byzantine, Comm::asynchronous},
       {K::reveal, K::listen, K::send, K::delay, K::skip, K::stop, K::inject}},
      {{FailureModel::byzantine, Comm::eventually_synchronous},
       {K::reveal, K::listen, K::send, K::delay, K::skip, K::stop, K::inject}},
  };
  return t;
}

CommunicationModel model(Comm c) {
  switch (c) {
    case Comm::synchronous: return CommunicationModel::synchronous(10);
    case Comm::asynchronous: return CommunicationModel::asynchronous();
    case Comm::eventually_synchronous: return CommunicationModel::eventually_synchronous(10, 100);
  }
  return {};
}

AdversarialAction make(ActionKind k, NodeId target, Tick delta = 0) {
  AdversarialAction a;
  a.kind = k;
  a.target = target;
  a.delta = delta;
  a.baseline_cost = default_cost(k, target);
  return a;
}

class FakeTarget : public ActionTarget {
 public:
  Tick t = 0;
  Tick transit = 3;
  std::vector<AdversarialAction> applied;

  Tick now() const override { return t; }
  Tick baseline_transit(const AdversarialAction&) const override { return transit; }
  void check_action(const AdversarialAction& a) const override {
    if (a.kind == ActionKind::inject && a.behavior == "nonsense") throw UnknownBehavior("nonsense");
  }
  void apply_action(const AdversarialAction& a, KnowledgeLog& log) override {
    applied.push_back(a);
    if (a.kind == ActionKind::reveal) log.push_back({t, a.target, "state"});
  }
};

}  // namespace

TEST_CASE("enablement matches the transcribed table on all 12 cells x 7 kinds") {
  int checked = 0;
  for (auto f : {FailureModel::crash, FailureModel::omission, FailureModel::performance, FailureModel::byzantine}) {
    for (auto c : {Comm::synchronous, Comm::asynchronous, Comm::eventually_synchronous}) {
      const auto& expected = table().at({f, c});
      for (ActionKind k : kAllActionKinds) {
        CAPTURE(to_string(f));
        CAPTURE(to_string(c));
        CAPTURE(to_string(k));
        CHECK(kind_available(k, f, c) == expected.contains(k));
        // Zero delay with a small transit passes any bound, so the full
        // predicate agrees with cell membership.
        auto a = make(k, peer_id(0), 0);
        CHECK(is_enabled(a, f, model(c), 1, 0) == expected.contains(k));
        ++checked;
      }
    }
  }
  CHECK(checked == 84);
}

TEST_CASE("subsumption coherence: a subtype of an enabled kind is enabled") {
  for (auto f : {FailureModel::crash, FailureModel::omission, FailureModel::performance, FailureModel::byzantine}) {
    for (auto c : {Comm::synchronous, Comm::asynchronous, Comm::eventually_synchronous}) {
      for (ActionKind super : kAllActionKinds) {
        if (!kind_available(super, f, c)) continue;
        for (ActionKind sub : kAllActionKinds) {
          if (is_subkind(sub, super)) CHECK(kind_available(sub, f, c));
        }
      }
    }
  }
  CHECK(is_subkind(ActionKind::listen, ActionKind::reveal));
  CHECK(is_subkind(ActionKind::stop, ActionKind::skip));
  CHECK_FALSE(is_subkind(ActionKind::skip, ActionKind::stop));
  CHECK_FALSE(is_subkind(ActionKind::skip, ActionKind::delay));
  for (ActionKind k : kAllActionKinds) CHECK(is_subkind(k, ActionKind::inject));
}

TEST_CASE("delay bound boundary cases") {
  const auto sync = CommunicationModel::synchronous(10);
  const auto es = CommunicationModel::eventually_synchronous(10, 100);
  for (auto f : {FailureModel::crash, FailureModel::omission}) {
    // t + δ = Δ - 1 allowed, t + δ = Δ rejected
    CHECK(is_enabled(make(ActionKind::delay, peer_id(0), 6), f, sync, 3, 0));
    CHECK_FALSE(is_enabled(make(ActionKind::delay, peer_id(0), 7), f, sync, 3, 0));
    // before GST anything goes, from GST on the bound holds
    CHECK(is_enabled(make(ActionKind::delay, peer_id(0), 500), f, es, 3, 99));
    CHECK_FALSE(is_enabled(make(ActionKind::delay, peer_id(0), 7), f, es, 3, 100));
    CHECK(is_enabled(make(ActionKind::delay, peer_id(0), 6), f, es, 3, 100));
    CHECK(is_enabled(make(ActionKind::delay, peer_id(0), 500), f, CommunicationModel::asynchronous(), 3, 0));
  }
  CHECK(is_enabled(make(ActionKind::delay, peer_id(0), 500), FailureModel::performance, sync, 3, 0));
  CHECK(is_enabled(make(ActionKind::delay, peer_id(0), 500), FailureModel::byzantine, sync, 3, 0));
  // the worked example: t=3, δ=8, Δ=10 under omission/synchronous
  CHECK_FALSE(is_enabled(make(ActionKind::delay, peer_id(0), 8), FailureModel::omission, sync, 3, 0));
}

TEST_CASE("budget vectors") {
  const BudgetVector a{2, 1};
  const BudgetVector b{1, 1};
  CHECK(b.fits_within(a));
  CHECK_FALSE(a.fits_within(b));
  CHECK_FALSE(BudgetVector{0, 2}.fits_within(BudgetVector{1, 1}));
  CHECK_FALSE(BudgetVector{1, 1}.fits_within(BudgetVector{0, 2}));
  CHECK(a.minus(b) == BudgetVector{1, 0});
  CHECK_THROWS(b.minus(a));
  CHECK_THROWS(BudgetVector{-1, 0});
  CHECK_THROWS(a.minus(BudgetVector{1}));
  CHECK(a.hadamard(BudgetVector{0, 1}) == BudgetVector{0, 1});
  CHECK(to_string(a) == "(2,1)");
  CHECK(BudgetVector::zeros(3).is_zero());
}

TEST_CASE("action cost is the Hadamard product with the target's protection") {
  ProtectionLevels psi;
  AdversarialAction a = make(ActionKind::inject, peer_id(4));
  CHECK(a.baseline_cost == BudgetVector{1, 0});
  CHECK(action_cost(a, psi) == BudgetVector{1, 0});
  psi.set(peer_id(4), BudgetVector{0, 1});
  CHECK(action_cost(a, psi) == BudgetVector{0, 0});
  CHECK(action_cost(make(ActionKind::delay, client_id(0), 5), psi).is_zero());
  CHECK(default_cost(ActionKind::inject, orderer_id(0)) == BudgetVector{0, 1});
  CHECK(default_cost(ActionKind::stop, orderer_id(0)).is_zero());
}

TEST_CASE("attack: worked example, refusal and repeat") {
  FakeTarget sys;
  Adversary adv({}, BudgetVector{1, 0});
  auto inject = make(ActionKind::inject, peer_id(0));

  auto r = adv.apply_attack(sys, inject);
  CHECK(r.applied());
  CHECK(adv.budget() == BudgetVector{0, 0});
  CHECK(adv.protection().at(peer_id(0)) == BudgetVector{0, 1});

  // fresh peer, empty budget
  r = adv.apply_attack(sys, make(ActionKind::inject, peer_id(1)));
  CHECK(r.refusal == Refusal::budget_exceeded);
  CHECK(sys.applied.size() == 1);
  CHECK(adv.protection().at(peer_id(1)) == BudgetVector{1, 1});

  // same peer again: free
  r = adv.apply_attack(sys, inject);
  CHECK(r.applied());
  CHECK(r.cost.is_zero());
  CHECK(sys.applied.size() == 2);
}

TEST_CASE("a refused action leaves budget, protection and system untouched") {
  FakeTarget sys;
  Adversary adv({FailureModel::crash, CommunicationModel::synchronous(10)}, BudgetVector{5, 5});
  const auto budget = adv.budget();
  const auto levels = adv.protection().overrides();

  auto r = adv.apply_attack(sys, make(ActionKind::inject, peer_id(0)));
  CHECK(r.refusal == Refusal::not_enabled);
  r = adv.apply_attack(sys, make(ActionKind::delay, peer_id(0), 7));  // 3 + 7 = Δ
  CHECK(r.refusal == Refusal::not_enabled);
  auto costly = make(ActionKind::stop, peer_id(0));
  costly.baseline_cost = BudgetVector{6, 0};
  r = adv.apply_attack(sys, costly);
  CHECK(r.refusal == Refusal::budget_exceeded);

  CHECK(adv.budget() == budget);
  CHECK(adv.protection().overrides() == levels);
  CHECK(sys.applied.empty());
  CHECK(adv.knowledge().empty());
  CHECK(adv.history().size() == 3);
}

TEST_CASE("unknown behaviours propagate and charge nothing") {
  FakeTarget sys;
  Adversary adv({}, BudgetVector{1, 1});
  auto a = make(ActionKind::inject, peer_id(0));
  a.behavior = "nonsense";
  CHECK_THROWS_AS(adv.apply_attack(sys, a), UnknownBehavior);
  CHECK(adv.budget() == BudgetVector{1, 1});
}

TEST_CASE("budget property: random plans never go negative and spend monotonically") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    FakeTarget sys;
    Adversary adv({}, BudgetVector{static_cast<std::int64_t>(rng() % 4), static_cast<std::int64_t>(rng() % 3)});
    BudgetVector prev = adv.budget();
    for (int i = 0; i < 30; ++i) {
      const ActionKind k = kAllActionKinds[rng() % 7];
      const NodeId target{static_cast<Role>(rng() % 3), static_cast<std::uint32_t>(rng() % 4)};
      auto a = make(k, target, rng() % 5);
      if (rng() % 4 == 0) a.baseline_cost = BudgetVector{static_cast<std::int64_t>(rng() % 2), 1};
      const auto before = adv.budget();
      const auto r = adv.apply_attack(sys, a);
      CHECK(adv.budget()[0] >= 0);
      CHECK(adv.budget()[1] >= 0);
      CHECK(adv.budget().fits_within(prev));
      if (r.applied()) {
        CHECK(before.minus(r.cost) == adv.budget());
        // the same action again is free wherever κ was charged
        FakeTarget probe;
        Adversary copy = adv;
        const auto again = copy.apply_attack(probe, a);
        CHECK(again.cost.is_zero());
      } else {
        CHECK(before == adv.budget());
      }
      prev = adv.budget();
    }
  }
}

TEST_CASE("goal predicate") {
  GoalSpec g;
  CHECK(evaluate_goal(g, 2000, 0.4));
  CHECK_FALSE(evaluate_goal(g, 1000, 0.0));
  CHECK_FALSE(evaluate_goal(g, 2000, 1.0));
  CHECK_FALSE(evaluate_goal(g, 1500, 0.0));  // strict
  CHECK_FALSE(evaluate_goal(g, 2000, 0.75));
  CHECK_FALSE(evaluate_goal(g, 2000, std::nullopt));
}

TEST_CASE("model parsing") {
  CHECK(parse_failure_model("omission") == FailureModel::omission);
  CHECK(parse_communication_kind("eventually-synchronous") == Comm::eventually_synchronous);
  CHECK(parse_action_kind("skip") == ActionKind::skip);
  CHECK(parse_direction("both") == Direction::both);
  CHECK_THROWS(parse_failure_model("sloppy"));
  CHECK_THROWS(parse_action_kind("bribe"));
  CHECK(includes(FailureModel::byzantine, FailureModel::crash));
  CHECK_FALSE(includes(FailureModel::crash, FailureModel::omission));
  CHECK(check(CommunicationModel::synchronous(0)));
  CHECK_FALSE(check(CommunicationModel::synchronous(5)));
}
