#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "strsim/str.hpp"

using namespace strsim;

TEST_CASE("next transmission is predictable only for ECA nodes off a success") {
  MacParams p;
  Stream rng(4);

  BackoffState eca;
  eca.mode = MacMode::ECA;
  eca = on_outcome(eca, TxOutcome::Success, p, rng);
  auto predicted = predict_next_tx(eca, Capabilities{false, true});
  REQUIRE(predicted.has_value());
  CHECK(*predicted == 7);

  // CWmin = 10: deterministic backoff of 4 timeslots.
  MacParams small = p;
  small.cw_min = 10;
  BackoffState eca10;
  eca10.mode = MacMode::ECA;
  eca10 = on_outcome(eca10, TxOutcome::Success, small, rng);
  CHECK(*predict_next_tx(eca10, Capabilities{true, true}) == 4);

  CHECK_FALSE(predict_next_tx(eca, Capabilities{true, false}).has_value());

  BackoffState collided;
  collided.mode = MacMode::ECA;
  collided = on_outcome(collided, TxOutcome::Collision, p, rng);
  CHECK_FALSE(predict_next_tx(collided, Capabilities{false, true}).has_value());
}

TEST_CASE("d_next embedding") {
  MacParams p;
  auto d = embed_next_duration(Capabilities{false, true}, 8000, p);
  REQUIRE(d.has_value());
  CHECK(*d == doctest::Approx(frame_airtime(8000, p)).epsilon(1e-12));

  // 500-byte next packet: 128/6e6 + (272+4000)/54e6
  auto d500 = embed_next_duration(Capabilities{false, true}, 4000, p);
  CHECK(*d500 == doctest::Approx(128.0 / 6e6 + 4272.0 / 54e6).epsilon(1e-12));

  CHECK_FALSE(embed_next_duration(Capabilities{true, false}, 8000, p).has_value());
}

TEST_CASE("secondary scheduling offsets") {
  CHECK(*schedule_secondary(200e-6, 200e-6, StrMode::UFD) == doctest::Approx(0.0));
  CHECK(*schedule_secondary(200e-6, 150e-6, StrMode::UFD) ==
        doctest::Approx(50e-6).epsilon(1e-9));
  CHECK(*schedule_secondary(200e-6, 150e-6, StrMode::BFD) == doctest::Approx(0.0));
  CHECK_FALSE(schedule_secondary(200e-6, 250e-6, StrMode::UFD).has_value());
  CHECK_FALSE(schedule_secondary(200e-6, 250e-6, StrMode::BFD).has_value());
}

TEST_CASE("plan invariants") {
  TransmissionPlan plan;
  plan.primary_sender = 5;
  plan.primary_receiver = 0;
  plan.primary_duration_s = 200e-6;

  CHECK(plan_valid(plan));  // no secondary

  plan.secondary = SecondaryTx{5, 0.0, 200e-6, StrMode::BFD, false};
  CHECK(plan_valid(plan));
  plan.secondary->duration_s = 250e-6;
  CHECK_FALSE(plan_valid(plan));
  plan.secondary->duration_s = 150e-6;
  CHECK(plan_valid(plan));  // BFD may end early
  plan.secondary->target = 6;
  CHECK_FALSE(plan_valid(plan));  // BFD must answer the primary sender

  plan.secondary = SecondaryTx{6, 50e-6, 150e-6, StrMode::UFD, false};
  CHECK(plan_valid(plan));
  plan.secondary->start_offset_s = 0.0;
  CHECK_FALSE(plan_valid(plan));  // UFD ends must align
  plan.secondary = SecondaryTx{5, 0.0, 200e-6, StrMode::UFD, false};
  CHECK_FALSE(plan_valid(plan));  // UFD target differs from the primary
}

TEST_CASE("secondary selection preference order and tie-breaks") {
  double d_p = frame_airtime(8000, MacParams{});

  SecondaryCandidates cand;
  cand.primary_fd = true;
  cand.queued_for_primary_s = d_p;
  cand.natural = {{7, d_p}};
  cand.created = {{9, d_p, 30.0}};
  cand.created_viability_db = 23.0;

  auto bfd = select_secondary(cand, d_p);
  REQUIRE(bfd.has_value());
  CHECK(bfd->mode == StrMode::BFD);
  CHECK(bfd->start_offset_s == 0.0);

  cand.primary_fd = false;  // HD primary: BFD impossible, natural UFD next
  auto nat = select_secondary(cand, d_p);
  REQUIRE(nat.has_value());
  CHECK(nat->mode == StrMode::UFD);
  CHECK(nat->target == 7);
  CHECK_FALSE(nat->created);

  cand.natural.clear();  // only created targets remain
  auto created = select_secondary(cand, d_p);
  REQUIRE(created.has_value());
  CHECK(created->target == 9);
  CHECK(created->created);

  cand.created.clear();
  CHECK_FALSE(select_secondary(cand, d_p).has_value());

  // Longest fitting packet wins; ties go to the lowest node id.
  SecondaryCandidates ties;
  ties.natural = {{5, 100e-6}, {3, 100e-6}, {8, 150e-6}, {4, 300e-6}};
  auto pick = select_secondary(ties, 200e-6);
  REQUIRE(pick.has_value());
  CHECK(pick->target == 8);  // 300 us does not fit, 150 us is the longest fit
  ties.natural = {{5, 100e-6}, {3, 100e-6}};
  pick = select_secondary(ties, 200e-6);
  CHECK(pick->target == 3);
  CHECK(pick->start_offset_s == doctest::Approx(100e-6).epsilon(1e-9));
}

TEST_CASE("created targets are ranked by measured margin above the bar") {
  SecondaryCandidates cand;
  cand.created_viability_db = 23.0;
  cand.created = {{4, 100e-6, 24.0}, {9, 100e-6, 31.0}, {2, 100e-6, 22.9}};
  auto pick = select_secondary(cand, 200e-6);
  REQUIRE(pick.has_value());
  CHECK(pick->target == 9);  // best margin wins, sub-bar targets are skipped
  CHECK(pick->created);

  // Margin ties break toward the lowest node id.
  cand.created = {{6, 100e-6, 25.0}, {3, 100e-6, 25.0}};
  CHECK(select_secondary(cand, 200e-6)->target == 3);

  // Everything below the bar: stay half duplex rather than gamble.
  cand.created = {{6, 100e-6, 10.0}, {3, 100e-6, 19.0}};
  CHECK_FALSE(select_secondary(cand, 200e-6).has_value());
}

TEST_CASE("oversized packets degrade to half duplex") {
  SecondaryCandidates cand;
  cand.primary_fd = true;
  cand.queued_for_primary_s = 300e-6;
  cand.natural = {{7, 280e-6}};
  cand.created = {{9, 250e-6, 40.0}};
  CHECK_FALSE(select_secondary(cand, 200e-6).has_value());
}

TEST_CASE("UFD resolution: audible primary sinks the secondary link") {
  TransmissionPlan plan;
  plan.primary_sender = 5;
  plan.primary_receiver = 0;
  plan.primary_duration_s = 200e-6;
  plan.secondary = SecondaryTx{6, 0.0, 200e-6, StrMode::UFD, true};
  REQUIRE(plan_valid(plan));

  // Target hears the AP at -45 dBm but also physically receives the primary
  // at -50 dBm: SINR is about 5 dB, below beta = 20.
  LinkBudget primary{-60.0, {}, -95.0, -111.0};
  LinkBudget secondary{-45.0, {-50.0}, -95.0, std::nullopt};
  LinkBudget good_ack{-60.0, {}, -95.0, std::nullopt};

  StrOutcome out = resolve_str_outcome(plan, primary, secondary, good_ack, good_ack, 20.0);
  CHECK(out.primary_data_ok);
  CHECK(out.primary_acked);
  CHECK_FALSE(out.secondary_data_ok);
  CHECK_FALSE(out.secondary_acked);
}

TEST_CASE("interference-free pair succeeds on both links") {
  TransmissionPlan plan;
  plan.primary_sender = 5;
  plan.primary_receiver = 0;
  plan.primary_duration_s = 200e-6;
  plan.secondary = SecondaryTx{5, 0.0, 200e-6, StrMode::BFD, false};

  LinkBudget clean{-60.0, {}, kErasedDbm, std::nullopt};
  StrOutcome out = resolve_str_outcome(plan, clean, clean, clean, clean, 20.0);
  CHECK(out.primary_data_ok);
  CHECK(out.secondary_data_ok);
  CHECK(out.primary_acked);
  CHECK(out.secondary_acked);
}

TEST_CASE("secondary failure never drags down a successful primary") {
  TransmissionPlan plan;
  plan.primary_sender = 5;
  plan.primary_receiver = 0;
  plan.primary_duration_s = 200e-6;
  plan.secondary = SecondaryTx{6, 0.0, 200e-6, StrMode::UFD, false};

  LinkBudget primary{-60.0, {}, -95.0, -120.0};
  LinkBudget ack{-60.0, {}, -95.0, std::nullopt};
  LinkBudget dead_secondary{-90.0, {-50.0}, -95.0, std::nullopt};

  StrOutcome with_dead =
      resolve_str_outcome(plan, primary, dead_secondary, ack, ack, 20.0);
  StrOutcome without =
      resolve_str_outcome(plan, primary, std::nullopt, ack, ack, 20.0);
  CHECK(with_dead.primary_acked == without.primary_acked);
  CHECK(with_dead.primary_acked);
}

TEST_CASE("missing ack voids the transfer") {
  TransmissionPlan plan;
  plan.primary_sender = 5;
  plan.primary_receiver = 0;
  plan.primary_duration_s = 200e-6;

  LinkBudget data{-60.0, {}, -95.0, std::nullopt};
  LinkBudget jammed_ack{-60.0, {-55.0}, -95.0, std::nullopt};
  StrOutcome out = resolve_str_outcome(plan, data, std::nullopt, jammed_ack,
                                       std::nullopt, 20.0);
  CHECK(out.primary_data_ok);
  CHECK_FALSE(out.primary_acked);
}
