#include "catch_amalgamated.hpp"

#include <random>

#include "onlinekc/machine.hpp"
#include "support.hpp"

using namespace onlinekc;
using onlinekc::testing::reference_model;

namespace {

bool mentions(const MachineLoadError& e, std::string_view needle) {
  for (const auto& p : e.problems())
    if (p.find(needle) != std::string::npos) return true;
  return false;
}

std::vector<std::string> load_problems(std::string_view text) {
  try {
    load_machine(text);
  } catch (const MachineLoadError& e) {
    return e.problems();
  }
  return {};
}

bool is_prefix(const BitString& a, const BitString& b) {
  return a.size() <= b.size() && b.prefix(a.size()) == a;
}

}  // namespace

TEST_CASE("degenerate machine halts at once") {
  auto m = load_machine(testing::kHaltNow);
  CHECK(m.state_count() == 1);
  CHECK(m.transition_count() == 0);
  auto r = run(m, BitString::parse("0101"), BitString::parse("11"), 3);
  CHECK(r.status == RunStatus::halted);
  CHECK(r.output.empty());
  CHECK(r.steps == 0);
  CHECK(r.max_space == 0);
}

TEST_CASE("reference machine loads") {
  const auto& m = reference_machine();
  CHECK(m.state_count() == 7);
  CHECK(m.transition_count() == 63);
  // fingerprint ignores comments and layout
  auto again = load_machine_file(reference_machine_path());
  CHECK(again.fingerprint() == m.fingerprint());
}

TEST_CASE("load errors carry positions") {
  SECTION("nondeterminism names both lines") {
    auto p = load_problems(
        "initial a\nhalt h\n"
        "a 0 _ * * -> h stay stay none none none\n"
        "a _ 0 * * -> h stay stay none none 1\n");
    REQUIRE_FALSE(p.empty());
    CHECK(p[0].find("line 4") != std::string::npos);
    CHECK(p[0].find("line 3") != std::string::npos);
  }
  SECTION("pop on an empty stack") {
    auto p = load_problems("initial a\nhalt h\na _ _ * _ -> h stay stay pop none none\n");
    REQUIRE_FALSE(p.empty());
    for (const auto& msg : p) CHECK(msg.find("line 3") != std::string::npos);
  }
  SECTION("syntax") {
    auto p = load_problems("initial a\nhalt h\na 0 0 * * => h stay stay none none none\n");
    REQUIRE_FALSE(p.empty());
    CHECK(p[0].find("line 3") != std::string::npos);
    CHECK(p[0].find("column") != std::string::npos);
  }
  SECTION("unknown target state") {
    auto p = load_problems("initial a\nhalt h\na _ _ _ _ -> b stay stay none none none\n");
    REQUIRE_FALSE(p.empty());
  }
  SECTION("halting state with an outgoing transition") {
    auto p = load_problems("initial a\nhalt h\na _ _ _ _ -> h stay stay none none none\n"
                           "h _ _ _ _ -> a stay stay none none none\n");
    REQUIRE_FALSE(p.empty());
  }
  SECTION("every problem is reported") {
    auto p = load_problems("initial a\nhalt h\n"
                           "a _ _ * _ -> h stay stay pop none none\n"
                           "a 0 0 0 0 -> h stay banana none none none\n");
    CHECK(p.size() >= 2);
  }
  SECTION("exception type") {
    try {
      load_machine("initial a\nhalt h\na _ _ * _ -> h stay stay pop none none\n");
      FAIL("expected a load error");
    } catch (const MachineLoadError& e) {
      CHECK(mentions(e, "pop"));
    }
  }
}

TEST_CASE("push forever exceeds the cap") {
  auto m = load_machine(testing::kPushForever);
  auto r = run(m, {}, {}, 5);
  CHECK(r.status == RunStatus::space_exceeded);
  CHECK(r.steps == 5);
  CHECK(r.max_space == 5);
}

TEST_CASE("looping in place diverges") {
  auto m = load_machine(testing::kSpinInPlace);
  auto r = run(m, BitString::parse("1"), {}, 10);
  CHECK(r.status == RunStatus::diverged);
  CHECK(r.max_space == 0);
  REQUIRE(r.repeat_step);
  CHECK(*r.repeat_step == 2);
  CHECK(r.steps <= configuration_bound(m, 1, 0, 10));
}

TEST_CASE("stuck configuration is a divergence") {
  auto m = load_machine("initial a\nhalt h\na 1 _ _ _ -> h stay stay none none 1\n");
  auto r = run(m, BitString::parse("0"), {}, 4);
  CHECK(r.status == RunStatus::diverged);
  CHECK(r.output.empty());
}

TEST_CASE("reference modes") {
  const auto& m = reference_machine();
  auto in = BitString::parse("0110");
  CHECK(run(m, BitString::parse("10110"), {}, 0).output.str() == "0110");
  CHECK(run(m, BitString::parse("0"), in, 0).output.str() == "0110");
  auto table = run(m, BitString::parse("0101"), BitString::parse("01"), 8);
  CHECK(table.status == RunStatus::halted);
  CHECK(table.output.str() == "1");
  CHECK(table.max_space == 2);
  auto tight = run(m, BitString::parse("0101"), BitString::parse("01"), 1);
  CHECK(tight.status == RunStatus::space_exceeded);
}

TEST_CASE("reference machine matches its model") {
  const auto& m = reference_machine();
  for (std::size_t plen = 0; plen <= 7; ++plen)
    for (const auto& p : all_strings(plen))
      for (std::size_t ilen = 0; ilen <= 3; ++ilen)
        for (const auto& in : all_strings(ilen))
          for (std::uint64_t s : {0u, 1u, 2u, 8u}) {
            auto r = run(m, p, in, s);
            auto expect = reference_model(p, in, s);
            INFO(format_bits(p) << " on " << format_bits(in) << " s=" << s);
            REQUIRE((r.status == RunStatus::halted) == expect.has_value());
            if (expect) REQUIRE(r.output == *expect);
            REQUIRE(r.status != RunStatus::diverged);
          }
}

TEST_CASE("configuration bound") {
  const auto& m = reference_machine();
  // 7 states, |p|+2 = 3, |in|+2 = 2, sum_{t<=1} (t+1) 2^t = 1 + 4
  CHECK(configuration_bound(m, 1, 0, 1) == 7 * 3 * 2 * 5);
  CHECK(configuration_bound(m, 0, 0, 0) == 7 * 2 * 2);
  CHECK(configuration_bound(m, 10, 10, 200) == UINT64_MAX);
}

TEST_CASE("random machines: totality, bound, monotonicity, determinism") {
  std::mt19937_64 rng(20261015);
  for (int trial = 0; trial < 60; ++trial) {
    auto m = load_machine(testing::random_machine_text(rng, 1 + trial % 4, 0.35));
    for (int j = 0; j < 25; ++j) {
      auto p = testing::random_bits(rng, rng() % 7);
      auto in = testing::random_bits(rng, rng() % 4);
      RunResult prev;
      for (std::uint64_t s = 0; s <= 5; ++s) {
        auto r = run(m, p, in, s);
        INFO("trial " << trial << " p=" << format_bits(p) << " in=" << format_bits(in) << " s=" << s);
        REQUIRE(r.steps <= configuration_bound(m, p.size(), in.size(), s));
        REQUIRE(r.max_space <= s);
        REQUIRE(run(m, p, in, s) == r);
        if (s > 0) {
          // a larger cap replays the same trajectory up to the old stopping point
          REQUIRE(is_prefix(prev.output, r.output));
          if (prev.status == RunStatus::halted) REQUIRE(r == prev);
          if (prev.status == RunStatus::diverged) REQUIRE(r == prev);
          if (r.status == RunStatus::halted && prev.status != RunStatus::halted)
            REQUIRE(prev.status == RunStatus::space_exceeded);
        }
        prev = r;
      }
    }
  }
}
