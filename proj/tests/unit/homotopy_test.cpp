#include <doctest.h>

#include <random>

#include "anc/error.hpp"
#include "anc/homotopy.hpp"
#include "fixtures.hpp"

using namespace anc;

namespace {

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an anc::Error");
  return ErrorCode::AssertionFailed;
}

std::size_t length(const Diagram& d) { return d.zigzag().length(); }

// A 3-diagram of length 1 whose only singular height is d, fed by identities.
Diagram hold(const Diagram& d) { return cospan(identity(d), identity(d)); }

}  // namespace

TEST_SUITE("homotopy") {
  TEST_CASE("empty path contraction is the base contraction") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::two_beads(t.sig);
    const auto r = contract_at(t.context(), d, {{}, 0, 2, Bias::None});
    const auto c = contract_zigzag(t.tower->level(1), d, 0, 2);
    CHECK(r.result == c.result);
    CHECK(r.map == c.map);
    CHECK(r.result == fx::rows2(t.sig, {"x a x b x", "x a x b x"}, {"x f x g x"}, {{0, 1}}, {{0, 1}}));
    CHECK(r.notes.empty());
    CHECK(verify_generalized(*t.tower, r.map, MoveKind::Contraction).empty());
  }

  TEST_CASE("contraction windows") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::two_beads(t.sig);
    CHECK(code_of([&] { contract_at(t.context(), d, {{}, 1, 1, Bias::None}); }) == ErrorCode::InvalidWindow);
    CHECK(code_of([&] { contract_at(t.context(), d, {{}, 0, 3, Bias::None}); }) == ErrorCode::InvalidWindow);
    CHECK(code_of([&] { contract_at(t.context(), d, {parse_path("s2"), 0, 2, Bias::None}); }) == ErrorCode::PathOutOfRange);
    const auto one = contract_at(t.context(), d, {{}, 1, 2, Bias::None});
    CHECK(one.result == d);
    CHECK(one.map == identity(d));
  }

  TEST_CASE("opposing pair: failure without bias, distinct biased results") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::opposing(t.sig);
    CHECK(code_of([&] { contract_at(t.context(), d, {{}, 0, 2, Bias::None}); }) == ErrorCode::DeltaColimitFailed);
    const auto lo = contract_at(t.context(), d, {{}, 0, 2, Bias::Lower});
    const auto hi = contract_at(t.context(), d, {{}, 0, 2, Bias::Higher});
    CHECK_FALSE(lo.result == hi.result);
    CHECK(length(lo.result) == 1);
    CHECK(length(hi.result) == 1);
    CHECK(verify_generalized(*t.tower, lo.map, MoveKind::Contraction).empty());
    CHECK(verify_generalized(*t.tower, hi.map, MoveKind::Contraction).empty());
  }

  TEST_CASE("bias is irrelevant when the unbiased colimit exists") {
    fx::Typed t(fx::standard_signature());
    for (const Diagram& d : {fx::two_beads(t.sig), fx::wire_between(t.sig), fx::three_beads(t.sig)}) {
      const std::size_t n = length(d);
      for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b <= n; ++b) {
          const auto none = contract_at(t.context(), d, {{}, a, b, Bias::None});
          for (Bias bias : {Bias::Lower, Bias::Higher}) {
            const auto r = contract_at(t.context(), d, {{}, a, b, bias});
            CHECK(r.result == none.result);
            CHECK(r.map == none.map);
          }
        }
      }
    }
  }

  TEST_CASE("fusion policy") {
    {
      fx::Typed t(fx::standard_signature());
      const auto r = contract_at(t.context(), fx::fuse_endomorphisms(t.sig), {{}, 0, 2, Bias::None});
      REQUIRE(r.notes.size() == 1);
      CHECK(r.notes[0].find("fusion of f+f") != std::string::npos);
    }
    {
      fx::Typed t(fx::standard_signature(true));
      const Diagram d = fx::fuse_endomorphisms(t.sig);
      CHECK(code_of([&] { contract_at(t.context(), d, {{}, 0, 2, Bias::None}); }) == ErrorCode::LabelFusionRejected);
      const auto r = contract_at(t.context(true), d, {{}, 0, 2, Bias::None});
      CHECK(length(r.result) == 1);
      CHECK_FALSE(r.notes.empty());
    }
  }

  TEST_CASE("dimension checks after a move") {
    fx::Typed t(fx::standard_signature());
    // A vertex sitting in a regular row; contracting elsewhere keeps it there.
    const Diagram bad = fx::rows2(t.sig, {"x f x", "x f x", "x f x"}, {"x f x", "x f x"}, {{0}, {0}}, {{0}, {0}});
    CHECK(code_of([&] { contract_at(t.context(), bad, {{}, 0, 2, Bias::None}); }) == ErrorCode::DimensionViolation);
    const auto r = contract_at(t.context(true), bad, {{}, 0, 2, Bias::None});
    CHECK_FALSE(r.notes.empty());
  }

  TEST_CASE("promotion and bubbling") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::two_beads(t.sig);
    const Morphism p = promote_singular(d, 1, identity(d.zigzag().singular[1]));
    CHECK(p == identity(d));

    const Morphism b = bubble_regular(d, 1, identity(d.zigzag().regular[1]));
    CHECK(length(b.target()) == 3);
    CHECK(validate_map(t.tower->level(1), b).empty());
    CHECK(b.map().sing == Monotone({0, 2}, 3));
    // Merging the inert bubble with its upper neighbour gives back d.
    const auto back = contract_zigzag(t.tower->level(1), b.target(), 1, 3);
    CHECK(back.result == d);

    // Over the label poset a wire point can be promoted to a vertex.
    const Diagram wire = fx::row(t.sig, "x a x");
    const Morphism up = promote_singular(wire, 0, Morphism::arrow(t.sig.at("a"), t.sig.at("f")));
    CHECK(up.target() == fx::row(t.sig, "x f x"));
    CHECK(validate_map(t.tower->level(0), up).empty());
  }

  TEST_CASE("nested contraction promotes through singular and bubbles through regular coordinates") {
    fx::Typed t(fx::standard_signature());
    const Diagram inner = fx::two_beads(t.sig);
    const Diagram d = hold(inner);
    const Diagram contracted = contract_zigzag(t.tower->level(1), inner, 0, 2).result;

    const auto s = contract_at(t.context(), d, {parse_path("s0"), 0, 2, Bias::None});
    CHECK(length(s.result) == 1);
    CHECK(s.result.zigzag().singular[0] == contracted);
    CHECK(s.result.zigzag().regular[0] == inner);
    CHECK(validate_map(t.tower->level(2), s.map).empty());
    CHECK(verify_generalized(*t.tower, s.map, MoveKind::Contraction).empty());

    const auto r = contract_at(t.context(), d, {parse_path("r1"), 0, 2, Bias::None});
    CHECK(length(r.result) == 2);
    CHECK(r.result.zigzag().singular[1] == contracted);
    CHECK(r.result.zigzag().regular[2] == inner);
    CHECK(validate_map(t.tower->level(2), r.map).empty());

    // Two levels down: a regular slice of a singular slice.
    const Diagram dd = hold(d);
    const auto deep = contract_at(t.context(), dd, {parse_path("s0,r0"), 0, 2, Bias::None});
    CHECK(length(deep.result) == 1);
    CHECK(length(deep.result.zigzag().singular[0]) == 2);
    CHECK(validate_map(t.tower->level(3), deep.map).empty());
  }

  TEST_CASE("expansion inverts the two-bead contraction") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::two_beads(t.sig);
    const auto c = contract_at(t.context(), d, {{}, 0, 2, Bias::None});

    const auto e = expand_at(t.context(), c.result, {{}, 0, {0}, {1}, SplitOrder::Lower});
    CHECK(e.result == d);
    CHECK(validate_map(t.tower->level(1), e.map).empty());
    CHECK(verify_generalized(*t.tower, e.map, MoveKind::Expansion, 0).empty());
    CHECK(e.map.map().sing == Monotone({0, 0}, 1));

    const auto again = contract_at(t.context(), e.result, {{}, 0, 2, Bias::None});
    CHECK(again.result == c.result);

    // The other interleaving: g first.
    const auto other = expand_at(t.context(), c.result, {{}, 0, {0}, {1}, SplitOrder::Higher});
    CHECK(other.result == fx::rows2(t.sig, {"x a x b x", "x a x b x", "x a x b x"}, {"x a x g x", "x f x b x"},
                                    {{0, 1}, {0, 1}}, {{0, 1}, {0, 1}}));
    const auto swapped = expand_at(t.context(), c.result, {{}, 0, {1}, {0}, SplitOrder::Lower});
    CHECK(swapped.result == other.result);
  }

  TEST_CASE("expansion errors") {
    fx::Typed t(fx::standard_signature());
    const Diagram c = contract_at(t.context(), fx::two_beads(t.sig), {{}, 0, 2, Bias::None}).result;
    CHECK(code_of([&] { expand_at(t.context(), c, {{}, 1, {0}, {1}, SplitOrder::Lower}); }) == ErrorCode::PathOutOfRange);
    CHECK(code_of([&] { expand_at(t.context(), c, {{}, 0, {0}, {}, SplitOrder::Lower}); }) ==
          ErrorCode::ExpansionUnsupported);
    CHECK(code_of([&] { expand_at(t.context(), c, {{}, 0, {0, 1}, {1}, SplitOrder::Lower}); }) ==
          ErrorCode::ExpansionUnsupported);
    CHECK(code_of([&] { expand_at(t.context(), c, {{}, 0, {0}, {2}, SplitOrder::Lower}); }) ==
          ErrorCode::ExpansionUnsupported);
    CHECK(code_of([&] { expand_at(t.context(), hold(c), {parse_path("r0"), 0, {0}, {1}, SplitOrder::Lower}); }) ==
          ErrorCode::RegularPropagationImpossible);
  }

  TEST_CASE("expansion through a singular coordinate") {
    fx::Typed t(fx::standard_signature());
    const Diagram c = contract_at(t.context(), fx::two_beads(t.sig), {{}, 0, 2, Bias::None}).result;
    // The identity legs of hold(c) do not factor through the expansion, so
    // the expanded slice sits between two copies of the old one.
    const auto e = expand_at(t.context(), hold(c), {parse_path("s0"), 0, {0}, {1}, SplitOrder::Lower});
    CHECK(length(e.result) == 2);
    CHECK(e.result.zigzag().regular[1] == fx::two_beads(t.sig));
    CHECK(e.result.zigzag().singular[0] == c);
    CHECK(validate_map(t.tower->level(2), e.map).empty());
    CHECK(verify_generalized(*t.tower, e.map, MoveKind::Expansion, 0).empty());

    // Legs that already come from the expanded diagram do factor.
    const Diagram d = fx::two_beads(t.sig);
    const auto contraction = contract_zigzag(t.tower->level(1), d, 0, 2);
    const Diagram held = cospan(contraction.map, contraction.map);
    const auto f = expand_at(t.context(), held, {parse_path("s0"), 0, {0}, {1}, SplitOrder::Lower});
    CHECK(length(f.result) == 1);
    CHECK(f.result.zigzag().singular[0] == d);
    CHECK(f.result.zigzag().forward[0] == identity(d));
  }

  TEST_CASE("factorization picks the least lift") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::two_beads(t.sig);
    const auto c = contract_zigzag(t.tower->level(1), d, 0, 2);
    CHECK(factor(*t.tower, c.map, c.map) == identity(d));
    CHECK_FALSE(factor(*t.tower, c.map, identity(c.result)).has_value());

    Tower untyped_tower(std::make_shared<FinitePoset>(terminal_category()));
    const Morphism e = fx::untyped_map(2, 1, {0, 0});
    const auto h = factor(untyped_tower, e, fx::untyped_map(1, 1, {0}));
    REQUIRE(h.has_value());
    CHECK(h->map().sing == Monotone({0}, 2));
    CHECK(after(e, *h) == fx::untyped_map(1, 1, {0}));
  }

  TEST_CASE("generalized map check catches wrong fibres") {
    fx::Typed t(fx::standard_signature());
    const Diagram d = fx::three_beads(t.sig);
    const auto c = contract_zigzag(t.tower->level(1), d, 0, 3);
    // One fibre of size three is one move.
    CHECK(verify_generalized(*t.tower, c.map, MoveKind::Contraction).empty());
    CHECK_FALSE(verify_generalized(*t.tower, c.map, MoveKind::Expansion).empty());
    CHECK(verify_generalized(*t.tower, identity(d), MoveKind::Contraction).empty());
    CHECK(verify_generalized(*t.tower, identity(d), MoveKind::Expansion).empty());
  }

  TEST_CASE("random rigid round trips") {
    fx::Typed t(fx::standard_signature(true));
    std::mt19937 rng(20261017);
    const char* wires[] = {"a", "b", "c"};
    const char* beads[] = {"f", "g", "h"};
    int checked = 0;
    while (checked < 200) {
      const std::size_t k = 2 + rng() % 4;
      std::vector<std::string> w(k);
      for (auto& x : w) x = wires[rng() % 3];
      const std::size_t n = 2 + rng() % 3;
      std::vector<std::size_t> pos(n);
      for (auto& p : pos) p = rng() % k;
      std::size_t i = rng() % (n - 1);
      if (pos[i] == pos[i + 1]) continue;

      auto line = [&](std::optional<std::size_t> bead) {
        std::string s = "x";
        for (std::size_t j = 0; j < k; ++j) s += " " + (bead == j ? std::string(beads[rng() % 3]) : w[j]) + " x";
        return s;
      };
      std::vector<std::string> reg(n + 1, line(std::nullopt)), sing;
      for (auto p : pos) sing.push_back(line(p));
      std::vector<std::vector<std::size_t>> ident(n, std::vector<std::size_t>(k));
      for (auto& v : ident)
        for (std::size_t j = 0; j < k; ++j) v[j] = j;
      std::vector<std::string_view> rv(reg.begin(), reg.end()), sv(sing.begin(), sing.end());
      const Diagram d = fx::rows2(t.sig, rv, sv, ident, ident);

      const auto c = contract_at(t.context(), d, {{}, i, i + 2, Bias::None});
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < k; ++j)
        if (j != pos[i]) rest.push_back(j);
      const auto e = expand_at(t.context(), c.result, {{}, i, {pos[i]}, rest, SplitOrder::Lower});
      CHECK(e.result == d);
      const auto back = contract_at(t.context(), e.result, {{}, i, i + 2, Bias::None});
      CHECK(back.result == c.result);
      ++checked;
    }
  }
}
