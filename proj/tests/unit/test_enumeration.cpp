#include <doctest.h>

#include <set>
#include <string>

#include "lmsr/enumeration.hpp"
#include "lmsr/errors.hpp"
#include "oracles.hpp"

using namespace lmsr;

namespace {

std::set<std::string> serializations(const GentreeCatalog& catalog) {
  std::set<std::string> out;
  for (const auto& t : catalog.trees) out.insert(t.serialization());
  return out;
}

std::vector<std::string> symbols(const std::vector<Op>& ops) {
  std::vector<std::string> out;
  for (Op op : ops) out.emplace_back(symbol(op));
  return out;
}

}  // namespace

TEST_SUITE("enumeration") {
  TEST_CASE("depth 0 is the single leaf") {
    for (const auto& ops : {"add,mul,div,sqrt", "add", "sqrt", "exp,sub"}) {
      EnumerationOptions opt;
      opt.depth = 0;
      opt.ops = OperatorSet::parse(ops);
      const auto catalog = enumerate_gentrees(opt);
      REQUIRE(catalog.size() == 1);
      CHECK(catalog.trees[0].serialization() == "L");
    }
  }

  TEST_CASE("depth 1 with the standard set and every rule") {
    EnumerationOptions opt;
    opt.depth = 1;
    const auto got = serializations(enumerate_gentrees(opt));
    CHECK(got == std::set<std::string>{"L", "(+ L L)"});
  }

  TEST_CASE("prune examples") {
    CHECK(prune(Gentree::parse("(* L L)")).rule == PruneRule::R1);
    CHECK(prune(Gentree::parse("(/ L L)")).rule == PruneRule::R1);
    CHECK(prune(Gentree::parse("(* L (+ L L))")).rule == PruneRule::R2a);
    CHECK(prune(Gentree::parse("(* (+ L L) (+ L L))")).rule == PruneRule::R2b);
    CHECK(prune(Gentree::parse("(/ (+ L L) L)")).rule == PruneRule::R3);
    CHECK(prune(Gentree::parse("(sqrt L)")).rule == PruneRule::SqrtLeaf);
    CHECK(prune(Gentree::parse("(/ L (+ L L))")).keep());
    CHECK(prune(Gentree::parse("(+ L L)")).keep());
    CHECK(prune(Gentree::parse("(sqrt (+ L L))")).keep());
    CHECK(prune(Gentree::parse("(* L L)"), RuleFlags::none()).keep());
    CHECK(prune(Gentree::parse("(sqrt (* L L))")).rule == PruneRule::R1);
  }

  TEST_CASE("complexity counts nodes") {
    CHECK(complexity(Gentree()) == 1);
    CHECK(complexity(Gentree::parse("(+ L L)")) == 3);
    CHECK(complexity(Gentree::parse("(/ L (sqrt (+ L L)))")) == 6);
  }

  TEST_CASE("matches the brute-force oracle up to depth 3") {
    struct Case {
      const char* ops;
      const char* rules;
      bool canonical;
    };
    const Case cases[] = {
        {"add,mul,div,sqrt", "all", true},  {"add,mul,div,sqrt", "none", true},
        {"add,mul,div,sqrt", "all", false}, {"add,sub,mul,div,exp", "all", true},
        {"add,sub,mul,div,sqrt,exp", "r1,r3", true}, {"mul,sqrt", "all", true},
    };
    for (const auto& c : cases) {
      for (int depth = 0; depth <= 3; ++depth) {
        if (depth == 3 && std::string(c.ops).size() > 20) continue;
        EnumerationOptions opt;
        opt.depth = depth;
        opt.ops = OperatorSet::parse(c.ops);
        opt.rules = RuleFlags::parse(c.rules);
        opt.canonicalize = c.canonical;
        const auto got = serializations(enumerate_gentrees(opt));

        std::set<std::string> expect;
        for (const auto& t : oracle::all_gentrees(depth, symbols(opt.ops.binary), symbols(opt.ops.unary), c.canonical)) {
          const auto rule = oracle::first_rule(t);
          bool removed = false;
          if (rule) {
            const std::string r = *rule;
            removed = (r == "R1" && opt.rules.r1) || (r == "R2a" && opt.rules.r2a) ||
                      (r == "R2b" && opt.rules.r2b) || (r == "R3" && opt.rules.r3) ||
                      (r == "SQRT-L" && opt.rules.sqrt_leaf);
            // first_rule reports only the first rule; re-check when it is disabled.
            if (!removed && !(opt.rules == RuleFlags::none())) {
              removed = !prune(Gentree::parse(t), opt.rules).keep();
            }
          }
          if (!removed) expect.insert(t);
        }
        INFO(c.ops << " rules=" << c.rules << " depth=" << depth);
        CHECK(got == expect);
      }
    }
  }

  TEST_CASE("pruned catalog is identical to filtering the unpruned one") {
    EnumerationOptions full;
    full.depth = 3;
    full.rules = RuleFlags::none();
    const auto all = enumerate_gentrees(full);
    std::set<std::string> filtered;
    for (const auto& t : all.trees) {
      if (prune(t).keep()) filtered.insert(t.serialization());
    }
    full.rules = RuleFlags::all();
    CHECK(serializations(enumerate_gentrees(full)) == filtered);
  }

  TEST_CASE("counts are monotone in depth") {
    for (int d = 0; d < 4; ++d) {
      CHECK(enumerate_gentrees(paper_counts_preset(d)).size() <= enumerate_gentrees(paper_counts_preset(d + 1)).size());
    }
  }

  TEST_CASE("golden cumulative counts for the standard preset") {
    const auto catalog = enumerate_gentrees(paper_counts_preset(4));
    CHECK(catalog.cumulative_count(0) == 1);
    CHECK(catalog.cumulative_count(1) == 2);
    CHECK(catalog.cumulative_count(2) == 7);
    CHECK(catalog.cumulative_count(3) == 107);
    CHECK(catalog.cumulative_count(4) == 23107);
    CHECK(catalog.size() == 23107);
  }

  TEST_CASE("catalog order is by complexity then serialization, with no duplicates") {
    const auto catalog = enumerate_gentrees(paper_counts_preset(3));
    std::set<std::string> seen;
    for (std::size_t i = 0; i < catalog.size(); ++i) {
      CHECK(seen.insert(catalog.trees[i].serialization()).second);
      if (i == 0) continue;
      const auto& a = catalog.trees[i - 1];
      const auto& b = catalog.trees[i];
      const bool ordered = complexity(a) < complexity(b) ||
                           (complexity(a) == complexity(b) && a.serialization() < b.serialization());
      CHECK(ordered);
    }
    std::size_t indexed = 0;
    for (const auto& [depth, idx] : catalog.depth_index) {
      for (auto i : idx) CHECK(catalog.trees[i].depth() == depth);
      indexed += idx.size();
    }
    CHECK(indexed == catalog.size());
  }

  TEST_CASE("catalog covers the expected reference forms") {
    const auto got = serializations(enumerate_gentrees(paper_counts_preset(3)));
    for (const char* t : {"L", "(+ L L)", "(/ L (+ L L))", "(/ L (sqrt (+ L L)))", "(/ (+ L L) (+ L L))",
                          "(/ L (/ L (+ L L)))", "(* (+ (+ L L) L) L)"}) {
      CHECK_MESSAGE(got.count(t) == 1, t);
    }
  }

  TEST_CASE("bad options") {
    EnumerationOptions opt;
    opt.ops = OperatorSet{};
    CHECK_THROWS_AS(enumerate_gentrees(opt), ConfigError);
    opt = EnumerationOptions{};
    opt.depth = -1;
    CHECK_THROWS_AS(enumerate_gentrees(opt), ConfigError);
    CHECK_THROWS_AS(OperatorSet::parse("add,log"), ParseError);
    CHECK_THROWS_AS(RuleFlags::parse("r9"), ParseError);
  }
}
