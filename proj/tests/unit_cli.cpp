#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "cli.hpp"
#include "oracles.hpp"

using namespace burnside;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "burnside_cli");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, TomCsvS3) {
  auto r = run({"tom", "sym:3", "--format", "csv"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "0,0-2,0-1-3,0-1-2-3-4-5\n6,0,0,0\n3,1,0,0\n2,0,2,0\n1,1,1,1\n");
}

TEST(Cli, IntegralIdempotentsA5) {
  auto r = run({"idem", "--integral", "alt:5", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  ASSERT_EQ(j.at("idempotents").size(), 2u);
  auto ring = BurnsideRing::create(builtin("alt:5"));
  auto f = oracle::a5_f(ring);
  std::size_t matches = 0;
  for (const auto& e : j.at("idempotents")) matches += burnside_element_from_json(e.at("element"), ring) == f;
  EXPECT_EQ(matches, 1u);
}

TEST(Cli, ZpFamilyClosedForm) {
  auto r = run({"tower", "zp:p=2,depth=4", "idem", "--subgroup", "index:p^1", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j.at("compatible").get<bool>());
  EXPECT_EQ(j.at("levels").size(), 4u);
  auto t = tower_build("zp:p=2,depth=4");
  auto fam = plain_family_from_json(j, t);
  EXPECT_TRUE(fam.is_compatible());
  for (std::size_t i = 1; i < 4; ++i) EXPECT_EQ(fam.levels[i], zp_closed_form(t->level(i), 2, 1)) << i;
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"tom", "sym:9"}).code, 1);
  EXPECT_EQ(run({"tom", "sym:3", "--format", "yaml"}).code, 1);
  EXPECT_EQ(run({"mul", "sym:3", "class:0-2", "class:nope"}).code, 1);
  EXPECT_EQ(run({"tower", "a5xz:chain=2,3", "info"}).code, 1);
  EXPECT_EQ(run({"hall", "--p", "2", "--n", "1"}).code, 1);
  EXPECT_EQ(run({"tom", "sym:3", "--help"}).code, 0);
  ::setenv("BURNSIDE_CAP", "50", 1);
  auto capped = run({"tom", "alt:5"});
  ::unsetenv("BURNSIDE_CAP");
  EXPECT_EQ(capped.code, 2);
  EXPECT_FALSE(capped.err.empty());
  EXPECT_EQ(capped.err.find('\n'), capped.err.size() - 1);  // one-line diagnostic
}

TEST(Cli, Deterministic) {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"tom", "sym:4", "--format", "json"},
           {"crossed-basis", "quaternion:8", "--format", "json"},
           {"tower", "a5xz:chain=1,2", "census", "--format", "json"},
           {"mackey", "sym:3", "--functor", "fp", "--rep", "regular", "--check", "--samples", "10", "--seed", "3"}}) {
    auto a = run(args), b = run(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Cli, OracleMode) {
  for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
           {"tom", "sym:4"},
           {"idem", "sym:4"},
           {"idem", "alt:5", "--integral"},
           {"mul", "sym:4", "class:0-2", "class:0-3", "class:0-4-14"},
           {"crossed-basis", "dihedral:4"},
           {"crossed-mul", "sym:3", "pair:0-2:2", "pair:0-1-3:1"},
           {"zeta", "quaternion:8"},
           {"tower", "zp:p=3,depth=3", "census"},
           {"tower", "a5xz:chain=1,2,4", "census"},
           {"mackey", "sym:3", "--functor", "burnside", "--y", "cosets:0-2+cosets:0", "--element", "pair:0-1-3:1"},
           {"mackey", "sym:3", "--functor", "fp", "--rep", "regular", "--field", "F3", "--y", "cosets:0-2",
            "--element", "pair:0-2:2"},
           {"hall", "--p", "3", "--n", "2", "--word", "g0 g1^2"}}) {
    auto plain = run(args);
    auto with_oracle = args;
    with_oracle.push_back("--oracle");
    auto checked = run(with_oracle);
    EXPECT_EQ(checked.code, 0) << args[0] << ": " << checked.err;
    EXPECT_EQ(checked.out, plain.out) << args[0];
  }
}

TEST(Cli, JsonRoundTrip) {
  auto ring = BurnsideRing::create(builtin("sym:4"));
  auto crossed = CrossedRing::create(ring);
  std::mt19937_64 rng(8);
  auto dir = std::filesystem::temp_directory_path();
  for (int k = 0; k < 5; ++k) {
    auto x = oracle::random_element<BurnsideElement>(ring, rng);
    auto y = oracle::random_element<BurnsideElement>(ring, rng);
    auto path = dir / "burnside_cli_x.json";
    std::ofstream(path) << to_json(x).dump();
    auto r = run({"mul", "sym:4", path.string(), to_json(y).dump(), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(burnside_element_from_json(json::parse(r.out), ring), x * y);
    std::filesystem::remove(path);

    auto cx = oracle::random_element<CrossedElement>(crossed, rng);
    auto cy = oracle::random_element<CrossedElement>(crossed, rng);
    auto c = run({"crossed-mul", "sym:4", to_json(cx).dump(), to_json(cy).dump(), "--format", "json"});
    ASSERT_EQ(c.code, 0) << c.err;
    EXPECT_EQ(crossed_element_from_json(json::parse(c.out), crossed), cx * cy);
  }
}

TEST(Cli, TowerCheckAndMarkers) {
  auto t = tower_build("zp:p=2,depth=3");
  auto fam = idempotent_family(t, "index:2");
  EXPECT_EQ(run({"tower", "zp:p=2,depth=3", "check", to_json(fam).dump()}).code, 0);
  fam.levels[2] = fam.levels[2] + BurnsideElement::one(t->level(2));
  auto bad = run({"tower", "zp:p=2,depth=3", "check", to_json(fam).dump()});
  EXPECT_EQ(bad.code, 1);
  auto emb = embed_family(idempotent_family(t, "full"));
  EXPECT_EQ(run({"tower", "zp:p=2,depth=3", "markers", to_json(emb).dump()}).code, 0);
}

TEST(Cli, MackeyAxiomCheck) {
  auto r = run({"mackey", "sym:4", "--functor", "fq", "--rep", "sign:0-3-4-5-11-12-13-14-15-21-22-23", "--check",
                "--samples", "20", "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_EQ(j.at("mf2").at("passed"), j.at("mf2").at("checked"));
  EXPECT_EQ(j.at("mf3").at("passed"), j.at("mf3").at("checked"));
  EXPECT_EQ(run({"mackey", "sym:3", "--functor", "fp", "--rep", "regular", "--field", "Z"}).code, 1);
}

TEST(Cli, ZetaSummary) {
  auto r = run({"zeta", "dihedral:4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "crossed rank 29, zeta rank 29, injective\n");
}
