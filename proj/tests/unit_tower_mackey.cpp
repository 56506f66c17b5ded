#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "oracles.hpp"

using namespace burnside;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::InvariantViolation;
}

std::vector<std::string> index_specs(const TowerPtr& t) {
  std::vector<std::string> out{"full"};
  std::size_t top = t->level(t->depth() - 1)->group().order();
  for (std::size_t d = 1; d <= top; ++d)
    if (top % d == 0) out.push_back("index:" + std::to_string(d));
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Towers

TEST(Tower, BuildAndNormalForms) {
  auto z2 = tower_build("zp:p=2,depth=5");
  EXPECT_EQ(z2->spec(), "zp:p=2,depth=5");
  EXPECT_EQ(z2->depth(), 5u);
  EXPECT_EQ(z2->level(4)->group().order(), 32u);
  auto zh = tower_build(" zhat:depth=4 ");
  EXPECT_EQ(zh->spec(), "zhat:depth=4");
  EXPECT_EQ(zh->level(3)->group().order(), 24u);
  auto a5 = tower_build("a5xz:chain=1,2,4");
  EXPECT_EQ(a5->level(0)->rank(), 9u);
  EXPECT_EQ(a5->level(1)->rank(), 22u);
  EXPECT_EQ(a5->level(2)->rank(), 35u);
  EXPECT_EQ(a5->crossed_level(2)->rank(), 320u);
  for (std::size_t i = 0; i + 1 < a5->depth(); ++i) EXPECT_EQ(a5->map(i).kernel().size(), a5->moduli()[i + 1] / a5->moduli()[i]);
}

TEST(Tower, Errors) {
  EXPECT_EQ(code_of([] { tower_build("a5xz:chain=2,3"); }), ErrorCode::BadDivisorChain);
  EXPECT_EQ(code_of([] { tower_build("zp:p=4,depth=2"); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([] { tower_build("zp:p=2,depth=9"); }), ErrorCode::CapExceeded);
  EXPECT_EQ(code_of([] { tower_build("qq:depth=2"); }), ErrorCode::ParseError);
  auto t = tower_build("zp:p=3,depth=3");
  EXPECT_EQ(code_of([&] { transition(*t, 0, 2, BurnsideElement::one(t->level(0))); }), ErrorCode::LevelOrder);
  EXPECT_EQ(code_of([&] { idempotent_family(t, "A5xindex:2"); }), ErrorCode::SpecUnresolvable);
  EXPECT_EQ(code_of([&] { idempotent_family(t, "top:9-9-9"); }), ErrorCode::SpecUnresolvable);
  EXPECT_EQ(code_of([&] { idempotent_family(t, "A5x1"); }), ErrorCode::SpecUnresolvable);
  auto a5 = tower_build("a5xz:chain=1,2");
  EXPECT_EQ(idempotent_family(a5, "A5x2").levels, idempotent_family(a5, "A5xindex:2").levels);
}

TEST(Tower, TransitionsAreRingMaps) {
  std::mt19937_64 rng(21);
  for (const std::string s : {"zp:p=2,depth=4", "zhat:depth=4", "a5xz:chain=1,2"}) {
    auto t = tower_build(s);
    for (std::size_t i = 0; i + 1 < t->depth(); ++i)
      for (int k = 0; k < 10; ++k) {
        auto x = oracle::random_element<BurnsideElement>(t->level(i + 1), rng);
        auto y = oracle::random_element<BurnsideElement>(t->level(i + 1), rng);
        EXPECT_EQ(transition(*t, i + 1, i, x * y), transition(*t, i + 1, i, x) * transition(*t, i + 1, i, y)) << s;
        auto cx = oracle::random_element<CrossedElement>(t->crossed_level(i + 1), rng);
        auto cy = oracle::random_element<CrossedElement>(t->crossed_level(i + 1), rng);
        EXPECT_EQ(transition(*t, i + 1, i, cx * cy), transition(*t, i + 1, i, cx) * transition(*t, i + 1, i, cy)) << s;
      }
    if (t->depth() >= 3) {
      auto x = oracle::random_element<BurnsideElement>(t->level(2), rng);
      EXPECT_EQ(transition(*t, 2, 0, x), transition(*t, 1, 0, transition(*t, 2, 1, x)));
    }
  }
}

TEST(Tower, GluckFamiliesCoherent) {
  for (const std::string s : {"zp:p=2,depth=4", "zp:p=3,depth=3", "zhat:depth=4", "a5xz:chain=1,2"}) {
    auto t = tower_build(s);
    std::vector<std::string> specs = index_specs(t);
    if (t->kind() == TowerKind::A5xZ) specs = {"full", "A5xindex:1", "A5xindex:2", "A5x1"};
    const auto& top_lat = t->level(t->depth() - 1)->lattice();
    for (std::size_t c = 0; c < top_lat.class_count(); ++c) specs.push_back("top:" + top_lat.class_id(c));
    for (const auto& h : specs) {
      PlainFamily f = idempotent_family(t, h);
      EXPECT_TRUE(f.is_compatible()) << s << " " << h;
      for (const auto& x : f.levels) {
        EXPECT_EQ(x * x, x);
        auto m = marks(x);
        std::size_t ones = 0;
        for (const auto& v : m.marks) {
          EXPECT_TRUE(v == 0 || v == 1);
          ones += v == 1;
        }
        EXPECT_LE(ones, 1u);  // a single class, or 0 where the kernel is not inside H
      }
    }
  }
}

TEST(Tower, ZpClosedForm) {
  for (long long p : {2, 3}) {
    auto t = tower_build("zp:p=" + std::to_string(p) + ",depth=5");
    std::size_t pn = 1;
    for (std::size_t n = 0; n + 1 < t->depth(); ++n, pn *= static_cast<std::size_t>(p)) {
      PlainFamily f = idempotent_family(t, "index:" + std::to_string(pn));
      EXPECT_TRUE(f.is_compatible());
      for (std::size_t i = n; i < t->depth(); ++i) EXPECT_EQ(f.levels[i], zp_closed_form(t->level(i), p, n)) << p << " " << n << " " << i;
      EXPECT_EQ(idempotent_family(t, "index:p^" + std::to_string(n)).levels, f.levels);
    }
  }
}

TEST(Tower, InjectedIncompatibility) {
  auto t = tower_build("zp:p=2,depth=4");
  PlainFamily f = idempotent_family(t, "index:2");
  f.levels[2] = f.levels[2] + BurnsideElement::one(t->level(2));
  EXPECT_EQ(f.first_incompatible_level(), std::optional<std::size_t>(1));
  auto g = constant_one(t);
  EXPECT_TRUE(g.is_compatible());
  EXPECT_TRUE(levelwise_add(g, idempotent_family(t, "index:4")).is_compatible());
  EXPECT_TRUE(levelwise_multiply(idempotent_family(t, "index:2"), idempotent_family(t, "index:4")).is_compatible());
}

TEST(Tower, CensusSolubleTowers) {
  for (const std::string s : {"zp:p=2,depth=4", "zhat:depth=3", "zp:p=3,depth=3"}) {
    auto rep = prosoluble_census(tower_build(s));
    EXPECT_EQ(rep.coherent_family_count, 2u) << s;
    EXPECT_FALSE(rep.nontrivial_family);
    for (const auto& l : rep.levels) EXPECT_EQ(l.idempotent_count, 2u);
  }
}

TEST(Tower, CensusA5xZ) {
  auto t = tower_build("a5xz:chain=1,2,4");
  auto rep = prosoluble_census(t);
  EXPECT_EQ(rep.coherent_family_count, 4u);
  EXPECT_TRUE(rep.nontrivial_family);
  ASSERT_EQ(rep.families.size(), 4u);
  auto f_a5 = integral_idempotents(t->level(0))[1].element;
  bool found = false;
  for (const auto& f : rep.families) {
    EXPECT_TRUE(f.is_compatible());
    for (const auto& x : f.levels) EXPECT_EQ(x * x, x);
    if (f.levels[0] == f_a5) {
      found = true;
      // levelwise the inflation of f_A5
      for (std::size_t i = 1; i < t->depth(); ++i)
        EXPECT_EQ(f.levels[i], inflate(t->composite(i, 0), f_a5));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Tower, DressAlgebraMatchesBruteForce) {
  auto t = tower_build("a5xz:chain=1,2");
  for (std::size_t i = 0; i < t->depth(); ++i) {
    auto brute = idempotent_census(t->level(i));
    auto dress = dress_boolean_algebra(t->level(i));
    ASSERT_EQ(brute.size(), dress.size());
    for (const auto& e : dress) EXPECT_NE(std::find(brute.begin(), brute.end(), e), brute.end());
  }
}

TEST(Tower, CustomTower) {
  auto path = std::filesystem::temp_directory_path() / "burnside_custom_tower.json";
  {
    std::ofstream out(path);
    out << R"({"levels": ["cyclic:2", "cyclic:4", {"mul": [[0,1,2,3,4,5,6,7],[1,2,3,4,5,6,7,0],[2,3,4,5,6,7,0,1],[3,4,5,6,7,0,1,2],[4,5,6,7,0,1,2,3],[5,6,7,0,1,2,3,4],[6,7,0,1,2,3,4,5],[7,0,1,2,3,4,5,6]]}],
              "maps": [[0,1,0,1], [0,1,2,3,0,1,2,3]]})";
  }
  auto t = tower_build("custom:" + path.string());
  EXPECT_EQ(t->depth(), 3u);
  EXPECT_EQ(t->kind(), TowerKind::Custom);
  const auto& top = t->level(2)->lattice();
  for (std::size_t c = 0; c < top.class_count(); ++c)
    EXPECT_TRUE(idempotent_family(t, "top:" + top.class_id(c)).is_compatible());
  {
    std::ofstream out(path);
    out << R"({"levels": ["cyclic:2", "cyclic:4"], "maps": [[0,1,1,0]]})";
  }
  EXPECT_EQ(code_of([&] { tower_build("custom:" + path.string()); }), ErrorCode::NotHomomorphism);
  std::filesystem::remove(path);
}

TEST(Tower, FamilyJsonRoundTrip) {
  auto t = tower_build("zp:p=3,depth=3");
  PlainFamily f = idempotent_family(t, "index:3");
  EXPECT_EQ(plain_family_from_json(json::parse(to_json(f).dump()), t), f);
  CrossedFamily c = embed_family(f);
  EXPECT_EQ(crossed_family_from_json(json::parse(to_json(c).dump()), t), c);
  EXPECT_EQ(code_of([&] { plain_family_from_json(to_json(c), t); }), ErrorCode::ParseError);
}

// ---------------------------------------------------------------------------
// Crossed towers and marker recovery

TEST(Tower, CrossedFixFunctoriality) {
  auto t = tower_build("a5xz:chain=1,2,4");
  std::mt19937_64 rng(31);
  for (int k = 0; k < 5; ++k) {
    auto x = oracle::random_element<CrossedElement>(t->crossed_level(2), rng);
    auto y = oracle::random_element<CrossedElement>(t->crossed_level(2), rng);
    EXPECT_EQ(transition(*t, 2, 0, x), transition(*t, 1, 0, transition(*t, 2, 1, x)));
    EXPECT_EQ(transition(*t, 2, 1, x * y), transition(*t, 2, 1, x) * transition(*t, 2, 1, y));
  }
}

TEST(Markers, EmbeddedPlainFamilyHasIdentityMarkers) {
  auto t = tower_build("zp:p=2,depth=3");
  auto chains = crossed_family_marker_recovery(embed_family(idempotent_family(t, "index:2")));
  EXPECT_FALSE(chains.empty());
  for (const auto& ch : chains)
    for (std::size_t i = 0; i < t->depth(); ++i)
      if (ch.pairs[i]) EXPECT_EQ(ch.pairs[i]->marker, t->level(i)->group().identity());
}

TEST(Markers, CentralMarkerLiftsCoherently) {
  auto t = tower_build("a5xz:chain=1,2,4");
  auto top = t->crossed_level(2);
  const auto& lat = top->lattice();
  const std::size_t whole = lat.class_count() - 1;
  // (A5 × Z/4, (1, 1)): the marker (x=0, k=1) sits at index 1
  auto x = CrossedElement::basis(top, top->canonical_index(lat.class_rep(whole), 1));
  auto fam = family_from_top(t, x);
  EXPECT_TRUE(fam.is_compatible());
  auto chains = crossed_family_marker_recovery(fam);
  ASSERT_EQ(chains.size(), 1u);
  for (std::size_t i = 0; i < t->depth(); ++i) {
    ASSERT_TRUE(chains[0].pairs[i]);
    EXPECT_EQ(chains[0].cosets[i].size(), 60u * 4 / t->level(i)->group().order() * 1u);
  }
}

TEST(Markers, InjectedMismatchReportsLevel) {
  auto t = tower_build("a5xz:chain=1,2,4");
  auto top = t->crossed_level(2);
  const auto& lat = top->lattice();
  auto x = CrossedElement::basis(top, top->canonical_index(lat.class_rep(lat.class_count() - 1), 1));
  auto fam = family_from_top(t, x);
  // swap the marker at level 1 for the identity
  auto l1 = t->crossed_level(1);
  fam.levels[1] = CrossedElement::basis(l1, l1->canonical_index(l1->lattice().class_rep(l1->lattice().class_count() - 1), 0));
  try {
    crossed_family_marker_recovery(fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IncoherentMarkers);
    EXPECT_NE(std::string(e.what()).find("level 1"), std::string::npos) << e.what();
  }
}

// ---------------------------------------------------------------------------
// G-sets

TEST(GSets, Validation) {
  auto g = std::make_shared<const FiniteGroup>(builtin("cyclic:2"));
  EXPECT_EQ(code_of([&] { GSet(g, 2, {0, 1, 0, 0}); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { GSet(g, 2, {1, 0, 0, 1}); }), ErrorCode::InvalidArgument);
  GSet x(g, 2, {0, 1, 1, 0});
  EXPECT_EQ(x.orbit_count(), 1u);
  auto px = make_gset(x);
  auto pt = make_gset(GSet::cosets(g, whole_group(*g)));
  EXPECT_EQ(code_of([&] { GMap(pt, px, {0}); }), ErrorCode::NotEquivariant);
  GMap f(px, pt, {0, 0});
  EXPECT_EQ(code_of([&] { compose(f, f); }), ErrorCode::TargetMismatch);
  auto other = std::make_shared<const FiniteGroup>(builtin("cyclic:3"));
  EXPECT_EQ(code_of([&] { disjoint_union(x, GSet::cosets(other, whole_group(*other))); }), ErrorCode::GroupMismatch);
}

TEST(GSets, PullbackOverPointIsProduct) {
  auto r = BurnsideRing::create(builtin("sym:3"));
  const auto& lat = r->lattice();
  auto g = lat.group_ptr();
  auto pt = make_gset(GSet::cosets(g, whole_group(*g)));
  for (std::size_t h = 0; h < lat.class_count(); ++h)
    for (std::size_t k = 0; k < lat.class_count(); ++k) {
      auto x = make_gset(GSet::cosets(g, lat.class_rep(h)));
      auto y = make_gset(GSet::cosets(g, lat.class_rep(k)));
      auto pb = pullback(GMap(x, pt, std::vector<std::size_t>(x->size(), 0)), GMap(y, pt, std::vector<std::size_t>(y->size(), 0)));
      EXPECT_EQ(orbit_types(*pb.w, lat), orbit_types(product(*x, *y), lat));
    }
}

TEST(GSets, PullbackMatchesDoubleCosets) {
  // G/H -> G/L <- G/K for H, K ≤ L: orbits are G/(H ∩ uKu⁻¹), u ∈ [H\L/K]
  for (const std::string s : {"sym:3", "sym:4", "dihedral:4", "quaternion:8"}) {
    auto r = BurnsideRing::create(builtin(s));
    const auto& lat = r->lattice();
    auto g = lat.group_ptr();
    for (std::size_t l = 0; l < lat.subgroup_count(); ++l) {
      const Subgroup& big = lat.subgroup(l);
      auto gl = make_gset(GSet::cosets(g, big));
      std::vector<std::size_t> inside;
      for (std::size_t i = 0; i < lat.subgroup_count(); ++i)
        if (lat.subgroup(i).is_subset_of(big)) inside.push_back(i);
      for (std::size_t a = 0; a < inside.size(); a += 2)
        for (std::size_t b = 0; b < inside.size(); b += 3) {
          const Subgroup& h = lat.subgroup(inside[a]);
          const Subgroup& k = lat.subgroup(inside[b]);
          auto gh = make_gset(GSet::cosets(g, h));
          auto gk = make_gset(GSet::cosets(g, k));
          std::size_t base = 0;  // the coset L itself
          auto pb = pullback(coset_map(gh, h, gl, base), coset_map(gk, k, gl, base));
          std::vector<std::size_t> expected;
          for (Elem u : double_cosets(*g, h, k))
            if (big.contains(u)) expected.push_back(lat.class_of(intersection(*g, h, conjugate(*g, k, u))));
          std::sort(expected.begin(), expected.end());
          EXPECT_EQ(orbit_types(*pb.w, lat), expected) << s;
        }
    }
  }
}

TEST(GSets, S3C2Example) {
  auto r = BurnsideRing::create(builtin("sym:3"));
  const auto& lat = r->lattice();
  auto g = lat.group_ptr();
  const Subgroup& c2 = lat.class_rep(1);
  auto x = make_gset(GSet::cosets(g, c2));
  auto pb = pullback(GMap::identity(x), GMap::identity(x));
  EXPECT_EQ(orbit_types(*pb.w, lat), (std::vector<std::size_t>{1}));
  auto pt = make_gset(GSet::cosets(g, whole_group(*g)));
  GMap to_pt(x, pt, {0, 0, 0});
  auto sq = pullback(to_pt, to_pt);
  EXPECT_EQ(orbit_types(*sq.w, lat), (std::vector<std::size_t>{0, 1}));
}

// ---------------------------------------------------------------------------
// Mackey functors

namespace {

template <class T>
void expect_mf1(const MackeyFunctor<T>& m, const SubgroupLattice& lat) {
  auto g = lat.group_ptr();
  // chain G/1 -> G/H -> G/G for each class
  auto g1 = make_gset(GSet::cosets(g, trivial_subgroup(*g)));
  auto pt = make_gset(GSet::cosets(g, whole_group(*g)));
  for (std::size_t c = 0; c < lat.class_count(); ++c) {
    const Subgroup& h = lat.class_rep(c);
    auto gh = make_gset(GSet::cosets(g, h));
    GMap f = coset_map(g1, trivial_subgroup(*g), gh, 0);
    GMap p(gh, pt, std::vector<std::size_t>(gh->size(), 0));
    GMap pf = compose(p, f);
    EXPECT_EQ(m.push(pf), m.push(p) * m.push(f)) << m.name();
    EXPECT_EQ(m.pull(pf), m.pull(f) * m.pull(p)) << m.name();
    EXPECT_EQ(m.push(GMap::identity(gh)), Matrix<T>::identity(m.dim(*gh)));
    EXPECT_EQ(m.pull(GMap::identity(gh)), Matrix<T>::identity(m.dim(*gh)));
  }
}

}  // namespace

TEST(Mackey, S3Dimensions) {
  auto r = BurnsideRing::create(builtin("sym:3"));
  const auto& lat = r->lattice();
  auto g = lat.group_ptr();
  BurnsideMackey<Rational> bm(r->lattice_ptr());
  FixedPointMackey<Rational> fp(regular_representation<Rational>(g));
  FixedQuotientMackey<Rational> fq(regular_representation<Rational>(g));
  std::vector<GSetPtr> ys;
  for (std::size_t c = 0; c < 4; ++c) ys.push_back(make_gset(GSet::cosets(g, lat.class_rep(c))));
  ys.push_back(make_gset(disjoint_union(*ys[1], *ys[0])));
  const std::vector<std::size_t> burnside_dims = {1, 2, 2, 4, 3}, v_dims = {6, 3, 2, 1, 9};
  for (std::size_t i = 0; i < ys.size(); ++i) {
    EXPECT_EQ(bm.dim(*ys[i]), burnside_dims[i]);
    EXPECT_EQ(fp.dim(*ys[i]), v_dims[i]);
    EXPECT_EQ(fq.dim(*ys[i]), v_dims[i]);
  }
}

TEST(Mackey, Functoriality) {
  for (const std::string s : {"sym:3", "dihedral:4"}) {
    auto r = BurnsideRing::create(builtin(s));
    const auto& lat = r->lattice();
    expect_mf1(BurnsideMackey<Rational>(r->lattice_ptr()), lat);
    expect_mf1(FixedPointMackey<Rational>(regular_representation<Rational>(lat.group_ptr())), lat);
    expect_mf1(FixedQuotientMackey<Rational>(regular_representation<Rational>(lat.group_ptr())), lat);
    expect_mf1(FixedPointMackey<ModP<3>>(regular_representation<ModP<3>>(lat.group_ptr())), lat);
    expect_mf1(FixedQuotientMackey<ModP<2>>(regular_representation<ModP<2>>(lat.group_ptr())), lat);
  }
}

TEST(Mackey, BurnsideFunctorAtPointIsBurnsideRing) {
  auto r = BurnsideRing::create(builtin("sym:4"));
  auto g = r->lattice().group_ptr();
  BurnsideMackey<Rational> bm(r->lattice_ptr());
  EXPECT_EQ(bm.dim(GSet::cosets(g, whole_group(*g))), r->rank());
}

TEST(Mackey, Representations) {
  auto g = std::make_shared<const FiniteGroup>(builtin("sym:3"));
  SubgroupLattice lat(g);
  EXPECT_NO_THROW(regular_representation<Rational>(g).validate());
  EXPECT_NO_THROW(sign_representation<Rational>(g, lat.class_rep(2)).validate());
  EXPECT_THROW(sign_representation<Rational>(g, lat.class_rep(1)), Error);
  auto bad = trivial_representation<Rational>(g);
  bad.rho[1] = Rational(2) * Matrix<Rational>::identity(1);
  EXPECT_THROW(bad.validate(), Error);
  EXPECT_EQ(code_of([] { coerce<ModP<3>>(Rational(1, 3)); }), ErrorCode::CoefficientMismatch);
  EXPECT_EQ(coerce<ModP<5>>(Rational(1, 3)), ModP<5>(2));
}

TEST(Eta, LawsOnC4) {
  auto r = BurnsideRing::create(builtin("cyclic:4"));
  auto c = CrossedRing::create(r);
  const auto& lat = r->lattice();
  auto g = lat.group_ptr();
  FixedPointMackey<Rational> fp(regular_representation<Rational>(g));
  BurnsideMackey<Rational> bm(r->lattice_ptr());
  std::vector<GSetPtr> ys;
  for (std::size_t k = 0; k < lat.class_count(); ++k) ys.push_back(make_gset(GSet::cosets(g, lat.class_rep(k))));
  for (const MackeyFunctor<Rational>* m : {static_cast<const MackeyFunctor<Rational>*>(&fp), static_cast<const MackeyFunctor<Rational>*>(&bm)})
    for (const auto& y : ys) {
      EXPECT_EQ(crossed_to_endomorphism(CrossedElement::one(c), *m, y), Matrix<Rational>::identity(m->dim(*y)));
      for (std::size_t i = 0; i < c->rank(); i += 2)
        for (std::size_t j = 0; j < c->rank(); j += 3) {
          auto xi = CrossedElement::basis(c, i), xj = CrossedElement::basis(c, j);
          auto ei = crossed_to_endomorphism(xi, *m, y), ej = crossed_to_endomorphism(xj, *m, y);
          EXPECT_EQ(crossed_to_endomorphism(xi + xj, *m, y), ei + ej);
          EXPECT_EQ(crossed_to_endomorphism(xi * xj, *m, y), ei * ej) << m->name();
        }
    }
}

TEST(Eta, NaturalityOnS3) {
  auto r = BurnsideRing::create(builtin("sym:3"));
  auto c = CrossedRing::create(r);
  const auto& lat = r->lattice();
  auto g = lat.group_ptr();
  FixedQuotientMackey<Rational> fq(regular_representation<Rational>(g));
  auto y1 = make_gset(GSet::cosets(g, trivial_subgroup(*g)));
  auto y2 = make_gset(GSet::cosets(g, lat.class_rep(1)));
  GMap f = coset_map(y1, trivial_subgroup(*g), y2, 0);
  for (std::size_t i = 0; i < c->rank(); ++i) {
    auto x = CrossedElement::basis(c, i);
    auto e1 = crossed_to_endomorphism(x, fq, y1), e2 = crossed_to_endomorphism(x, fq, y2);
    EXPECT_EQ(fq.push(f) * e1, e2 * fq.push(f));
    EXPECT_EQ(fq.pull(f) * e2, e1 * fq.pull(f));
  }
}
