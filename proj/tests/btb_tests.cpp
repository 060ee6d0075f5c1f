// Unit tests with frozen example values, plus the randomized property suites.
// The frozen numbers were computed independently of the library (tree counts,
// subspace counts over F_p, hand-evaluated norms and charts) and pin the
// conventions: valuations of class representatives, minimum-zero coordinate
// normalization, and the sign in the norm pairing.

#include <catch2/catch_amalgamated.hpp>

#include "btb/convergence.hpp"
#include "btb/group.hpp"
#include "btb/json_io.hpp"
#include "btb/lattice.hpp"
#include "btb/neighborhood.hpp"
#include "btb/norm_point.hpp"
#include "btb/sampling.hpp"
#include "btb/selftest.hpp"

using namespace btb;

TEST_CASE("extended values order, add, and parse") {
  ExtVal ni = ExtVal::neg_inf(), pi = ExtVal::pos_inf(), two(Rat(2));
  CHECK(ni < two);
  CHECK(two < pi);
  CHECK(ni < pi);
  CHECK((two + two).finite() == 4);
  CHECK((ni + two).is_neg_inf());
  CHECK((pi + two).is_pos_inf());
  CHECK((ni + ni).is_neg_inf());
  CHECK_THROWS_AS(ni + pi, error);
  CHECK(ExtVal::parse("-inf").is_neg_inf());
  CHECK(ExtVal::parse("inf").is_pos_inf());
  CHECK(ExtVal::parse("-7/3").finite() == Rat(-7) / 3);
  CHECK(two.str() == "2");
  CHECK(pi.str() == "inf");
}

TEST_CASE("valuations") {
  CHECK(valuation(Rat(18), 3) == ExtVal(Rat(2)));
  CHECK(valuation(Rat(5) / 9, 3) == ExtVal(Rat(-2)));
  CHECK(valuation(Rat(0), 3).is_pos_inf());
  CHECK(is_local_unit(Rat(7) / 5, 3));
  CHECK(!is_local_integer(Rat(1) / 3, 3));
}

TEST_CASE("class representatives are canonical") {
  // Scaling generators by powers of p or mixing them does not change the class.
  RatMatrix a(2, 2);
  a.at(0, 0) = 9;
  a.at(1, 1) = 1;
  LatticeClass L = LatticeClass::make(2, 3, a);
  // Columns (18,1) and (9,1) generate the same lattice: their differences
  // recover (9,0) and (0,1).
  RatMatrix b(2, 2);
  b.at(0, 0) = 18;
  b.at(1, 0) = 1;
  b.at(0, 1) = 9;
  b.at(1, 1) = 1;
  CHECK(L == LatticeClass::make(2, 3, b));
  CHECK(same_span(L, LatticeClass::standard(2, 3)));
  CHECK(L != LatticeClass::standard(2, 3));
  CHECK(L == LatticeClass::make(2, 3, a.scaled(Rat(1) / 3)));
}

TEST_CASE("tree ball sizes match the closed count") {
  // 1 + (p+1)(p^r - 1)/(p - 1) vertices in the radius-r ball of the
  // (p+1)-regular tree.
  CHECK(ball(LatticeClass::standard(2, 3), 2).vertices.size() == 17);
  CHECK(ball(LatticeClass::standard(2, 2), 3).vertices.size() == 22);
  CHECK(ball(LatticeClass::standard(2, 3), 3).vertices.size() == 53);
  CHECK(ball(LatticeClass::standard(2, 5), 3).vertices.size() == 187);
  BuildingGraph g = ball(LatticeClass::standard(2, 2), 3);
  CHECK(g.edges.size() == g.vertices.size() - 1);  // balls in trees are trees
}

TEST_CASE("neighbor counts are sums of Gaussian binomials") {
  CHECK(gaussian_binomial(3, 1, 2) == 7);
  CHECK(gaussian_binomial(3, 2, 2) == 7);
  CHECK(gaussian_binomial(4, 2, 3) == 130);
  CHECK(neighbors(LatticeClass::standard(3, 2)).size() == 14);
  CHECK(neighbors(LatticeClass::standard(2, 5)).size() == 6);
  CHECK_THROWS_AS(neighbors(LatticeClass::diagonal(3, 2, {1}, {0})), precondition_error);
}

TEST_CASE("adjacency and simplices") {
  LatticeClass L = LatticeClass::standard(2, 3);
  LatticeClass M = LatticeClass::diagonal(2, 3, {0, 1}, {1, 0});
  CHECK(adjacent(L, M));
  CHECK(!adjacent(L, L));
  CHECK(is_simplex({L, M}));
  CHECK(is_simplex({L}));
  LatticeClass far = LatticeClass::diagonal(2, 3, {0, 1}, {2, 0});
  CHECK(!adjacent(L, far));
  CHECK(!is_simplex({L, M, far}));
  std::vector<long> rp = rel_pos(L, far);
  CHECK(rp == std::vector<long>{0, 2});
}

TEST_CASE("apartment coordinates of diagonal classes") {
  // Exponents k give coordinates -k, shifted so the minimum over the support
  // is zero.
  ApartmentPoint x = apartment_coordinates(LatticeClass::diagonal(3, 3, {0, 1, 2}, {1, 0, 0}));
  CHECK(x.support() == std::vector<int>{0, 1, 2});
  CHECK(x.coord(0) == 0);
  CHECK(x.coord(1) == 1);
  CHECK(x.coord(2) == 1);
  ApartmentPoint y = apartment_coordinates(LatticeClass::diagonal(3, 3, {0, 2}, {2, 0}));
  CHECK(y.support() == std::vector<int>{0, 2});
  CHECK(y.coord(0) == 0);
  CHECK(y.coord(2) == 2);
  CHECK(!y.has(1));
  CHECK(diagonal_class(y, 3) == LatticeClass::diagonal(3, 3, {0, 2}, {2, 0}));
  // Non-diagonal classes have no apartment coordinates in this frame.
  RatMatrix m(2, 2);
  m.at(0, 0) = 1;
  m.at(1, 0) = 1;
  m.at(1, 1) = 3;
  CHECK_THROWS_AS(apartment_coordinates(LatticeClass::make(2, 3, m)), precondition_error);
}

TEST_CASE("filtration level closed form") {
  // Support {0,1} inside n=3; levels by index membership.
  ApartmentPoint x = ApartmentPoint::make(3, {0, 1}, {Rat(2), Rat(0)});
  CHECK(filtration_level(Root::make(0, 2, 3), x).is_neg_inf());   // j outside
  CHECK(filtration_level(Root::make(2, 0, 3), x).is_pos_inf());   // i outside only
  CHECK(filtration_level(Root::make(0, 1, 3), x) == ExtVal(Rat(-2)));
  CHECK(filtration_level(Root::make(1, 0, 3), x) == ExtVal(Rat(2)));
  CHECK(filtration_level(Root::make(2, 1, 3), x).is_pos_inf());
  ApartmentPoint empty_side = ApartmentPoint::make(3, {2}, {Rat(0)});
  CHECK(filtration_level(Root::make(0, 1, 3), empty_side).is_neg_inf());
}

TEST_CASE("set level is the supremum over the set") {
  ApartmentPoint a = ApartmentPoint::make(2, {0, 1}, {Rat(0), Rat(3)});
  ApartmentPoint b = ApartmentPoint::make(2, {0, 1}, {Rat(1), Rat(0)});
  Root r = Root::make(0, 1, 2);
  CHECK(filtration_level_set(r, {a, b}) == ExtVal(Rat(3)));
  ApartmentPoint c = ApartmentPoint::make(2, {1}, {Rat(0)});
  CHECK(filtration_level_set(r, {a, c}).is_pos_inf());
  CHECK_THROWS_AS(filtration_level_set(r, {}), precondition_error);
}

TEST_CASE("corners and charts") {
  ApartmentPoint x = ApartmentPoint::make(3, {0, 1}, {Rat(2), Rat(0)});
  CHECK(in_corner(0, x));
  CHECK(!in_corner(1, x));
  CHECK(!in_corner(2, x));
  std::vector<ExtVal> chart = corner_chart(0, x);
  REQUIRE(chart.size() == 2);
  CHECK(chart[0] == ExtVal(Rat(2)));
  CHECK(chart[1].is_pos_inf());
  CHECK(corner_chart_inv(0, 3, chart) == x);
  CHECK_THROWS_AS(corner_chart(1, x), precondition_error);
  // Ties put the point into several corners; the charts stay consistent.
  ApartmentPoint tie = ApartmentPoint::make(2, {0, 1}, {Rat(0), Rat(0)});
  CHECK(in_corner(0, tie));
  CHECK(in_corner(1, tie));
}

TEST_CASE("contraction endpoints and a midpoint value") {
  ApartmentPoint x = ApartmentPoint::make(2, {0}, {Rat(0)});  // boundary point
  CHECK(contract(x, Rat(0)) == x);
  CHECK(contract(x, Rat(1)) == ApartmentPoint::origin(2));
  // At t = 1/2 the infinite chart value becomes (1-t)/t = 1, so the image is
  // the interior point with x_0 - x_1 = 1.
  ApartmentPoint mid = contract(x, Rat(1) / 2);
  CHECK(mid.is_interior());
  CHECK(mid.coord(0) - mid.coord(1) == 1);
  CHECK_THROWS_AS(contract(x, Rat(2)), precondition_error);
}

TEST_CASE("ray and sequence limits") {
  RaySpec r = RaySpec::make(ApartmentPoint::interior(3, {Rat(1), Rat(0), Rat(2)}),
                            {Rat(0), Rat(1), Rat(1)});
  ApartmentPoint lim = ray_limit(r);
  CHECK(lim.support() == std::vector<int>{0});
  LatticeSeqSpec s = LatticeSeqSpec::make(3, 3, {1, 0, -2}, {0, 1, 1});
  LatticeClass limc = lattice_seq_limit(s);
  CHECK(limc == LatticeClass::diagonal(3, 3, {0}, {0}));
  CHECK(limc == lattice_seq_limit_stabilized(s));
  CHECK(apartment_coordinates(limc) == ray_limit(coordinate_ray(s)));
}

TEST_CASE("neighborhood membership and tail bounds") {
  ApartmentPoint lim = ApartmentPoint::make(2, {0}, {Rat(0)});
  std::vector<NeighborhoodSpec> specs = fundamental_neighborhoods(lim, 3);
  REQUIRE(specs.size() == 3);
  CHECK(specs[0].kind() == NeighborhoodSpec::Kind::corner);
  RaySpec r = RaySpec::make(ApartmentPoint::interior(2, {Rat(0), Rat(0)}), {Rat(0), Rat(1)});
  for (const NeighborhoodSpec& spec : specs) {
    std::optional<long> k0 = ray_tail_bound(r, spec);
    REQUIRE(k0.has_value());
    CHECK(nbhd_contains(spec, ray_point(r, Rat(*k0))));
    if (*k0 > 0) CHECK(!nbhd_contains(spec, ray_point(r, Rat(*k0 - 1))));
  }
  // A ray escaping in a different coordinate never enters the corner at 0.
  RaySpec wrong = RaySpec::make(ApartmentPoint::interior(2, {Rat(0), Rat(0)}), {Rat(1), Rat(0)});
  CHECK(!ray_tail_bound(wrong, specs[2]).has_value());
}

TEST_CASE("norm values for weighted standard bases") {
  // Basis (v1, v2), weights (2, 0) at p = 3: value of a vector is the
  // minimum of vval(c_j) - w_j over its coordinates.
  NormPoint nx = NormPoint::make(3, 2, RatMatrix::identity(2), {Rat(2), Rat(0)});
  RatMatrix v1(2, 1), mix(2, 1);
  v1.at(0, 0) = 1;
  mix.at(0, 0) = 3;
  mix.at(1, 0) = 1;
  CHECK(np_eval(nx, v1) == ExtVal(Rat(-2)));
  CHECK(np_eval(nx, mix) == ExtVal(Rat(-1)));
  RatMatrix zero(2, 1);
  CHECK(np_eval(nx, zero).is_pos_inf());
  // Same norm written in a different adapted basis.
  RatMatrix b2(2, 2);
  b2.at(0, 0) = 9;
  b2.at(1, 1) = 1;
  CHECK(np_equal(nx, NormPoint::make(3, 2, b2, {Rat(0), Rat(0)})));
  CHECK(!np_equal(nx, NormPoint::make(3, 2, RatMatrix::identity(2), {Rat(1), Rat(0)})));
}

TEST_CASE("norm points embed lattice classes and apartment points") {
  LatticeClass L = LatticeClass::diagonal(2, 3, {0, 1}, {2, 0});
  NormPoint nx = norm_from_lattice(L);
  CHECK(norm_to_lattice(nx) == L);
  ApartmentPoint x = ApartmentPoint::make(3, {0, 2}, {Rat(1) / 2, Rat(0)});
  NormPoint ny = norm_from_apartment(x, 5);
  CHECK(norm_to_apartment(ny) == x);
  CHECK(ny.rank() == 2);
  CHECK_THROWS_AS(norm_to_lattice(ny), precondition_error);  // weight 1/2
  RatMatrix outside(3, 1);
  outside.at(1, 0) = 1;
  CHECK_THROWS_AS(np_eval(ny, outside), precondition_error);
}

TEST_CASE("root group elements and conjugation") {
  // n = diag(p^1, p^0) conjugates u_(1,2)(w) to u_(1,2)(p w).
  MonomialElement m = MonomialElement::make({0, 1}, {1, 0});
  RootGroupElement u = RootGroupElement::make(0, 1, Rat(5) / 2);
  RootGroupElement cu = conjugate_root_group(m, u, 3);
  CHECK(cu.i == 0);
  CHECK(cu.j == 1);
  CHECK(cu.omega == Rat(15) / 2);
  // A transposition also swaps the root indices.
  MonomialElement w = MonomialElement::make({1, 0}, {0, 0});
  RootGroupElement su = conjugate_root_group(w, u, 3);
  CHECK(su.i == 1);
  CHECK(su.j == 0);
  CHECK(su.omega == Rat(5) / 2);
  CHECK(psi(u, 2).is_finite());
  CHECK(psi(RootGroupElement::make(0, 1, Rat(0)), 2).is_pos_inf());
}

TEST_CASE("level membership matches norm stabilization at the threshold") {
  ApartmentPoint x = ApartmentPoint::make(2, {0, 1}, {Rat(0), Rat(2)});
  Root a = Root::make(0, 1, 2);
  REQUIRE(filtration_level(a, x) == ExtVal(Rat(2)));
  NormPoint nx = norm_from_apartment(x, 3);
  for (long e : {1L, 2L, 3L}) {
    RootGroupElement u = RootGroupElement::make(0, 1, p_power(3, e));
    bool member = in_filtration_group(u, x, 3);
    CHECK(member == (e >= 2));
    CHECK(member == stabilizes(ProjElement::make(u.to_matrix(2)), nx));
  }
}

TEST_CASE("group actions on classes and subspace restriction") {
  LatticeClass L = LatticeClass::standard(3, 2);
  ProjElement g = ProjElement::make(RatMatrix::identity(3).scaled(Rat(7)));
  CHECK(act(g, L) == L);  // scalars act trivially
  RatMatrix t(3, 3);
  t.at(0, 0) = 1;
  t.at(0, 2) = 5;
  t.at(1, 1) = 2;
  t.at(2, 2) = 1;
  ProjElement h = ProjElement::make(t);
  CHECK(preserves_subspace(h, {0, 1}));
  CHECK(!preserves_subspace(h, {1, 2}));
  ProjElement rh = restrict_element(h, {0, 1});
  CHECK(rh.n() == 2);
  CHECK(restrict_element(h * h, {0, 1}) == rh * rh);
}

TEST_CASE("support maxima") {
  ApartmentPoint a = ApartmentPoint::make(3, {0, 1}, {Rat(0), Rat(1)});
  ApartmentPoint b = ApartmentPoint::make(3, {1, 2}, {Rat(0), Rat(0)});
  CHECK(support_has_maximum({a, a}));
  CHECK(!support_has_maximum({a, b}));  // union {0,1,2} is attained by neither
  ApartmentPoint full = ApartmentPoint::origin(3);
  CHECK(support_has_maximum({a, b, full}));
}

TEST_CASE("common frames on a boundary pair") {
  LatticeClass x = LatticeClass::diagonal(3, 3, {0, 2}, {1, 0});
  LatticeClass y = LatticeClass::diagonal(3, 3, {0, 1, 2}, {0, 2, 1});
  CommonFrame f = common_frame(x, y);
  CHECK(f.subset.size() == 2);
  CHECK(f.full_exponents == std::vector<long>(3, 0));
  CHECK(frame_matches(f, x, y));
}

TEST_CASE("json round trips and hashing") {
  LatticeClass L = LatticeClass::diagonal(3, 3, {0, 2}, {1, 0});
  CHECK(lattice_from_json(lattice_json(L)) == L);
  ApartmentPoint x = ApartmentPoint::make(3, {0, 2}, {Rat(0), Rat(5) / 2});
  CHECK(point_from_json(point_json(x)) == x);
  json px = point_json(x);
  CHECK(px["support"] == json::array({1, 3}));  // indices are 1-based on the wire
  NormPoint nx = norm_from_apartment(x, 3);
  CHECK(np_equal(norm_from_json(norm_json(nx)), nx));
  RaySpec r = RaySpec::make(ApartmentPoint::interior(2, {Rat(0), Rat(1)}), {Rat(0), Rat(2)});
  json rj = ray_json(r);
  RaySpec r2 = ray_from_json(rj);
  CHECK(r2.base == r.base);
  CHECK(r2.direction == r.direction);
  CHECK(canonical_hash(lattice_json(L)) == canonical_hash(lattice_json(L)));
  CHECK(canonical_hash(lattice_json(L)).size() == 12);
  CHECK_THROWS_AS(point_from_json(json::parse("{\"support\":[1]}")), parse_error);
}

TEST_CASE("dot export shape") {
  BuildingGraph g = ball(LatticeClass::standard(2, 2), 1);
  auto [dot, sidecar] = graph_dot(g);
  CHECK(dot.find("graph building_ball {") == 0);
  CHECK(sidecar.size() == g.vertices.size());
  for (std::size_t e = 0; e < g.edges.size(); ++e) CHECK(dot.find(" -- ") != std::string::npos);
}

TEST_CASE("property suites pass for p = 2 and p = 3") {
  for (long p : {2L, 3L}) {
    for (const SuiteResult& s : run_selftests(p, 0xB7B5EEDu + std::uint64_t(p))) {
      INFO(s.name << " (p = " << p << "): " << s.detail);
      CHECK(s.pass);
    }
  }
}
