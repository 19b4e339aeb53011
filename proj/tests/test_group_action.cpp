#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cubulate/errors.hpp"
#include "cubulate/search.hpp"

using namespace cubulate;

namespace {

ActionContext dihedral_ctx(int radius = 6) {
    GroupModel m = GroupModel::builtin("dihedral");
    ContextOptions opts = ContextOptions::from(m.horizons());
    opts.radius = radius;
    return ActionContext::over_group(m, opts);
}

ActionContext abc_ctx(int radius = 4) {
    GroupModel m = GroupModel::builtin("abc");
    ContextOptions opts = ContextOptions::from(m.horizons());
    opts.radius = radius;
    return ActionContext::over_group(m, opts);
}

// the 2x2 square with the coordinate swap, as a permutation model
GroupModel square_swap() {
    std::vector<std::string> corners{"00", "01", "10", "11"};
    Perm swap{0, 2, 1, 3};
    std::vector<GroupModel::WallDatum> walls(2);
    walls[0].label = "W0";
    walls[0].positive = {"00", "01"};
    walls[0].negative = {"10", "11"};
    walls[1].label = "W1";
    walls[1].positive = {"00", "10"};
    walls[1].negative = {"01", "11"};
    return GroupModel::permutation(PermutationModel(corners, {{"t", swap}}, "square-swap"),
                                   {{"K", {"t"}}}, walls);
}

}  // namespace

TEST_CASE("left action on points") {
    GroupModel m = GroupModel::builtin("dihedral");
    ActionContext ctx = dihedral_ctx();
    // identity acts trivially on every object
    for (uint32_t p = 0; p < ctx.point_count(); ++p)
        CHECK(ctx.act_point(m.identity(), p) == p);
    // act(a, "b") = "ab"
    auto p_b = ctx.point_index(m.parse("b"));
    REQUIRE(p_b);
    auto img = ctx.act_point(m.parse("a"), *p_b);
    REQUIRE(img);
    CHECK(ctx.point_name(*img) == "ab");
    // functoriality act(gh, x) = act(g, act(h, x)) where defined
    GroupElement g = m.parse("ab");
    GroupElement h = m.parse("ba");
    for (uint32_t p = 0; p < ctx.point_count(); ++p) {
        auto inner = ctx.act_point(h, p);
        if (!inner) continue;
        auto two_step = ctx.act_point(g, *inner);
        auto one_step = ctx.act_point(m.mul(g, h), p);
        if (two_step && one_step) CHECK(*two_step == *one_step);
    }
}

TEST_CASE("action commutes with principal orientations") {
    std::mt19937 rng(17);
    for (ActionContext ctx : {dihedral_ctx(), abc_ctx()}) {
        const GroupModel& m = ctx.model();
        const Wallspace& ws = ctx.wallspace();
        int checked = 0;
        for (int trial = 0; trial < 400 && checked < 50; ++trial) {
            uint32_t p = rng() % ctx.point_count();
            uint32_t gi = rng() % ctx.point_count();
            const GroupElement& g = ctx.point_element(gi);
            auto gp = ctx.act_point(g, p);
            if (!gp) continue;
            auto vp = ctx.complex().vertex_index(principal_orientation(ws, p));
            auto vgp = ctx.complex().vertex_index(principal_orientation(ws, *gp));
            REQUIRE(vp);
            REQUIRE(vgp);
            // boundary principal vertices hit tie-breaks of walls beyond
            // the truncation; equivariance is a claim about the interior
            if (ctx.vertex_depth(*vp) < ctx.options().margin) continue;
            auto img = ctx.act_vertex(g, *vp);
            if (img.defined.none()) continue;
            // defined coordinates agree with the principal vertex of g p
            Orientation mismatch =
                (img.bits ^ ctx.complex().vertex(*vgp)) & img.defined;
            CHECK(mismatch.none());
            if (img.vertex) CHECK(*img.vertex == *vgp);
            ++checked;
        }
        CHECK(checked >= 50);
    }
}

TEST_CASE("fixed point search certifies finite factors") {
    ActionContext ctx = dihedral_ctx();
    const GroupModel& m = ctx.model();

    // trivial group: any vertex works, the deepest is certified
    FixedPointOutcome trivial = fixed_point_search(ctx, {});
    REQUIRE(trivial.certificate);
    CHECK(verify_ellipticity(ctx, *trivial.certificate));

    // the finite factor fixes a vertex
    FixedPointOutcome fa = fixed_point_search(ctx, {m.parse("a")});
    REQUIRE(fa.certificate);
    CHECK(verify_ellipticity(ctx, *fa.certificate));

    // <ab> escapes along the line
    FixedPointOutcome fab = fixed_point_search(ctx, {m.parse("ab")});
    CHECK_FALSE(fab.certificate);
}

TEST_CASE("a single-wall permutation dual has a fixed side") {
    GroupModel m = square_swap();
    // one wall only: restrict the model to W0+W1 swapped family; the
    // two-vertex case comes from a one-wall model
    std::vector<GroupModel::WallDatum> walls(1);
    walls[0].label = "W";
    walls[0].positive = {"00", "01"};
    walls[0].negative = {"10", "11"};
    GroupModel one = GroupModel::permutation(
        PermutationModel({"00", "01", "10", "11"}, {{"t", Perm{1, 0, 3, 2}}}, "mirror"),
        {{"K", {"t"}}}, walls);
    // t swaps the two points inside each side, so the wall is invariant
    ContextOptions opts;
    ActionContext ctx = ActionContext::over_group(one, opts);
    CHECK(ctx.complex().vertex_count() == 2);
    FixedPointOutcome fixed = fixed_point_search(ctx, {one.parse("t")});
    REQUIRE(fixed.certificate);
    CHECK(fixed.certificate->excused_walls == 0);
}

TEST_CASE("skewer search on the dihedral line") {
    ActionContext ctx = dihedral_ctx();
    const GroupModel& m = ctx.model();
    GroupElement ab = m.parse("ab");

    SkewerOutcome res = skewer_search(ctx, ab, 6);
    REQUIRE(res.certificate);
    CHECK(res.certificate->exponent <= 2);
    CHECK(verify_skewer(ctx, *res.certificate));

    // independent nesting check: recompute the image of the certified side
    // with raw group arithmetic
    const SkewerCertificate& c = *res.certificate;
    const PointSet& side = ctx.wallspace().wall(c.wall).side(c.side);
    GroupElement power = m.power(ab, c.exponent);
    for (auto p = side.find_first(); p != PointSet::npos; p = side.find_next(p)) {
        GroupElement moved = m.mul(power, ctx.point_element(static_cast<uint32_t>(p)));
        auto idx = ctx.point_index(moved);
        if (idx) CHECK(side.test(*idx));
    }

    // torsion elements short-circuit
    CHECK(skewer_search(ctx, m.parse("a"), 6).torsion());
    CHECK(skewer_search(ctx, m.parse("bab"), 6).torsion());

    // the translation generator of the Z subgroup skewers with n = 1
    SkewerOutcome z = skewer_search(ctx, ab, 1);
    REQUIRE(z.certificate);
    CHECK(z.certificate->exponent == 1);
}

TEST_CASE("tampered certificates fail replay") {
    ActionContext ctx = dihedral_ctx();
    GroupElement ab = ctx.model().parse("ab");
    SkewerOutcome res = skewer_search(ctx, ab, 6);
    REQUIRE(res.certificate);
    SkewerCertificate bad = *res.certificate;
    bad.side = opposite(bad.side);
    CHECK_FALSE(verify_skewer(ctx, bad));
    SkewerCertificate bad2 = *res.certificate;
    bad2.element = ctx.model().parse("a");
    CHECK_FALSE(verify_skewer(ctx, bad2));
}

TEST_CASE("skewering yields axis separation with the identity conjugator") {
    ActionContext ctx = dihedral_ctx();
    const GroupModel& m = ctx.model();
    GroupElement ab = m.parse("ab");
    SkewerOutcome sk = skewer_search(ctx, ab, 6);
    REQUIRE(sk.certificate);

    AxisSepBounds bounds{6, 4};
    AxisSepOutcome ax = axis_separation_search(
        ctx, ab, {ctx.family().at(sk.certificate->wall)}, bounds);
    REQUIRE(ax.certificate);
    CHECK(m.is_identity(ax.certificate->conjugator));
    CHECK(verify_axis_sep(ctx, *ax.certificate));

    // the trivial-subgroup wall datum also succeeds
    AxisSepOutcome ax2 = axis_separation_search(ctx, ab, {{0, m.identity()}}, bounds);
    REQUIRE(ax2.certificate);

    // torsion never separates an axis
    CHECK(axis_separation_search(ctx, m.parse("a"), {{0, m.identity()}}, bounds).torsion());
}

TEST_CASE("deepness on the dihedral wall") {
    ActionContext ctx = dihedral_ctx();
    const GroupModel& m = ctx.model();
    // the Z subgroup is deep on both sides of the trivial-subgroup wall
    for (Sign s : {Sign::plus, Sign::minus}) {
        DeepnessOutcome d = deepness(ctx, {m.parse("ab")}, {0, s}, 6);
        CHECK(d.verdict == Depth::deep);
        CHECK(verify_deepness(ctx, 0, s, 6, d.certificate));
    }
    // a finite factor is shallow: its orbit exhausts
    DeepnessOutcome shallow = deepness(ctx, {m.parse("a")}, {0, Sign::plus}, 6);
    CHECK(shallow.verdict == Depth::shallow);
    CHECK(shallow.subgroup_closed);
    CHECK_THROWS_AS(deepness(ctx, {m.parse("ab")}, {0, Sign::plus}, 1), input_error);
}

TEST_CASE("deepness of the peripheral A*B inside the three-factor product") {
    ActionContext ctx = abc_ctx();
    const GroupModel& m = ctx.model();
    std::vector<GroupElement> ab_gens{m.parse("a"), m.parse("b")};
    // wall 0 is K1 (first syllable in A), wall 1 is K2 (first syllable in A*B)
    CHECK(ctx.wall_label(0) == "K1");
    CHECK(ctx.wall_label(1) == "K2");
    CHECK(deepness(ctx, ab_gens, {0, Sign::plus}, 4).verdict == Depth::deep);
    CHECK(deepness(ctx, ab_gens, {0, Sign::minus}, 4).verdict == Depth::deep);
    // no element of A*B starts with a C syllable
    CHECK(deepness(ctx, ab_gens, {1, Sign::minus}, 4).verdict == Depth::shallow);
}

TEST_CASE("essential walls: one orbit for the dihedral Z subgroup") {
    ActionContext ctx = dihedral_ctx();
    auto reps = essential_wall_search(ctx, {ctx.model().parse("ab")}, 6);
    REQUIRE(reps.size() == 1);
    CHECK(reps[0].wall == 0);
    CHECK(reps[0].plus_side.verdict == Depth::deep);
    CHECK(reps[0].minus_side.verdict == Depth::deep);
}

TEST_CASE("essential walls of the peripherals in the three-factor product") {
    ActionContext ctx = abc_ctx();
    const GroupModel& m = ctx.model();
    // the A*B peripheral: K1 cuts essentially, K2 does not
    auto ab_reps = essential_wall_search(ctx, {m.parse("a"), m.parse("b")}, 4);
    REQUIRE(ab_reps.size() == 1);
    CHECK(ctx.wall_label(ab_reps[0].wall) == "K1");
    // an elliptic peripheral has no essential walls
    auto c_reps = essential_wall_search(ctx, {m.parse("c")}, 4);
    CHECK(c_reps.empty());
}

TEST_CASE("pointwise fixed geodesics") {
    GroupModel m = square_swap();
    ContextOptions opts;
    ActionContext ctx = ActionContext::over_group(m, opts);
    REQUIRE(ctx.complex().vertex_count() == 4);
    // vertices 0 = (++) and 3 = (--) are the swap-fixed corners
    GroupElement t = m.parse("t");
    {
        uint32_t excused = 0;
        (void)excused;
        auto img0 = ctx.act_vertex(t, 0);
        REQUIRE(img0.vertex);
        CHECK(*img0.vertex == 0);
    }
    FixedGeodesic fg = pointwise_fixed_geodesic(ctx, {t}, 0, 3);
    CHECK(fg.vertices.size() == 3);
    CHECK(fg.subgroup_order == 2);
    CHECK(fg.pointwise_stabilizer.size() == 1);  // only the identity fixes a midpoint
    CHECK(fg.index == 2);

    // v1 = v2: trivial geodesic, the whole group stabilizes it
    FixedGeodesic same = pointwise_fixed_geodesic(ctx, {t}, 0, 0);
    CHECK(same.vertices.size() == 1);
    CHECK(same.index == 1);

    // the trivial subgroup has index one on any geodesic
    FixedGeodesic none = pointwise_fixed_geodesic(ctx, {}, 1, 2);
    CHECK(none.index == 1);

    // a generator that moves an endpoint is a precondition error
    CHECK_THROWS_AS(pointwise_fixed_geodesic(ctx, {t}, 1, 2), input_error);
}

TEST_CASE("torsion never skewers across builtin models") {
    for (const std::string& name : GroupModel::builtin_names()) {
        GroupModel m = GroupModel::builtin(name);
        ContextOptions opts = ContextOptions::from(m.horizons());
        opts.radius = std::min(opts.radius, 4);
        ActionContext ctx = ActionContext::over_group(m, opts);
        // all short elements of finite order
        std::vector<GroupElement> elements;
        if (m.kind() == ModelKind::free_product) {
            for (uint32_t p = 0; p < ctx.point_count(); ++p)
                elements.push_back(ctx.point_element(p));
        } else {
            for (const Perm& p : m.pm().elements()) {
                GroupElement e;
                e.perm = p;
                elements.push_back(e);
            }
        }
        for (const GroupElement& g : elements) {
            uint64_t ord = m.order(g);
            if (ord == 0 || ord == 1) continue;
            CAPTURE(name);
            CAPTURE(m.display(g));
            SkewerOutcome res = skewer_search(ctx, g, 10);
            CHECK_FALSE(res.certificate);
            CHECK(res.torsion());
        }
    }
}
