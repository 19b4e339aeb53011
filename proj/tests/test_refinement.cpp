#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cubulate/errors.hpp"
#include "cubulate/refinement.hpp"

using namespace cubulate;

namespace {

ActionContext group_ctx(const GroupModel& m, int radius) {
    ContextOptions opts = ContextOptions::from(m.horizons());
    opts.radius = radius;
    return ActionContext::over_group(m, opts);
}

std::vector<std::string> entry_labels(const RefineReport& r) {
    std::vector<std::string> labels;
    for (const auto& e : r.entries) labels.push_back(e.label);
    std::sort(labels.begin(), labels.end());
    return labels;
}

}  // namespace

TEST_CASE("peripheral dual of the dihedral group is a path") {
    GroupModel m = GroupModel::builtin("dihedral");
    ActionContext X = group_ctx(m, 6);
    std::vector<GroupElement> gens{m.parse("a"), m.parse("b")};
    auto essential = essential_wall_search(X, gens, 6);
    REQUIRE(essential.size() == 1);
    ContextOptions opts = ContextOptions::from(m.horizons());
    PeripheralDual dual = build_peripheral_dual(m, gens, essential, opts);
    // a truncated line: as many edges as vertices minus one, no squares
    CHECK(dual.ctx->complex().vertex_count() ==
          dual.ctx->complex().edges().size() + 1);
    CHECK(dual.ctx->complex().dimension() == 1);
    CHECK(dual.geometry.bottleneck == 0);
    CHECK(dual.geometry.hyperbolicity.twice == 0);
    CHECK(dual.hyperplane_edge_bound_ok);
    // one edge orbit: the group is transitive on the wall translates
    CHECK(dual.edge_orbits == 1);

    CHECK_THROWS_AS(build_peripheral_dual(m, gens, {}, opts), input_error);
}

TEST_CASE("vertex stabilizers on the dihedral line are the two factors") {
    GroupModel m = GroupModel::builtin("dihedral");
    ActionContext X = group_ctx(m, 6);
    std::vector<GroupElement> gens{m.parse("a"), m.parse("b")};
    auto essential = essential_wall_search(X, gens, 6);
    PeripheralDual dual =
        build_peripheral_dual(m, gens, essential, ContextOptions::from(m.horizons()));
    auto stabs = vertex_stabilizers(*dual.ctx, gens);

    std::multiset<uint64_t> interior_orders;
    for (const auto& s : stabs) {
        if (!s.interior) continue;
        if (s.gens.empty()) continue;
        REQUIRE(s.finite);
        interior_orders.insert(s.order);
    }
    // exactly the two factor classes appear
    CHECK(interior_orders == std::multiset<uint64_t>{2, 2});

    // the end gaps are non-interior truncation artifacts
    bool saw_boundary = false;
    for (const auto& s : stabs)
        if (!s.interior) saw_boundary = true;
    CHECK(saw_boundary);
}

TEST_CASE("refining the dihedral group splits it into the two factors") {
    GroupModel m = GroupModel::builtin("dihedral");
    ActionContext X = group_ctx(m, 6);
    RefineReport r = refine_structure(m, X, X.options());
    REQUIRE(r.ok);
    CHECK(entry_labels(r) == std::vector<std::string>{"A", "B"});
    for (const auto& e : r.entries) {
        CHECK_FALSE(e.kept);
        CHECK(e.source == "G");
        CHECK(e.finite);
        CHECK(e.order == 2);
        CHECK(verify_ellipticity(X, e.ellipticity));
    }
    REQUIRE(r.details.size() == 1);
    CHECK_FALSE(r.details[0].kept);
    CHECK_FALSE(r.details[0].virtually_free);
    CHECK(!r.details[0].soundness_log.empty());
}

TEST_CASE("refined entries are conjugate into their source") {
    GroupModel m = GroupModel::builtin("dihedral");
    ActionContext X = group_ctx(m, 6);
    RefineReport r = refine_structure(m, X, X.options());
    REQUIRE(r.ok);
    // source peripheral G is the whole group; replay the conjugation
    SubgroupSweep g_sweep = X.sweep_subgroup({m.parse("a"), m.parse("b")});
    std::set<std::string> members;
    for (const auto& el : g_sweep.elements) members.insert(FreeProductModel::key_of(el.nf));
    for (const auto& e : r.entries)
        for (const auto& gen : e.gens) {
            GroupElement back =
                m.mul(e.conjugator, m.mul(gen, m.inverse(e.conjugator)));
            CHECK(members.count(FreeProductModel::key_of(back.nf)) == 1);
        }
}

TEST_CASE("the three-factor example refines to its factors") {
    GroupModel m = GroupModel::builtin("abc");
    ActionContext X = group_ctx(m, 4);
    RefineReport r = refine_structure(m, X, X.options());
    REQUIRE(r.ok);
    CHECK(entry_labels(r) == std::vector<std::string>{"A", "B", "C"});
    // C was already elliptic and is kept; A and B come out of the split
    REQUIRE(r.details.size() == 2);
    CHECK_FALSE(r.details[0].kept);  // A*B
    CHECK(r.details[0].essential.size() == 1);
    CHECK(r.details[1].kept);  // C
    for (const auto& e : r.entries)
        if (e.kept)
            CHECK(e.label == "C");
        else
            CHECK(e.source == "AB");
}

TEST_CASE("refinement is idempotent: elliptic peripherals are kept") {
    // the same group with the already-refined peripheral structure
    GroupModel m = GroupModel::builtin("abc");
    std::vector<GroupModel::Peripheral> periph{{"A", {"a"}}, {"B", {"b"}}, {"C", {"c"}}};
    GroupModel refined_model = GroupModel::free_product(
        FreeProductModel(m.fp().factors(), "abc-refined"), periph, m.wall_data(),
        m.horizons());
    ActionContext X = group_ctx(refined_model, 4);
    RefineReport r = refine_structure(refined_model, X, X.options());
    REQUIRE(r.ok);
    CHECK(entry_labels(r) == std::vector<std::string>{"A", "B", "C"});
    for (const auto& e : r.entries) CHECK(e.kept);
}

TEST_CASE("audit passes on the refined three-factor example") {
    GroupModel m = GroupModel::builtin("abc");
    ActionContext X = group_ctx(m, 4);
    RefineReport r = refine_structure(m, X, X.options());
    REQUIRE(r.ok);
    AuditReport audit = relatively_geometric_audit(m, r.entries, X.options());
    CHECK(audit.ok);
    CHECK(audit.cocompact_ok);
    CHECK(audit.counts_low.radius == 4);
    CHECK(audit.counts_high.radius == 6);
    CHECK(audit.counts_low.per_dim == audit.counts_high.per_dim);
    CHECK(audit.ellipticity_ok);
    CHECK(audit.stabilizers_ok);
    bool some_nontrivial = false;
    for (const auto& row : audit.stabilizers)
        if (!row.trivial) {
            some_nontrivial = true;
            CHECK(row.ok);
            CHECK(!row.matched_entry.empty());
            CHECK(row.index_bound >= 1);
        }
    CHECK(some_nontrivial);
}

TEST_CASE("audit flags a deliberately omitted peripheral") {
    GroupModel m = GroupModel::builtin("abc");
    ActionContext X = group_ctx(m, 4);
    RefineReport r = refine_structure(m, X, X.options());
    REQUIRE(r.ok);
    std::vector<RefinedEntry> censored;
    for (const auto& e : r.entries)
        if (e.label != "C") censored.push_back(e);
    REQUIRE(censored.size() == 2);
    AuditReport audit = relatively_geometric_audit(m, censored, X.options());
    CHECK_FALSE(audit.ok);
    CHECK_FALSE(audit.stabilizers_ok);
    CHECK(audit.failure.find("embeds in no conjugate") != std::string::npos);
}

TEST_CASE("a finite group on a single cube audits trivially") {
    GroupModel m = GroupModel::builtin("cube-sym");
    ContextOptions opts = ContextOptions::from(m.horizons());
    ActionContext X = ActionContext::over_group(m, opts);
    CHECK(X.complex().vertex_count() == 8);
    CHECK(X.complex().dimension() == 3);
    RefineReport r = refine_structure(m, X, opts);
    REQUIRE(r.ok);
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0].kept);
    CHECK(r.entries[0].order == 6);
    AuditReport audit = relatively_geometric_audit(m, r.entries, opts);
    CHECK(audit.ok);
    CHECK(audit.counts_low.per_dim == audit.counts_high.per_dim);
}

TEST_CASE("z2z3 refines to its factors") {
    GroupModel m = GroupModel::builtin("z2z3");
    ActionContext X = group_ctx(m, 6);
    RefineReport r = refine_structure(m, X, X.options());
    REQUIRE(r.ok);
    // both peripherals are finite factors, so both are kept
    CHECK(entry_labels(r) == std::vector<std::string>{"A", "B"});
    for (const auto& e : r.entries) CHECK(e.kept);
}
