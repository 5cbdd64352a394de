#include "gpa/catalog.hpp"
#include "gpa/presentation.hpp"

#include <doctest.h>

#include <algorithm>

using namespace gpa;

namespace {

bool has_relation(const DatumPtr& d, const std::string& text) {
    for (const auto& r : d->relations)
        if (path_expr_string(r, d->quiver) == text) return true;
    return false;
}

int loops(const Quiver& q) {
    return static_cast<int>(std::count_if(q.arrows.begin(), q.arrows.end(), [](const Arrow& a) { return a.loop; }));
}

}  // namespace

TEST_CASE("doubled quiver shapes") {
    const DatumPtr b2 = datum_b2();
    CHECK(b2->quiver.arrows.size() == 4);
    CHECK(loops(b2->quiver) == 2);  // eps_2 kept with eps_2^1 = 0
    CHECK(b2->quiver.find("a_1_2_1") >= 0);
    CHECK(b2->quiver.find("a_2_1_1") >= 0);
    const Arrow& a12 = b2->quiver.arrows[b2->quiver.find("a_1_2_1")];
    CHECK(a12.src == 1);
    CHECK(a12.tgt == 0);

    const DatumPtr a1 = make_datum(validate_datum({{2}}, {3}, {}));
    CHECK(a1->quiver.arrows.size() == 1);
    CHECK(a1->quiver.arrows[0].loop);

    const DatumPtr a2d2 = datum_a2d2();
    CHECK(loops(a2d2->quiver) == 2);
    CHECK(a2d2->quiver.arrows.size() == 4);

    // g_12 = 2 gives two parallel arrows each way
    const DatumPtr c26 = datum_c26();
    CHECK(c26->quiver.arrows.size() == 6);
    CHECK(c26->quiver.find("a_1_2_2") >= 0);
    CHECK(c26->quiver.find("a_2_1_2") >= 0);
}

TEST_CASE("relations quoted for B2, A2 with D=2I and G2") {
    const DatumPtr b2 = datum_b2();
    CHECK(has_relation(b2, "eps_1*eps_1"));
    CHECK(has_relation(b2, "a_1_2_1*a_2_1_1*eps_1 + eps_1*a_1_2_1*a_2_1_1"));
    CHECK(has_relation(b2, "-a_2_1_1*a_1_2_1"));
    CHECK(has_relation(datum_a2d2(), "eps_1*a_1_2_1 - a_1_2_1*eps_2"));
    CHECK(has_relation(datum_g2(),
                       "a_1_2_1*a_2_1_1*eps_1*eps_1 + eps_1*a_1_2_1*a_2_1_1*eps_1 + eps_1*eps_1*a_1_2_1*a_2_1_1"));
}

TEST_CASE("H relations use only orientation arrows") {
    for (const DatumPtr& d : {datum_b2(), datum_g2(), datum_a2d2()}) {
        const auto h = h_relations(d->cartan, d->quiver);
        for (const auto& r : h)
            for (const auto& t : r.terms)
                for (int a : t.path) {
                    const Arrow& ar = d->quiver.arrows[a];
                    if (!ar.loop) CHECK(d->cartan.omega.count({ar.i, ar.j}) == 1);
                }
    }
    const DatumPtr b2 = datum_b2();
    const auto hb = h_relations(b2->cartan, b2->quiver);
    CHECK(path_expr_string(hb[0], b2->quiver) == "eps_1*eps_1");
    const DatumPtr a1 = make_datum(validate_datum({{2}}, {4}, {}));
    const auto ha = h_relations(a1->cartan, a1->quiver);
    REQUIRE(ha.size() == 1);
    CHECK(path_expr_string(ha[0], a1->quiver) == "eps_1*eps_1*eps_1*eps_1");
    const DatumPtr g2 = datum_g2();
    const auto hg = h_relations(g2->cartan, g2->quiver);
    CHECK(path_expr_string(hg[0], g2->quiver) == "eps_1*eps_1*eps_1");
    CHECK(path_expr_string(hg.back(), g2->quiver) == "eps_1*eps_1*eps_1*a_1_2_1 - a_1_2_1*eps_2");
}

TEST_CASE("every relation is homogeneous") {
    for (const DatumPtr& d : {datum_b2(), datum_g2(), datum_a2d2(), datum_a2(), datum_c26()})
        for (const auto& r : d->relations)
            for (const auto& t : r.terms) {
                REQUIRE(!t.path.empty());
                // path [a1..ak]: ak acts first
                CHECK(d->quiver.arrows[t.path.back()].src == r.src);
                CHECK(d->quiver.arrows[t.path.front()].tgt == r.tgt);
                for (std::size_t k = 0; k + 1 < t.path.size(); ++k)
                    CHECK(d->quiver.arrows[t.path[k + 1]].tgt == d->quiver.arrows[t.path[k]].src);
            }
}

TEST_CASE("mesh relation term counts are sum g_ji f_ji") {
    for (const DatumPtr& d : {datum_b2(), datum_g2(), datum_a2d2(), datum_c26()}) {
        const auto& cd = d->cartan;
        for (int i = 0; i < cd.n; ++i) {
            long want = 0;
            for (int j = 0; j < cd.n; ++j)
                if (cd.adjacent(i, j)) want += cd.g[j][i] * cd.f[j][i];
            const std::string label = "mesh relation at " + std::to_string(i + 1);
            auto it = std::find_if(d->relations.begin(), d->relations.end(),
                                   [&](const PathExpr& r) { return r.label == label; });
            REQUIRE(it != d->relations.end());
            CHECK(static_cast<long>(it->terms.size()) == want);
        }
    }
}

TEST_CASE("symmetric C with D=I reduces to the classical relations") {
    const DatumPtr a2 = datum_a2();
    CHECK(has_relation(a2, "eps_1"));
    CHECK(has_relation(a2, "eps_2"));
    CHECK(has_relation(a2, "a_1_2_1*a_2_1_1"));
    CHECK(has_relation(a2, "-a_2_1_1*a_1_2_1"));
}

TEST_CASE("PathExpr JSON round trip") {
    for (const DatumPtr& d : {datum_b2(), datum_g2(), datum_c26()})
        for (const auto& r : d->relations) {
            const auto j = path_expr_to_json(r, d->quiver);
            CHECK(j.is_array());
            const PathExpr back = path_expr_from_json(j, d->quiver);
            CHECK(path_expr_string(back, d->quiver) == path_expr_string(r, d->quiver));
        }
    const auto j = path_expr_to_json(datum_b2()->relations[0], datum_b2()->quiver);
    CHECK(j[0]["path"][0] == "eps_1");
}
