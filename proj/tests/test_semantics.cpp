#include "support.hpp"

#include "exclusion/errors.hpp"
#include "exclusion/oracle.hpp"
#include "exclusion/semantics.hpp"

#include <doctest.h>

using namespace exclusion;
using support::atom;

namespace {

// 50 rows; last year's names in x1, this year's in x2. Rows 1-3 this year
// hold the people ranked 4-6 last year, everyone else is new.
Team ranking_team() {
    Team t(support::vars({"x1", "x2"}));
    for (int i = 1; i <= 50; ++i) {
        const std::string last = "old" + std::to_string(i);
        const std::string now = i <= 3 ? "old" + std::to_string(i + 3) : "new" + std::to_string(i);
        t.insert({last, now});
    }
    return t;
}

}  // namespace

TEST_CASE("satisfies_exact") {
    CHECK_FALSE(satisfies_exact(support::two_rows(), atom("excl(x ; y)")));
    CHECK(satisfies_exact(Team(support::vars({"x", "y"})), atom("excl(x ; y)")));
    CHECK(satisfies_exact(Team{}, atom("excl(p ; q)")));
    CHECK_FALSE(satisfies_exact(support::team({"x", "y"}, {{"1", "2"}}), atom("excl(x ; x)")));
    CHECK(satisfies_exact(support::team({"x", "y"}, {{"1", "2"}}), atom("excl(x ; y)")));
    CHECK_THROWS_AS(satisfies_exact(support::two_rows(), atom("excl(x ; q)")), UnknownVariable);
}

TEST_CASE("conflict_report") {
    const auto r2 = conflict_report(support::two_rows(), atom("excl(x ; y)"));
    REQUIRE(r2.conflicts.size() == 1);
    const auto& [v, w] = *r2.conflicts.begin();
    CHECK(v == ValueTuple{"0"});
    CHECK(w.left_rows == std::vector<std::size_t>{0});
    CHECK(w.right_rows == std::vector<std::size_t>{0});

    const auto r3 = conflict_report(support::three_rows(), atom("excl(x u ; y v)"));
    REQUIRE(r3.conflicts.size() == 2);
    CHECK(r3.conflicts.at({"0", "1"}).left_rows == std::vector<std::size_t>{0});
    CHECK(r3.conflicts.at({"0", "1"}).right_rows == std::vector<std::size_t>{0});
    CHECK(r3.conflicts.at({"0", "2"}).left_rows == std::vector<std::size_t>{1});
    CHECK(r3.conflicts.at({"0", "2"}).right_rows == std::vector<std::size_t>{1});

    CHECK(conflict_report(Team(support::vars({"x", "y"})), atom("excl(x ; y)")).empty());
}

TEST_CASE("min_removal") {
    CHECK(min_removal(support::two_rows(), atom("excl(x ; y)")) == 1);
    CHECK(min_removal(support::three_rows(), atom("excl(x u ; y v)")) == 2);
    CHECK(min_removal(support::three_rows(), atom("excl(x ; x)")) == 3);
    CHECK(min_removal(support::three_rows(), atom("excl[1/2](x u ; y v)")) == 2);  // degree ignored
}

TEST_CASE("satisfies_approx") {
    CHECK(satisfies_approx(support::two_rows(), atom("excl[1/2](x ; y)")));
    CHECK_FALSE(satisfies_approx(support::three_rows(), atom("excl[1/2](x u ; y v)")));
    CHECK(satisfies_approx(support::three_rows(), atom("excl[1](x u ; y v)")));
    CHECK(satisfies_approx(support::three_rows(), atom("excl[2/3](x u ; y v)")));
    CHECK_THROWS_AS(satisfies_approx(support::three_rows(), atom("excl[1](x ; nope)")), UnknownVariable);
    CHECK(satisfies_approx(Team{}, atom("excl[1/4](a ; b)")));
}

TEST_CASE("min_degree") {
    CHECK(min_degree(support::two_rows(), atom("excl(x ; y)")) == Rational(1, 2));
    CHECK(min_degree(support::three_rows(), atom("excl(x u ; y v)")) == Rational(2, 3));
    CHECK_THROWS_AS(min_degree(Team(support::vars({"x", "y"})), atom("excl(x ; y)")), EmptyTeam);
}

TEST_CASE("ranking team needs exactly three removals") {
    const auto t = ranking_team();
    REQUIRE(t.size() == 50);
    CHECK(min_removal(t, atom("excl(x1 ; x2)")) == 3);
    CHECK(min_degree(t, atom("excl(x1 ; x2)")) == Rational(3, 50));
    CHECK(satisfies_approx(t, atom("excl[3/50](x1 ; x2)")));
    CHECK_FALSE(satisfies_approx(t, atom("excl[1/25](x1 ; x2)")));
}

TEST_CASE("min_removal with interacting conflicts") {
    // Row 0 sits on the left of value a and the right of value b.
    const auto t = support::team({"x", "y"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}});
    CHECK(min_removal(t, atom("excl(x ; y)")) == support::brute_min_removal(t, atom("excl(x ; y)")));
    CHECK(min_removal(t, atom("excl(x ; y)")) == 2);
}

TEST_CASE("component cap raises CapacityError") {
    Team t(support::vars({"x", "y"}));
    // 15 rows chained through 14 conflict values, one component.
    for (int i = 0; i < 15; ++i)
        t.insert({"v" + std::to_string(i), "v" + std::to_string(i + 1)});
    RemovalOptions tight;
    tight.max_conflict_values = 10;
    CHECK_THROWS_AS(min_removal(t, atom("excl(x ; y)"), tight), CapacityError);
    CHECK(min_removal(t, atom("excl(x ; y)")) == 7);
}

TEST_CASE("separate components are solved independently") {
    Team t(support::vars({"x", "y"}));
    // 25 disjoint two-row conflicts: each costs one removal.
    for (int i = 0; i < 25; ++i) {
        const auto s = std::to_string(i);
        t.insert({"a" + s, "b" + s});
        t.insert({"b" + s, "c" + s});
    }
    CHECK(min_removal(t, atom("excl(x ; y)")) == 25);
}

TEST_CASE("property: semantic laws on random teams") {
    support::Gen gen(17);
    const auto pool = support::vars({"a", "b", "c", "d"});
    const std::vector<Rational> degrees{Rational(0), Rational(1, 6), Rational(1, 4), Rational(1, 3), Rational(1, 2),
                                        Rational(2, 3), Rational(1)};
    for (int trial = 0; trial < 3000; ++trial) {
        const auto t = gen.team(pool, 6, 3);
        const auto a = gen.atom(pool, 3, degrees);
        const auto exact = a.exact();
        const auto m = min_removal(t, exact);

        // minimality, checked by exhaustive subteams
        REQUIRE(m == support::brute_min_removal(t, exact));
        CHECK(m <= t.size());
        CHECK((m == 0) == satisfies_exact(t, exact));
        // coincidence
        CHECK(satisfies_approx(t, exact) == satisfies_exact(t, exact));
        // symmetry
        CHECK(satisfies_approx(t, a) == satisfies_approx(t, a.swapped()));
        // independent brute force agrees
        CHECK(satisfies_approx(t, a) == brute_force_satisfies(t, a));
        // degree monotonicity
        const auto q = gen.degree(degrees);
        if (q <= a.degree() && satisfies_approx(t, a.with_degree(q)))
            CHECK(satisfies_approx(t, a));
        // min_degree threshold
        if (!t.empty())
            CHECK(satisfies_approx(t, a) == (a.degree() >= min_degree(t, exact)));
        // downward closure
        if (satisfies_exact(t, exact) && !t.empty()) {
            std::vector<std::size_t> keep;
            for (std::size_t r = 0; r < t.size(); ++r)
                if (gen.coin())
                    keep.push_back(r);
            CHECK(satisfies_exact(t.subteam(keep), exact));
        }
    }
}
