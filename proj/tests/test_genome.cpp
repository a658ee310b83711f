#include <doctest.h>

#include "idiobot/errors.hpp"
#include "idiobot/genome.hpp"

#include <set>
#include <sstream>

using namespace idiobot;

namespace {

// Valid genome built from seeded random genes; the workhorse of the
// round-trip property tests.
Genome random_genome(Rng& rng, int sets = 5) {
    Genome g;
    for (int s = 0; s < sets; ++s) {
        GeneSet set;
        for (int a = 0; a < 8; ++a) {
            set.genes[a] = random_gene(a, rng);
            set.genes[a].score = rng.uniform_int(0, 100);
        }
        set.task_time_s = rng.uniform_int(1, 900);
        set.collisions = rng.uniform_int(0, 20);
        g.sets.push_back(set);
    }
    return g;
}

std::string gene_file(const std::string& gene_line) {
    std::string text = "@set 0 100 0\n" + gene_line + "\n";
    for (int a = 1; a < 8; ++a) text += std::to_string(a) + " 3 400 50 50 1 50 50 50\n";
    text += "@set 1 200 1\n";
    for (int a = 0; a < 8; ++a) text += std::to_string(a) + " 4 300 40 40 2 40 40 40\n";
    return text;
}

} // namespace

TEST_CASE("the documented example line parses to the documented fields") {
    const Genome g = parse_genome(gene_file("0 2 537 80 51 2 37 76 50"));
    const BehaviourGene& gene = g.sets[0].genes[0];
    CHECK(gene.antigen_index == 0);
    CHECK(gene.type == 2);
    CHECK(gene.speed == 537);
    CHECK(gene.turn_frequency == 80);
    CHECK(gene.turn_angle == 51);
    CHECK(gene.direction == 2);
    CHECK(gene.right_turn_frequency == 37);
    CHECK(gene.right_turn_angle == 76);
    CHECK(gene.score == 50);

    // and survives a byte-identical round trip
    const std::string text = serialize_genome(g);
    CHECK(text.find("0 2 537 80 51 2 37 76 50\n") != std::string::npos);
    CHECK(serialize_genome(parse_genome(text)) == text);
}

TEST_CASE("a five-set file yields 40 genes") {
    Rng rng(11);
    const Genome g = parse_genome(serialize_genome(random_genome(rng)));
    CHECK(g.sets.size() == 5);
    for (const GeneSet& set : g.sets)
        for (int a = 0; a < 8; ++a) CHECK(set.genes[a].antigen_index == a);
}

TEST_CASE("comments and blank lines are ignored") {
    Rng rng(3);
    const Genome g = random_genome(rng, 2);
    std::string text = "# header comment\n\n" + serialize_genome(g) + "\n# trailing\n";
    CHECK(parse_genome(text) == g);
}

TEST_CASE("malformed input is rejected with the offending line") {
    SUBCASE("behaviour type out of range") {
        CHECK_THROWS_WITH_AS(parse_genome(gene_file("0 7 537 80 51 2 37 76 50")),
                             doctest::Contains("line 2"), ParseError);
    }
    SUBCASE("wrong field count") {
        CHECK_THROWS_AS(parse_genome(gene_file("0 2 537 80 51 2 37 76")), ParseError);
    }
    SUBCASE("non-integer field") {
        CHECK_THROWS_AS(parse_genome(gene_file("0 2 537 80 fast 2 37 76 50")), ParseError);
    }
    SUBCASE("duplicate antigen index") {
        CHECK_THROWS_AS(parse_genome(gene_file("1 3 400 50 50 1 50 50 50")), ParseError);
    }
    SUBCASE("missing set header") {
        CHECK_THROWS_AS(parse_genome(std::string("0 2 537 80 51 2 37 76 50\n")), ParseError);
    }
    SUBCASE("speed outside bounds") {
        CHECK_THROWS_AS(parse_genome(gene_file("0 2 9999 80 51 2 37 76 50")), ParseError);
        CHECK_THROWS_AS(parse_genome(gene_file("0 2 50 80 51 2 37 76 50")), ParseError);
    }
    SUBCASE("truncated set") {
        CHECK_THROWS_AS(parse_genome(std::string("@set 0 100 0\n0 2 537 80 51 2 37 76 50\n")),
                        ParseError);
    }
    SUBCASE("empty input") { CHECK_THROWS_AS(parse_genome(std::string("# nothing\n")), ParseError); }
    SUBCASE("bad set time") {
        CHECK_THROWS_AS(parse_genome("@set 0 0 0\n" + gene_file("0 2 537 80 51 2 37 76 50")),
                        ParseError);
    }
}

TEST_CASE("serialize/parse round trip is the identity on random genomes") {
    Rng rng(1234);
    for (int trial = 0; trial < 1000; ++trial) {
        const Genome g = random_genome(rng, 1 + trial % 6);
        const std::string text = serialize_genome(g);
        const Genome back = parse_genome(text);
        REQUIRE(back == g);
        REQUIRE(serialize_genome(back) == text);
    }
}

TEST_CASE("random genes respect bounds and the per-antigen type table") {
    Rng rng(99);
    const AttributeBounds bounds;
    for (int antigen = 0; antigen < 8; ++antigen) {
        std::set<int> seen_types;
        for (int i = 0; i < 10000; ++i) {
            const BehaviourGene g = random_gene(antigen, rng);
            REQUIRE(g.antigen_index == antigen);
            REQUIRE(g.speed >= bounds.speed_min);
            REQUIRE(g.speed <= bounds.speed_max);
            REQUIRE((g.direction == 1 || g.direction == 2));
            for (int v : {g.turn_frequency, g.turn_angle, g.right_turn_frequency,
                          g.right_turn_angle}) {
                REQUIRE(v >= bounds.percent_min);
                REQUIRE(v <= bounds.percent_max);
            }
            REQUIRE(g.score == 50);
            seen_types.insert(g.type);
        }
        const auto allowed = allowed_types(antigen);
        CHECK(seen_types == std::set<int>(allowed.begin(), allowed.end()));
    }
    // spot checks of the table itself
    CHECK(std::set<int>(allowed_types(1).begin(), allowed_types(1).end()) == std::set<int>{6});
    CHECK(std::set<int>(allowed_types(5).begin(), allowed_types(5).end()) == std::set<int>{4, 5});
}

TEST_CASE("random_gene is deterministic under the seed") {
    Rng a(42), b(42);
    for (int antigen = 0; antigen < 8; ++antigen)
        CHECK(random_gene(antigen, a) == random_gene(antigen, b));
}
