#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "sl2kit/pathword.hpp"

using namespace sl2;

namespace {

Mat2 random_b_matrix(const Ring& r, std::mt19937_64& rng) {
    auto units = enumerate_units(r, HeightBound{2, 1});
    RingElem u = units[rng() % units.size()];
    RingElem b = r.from_int((int)(rng() % 7) - 3);
    return Mat2(u, r.zero(), b, unit_inverse(u));
}

PathWord random_loop(const Ring& r, std::mt19937_64& rng, int expansions) {
    PathWord p = PathWord::trivial(r);
    auto units = enumerate_units(r, HeightBound{2, 1});
    for (int k = 0; k < expansions; ++k) {
        int n = (int)p.length();
        if (rng() % 2 == 0 || n == 0) {
            Move m{MoveKind::Expand1, (int)(rng() % (n + 1)) + 1,
                   r.from_int((int)(rng() % 7) - 3)};
            p = apply_move(p, m);
        } else {
            Move m{MoveKind::Expand2, (int)(rng() % n) + 1, units[rng() % units.size()]};
            p = apply_move(p, m);
        }
    }
    return p;
}

} // namespace

TEST_CASE("path vertices", "[pathword]") {
    Ring z = Ring::integers();
    CHECK(path_vertices(PathWord::trivial(z)) ==
          std::vector<Vertex>{Vertex::infinity(z)});

    PathWord single(Mat2::identity(z), {z.from_int(4)});
    CHECK(path_vertices(single) ==
          std::vector<Vertex>{Vertex::infinity(z),
                              canonical_vertex(z, z.from_int(4), z.one())});

    PathWord p(Mat2::identity(z), {z.zero(), z.from_int(-2), z.from_int(5)});
    auto vs = path_vertices(p);
    REQUIRE(vs.size() == 4);
    CHECK(vs[0] == Vertex::infinity(z));
    CHECK(vs[1] == Vertex::zero(z));
    CHECK(vs[2] == canonical_vertex(z, z.one(), z.from_int(2)));
    CHECK(vs[3] == canonical_vertex(z, z.from_int(5), z.from_int(11)));
    for (size_t i = 0; i + 1 < vs.size(); ++i) CHECK(is_edge(vs[i], vs[i + 1]));

    CHECK_THROWS_AS(PathWord(mat_S(z.one()), {}), Error); // det -1 base
}

TEST_CASE("word_from_path uniqueness and roundtrip", "[pathword]") {
    Ring z = Ring::integers();
    CHECK(word_from_path({Vertex::infinity(z)}, Mat2::identity(z)).letters().empty());
    CHECK(word_from_path({Vertex::infinity(z), Vertex::zero(z)}, Mat2::identity(z))
              .letters() == std::vector<RingElem>{z.zero()});

    // the Dennis-Stein path over Z[1/5]: letters (0, -ua, u^-2 b, u^2 a)
    Ring l5 = Ring::localized(5);
    std::vector<Vertex> ds{Vertex::infinity(l5), Vertex::zero(l5),
                           vertex_from_fraction(l5, Rat(-1, 10)),
                           vertex_from_fraction(l5, Rat(-3, 5)),
                           Vertex::infinity(l5)};
    PathWord w = word_from_path(ds, Mat2::identity(l5));
    CHECK(w.letters() == std::vector<RingElem>{l5.zero(), l5.from_int(10),
                                               l5.fraction(3, 25), l5.from_int(50)});
    CHECK(path_vertices(w) == ds);

    // exhaustive roundtrip over Z/5, words of length <= 3
    Ring z5 = Ring::mod_n(5);
    auto elems = enumerate_elements(z5, HeightBound{});
    std::vector<std::vector<RingElem>> words{{}};
    size_t level_start = 0;
    for (int len = 1; len <= 3; ++len) {
        size_t level_end = words.size();
        for (size_t k = level_start; k < level_end; ++k) {
            for (const RingElem& a : elems) {
                auto ext = words[k];
                ext.push_back(a);
                PathWord p(Mat2::identity(z5), ext);
                CHECK(word_from_path(path_vertices(p), p.base()) == p);
                words.push_back(std::move(ext));
            }
        }
        level_start = level_end;
    }

    // random words over Z
    std::mt19937_64 rng(31);
    for (int t = 0; t < 200; ++t) {
        std::vector<RingElem> letters;
        size_t len = 1 + rng() % 5;
        for (size_t i = 0; i < len; ++i)
            letters.push_back(z.from_int((int)(rng() % 11) - 5));
        PathWord p(Mat2::identity(z), letters);
        CHECK(word_from_path(path_vertices(p), p.base()) == p);
    }

    CHECK_THROWS_AS(word_from_path({Vertex::zero(z)}, Mat2::identity(z)), Error);
    CHECK_THROWS_AS(word_from_path({Vertex::infinity(z),
                                    canonical_vertex(z, z.one(), z.from_int(3))},
                                   Mat2::identity(z)),
                    Error); // det 3, not an edge
}

TEST_CASE("change of representative", "[pathword]") {
    Ring z = Ring::integers();
    PathWord p(Mat2::identity(z), {z.from_int(3)});
    CHECK(change_rep(p, p.base()) == p);

    Mat2 dneg = mat_D(z.from_int(-1));
    PathWord q = change_rep(p, dneg);
    CHECK(q.base() == dneg);
    CHECK(q.letters() == std::vector<RingElem>{z.from_int(3)});

    // base [[1,0],[c,1]] against identity shifts the first letter by c
    for (int c = -3; c <= 3; ++c) {
        PathWord r(mat_E21(z.from_int(c)), {z.from_int(2), z.from_int(5)});
        PathWord s = change_rep(r, Mat2::identity(z));
        CHECK(s.letters() == std::vector<RingElem>{z.from_int(2 + c), z.from_int(5)});
    }

    CHECK_THROWS_AS(change_rep(p, mat_E(z.one())), Error); // not B-equivalent

    // vertex path invariance and the T_i alternation law, exhaustive over Z/5
    Ring z5 = Ring::mod_n(5);
    auto elems = enumerate_elements(z5, HeightBound{});
    auto units = enumerate_units(z5, HeightBound{});
    for (const RingElem& u : units) {
        for (const RingElem& bb : elems) {
            Mat2 Z(u, z5.zero(), bb, unit_inverse(u));
            Mat2 Dm = mat_D(u);
            Mat2 Dinv = Dm.inverse();
            for (const RingElem& a1 : elems) {
                for (const RingElem& a2 : elems) {
                    PathWord base(Z, {a1, a2, a1 + a2});
                    PathWord moved = change_rep(base, Mat2::identity(z5));
                    CHECK(path_vertices(moved) == path_vertices(base));
                    for (size_t i = 1; i <= base.length(); ++i) {
                        Mat2 expect = (i % 2 == 1 ? Dm : Dinv) * base.t_matrix(i);
                        CHECK(moved.t_matrix(i) == expect);
                    }
                }
            }
        }
    }
}

TEST_CASE("concatenation", "[pathword]") {
    Ring z = Ring::integers();
    PathWord p(Mat2::identity(z), {z.from_int(2), z.from_int(-1)});
    PathWord unitp(p.terminal(), {});
    CHECK(concat(p, unitp) == p);

    // [X,(a)] * [E(a)X,(0)] = [X,(a,0)]
    PathWord left(Mat2::identity(z), {z.from_int(4)});
    PathWord right(mat_E(z.from_int(4)), {z.zero()});
    CHECK(concat(left, right) ==
          PathWord(Mat2::identity(z), {z.from_int(4), z.zero()}));

    // worked Z/5 case with a nontrivial connection matrix
    Ring z5 = Ring::mod_n(5);
    PathWord p5(Mat2::identity(z5), {z5.one()});
    PathWord q5(mat_D(z5.from_int(2)) * mat_E(z5.one()), {z5.from_int(3)});
    PathWord joined = concat(p5, q5);
    CHECK(joined == PathWord(Mat2::identity(z5), {z5.one(), z5.from_int(2)}));

    CHECK_THROWS_AS(concat(left, PathWord::trivial(z)), Error); // endpoints differ

    // vertex paths concatenate; T_{j+n} alternation; associativity
    std::mt19937_64 rng(41);
    for (int t = 0; t < 60; ++t) {
        Ring r = t % 2 ? Ring::mod_n(5) : z;
        std::vector<RingElem> l1, l2, l3;
        for (size_t i = 0; i < 1 + rng() % 3; ++i)
            l1.push_back(r.from_int((int)(rng() % 7) - 3));
        for (size_t i = 0; i < 1 + rng() % 3; ++i)
            l2.push_back(r.from_int((int)(rng() % 7) - 3));
        for (size_t i = 0; i < 1 + rng() % 3; ++i)
            l3.push_back(r.from_int((int)(rng() % 7) - 3));
        PathWord a(Mat2::identity(r), l1);
        PathWord b(random_b_matrix(r, rng) * a.terminal(), l2);
        PathWord c(random_b_matrix(r, rng) * b.terminal(), l3);

        PathWord ab = concat(a, b);
        auto va = path_vertices(a);
        auto vb = path_vertices(b);
        auto vab = path_vertices(ab);
        REQUIRE(vab.size() == va.size() + vb.size() - 1);
        for (size_t i = 0; i < va.size(); ++i) CHECK(vab[i] == va[i]);
        for (size_t i = 1; i < vb.size(); ++i) CHECK(vab[va.size() + i - 1] == vb[i]);

        Mat2 Z = b.base() * a.terminal().inverse();
        Mat2 Dm = mat_D(Z.m11());
        for (size_t j = 1; j <= b.length(); ++j) {
            Mat2 expect = (j % 2 == 1 ? Dm : Dm.inverse()) * b.t_matrix(j);
            CHECK(ab.t_matrix(a.length() + j) == expect);
        }

        CHECK(concat(concat(a, b), c) == concat(a, concat(b, c)));
    }
}

TEST_CASE("decomposition into single letters", "[pathword]") {
    Ring z5 = Ring::mod_n(5);
    std::mt19937_64 rng(53);
    for (int t = 0; t < 40; ++t) {
        std::vector<RingElem> letters;
        for (size_t i = 0; i < 1 + rng() % 5; ++i)
            letters.push_back(z5.from_int((int)(rng() % 5)));
        PathWord p(Mat2::identity(z5), letters);
        PathWord acc(p.t_matrix(0), {letters[0]});
        for (size_t i = 1; i < letters.size(); ++i)
            acc = concat(acc, PathWord(p.t_matrix(i), {letters[i]}));
        CHECK(acc == p);
    }
}

TEST_CASE("moves: worked rewrites", "[pathword]") {
    Ring z = Ring::integers();
    // trailing type-1: (a,0) -> ()
    PathWord p(Mat2::identity(z), {z.from_int(7), z.zero()});
    CHECK(apply_move(p, {MoveKind::Contract1, 2, z.zero()}) == PathWord::trivial(z));

    // trailing type-2: (a,u) -> (a - u^{-1})
    PathWord q(Mat2::identity(z), {z.from_int(7), z.from_int(-1)});
    CHECK(apply_move(q, {MoveKind::Contract2, 2, z.zero()}) ==
          PathWord(Mat2::identity(z), {z.from_int(8)}));

    // interior type-2 with u = 1: (0,3,1,5,7) -> (0,2,4,7)
    PathWord r(Mat2::identity(z),
               {z.zero(), z.from_int(3), z.one(), z.from_int(5), z.from_int(7)});
    PathWord rr = apply_move(r, {MoveKind::Contract2, 3, z.zero()});
    CHECK(rr == PathWord(Mat2::identity(z),
                         {z.zero(), z.from_int(2), z.from_int(4), z.from_int(7)}));

    // interior type-1 merges around the zero
    PathWord s(Mat2::identity(z), {z.from_int(2), z.zero(), z.from_int(5), z.one()});
    CHECK(apply_move(s, {MoveKind::Contract1, 2, z.zero()}) ==
          PathWord(Mat2::identity(z), {z.from_int(7), z.one()}));

    CHECK_THROWS_AS(apply_move(s, {MoveKind::Contract1, 3, z.zero()}), Error);
    CHECK_THROWS_AS(apply_move(s, {MoveKind::Contract2, 2, z.zero()}), Error);
}

TEST_CASE("moves preserve endpoints and cut genuine cells", "[pathword]") {
    std::mt19937_64 rng(61);
    for (const Ring& r : {Ring::integers(), Ring::mod_n(5), Ring::localized(6)}) {
        auto units = enumerate_units(r, HeightBound{2, 1});
        for (int t = 0; t < 120; ++t) {
            std::vector<RingElem> letters;
            for (size_t i = 0; i < 3 + rng() % 4; ++i)
                letters.push_back(r.from_int((int)(rng() % 9) - 4));
            PathWord p(Mat2::identity(r), letters);
            auto before = path_vertices(p);

            // expansions first, applicable anywhere
            Move e1{MoveKind::Expand1, (int)(rng() % (p.length() + 1)) + 1,
                    r.from_int((int)(rng() % 7) - 3)};
            PathWord pe = apply_move(p, e1);
            auto after = path_vertices(pe);
            CHECK(after.front() == before.front());
            CHECK(after.back() == before.back());
            // expansion undone by the matching contraction
            CHECK(apply_move(pe, {MoveKind::Contract1, e1.index + 1, r.zero()}) == p);

            Move e2{MoveKind::Expand2, (int)(rng() % p.length()) + 1,
                    units[rng() % units.size()]};
            PathWord pf = apply_move(p, e2);
            auto after2 = path_vertices(pf);
            CHECK(after2.front() == before.front());
            CHECK(after2.back() == before.back());
            CHECK(apply_move(pf, {MoveKind::Contract2, e2.index + 1, r.zero()}) == p);

            // a contraction, when applicable, removes a backtrack or cuts a
            // triangle corner
            const auto& ls = p.letters();
            for (int j = 2; j <= (int)ls.size(); ++j) {
                if (ls[j - 1].is_zero()) {
                    PathWord pc = apply_move(p, {MoveKind::Contract1, j, r.zero()});
                    auto vc = path_vertices(pc);
                    CHECK(vc.front() == before.front());
                    CHECK(vc.back() == before.back());
                    CHECK(before[j - 2] == before[j]); // backtrack x,y,x
                    break;
                }
                if (is_unit(ls[j - 1])) {
                    PathWord pc = apply_move(p, {MoveKind::Contract2, j, r.zero()});
                    auto vc = path_vertices(pc);
                    CHECK(vc.front() == before.front());
                    CHECK(vc.back() == before.back());
                    CHECK(is_edge(before[j - 2], before[j])); // triangle corner
                    CHECK(is_edge(before[j - 2], before[j - 1]));
                    CHECK(is_edge(before[j - 1], before[j]));
                    break;
                }
            }
        }
    }
}

TEST_CASE("reduce", "[pathword]") {
    Ring z5 = Ring::mod_n(5);
    PathWord p(Mat2::identity(z5), {z5.from_int(3), z5.zero()});
    auto [rp, trace] = reduce(p);
    CHECK(rp == PathWord::trivial(z5));
    CHECK(trace.replays());

    // already reduced: no unit or zero letters past the first position
    PathWord q(Mat2::identity(z5), {z5.zero(), z5.from_int(2)});
    auto [rq, tq] = reduce(q);
    CHECK(rq == q);
    CHECK(tq.steps.empty());

    // the delta(u,a) relator trace collapses for every unit u and element a
    for (const RingElem& u : enumerate_units(z5, HeightBound{})) {
        RingElem ui = unit_inverse(u);
        for (const RingElem& a : enumerate_elements(z5, HeightBound{})) {
            PathWord d(Mat2::identity(z5),
                       {z5.zero(), -(u * u * a), z5.zero(), -u, -ui, -u, a, -u, -ui, -u});
            auto [rd, td] = reduce(d);
            CHECK(rd == PathWord::trivial(z5));
            CHECK(td.replays());
        }
    }
}

TEST_CASE("dennis-stein loops", "[pathword]") {
    Ring l5 = Ring::localized(5);
    auto [loop, trace] = dennis_stein_loop(l5, l5.from_int(2), l5.from_int(3));
    CHECK(loop.letters() == std::vector<RingElem>{l5.zero(), l5.from_int(10),
                                                  l5.fraction(3, 25), l5.from_int(50)});
    auto vs = path_vertices(loop);
    REQUIRE(vs.size() == 5);
    CHECK(bezout_point(vs[0]).str() == "inf");
    CHECK(bezout_point(vs[1]).str() == "0");
    CHECK(bezout_point(vs[2]).str() == "-1/10");
    CHECK(bezout_point(vs[3]).str() == "-3/5");
    CHECK(bezout_point(vs[4]).str() == "inf");
    CHECK(loop.loop_at_infinity());

    // the mechanized 9 -> 4 letter trace replays
    CHECK(trace.start.length() == 9);
    REQUIRE(trace.steps.size() == 3);
    CHECK(trace.steps[0].first.kind == MoveKind::Contract2);
    CHECK(trace.steps[1].first.kind == MoveKind::Contract1);
    CHECK(trace.steps[2].first.kind == MoveKind::Contract1);
    CHECK(trace.replays());
    CHECK(trace.result() == loop);

    // a = 0 degenerates to a null-homotopic loop
    auto [dloop, dtrace] = dennis_stein_loop(l5, l5.zero(), l5.from_int(3));
    CHECK(dtrace.replays());
    CHECK(reduce(dloop).first == PathWord::trivial(l5));

    // Z[1/7] with the p = 6k+1 recipe: a = -2, b = 3, u = 7
    Ring l7 = Ring::localized(7);
    auto [loop7, t7] = dennis_stein_loop(l7, l7.from_int(-2), l7.from_int(3));
    auto vs7 = path_vertices(loop7);
    REQUIRE(vs7.size() == 5);
    CHECK(bezout_point(vs7[1]).str() == "0");
    CHECK(bezout_point(vs7[2]).str() == "-1/14");
    CHECK(bezout_point(vs7[3]).str() == "3/7");
    for (size_t i = 0; i + 1 < vs7.size(); ++i) CHECK(is_edge(vs7[i], vs7[i + 1]));

    // 1 - ab must be a unit
    Ring z = Ring::integers();
    CHECK_THROWS_AS(dennis_stein_loop(z, z.from_int(2), z.from_int(3)), Error);
}

TEST_CASE("random expansion loops stay loops", "[pathword]") {
    std::mt19937_64 rng(71);
    for (const Ring& r : {Ring::integers(), Ring::mod_n(5)}) {
        for (int t = 0; t < 50; ++t) {
            PathWord p = random_loop(r, rng, 1 + (int)(rng() % 4));
            CHECK(p.loop_at_infinity());
            auto vs = path_vertices(p);
            CHECK(vs.front() == Vertex::infinity(r));
            CHECK(vs.back() == Vertex::infinity(r));
        }
    }
}
