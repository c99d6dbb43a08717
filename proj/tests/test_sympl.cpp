#include <doctest.h>

#include "oracles.hpp"
#include "weilrep/sympl.hpp"

using namespace weilrep;

namespace {

// Random word in the generators, entries of bounded height; mixes tau_i
// and P-elements so rank(c) sweeps 0..n.
SymplecticElement random_word(oracles::Rng& rng, long n, long len, long p) {
    SymplecticElement g = sp_identity(n);
    for (long step = 0; step < len; ++step) {
        switch (rng.below(4)) {
            case 0:
                g = g * sp_tau(n, rng.range(0, n));
                break;
            case 1: {
                RatMat a = RatMat::identity(n);
                for (long i = 0; i < n; ++i) {
                    Rat v = rng.rat_p(p, 3, 1);
                    a.at(i, i) = is_zero(v) ? Rat(1) : v;
                }
                if (n > 1) a.at(0, n - 1) = rng.rat_p(p, 2, 1);
                g = g * sp_levi(a);
                break;
            }
            case 2: {
                RatMat b(n, n);
                for (long i = 0; i < n; ++i)
                    for (long j = i; j < n; ++j) {
                        Rat v = rng.rat_p(p, 2, 1);
                        b.at(i, j) = v;
                        b.at(j, i) = v;
                    }
                g = g * sp_unip(b);
                break;
            }
            default: {
                Rat s = rng.rat_p(p, 3, 1);
                if (is_zero(s)) s = 1;
                g = g * sp_gs(n, s);
                break;
            }
        }
    }
    return g;
}

}  // namespace

TEST_CASE("standard elements are symplectic with the expected matrices") {
    SymplecticElement tau1 = sp_tau(1, 1);
    CHECK(tau1.mat().at(0, 0) == 0);
    CHECK(tau1.mat().at(0, 1) == -1);
    CHECK(tau1.mat().at(1, 0) == 1);
    CHECK(tau1.mat().at(1, 1) == 0);

    SymplecticElement gs = sp_gs(1, Rat(3));
    CHECK(gs.mat().at(0, 0) == Rat(1, 3));
    CHECK(gs.mat().at(1, 1) == Rat(3));

    SymplecticElement iota = sp_iota(1);
    CHECK(iota.mat().at(0, 0) == -1);
    CHECK(iota.mat().at(1, 1) == -1);

    CHECK(sp_tau(2, 0) == sp_identity(2));

    // Constructor errors.
    CHECK_THROWS(sp_levi(RatMat(1, 1)));  // singular
    RatMat notsym(2, 2);
    notsym.at(0, 1) = 1;
    CHECK_THROWS_AS(sp_unip(notsym), std::invalid_argument);
    CHECK_THROWS_AS(sp_gs(1, Rat(0)), std::invalid_argument);
}

TEST_CASE("f_{s^2} = sI compose g_s as maps on V") {
    for (long n : {1L, 2L}) {
        Rat s(3);
        RatMat fs2 = similitude_fs(n, s * s);
        RatMat sI(2 * n, 2 * n);
        for (long i = 0; i < 2 * n; ++i) sI.at(i, i) = s;
        RatMat compo = sI * sp_gs(n, s).mat();
        CHECK(fs2 == compo);
    }
}

TEST_CASE("conjugation by f_s") {
    SymplecticElement tau1 = sp_tau(1, 1);
    SymplecticElement c = conj_fs(tau1, Rat(3));
    CHECK(c.mat().at(0, 1) == -3);
    CHECK(c.mat().at(1, 0) == Rat(1, 3));

    oracles::Rng rng(31);
    for (int rep = 0; rep < 10; ++rep) {
        SymplecticElement g = random_word(rng, 2, 3, 3);
        Rat s = rng.rat_p(3, 3, 1);
        if (is_zero(s)) s = 1;
        SymplecticElement h = conj_fs(g, s);
        CHECK(conj_fs(h, Rat(1) / s) == g);
        // P is preserved.
        if (g.in_parabolic()) CHECK(h.in_parabolic());
        // Matrix identity: g^{f_s} = f_s^{-1} g f_s.
        RatMat fs = similitude_fs(g.n(), s);
        CHECK(h.mat() == fs.inverse() * g.mat() * fs);
    }
    CHECK_THROWS_AS(conj_fs(tau1, Rat(0)), std::invalid_argument);
}

TEST_CASE("tau_i^{f_s} = tau_i p_{i,s} and det(p_{i,s}|_Y) = s^i") {
    for (long n : {1L, 2L}) {
        for (long i = 0; i <= n; ++i) {
            Rat s(3, 2);
            CHECK(conj_fs(sp_tau(n, i), s) == sp_tau(n, i) * sp_pis(n, i, s));
            CHECK(sp_pis(n, i, s).det_on_Y() == rat_pow(s, i));
        }
    }
}

TEST_CASE("heisenberg group law") {
    long n = 1;
    HeisenbergElement a(n, {Rat(1), Rat(2)}, Rat(0));
    HeisenbergElement b = heis_inverse(a);
    HeisenbergElement e = heis_mul(a, b);
    CHECK(e.v == std::vector<Rat>{Rat(0), Rat(0)});
    CHECK(e.t == Rat(0));

    // Associativity on random triples.
    oracles::Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        long dim = 1 + rng.below(2);
        auto rv = [&]() {
            std::vector<Rat> v;
            for (long i = 0; i < 2 * dim; ++i) v.push_back(rng.rat_p(3, 4, 1));
            return HeisenbergElement(dim, v, rng.rat_p(3, 4, 1));
        };
        HeisenbergElement x = rv(), y = rv(), z = rv();
        HeisenbergElement lhs = heis_mul(heis_mul(x, y), z);
        HeisenbergElement rhs = heis_mul(x, heis_mul(y, z));
        CHECK(lhs.v == rhs.v);
        CHECK(lhs.t == rhs.t);
    }
}

TEST_CASE("symplectic action on the Heisenberg group") {
    oracles::Rng rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        long n = 1 + rng.below(2);
        SymplecticElement g = random_word(rng, n, 3, 3);
        // Center is fixed.
        HeisenbergElement c(n, std::vector<Rat>(static_cast<size_t>(2 * n), Rat(0)), Rat(5, 3));
        HeisenbergElement cg = heis_act(c, g);
        CHECK(cg.v == c.v);
        CHECK(cg.t == c.t);
        // act is an automorphism: (hk)g = (hg)(kg).
        auto rv = [&]() {
            std::vector<Rat> v;
            for (long i = 0; i < 2 * n; ++i) v.push_back(rng.rat_p(3, 3, 1));
            return HeisenbergElement(n, v, rng.rat_p(3, 3, 1));
        };
        HeisenbergElement h = rv(), k = rv();
        HeisenbergElement lhs = heis_act(heis_mul(h, k), g);
        HeisenbergElement rhs = heis_mul(heis_act(h, g), heis_act(k, g));
        CHECK(lhs.v == rhs.v);
        CHECK(lhs.t == rhs.t);
    }
}

TEST_CASE("bruhat-siegel on the standard cases") {
    // Parabolic: (g, 0, id).
    SymplecticElement p = sp_levi_scalar(2, Rat(2)) * sp_unip_scalar(2, Rat(1, 3));
    SiegelDecomposition d = bruhat_siegel(p);
    CHECK(d.i == 0);
    CHECK(d.p1 == p);
    CHECK(d.p2 == sp_identity(2));

    // tau_i: (id, i, id).
    for (long n : {1L, 2L}) {
        for (long i = 0; i <= n; ++i) {
            SiegelDecomposition dt = bruhat_siegel(sp_tau(n, i));
            CHECK(dt.i == i);
            CHECK(dt.p1 == sp_identity(n));
            CHECK(dt.p2 == sp_identity(n));
        }
    }

    // Lower unipotent with u != 0 has full rank c.
    RatMat lower = RatMat::identity(2);
    lower.at(1, 0) = Rat(1, 5);
    SymplecticElement lu(1, lower);
    SiegelDecomposition dl = bruhat_siegel(lu);
    CHECK(dl.i == 1);
    CHECK(dl.p1 * sp_tau(1, 1) * dl.p2 == lu);
}

TEST_CASE("bruhat-siegel on random words") {
    oracles::Rng rng(20250501);
    for (int rep = 0; rep < 200; ++rep) {
        long n = 1 + rng.below(2);
        SymplecticElement g = random_word(rng, n, 4, rep % 2 ? 3 : 5);
        SiegelDecomposition d = bruhat_siegel(g);  // throws internally if wrong
        CHECK(d.i == g.block_c().rank());
        CHECK(d.p1.in_parabolic());
        CHECK(d.p2.in_parabolic());
        CHECK(d.p1 * sp_tau(n, d.i) * d.p2 == g);
    }
}

TEST_CASE("word parser") {
    SymplecticElement w = parse_symplectic_word("tau1*unip(1/3)*levi(2)", 1);
    CHECK(w == sp_tau(1, 1) * sp_unip_scalar(1, Rat(1, 3)) * sp_levi_scalar(1, Rat(2)));
    CHECK(parse_symplectic_word("iota", 2) == sp_iota(2));
    CHECK(parse_symplectic_word("g(3)", 1) == sp_gs(1, Rat(3)));
    CHECK(parse_symplectic_word("id", 1) == sp_identity(1));
    CHECK(parse_symplectic_word("levi(1,0;1/2,1)", 2).block_a().at(1, 0) == Rat(1, 2));
    CHECK_THROWS(parse_symplectic_word("frob(2)", 1));

    HeisenbergElement h = parse_heisenberg("y(1/3),0", 1);
    CHECK(h.v == std::vector<Rat>{Rat(0), Rat(1, 3)});
    CHECK(h.t == Rat(0));
    HeisenbergElement h2 = parse_heisenberg("x1(2)+y2(1/5),7", 2);
    CHECK(h2.v == std::vector<Rat>{Rat(2), Rat(0), Rat(0), Rat(1, 5)});
    CHECK(h2.t == Rat(7));
}
