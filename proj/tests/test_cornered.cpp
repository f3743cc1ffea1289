#include <doctest.h>

#include <random>

#include "kq/cornered.hpp"
#include "kq/oracle.hpp"

using namespace kq;

TEST_CASE("degree-zero basis of B is the idempotents") {
    McKayData a1 = build_mckay(GroupFamily::cyclic(2));
    TruncatedAlgebra b = TruncatedAlgebra::build(AlgebraKind::B, a1, {}, 0);
    CHECK(b.dim_upto(0) == 2); // e_0, e_1
    CHECK(b.block_dim(0, 0, 0) == 1);
    CHECK(b.block_dim(0, 1, 1) == 1);
    CHECK(b.block_dim(0, 0, 1) == 0);
}

TEST_CASE("degree-one basis of A is all arrows except b*") {
    for (const char* name : {"A1", "A2", "D4"}) {
        McKayData d = build_mckay(parse_group(name));
        TruncatedAlgebra a = TruncatedAlgebra::build(AlgebraKind::A, d, {}, 1);
        FramedQuiver q = frame(d);
        long long deg1 = a.dim_upto(1) - a.dim_upto(0);
        CHECK(deg1 == q.num_arrows() - 1);
    }
}

TEST_CASE("e_0 B e_0 for Z/2 matches the invariant-ring Hilbert series") {
    // C[x,y]^{Z/2} = C[x^2, xy, y^2] has graded dimensions 1,0,3,0,5,0,7
    McKayData a1 = build_mckay(GroupFamily::cyclic(2));
    TruncatedAlgebra b = TruncatedAlgebra::build(AlgebraKind::B, a1, {}, 6);
    std::vector<long long> expect{1, 0, 3, 0, 5, 0, 7};
    for (int d = 0; d <= 6; ++d) {
        long long dim_d = b.dim_upto(d, 0, 0) - (d ? b.dim_upto(d - 1, 0, 0) : 0);
        CHECK(dim_d == expect[d]);
    }
}

TEST_CASE("e_0 B e_0 for Z/3 matches the invariants of weight zero") {
    // monomials x^a y^b with a = b mod 3: degrees 0..6 give 1,0,1,2,1,2,3
    McKayData a2 = build_mckay(GroupFamily::cyclic(3));
    TruncatedAlgebra b = TruncatedAlgebra::build(AlgebraKind::B, a2, {}, 6);
    std::vector<long long> expect{1, 0, 1, 2, 1, 2, 3};
    for (int d = 0; d <= 6; ++d) {
        long long dim_d = b.dim_upto(d, 0, 0) - (d ? b.dim_upto(d - 1, 0, 0) : 0);
        CHECK(dim_d == expect[d]);
    }
}

TEST_CASE("total graded dimension of B matches the skew-group count") {
    // dim B_d = m (d+1) for Z/m: one basis class per monomial of degree d
    // and per pair of colors at matching offset
    for (int m : {2, 3, 4}) {
        McKayData mk = build_mckay(GroupFamily::cyclic(m));
        TruncatedAlgebra b = TruncatedAlgebra::build(AlgebraKind::B, mk, {}, 6);
        for (int d = 0; d <= 6; ++d) {
            long long dim_d = b.dim_upto(d) - (d ? b.dim_upto(d - 1) : 0);
            CHECK(dim_d == static_cast<long long>(m) * (d + 1));
        }
    }
}

TEST_CASE("cornered decomposition identity") {
    // dim A_I(<=d) = dim B_I(<=d) + dim e_I B e_0(<= d-1) + 1
    for (const char* name : {"A1", "A2", "D4"}) {
        McKayData m = build_mckay(parse_group(name));
        int cap = std::string(name) == "D4" ? 5 : 6;
        std::vector<std::set<int>> Is{{0}, {m.num_vertices() - 1}};
        std::set<int> full;
        for (int i = 0; i < m.num_vertices(); ++i) full.insert(i);
        Is.push_back(full);
        for (const auto& I : Is) {
            TruncatedAlgebra A = TruncatedAlgebra::build(AlgebraKind::AI, m, I, cap);
            TruncatedAlgebra B = TruncatedAlgebra::build(AlgebraKind::B, m, I, cap);
            for (int d = 0; d <= cap; ++d) {
                long long ai = A.dim_upto(d);
                long long bi = 0, ri = 0;
                for (int i : I)
                    for (int j : I) bi += B.dim_upto(d, j, i);
                if (d >= 1)
                    for (int i : I) ri += B.dim_upto(d - 1, 0, i);
                CHECK(ai == bi + ri + 1);
            }
        }
    }
}

TEST_CASE("A decomposes as B + Bb + C e_inf degreewise") {
    for (const char* name : {"A1", "A2"}) {
        McKayData m = build_mckay(parse_group(name));
        std::set<int> full;
        for (int i = 0; i < m.num_vertices(); ++i) full.insert(i);
        TruncatedAlgebra A = TruncatedAlgebra::build(AlgebraKind::A, m, {}, 5);
        TruncatedAlgebra B = TruncatedAlgebra::build(AlgebraKind::B, m, {}, 5);
        for (int d = 0; d <= 5; ++d) {
            long long bb = 0;
            for (int i : full) bb += B.dim_upto(d - 1 < 0 ? -1 : d - 1, 0, i);
            CHECK(A.dim_upto(d) == B.dim_upto(d) + bb + 1);
        }
    }
}

TEST_CASE("idempotents multiply as e_i e_j = delta_ij e_i") {
    McKayData a2 = build_mckay(GroupFamily::cyclic(3));
    TruncatedAlgebra B = TruncatedAlgebra::build(AlgebraKind::B, a2, {}, 2);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            AlgElem ei = idempotent_sum(B, {i});
            AlgElem ej = idempotent_sum(B, {j});
            AlgElem prod = ei * ej;
            if (i == j) CHECK(prod == ei);
            else CHECK(prod.is_zero());
        }
}

namespace {

AlgElem random_elem(const TruncatedAlgebra& alg, const std::vector<ClassKey>& pool,
                    std::mt19937& rng, int max_deg) {
    AlgElem e;
    e.alg = &alg;
    for (int pick = 0; pick < 3; ++pick) {
        const ClassKey& k = pool[rng() % pool.size()];
        if (k.deg > max_deg) continue;
        e.coef[k] += Rat(static_cast<int>(rng() % 5) - 2);
    }
    return e;
}

} // namespace

TEST_CASE("ternary multiplication") {
    McKayData a1 = build_mckay(GroupFamily::cyclic(2));
    TruncatedAlgebra B = TruncatedAlgebra::build(AlgebraKind::B, a1, {}, 6);
    std::set<int> I{0};

    // unit law: (e_I, 0, 1) is a left identity
    TernaryElement unit{idempotent_sum(B, I), AlgElem{&B, {}}, Rat(1)};
    std::mt19937 rng(99);
    std::vector<ClassKey> bpool = B.classes(0, 0);
    std::vector<ClassKey> rpool = B.classes(0, 0); // R_{0} = e_0 B e_0 here
    for (int t = 0; t < 20; ++t) {
        TernaryElement x{random_elem(B, bpool, rng, 3), random_elem(B, rpool, rng, 3),
                         Rat(static_cast<int>(rng() % 5) - 2)};
        TernaryElement ux = ternary_multiply(unit, x);
        CHECK(ux.b == x.b);
        CHECK(ux.r == x.r);
        CHECK(ux.c == x.c);
    }

    // R_I . R_I vanishes: (0, r1, 0)(0, r2, 0) = 0
    for (int t = 0; t < 10; ++t) {
        TernaryElement x{AlgElem{&B, {}}, random_elem(B, rpool, rng, 3), Rat(0)};
        TernaryElement y{AlgElem{&B, {}}, random_elem(B, rpool, rng, 3), Rat(0)};
        TernaryElement xy = ternary_multiply(x, y);
        CHECK(xy.b.is_zero());
        CHECK(xy.r.is_zero());
        CHECK(xy.c == 0);
    }

    // associativity under the cap
    for (int t = 0; t < 100; ++t) {
        TernaryElement x{random_elem(B, bpool, rng, 2), random_elem(B, rpool, rng, 2),
                         Rat(static_cast<int>(rng() % 3) - 1)};
        TernaryElement y{random_elem(B, bpool, rng, 2), random_elem(B, rpool, rng, 2),
                         Rat(static_cast<int>(rng() % 3) - 1)};
        TernaryElement z{random_elem(B, bpool, rng, 2), random_elem(B, rpool, rng, 2),
                         Rat(static_cast<int>(rng() % 3) - 1)};
        TernaryElement left = ternary_multiply(ternary_multiply(x, y), z);
        TernaryElement right = ternary_multiply(x, ternary_multiply(y, z));
        CHECK(left.b == right.b);
        CHECK(left.r == right.r);
        CHECK(left.c == right.c);
    }
}

TEST_CASE("assembled A_I-modules from oracle quotients are stable") {
    // zero quotient: the module C e_inf
    {
        McKayData a1 = build_mckay(GroupFamily::cyclic(2));
        auto quiver = std::make_shared<FramedQuiver>(frame(a1));
        Rep<Rat> empty = partition_to_rep(make_colored_partition({}, 2), quiver);
        CyclicBIModule q = bi_quotient_from_rep(empty, {0});
        CHECK(q.dims.at(0) == 0);
        CorneredModule<Rat> cm = assemble_AI_module(q);
        CHECK(cm.dim_inf == 1);
        CHECK(cornered_generated_at_inf(cm));
    }

    // colength-1 quotient of R_0 for Z/2: dims (1;1), stable
    {
        McKayData a1 = build_mckay(GroupFamily::cyclic(2));
        auto quiver = std::make_shared<FramedQuiver>(frame(a1));
        Rep<Rat> one = partition_to_rep(make_colored_partition({1}, 2), quiver);
        CyclicBIModule q = bi_quotient_from_rep(one, {0});
        CHECK(q.dims.at(0) == 1);
        CorneredModule<Rat> cm = assemble_AI_module(q);
        CHECK(cornered_generated_at_inf(cm));
    }

    // randomized round trip over oracle ideals and index sets
    std::mt19937 rng(314);
    int done = 0;
    while (done < 100) {
        int m = 2 + static_cast<int>(rng() % 3);
        McKayData mckay = build_mckay(GroupFamily::cyclic(m));
        auto quiver = std::make_shared<FramedQuiver>(frame(mckay));
        auto parts_list = enumerate_partitions(1 + static_cast<int>(rng() % 5));
        const auto& parts = parts_list[rng() % parts_list.size()];
        Rep<Rat> rep = partition_to_rep(make_colored_partition(parts, m), quiver);
        std::set<int> I;
        for (int i = 0; i < m; ++i)
            if (rng() % 2) I.insert(i);
        if (I.empty()) I.insert(static_cast<int>(rng() % m));
        CyclicBIModule q = bi_quotient_from_rep(rep, I);
        CorneredModule<Rat> cm = assemble_AI_module(q);
        CHECK(cm.dim_inf == 1);
        for (int i : I) CHECK(cm.dims.at(i) == q.dims.at(i));
        CHECK(cornered_generated_at_inf(cm));
        ++done;
    }
}

TEST_CASE("non-cyclic quotient data is rejected") {
    // a 1-dimensional T with no phi images cannot be generated from R_I
    CyclicBIModule q;
    q.I = {0};
    q.dims[0] = 1;
    CHECK_THROWS_AS(assemble_AI_module(q), NotCyclic);
}

TEST_CASE("resource guard on oversized caps") {
    McKayData e8 = build_mckay(GroupFamily::icosahedral());
    CHECK_THROWS_AS(TruncatedAlgebra::build(AlgebraKind::Pi, e8, {}, 16),
                    CapTooLargeForMemory);
}
