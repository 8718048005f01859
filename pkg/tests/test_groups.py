import numpy as np
import pytest

from cocycle.errors import NoIdentity, NoInverse, NotAssociative, NotNormal, SizeLimit
from cocycle.groups import (
    GroupHom,
    Subgroup,
    all_subgroups,
    conjugate_hom,
    cyclic_group,
    dihedral_group,
    direct_product,
    enumerate_homs,
    find_isomorphism,
    homs_up_to_conjugacy,
    make_group,
    perm_cycle_type,
    perm_sign,
    quaternion_group,
    quotient_group,
    subgroup_as_group,
    symmetric_group,
    whole_subgroup,
)


class TestMakeGroup:
    def test_trivial(self):
        g = make_group([[0]])
        assert g.order == 1
        assert g.identity == 0

    def test_z2(self):
        g = make_group([[0, 1], [1, 0]])
        assert g.order == 2
        assert g.mul(1, 1) == 0
        assert g.inv(1) == 1

    def test_no_inverse(self):
        with pytest.raises(NoInverse) as exc:
            make_group([[0, 1], [1, 1]])
        assert exc.value.element == 1

    def test_no_identity(self):
        with pytest.raises(NoIdentity):
            make_group([[1, 0], [1, 0]])

    def test_not_associative(self):
        # left-cancellative latin square that is not a group: subtraction mod 3
        table = [[(i - j) % 3 for j in range(3)] for i in range(3)]
        with pytest.raises((NotAssociative, NoIdentity)):
            make_group(table)

    def test_witness_reported(self):
        # identity row/col forced, broken elsewhere
        table = [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
        with pytest.raises((NotAssociative, NoInverse)) as exc:
            make_group(table)
        if isinstance(exc.value, NotAssociative):
            a, b, c = exc.value.triple
            t = np.array(table)
            assert t[t[a, b], c] != t[a, t[b, c]]

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            make_group([[0, 1], [1, 5]])


class TestFamilies:
    def test_symmetric_1(self):
        g = symmetric_group(1)
        assert g.order == 1

    def test_symmetric_3(self):
        g = symmetric_group(3)
        assert g.order == 6
        assert g.perms is not None
        signs = [perm_sign(p) for p in g.perms]
        assert signs.count(-1) == 3
        assert g.perms[g.identity] == (0, 1, 2)

    def test_symmetric_labels(self):
        g = symmetric_group(3)
        assert g.labels[g.identity] == "()"
        assert "(1 2)" in g.labels

    def test_symmetric_size_limit(self):
        with pytest.raises(SizeLimit):
            symmetric_group(9)

    def test_cyclic_4(self):
        g = cyclic_group(4)
        assert g.order == 4
        assert g.element_order(1) == 4
        assert g.generated_subgroup([1]) == (0, 1, 2, 3)

    def test_dihedral(self):
        g = dihedral_group(4)
        assert g.order == 8
        assert not g.is_abelian()
        # s r s = r^-1
        s, r = 4, 1
        assert g.mul(g.mul(s, r), s) == g.inv(r)

    def test_dihedral_small(self):
        assert dihedral_group(1).order == 2
        assert dihedral_group(2).is_abelian()

    def test_direct_product(self):
        v4 = direct_product(cyclic_group(2), cyclic_group(2))
        assert v4.order == 4
        assert v4.is_abelian()
        assert all(v4.element_order(a) <= 2 for a in v4.elements())

    def test_cycle_type(self):
        assert perm_cycle_type((1, 0, 2)) == (2, 1)
        assert perm_cycle_type((1, 2, 0)) == (3,)


class TestSubgroups:
    def test_from_members_validates(self):
        g = cyclic_group(4)
        with pytest.raises(ValueError):
            Subgroup.from_members(g, [0, 1])
        sub = Subgroup.from_members(g, [0, 2])
        assert sub.order == 2

    def test_all_subgroups_s3(self):
        g = symmetric_group(3)
        subs = all_subgroups(g)
        assert len(subs) == 6  # 1, three C2, A3, S3
        orders = sorted(s.order for s in subs)
        assert orders == [1, 2, 2, 2, 3, 6]

    def test_all_subgroups_q8(self):
        # quaternion group via its table: elements 1,-1,i,-i,j,-j,k,-k
        q8 = quaternion_group()
        subs = all_subgroups(q8)
        assert sorted(s.order for s in subs) == [1, 2, 4, 4, 4, 8]
        assert all(s.is_normal() for s in subs)

    def test_subgroup_as_group(self):
        g = symmetric_group(3)
        a3 = Subgroup.from_members(g, [a for a in g.elements() if perm_sign(g.perms[a]) == 1])
        h, embed = subgroup_as_group(a3)
        assert h.order == 3
        for i in range(3):
            for j in range(3):
                assert embed[h.mul(i, j)] == g.mul(embed[i], embed[j])


class TestHoms:
    def test_hom_validation(self):
        z2, z4 = cyclic_group(2), cyclic_group(4)
        hom = GroupHom.make(z2, z4, (0, 2))
        assert hom.kernel().order == 1
        with pytest.raises(ValueError):
            GroupHom.make(z2, z4, (0, 1))

    def test_coprime_orders(self):
        homs = enumerate_homs(cyclic_group(2), cyclic_group(3))
        assert len(homs) == 1

    def test_z2_to_s2(self):
        homs = enumerate_homs(cyclic_group(2), symmetric_group(2))
        assert len(homs) == 2

    def test_z6_to_s3(self):
        homs = enumerate_homs(cyclic_group(6), symmetric_group(3))
        assert len(homs) == 6

    def test_all_listed_maps_are_homs_and_distinct(self):
        src, tgt = cyclic_group(6), symmetric_group(3)
        homs = enumerate_homs(src, tgt)
        seen = set()
        for h in homs:
            assert h.image not in seen
            seen.add(h.image)
            for a in src.elements():
                for b in src.elements():
                    assert h.image[src.mul(a, b)] == tgt.mul(h.image[a], h.image[b])

    def test_size_limit(self):
        with pytest.raises(SizeLimit):
            enumerate_homs(cyclic_group(6), symmetric_group(4), max_candidates=10)

    def test_noncyclic_source_against_raw_map_count(self):
        # independent oracle: filter all |T|^|S| maps for the hom law
        import itertools

        src = direct_product(cyclic_group(2), cyclic_group(2))
        tgt = symmetric_group(3)
        brute = 0
        for image in itertools.product(range(tgt.order), repeat=src.order):
            if image[src.identity] != tgt.identity:
                continue
            if all(
                image[src.mul(a, b)] == tgt.mul(image[a], image[b])
                for a in src.elements()
                for b in src.elements()
            ):
                brute += 1
        assert len(enumerate_homs(src, tgt)) == brute == 10


class TestHomsUpToConjugacy:
    def test_z2_s2(self):
        reps = homs_up_to_conjugacy(cyclic_group(2), symmetric_group(2))
        assert len(reps) == 2

    def test_z2_s3(self):
        reps = homs_up_to_conjugacy(cyclic_group(2), symmetric_group(3))
        assert len(reps) == 2

    def test_z3_s3(self):
        reps = homs_up_to_conjugacy(cyclic_group(3), symmetric_group(3))
        assert len(reps) == 2

    def test_orbits_partition(self):
        src, tgt = cyclic_group(6), symmetric_group(3)
        all_homs = enumerate_homs(src, tgt)
        reps = homs_up_to_conjugacy(src, tgt)
        orbits = []
        for rep in reps:
            orbit = {conjugate_hom(rep, s).image for s in tgt.elements()}
            orbits.append(orbit)
        union = set().union(*orbits)
        assert union == {h.image for h in all_homs}
        assert sum(len(o) for o in orbits) == len(all_homs)

    def test_representative_is_lex_least(self):
        reps = homs_up_to_conjugacy(cyclic_group(2), symmetric_group(3))
        tgt = symmetric_group(3)
        for rep in reps:
            orbit = {conjugate_hom(rep, s).image for s in tgt.elements()}
            assert rep.image == min(orbit)


class TestQuotient:
    def test_s3_mod_a3(self):
        g = symmetric_group(3)
        a3 = Subgroup.from_members(
            g, [a for a in g.elements() if perm_sign(g.perms[a]) == 1]
        )
        q, proj = quotient_group(g, a3)
        assert q.order == 2
        assert proj.kernel().members == a3.members
        assert proj.is_surjective()

    def test_z4_mod_2(self):
        g = cyclic_group(4)
        q, proj = quotient_group(g, Subgroup.from_members(g, [0, 2]))
        assert q.order == 2
        assert proj(1) != q.identity

    def test_s4_mod_v4_is_s3(self):
        g = symmetric_group(4)
        v4_members = [
            i for i, p in enumerate(g.perms) if perm_cycle_type(p) in ((2, 2), (1, 1, 1, 1))
        ]
        v4 = Subgroup.from_members(g, v4_members)
        q, proj = quotient_group(g, v4)
        assert q.order == 6
        assert find_isomorphism(q, symmetric_group(3)) is not None

    def test_not_normal(self):
        g = symmetric_group(3)
        c2 = Subgroup.from_members(g, g.generated_subgroup([1]))
        assert c2.order == 2
        with pytest.raises(NotNormal):
            quotient_group(g, c2)


class TestStructure:
    def test_generators_greedy_deterministic(self):
        g = symmetric_group(3)
        assert g.generators() == g.generators()
        span = g.generated_subgroup(g.generators())
        assert len(span) == g.order

    def test_word_tree_covers(self):
        g = dihedral_group(4)
        tree = g.word_tree()
        assert len(tree) == g.order - 1
        seen = {g.identity}
        for new, prev, gen in tree:
            assert prev in seen
            assert g.mul(prev, gen) == new
            seen.add(new)

    def test_power_and_order(self):
        g = cyclic_group(6)
        assert g.power(1, 6) == 0
        assert g.power(1, -1) == 5
        assert g.element_order(2) == 3

    def test_find_isomorphism_negative(self):
        assert find_isomorphism(cyclic_group(4), direct_product(cyclic_group(2), cyclic_group(2))) is None

    def test_associativity_sampled_for_larger_groups(self):
        # order 120 > exhaustive limit: constructor must still accept it
        g = symmetric_group(5)
        assert g.order == 120

    def test_whole_subgroup(self):
        g = cyclic_group(3)
        assert whole_subgroup(g).order == 3

    def test_all_perm_labels_unique(self):
        g = symmetric_group(4)
        assert len(set(g.labels)) == g.order

    def test_memory_env_cap(self, monkeypatch):
        monkeypatch.setenv("COCYCLE_MAX_MEM_MB", "1")
        with pytest.raises(SizeLimit):
            cyclic_group(800)  # 800^2 table over the 1 MB budget
        monkeypatch.delenv("COCYCLE_MAX_MEM_MB")
        assert cyclic_group(800).order == 800

    def test_automorphism_groups(self):
        from cocycle.groups import automorphism_group

        assert len(automorphism_group(cyclic_group(4))) == 2
        assert len(automorphism_group(symmetric_group(3))) == 6
        assert len(automorphism_group(quaternion_group())) == 24
        v4 = direct_product(cyclic_group(2), cyclic_group(2))
        autos = automorphism_group(v4)
        assert len(autos) == 6
        for perm in autos:
            for a in v4.elements():
                for b in v4.elements():
                    assert perm[v4.mul(a, b)] == v4.mul(perm[a], perm[b])
