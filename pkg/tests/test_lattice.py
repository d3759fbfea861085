import random

import pytest

from ccc.constellation import CodeChain, residues
from ccc.f2 import code_from_words, span
from ccc.lattice import (
    combination_residues,
    construction_d,
    equivalence_report,
    hnf,
    is_lattice_direct,
    select_nested_basis,
    smallest_lattice,
)
from ccc.quantizer import dplus_chain

from conftest import all_subspaces, random_nested_chain, subgroup_closure


def test_hnf_examples():
    lat = hnf([(1, 1), (4, 0), (0, 4)])
    assert lat.basis == ((1, 1), (0, 4))
    assert lat.determinant == 4

    diag = hnf([(8, 0, 0), (0, 8, 0), (0, 0, 8)])
    assert diag.basis == ((8, 0, 0), (0, 8, 0), (0, 0, 8))
    assert diag.determinant == 512

    assert hnf([(1, 0), (0, 1)]).determinant == 1


def test_hnf_rank_deficient():
    with pytest.raises(ValueError):
        hnf([(1, 2, 3), (2, 4, 6)])


def test_hnf_canonical_under_generator_changes():
    rng = random.Random(3001)
    base = [(2, 1, 0), (0, 3, 1), (0, 0, 4)]
    reference = hnf(base)
    for _ in range(25):
        gens = [list(g) for g in base]
        # augment with random integer combinations and shuffle
        for _ in range(rng.randint(1, 4)):
            a, b = rng.sample(range(len(gens)), 2)
            r = rng.randint(-3, 3)
            gens.append([x + r * y for x, y in zip(gens[a], gens[b])])
        rng.shuffle(gens)
        assert hnf(gens) == reference


def test_hnf_membership():
    lat = hnf([(1, 1), (4, 0), (0, 4)])
    assert lat.contains((1, 1))
    assert lat.contains((2, 2))
    assert lat.contains((-3, 1))
    assert not lat.contains((1, 0))


def test_smallest_lattice_contains_all_residues():
    rng = random.Random(3002)
    for _ in range(30):
        chain = random_nested_chain(rng)
        lam = smallest_lattice(chain)
        for s in residues(chain):
            assert lam.contains(s)


def test_smallest_lattice_example1(e1):
    lam = smallest_lattice(e1)
    assert lam.determinant == 4
    assert lam.points_per_period(e1.modulus) == 4  # strictly more than the 2 residues


def test_smallest_lattice_zero_codes():
    zero = code_from_words([(0, 0, 0)])
    chain = CodeChain.of(zero, zero)
    lam = smallest_lattice(chain)
    assert lam.basis == ((4, 0, 0), (0, 4, 0), (0, 0, 4))


def test_smallest_lattice_matches_group_closure_oracle():
    rng = random.Random(3003)
    for _ in range(20):
        chain = random_nested_chain(rng, nmax=3)
        m = chain.modulus
        lam = smallest_lattice(chain)
        closure = subgroup_closure(set(residues(chain).residues) | {(0,) * chain.n}, m)
        assert lam.points_per_period(m) == len(closure)
        for p in closure:
            assert lam.contains(p)


def test_nested_basis_dplus4():
    nb = select_nested_basis(dplus_chain(4))
    assert nb.dims == (1, 3)
    assert nb.rows[0] == (1, 1, 1, 1)
    assert len(nb.rows) == 4


def test_nested_basis_prefixes_span_each_level():
    rng = random.Random(3004)
    for _ in range(30):
        chain = random_nested_chain(rng)
        nb = select_nested_basis(chain)
        for k, code in zip(nb.dims, chain.codes):
            assert span(nb.rows[:k], n=chain.n).words == code.words


def test_nested_basis_equal_codes(e5):
    assert select_nested_basis(e5).dims == (2, 2, 2)


def test_nested_basis_requires_nested():
    chain = CodeChain.of(span([(1, 1, 1)]), span([(1, 1, 0), (0, 1, 1)]))
    with pytest.raises(ValueError):
        select_nested_basis(chain)


def test_construction_d_dplus4():
    assert construction_d(dplus_chain(4)).determinant == 16


def test_construction_d_single_level_is_construction_a():
    chain = CodeChain.of(span([(1, 1)]))
    lat = construction_d(chain)
    assert lat.determinant == 2  # 2^n / 2^k = 4/2
    assert lat.contains((1, 1))
    assert not lat.contains((1, 0))


def test_construction_d_zero_dims():
    zero = code_from_words([(0, 0)])
    chain = CodeChain.of(zero, zero)
    assert construction_d(chain).basis == ((4, 0), (0, 4))


def test_construction_d_determinant_identity():
    rng = random.Random(3005)
    for _ in range(30):
        chain = random_nested_chain(rng)
        k_total = sum(select_nested_basis(chain).dims)
        lat = construction_d(chain)
        assert lat.determinant << k_total == chain.modulus ** chain.n


def test_is_lattice_direct_example1(e1):
    assert is_lattice_direct(e1) == (False, ((1, 1), (1, 1)))


def test_is_lattice_direct_dplus4():
    assert is_lattice_direct(dplus_chain(4)) == (True, None)


def test_is_lattice_direct_single_level_linear():
    rng = random.Random(3006)
    for _ in range(20):
        n = rng.randint(1, 5)
        code = span(
            [tuple(rng.randint(0, 1) for _ in range(n)) for _ in range(rng.randint(0, n))],
            n=n,
        )
        ok, witness = is_lattice_direct(CodeChain.of(code))
        assert ok and witness is None


def test_is_lattice_direct_nonlinear_codes():
    # not a linear code: missing (1,1); closure fails on (0,1)+(1,0)
    code = code_from_words([(0, 0), (1, 0), (0, 1)])
    chain = CodeChain.of(code)
    ok, witness = is_lattice_direct(chain)
    assert not ok
    s, t = witness
    m = chain.modulus
    assert tuple((a + b) % m for a, b in zip(s, t)) not in residues(chain).residues


def test_equivalence_report_rejects_nonlinear():
    chain = CodeChain.of(code_from_words([(1, 0)]))
    with pytest.raises(ValueError):
        equivalence_report(chain)


def test_equivalence_report_fixed_chains(e1, e5):
    assert equivalence_report(e5).flags() == (False, False, False, False)
    assert equivalence_report(dplus_chain(4)).flags() == (True, True, True, True)
    assert equivalence_report(dplus_chain(3)).flags() == (False, False, False, False)
    # linear but not nested: all criteria must still agree on False
    rep = equivalence_report(e1)
    assert rep.flags() == (False, False, False, False)
    assert rep.consistent


def test_equivalence_exhaustive_two_level_n2():
    for c1 in all_subspaces(2):
        for c2 in all_subspaces(2):
            if not c1.words <= c2.words:
                continue
            rep = equivalence_report(CodeChain.of(c1, c2))
            assert rep.consistent, (c1.words, c2.words, rep.flags())


def test_combination_residues_match_full_residues_when_closed():
    chain = dplus_chain(6)
    assert combination_residues(chain) == residues(chain).residues


def test_inconsistent_report_raises_on_verdict():
    from ccc.lattice import EquivalenceReport

    rep = EquivalenceReport(True, False, True, True)
    assert not rep.consistent
    with pytest.raises(RuntimeError):
        rep.verdict
