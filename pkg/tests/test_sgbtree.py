import io
import json
from math import comb

import pytest

from conftest import P, random_system
from nondeg import PolyRing
from nondeg.ideal import groebner_basis, ideal, interreduce, quotient
from nondeg.sgbtree import SgbTree
from nondeg.signature import sgb

R = PolyRing(["x", "y", "z"], P)
x, y, z = R.gens()


def mono(f):
    return f.monos[0]


def drain(T, nu, cap=500):
    out = []
    for _ in range(cap):
        g = T.get_syzygy(nu)
        if not g.monos:
            return out
        out.append(g)
    raise AssertionError(f"get_syzygy({nu}) did not reach 0 within {cap} calls")


def staircase_cap(ring, outputs):
    # pairwise non-divisible monomials of degree <= D: at most the number of monomials of degree <= D
    D = max((ring.mono_degree(mono(g)) for g in outputs), default=0)
    return comb(D + ring.nvars, ring.nvars)


# -- examples ---------------------------------------------------------------


def test_insert_into_empty_tree():
    T = SgbTree(R)
    root = T.insert_node(x * y)
    assert root == 1 and T.root == 1
    assert len(T.G) == 1 and T.G[0].sig == (1, 0)
    assert not T.process_spair(root)
    with pytest.raises(ValueError):
        T.insert_node(x)


def test_labels_increase_and_edge_insert():
    T = SgbTree(R)
    a = T.insert_node(x)
    b = T.insert_node(y, ("child", a))
    c = T.insert_node(z, ("above", b))
    d = T.insert_node(x + y, ("above", a))
    assert T.labels == [1, 2, 3, 4] == [a, b, c, d]
    assert T.root == d
    assert T.parent[b] == c and T.parent[c] == a and T.parent[a] == d
    assert T.path(b) == [d, a, c, b]
    assert T.leq(d, b) and T.leq(c, b) and not T.leq(b, c)


def test_bad_node_raises():
    T = SgbTree(R)
    T.insert_node(x)
    for call in (T.basis, T.get_syzygy, T.process_spair):
        with pytest.raises(KeyError):
            call(42)
    with pytest.raises(KeyError):
        T.insert_node(y, ("child", 42))
    with pytest.raises(ValueError):
        T.insert_node(y, ("sideways", 1))


def test_two_node_path_example():
    T = SgbTree(R)
    root = T.insert_node(x * y)
    nu = T.insert_node(x * z, ("child", root))
    g = T.get_syzygy(nu)
    assert mono(g) == mono(y)
    assert quotient(ideal(R, [x * y]), x * z).contains(g)
    assert not T.get_syzygy(nu).monos
    assert interreduce(T.basis(nu)) == interreduce([x * y, x * z])


def test_process_spair_zero_reduction_fills_syzygy_set():
    T = SgbTree(R)
    root = T.insert_node(x * y)
    nu = T.insert_node(x * z, ("child", root))
    assert T.process_spair(nu)
    assert [mono(q) for q in T.S_all[nu]] == [mono(y)]


def test_nonzerodivisor_gives_no_syzygy():
    T = SgbTree(R)
    root = T.insert_node(x)
    nu = T.insert_node(y, ("child", root))
    assert not T.get_syzygy(nu).monos


def test_single_node_basis_and_idempotence():
    T = SgbTree(R)
    root = T.insert_node(x * y + z)
    assert T.basis(root) == [x * y + z]
    T2 = SgbTree(R)
    r = T2.insert_node(x * y)
    nu = T2.insert_node(x * z + y, ("child", r))
    first = T2.basis(nu)
    before = dict(T2.stats)
    assert T2.basis(nu) == first
    assert T2.stats == before


def test_sibling_branches_do_not_share_pairs():
    T = SgbTree(R)
    root = T.insert_node(x * y)
    a = T.insert_node(x * z, ("child", root))
    b = T.insert_node(y * z, ("child", root))
    log = io.StringIO()
    T.trace = log
    T.basis(a)
    indices = {json.loads(line)["index"] for line in log.getvalue().splitlines()}
    assert indices <= {root, a}
    # the other branch still finds its own syzygy
    assert mono(T.get_syzygy(b)) == mono(x)
    assert interreduce(T.basis(b)) == groebner_basis([x * y, y * z], R)


def test_edge_insert_reseeds_descendants():
    # root(xy) <- nu(xz); then insert y above nu: I_{<nu} becomes <xy, y>
    T = SgbTree(R)
    root = T.insert_node(x * y)
    nu = T.insert_node(x * z, ("child", root))
    assert mono(T.get_syzygy(nu)) == mono(y)
    T.insert_node(y, ("above", nu))
    rest = drain(T, nu)
    prev = ideal(R, [x * y, y])
    assert all(quotient(prev, x * z).contains(g) for g in rest)
    assert interreduce(T.basis(nu)) == groebner_basis([x * y, y, x * z], R)


def test_dump_structure():
    T = SgbTree(R)
    root = T.insert_node(x * y)
    nu = T.insert_node(x * z, ("child", root))
    T.basis(nu)
    d = json.loads(T.dump_json())
    assert d["root"] == root
    nodes = {n["label"]: n for n in d["nodes"]}
    assert nodes[nu]["parent"] == root and nodes[root]["parent"] is None
    assert nodes[nu]["poly"] == "x*z"
    assert nodes[nu]["syzygies_pending"] == 1 and nodes[nu]["syzygies_found"] == 1


# -- conformance on seeded systems -----------------------------------------


def path_tree(ring, F):
    T = SgbTree(ring)
    nu = T.insert_node(F[0])
    nodes = [nu]
    for f in F[1:]:
        nu = T.insert_node(f, ("child", nu))
        nodes.append(nu)
    return T, nodes


@pytest.mark.parametrize("seed", range(30))
def test_two_node_paths_match_flat_engine(seed):
    ring, F = random_system(seed)
    F = F + [F[0] * F[0] + ring.gen(0)] if len(F) == 1 else F
    for i in range(len(F) - 1):
        T, (a, b) = path_tree(ring, F[i : i + 2])
        outs = drain(T, b)
        assert len(outs) <= staircase_cap(ring, outs)
        prev = ideal(ring, [F[i].monic()])
        lms = [mono(g) for g in outs]
        for k, m in enumerate(lms):
            assert not any(ring.mono_divides(mono(g), m) for g in prev.basis)
            assert all(not ring.mono_divides(o, m) for j, o in enumerate(lms) if j != k)
        assert (prev + outs).equals(quotient(prev, F[i + 1]))
        assert interreduce(T.basis(b)) == interreduce(sgb(F[i : i + 2]).basis)
        assert interreduce(T.basis(b)) == groebner_basis(F[i : i + 2], ring)


@pytest.mark.parametrize("seed", range(20))
def test_longer_paths_match_oracle(seed):
    ring, F = random_system(seed)
    T, nodes = path_tree(ring, F)
    for k, nu in enumerate(nodes):
        assert interreduce(T.basis(nu)) == groebner_basis(F[: k + 1], ring)


@pytest.mark.parametrize("seed", range(20))
def test_state_only_grows(seed):
    ring, F = random_system(seed)
    T, nodes = path_tree(ring, F)
    leaf = nodes[-1]
    sizes = (len(T.G), {v: len(T.S_all[v]) for v in nodes})
    while T.process_spair(leaf):
        new = (len(T.G), {v: len(T.S_all[v]) for v in nodes})
        assert new[0] >= sizes[0]
        assert all(new[1][v] >= sizes[1][v] for v in nodes)
        sizes = new
