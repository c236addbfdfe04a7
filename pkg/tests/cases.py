"""Fixed group corpora and property checkers shared by the unit and acceptance suites.

Each ``check_*`` function returns ``(instances_checked, failures)`` so callers can
both assert and report.
"""

from collections import Counter

from blockheight.blocktheory import INF, block_covering, block_partition, nu
from blockheight.chartable import character_table
from blockheight.combinatorics import nakayama_blocks
from blockheight.groups import alternating, builtin, symmetric
from blockheight.permgroup import PermGroup, is_p_power
from blockheight.pgroups import MetacyclicSpec, metacyclic, mh_pgroup, wreath_cyclic_symmetric


def frobenius_20():
    """AGL(1,5) on 5 points: x -> x+1, x -> 2x."""
    return PermGroup([[1, 2, 3, 4, 0], [0, 2, 4, 1, 3]], 5, "F20")


def _gen_of_order(group, order):
    orders = group.element_orders
    i = next(i for i in range(len(orders)) if orders[i] == order)
    return group.element(i)


def _cyclic_part(group, order, name):
    return group.subgroup([_gen_of_order(group, order)], name)


def _first_generator_closure(group, name):
    return group.normal_closure([group.generators[0]], name)


def _derived(group):
    return group.derived_subgroup()


def _metacyclic_base(spec):
    g = metacyclic(spec)
    return g, g.subgroup([g.generators[0]], f"C{spec.p ** spec.m}")


def normal_pairs_p_power_index():
    """(G, N, p) with N normal in G and [G:N] a non-trivial power of p."""
    pairs = []
    s4, s3, a4 = builtin("S4"), builtin("S3"), builtin("A4")
    pairs.append((s4, a4, 2))
    pairs.append((a4, a4.derived_subgroup(), 3))
    pairs.append((s3, s3.derived_subgroup(), 2))
    pairs.append((symmetric(5), alternating(5), 2))
    pairs.append((symmetric(6), alternating(6), 2))
    for name, p in (("PGL(2,9)", 2), ("M10", 2), ("PGammaL(2,8)", 3), ("SL(2,3)", 3), ("2.A6.2_2", 2)):
        g = builtin(name)
        pairs.append((g, _derived(g), p))
    pairs.append(_metacyclic_base(MetacyclicSpec(3, 2, 1, 4)) + (3,))
    pairs.append(_metacyclic_base(MetacyclicSpec(5, 2, 1, 6)) + (5,))
    d8 = builtin("D8")
    pairs.append((d8, _cyclic_part(d8, 4, "C4"), 2))
    f20 = frobenius_20()
    pairs.append((f20, _cyclic_part(f20, 5, "C5"), 2))
    w = wreath_cyclic_symmetric(3, 2)
    pairs.append((w, _first_generator_closure(w, "C3^2"), 2))
    w = wreath_cyclic_symmetric(2, 3)
    pairs.append((w, w.normal_closure([w.generators[0], w.generators[2]], "C2wrA3"), 2))
    return pairs


def normal_pairs_p_prime_index():
    """(G, N, p) with N normal in G and p not dividing [G:N]."""
    pairs = []
    s4, s3, a4 = builtin("S4"), builtin("S3"), builtin("A4")
    pairs.append((s4, a4, 3))
    pairs.append((a4, a4.derived_subgroup(), 2))
    pairs.append((s3, s3.derived_subgroup(), 3))
    pairs.append((symmetric(5), alternating(5), 3))
    pairs.append((symmetric(5), alternating(5), 5))
    for name, p in (("PGL(2,9)", 3), ("PGL(2,9)", 5), ("PGammaL(2,8)", 2), ("PGammaL(2,8)", 7),
                    ("SL(2,3)", 2), ("M10", 3)):
        g = builtin(name)
        pairs.append((g, _derived(g), p))
    f20 = frobenius_20()
    pairs.append((f20, _cyclic_part(f20, 5, "C5"), 5))
    return pairs


def outer_p_extensions():
    """(A, G, p) with G normal in A and A/G a cyclic p-group acting by outer automorphisms."""
    out = []
    g = builtin("PGammaL(2,8)")
    out.append((g, _derived(g), 3))
    for spec in (MetacyclicSpec(3, 2, 1, 4), MetacyclicSpec(3, 2, 1, 7), MetacyclicSpec(5, 2, 1, 6),
                 MetacyclicSpec(2, 3, 1, 3), MetacyclicSpec(2, 3, 1, 5), MetacyclicSpec(2, 3, 1, 7)):
        a, base = _metacyclic_base(spec)
        out.append((a, base, spec.p))
    d8 = builtin("D8")
    out.append((d8, _cyclic_part(d8, 4, "C4"), 2))
    q8 = builtin("Q8")
    out.append((q8, _cyclic_part(q8, 4, "C4"), 2))
    sl23 = builtin("SL(2,3)")
    out.append((sl23, _derived(sl23), 3))
    s3 = builtin("S3")
    out.append((s3, s3.derived_subgroup(), 2))
    f20 = frobenius_20()
    out.append((f20, _cyclic_part(f20, 5, "C5"), 2))
    return out


def check_defect_additivity():
    """Unique covering block, and d(B) = d(b) + a whenever b is G-invariant."""
    checked, failures = 0, []
    for g, n, p in normal_pairs_p_power_index():
        index = g.order // n.order
        assert is_p_power(index, p) and index > 1 and g.is_normal(n), (g.name, n.name, p)
        a = nu(index, p)
        cov = block_covering(g, n, p)
        for b in range(len(cov.sub_partition)):
            covering = cov.covering_blocks(b)
            if len(covering) != 1:
                failures.append((g.name, p, b, f"{len(covering)} covering blocks"))
                continue
            if b in cov.invariant:
                checked += 1
                big = covering[0]
                if cov.partition.defects[big] != cov.sub_partition.defects[b] + a:
                    failures.append((g.name, p, b, cov.partition.defects[big], cov.sub_partition.defects[b], a))
    return checked, failures


def check_p_prime_index():
    """Covering blocks across a p'-index normal subgroup share defect and mh."""
    checked, failures = 0, []
    for g, n, p in normal_pairs_p_prime_index():
        assert (g.order // n.order) % p and g.is_normal(n)
        cov = block_covering(g, n, p)
        for big, subs in enumerate(cov.cover):
            for b in subs:
                checked += 1
                same_defect = cov.partition.defects[big] == cov.sub_partition.defects[b]
                same_mh = cov.partition.mh[big] == cov.sub_partition.mh[b]
                if not (same_defect and same_mh):
                    failures.append((g.name, p, big, b))
    return checked, failures


def _cyclic_defect(part, k, sylow_cyclic, full):
    d = part.defects[k]
    return d <= 1 or (d == full and sylow_cyclic)


def check_outer_cyclic():
    """mh(B_A) = mh(D_A) for blocks of A covering a cyclic-defect block of G.

    D_A is known when B_A has full defect (a Sylow subgroup) or defect at most
    two (then D_A is abelian and mh(D_A) is infinite).
    """
    checked, failures = 0, []
    for a_group, g, p in outer_p_extensions():
        cov = block_covering(a_group, g, p)
        full_g = nu(g.order, p)
        syl_g = g.sylow_subgroup(p)
        g_cyclic = syl_g.order == 1 or max(syl_g.element_orders) == syl_g.order
        full_a = nu(a_group.order, p)
        mh_syl_a = mh_pgroup(a_group.sylow_subgroup(p), p)
        for big, subs in enumerate(cov.cover):
            if not any(_cyclic_defect(cov.sub_partition, b, g_cyclic, full_g) for b in subs):
                continue
            d = cov.partition.defects[big]
            if d == full_a:
                expected = mh_syl_a
            elif d <= 2:
                expected = INF
            else:
                continue
            checked += 1
            if cov.partition.mh[big] != expected:
                failures.append((a_group.name, p, big, cov.partition.mh[big], expected))
    return checked, failures


def height_zero_corpus():
    """Groups of order at most 2000 used for the abelian-Sylow property."""
    names = ["S3", "S4", "A4", "A5", "D8", "Q8", "SL(2,3)", "C6", "S5", "A6", "PSL(2,7)", "PGL(2,7)",
             "PSL(2,11)", "PSL(2,8)", "PSL(2,13)", "SL(2,5)", "PGL(2,9)", "M10", "PGammaL(2,8)",
             "2.A6.2_2", "2.A6.2_2*", "PGL(2,5)"]
    groups = [builtin(n) for n in names]
    groups += [frobenius_20(), wreath_cyclic_symmetric(3, 2), wreath_cyclic_symmetric(2, 3),
               wreath_cyclic_symmetric(2, 4), wreath_cyclic_symmetric(3, 3),
               metacyclic(MetacyclicSpec(3, 2, 1, 4)), metacyclic(MetacyclicSpec(5, 2, 1, 6))]
    return [g for g in groups if g.order <= 2000]


def check_abelian_sylow_height_zero(primes=(2, 3, 5, 7)):
    checked, failures = 0, []
    for g in height_zero_corpus():
        table = character_table(g)
        for p in primes:
            if g.order % p:
                continue
            if not g.sylow_subgroup(p).is_abelian:
                continue
            part = block_partition(table, p)
            full = nu(g.order, p)
            for k in range(len(part)):
                if part.defects[k] == full:
                    checked += 1
                    if part.mh[k] != INF:
                        failures.append((g.name, p, k, part.mh[k]))
    return checked, failures


def sn_character_labels(n):
    """Partition label of each row of the S_n table, from degree and transposition value."""
    from blockheight.combinatorics import degree_sn, partitions

    g = symmetric(n)
    table = character_table(g)
    swap = tuple([1, 0] + list(range(2, n)))
    col = int(g.classes.class_of[g.id_of(swap)])

    def content_sum(lam):
        return sum(j - i for i, row in enumerate(lam) for j in range(row))

    # chi(transposition) = chi(1) * content_sum / binom(n, 2)
    by_key = {}
    for lam in partitions(n):
        d = degree_sn(lam)
        key = (d, d * content_sum(lam) * 2 // (n * (n - 1)))
        by_key.setdefault(key, []).append(lam)
    labels = []
    for row in table.irreducibles:
        key = (int(row[0]), int(row[col]))
        (lam,) = by_key[key]
        labels.append(lam)
    return table, labels


def check_nakayama(max_n=7, primes=(2, 3, 5)):
    checked, failures = 0, []
    for n in range(2, max_n + 1):
        table, labels = sn_character_labels(n)
        assert len(set(labels)) == len(labels)
        for p in primes:
            part = block_partition(table, p)
            ours = sorted(sorted(labels[i] for i in b) for b in part.blocks)
            theirs = sorted(sorted(v) for v in nakayama_blocks(n, p).values())
            checked += 1
            if ours != theirs:
                failures.append((n, p))
    return checked, failures


def degree_counter(table):
    return Counter(table.degrees)
