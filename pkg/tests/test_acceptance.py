"""End-to-end acceptance battery.

Each test covers one acceptance criterion, prints a single PASS or FAIL
line (run with ``pytest tests/test_acceptance.py -s`` to see them), and
uses fixed seeds throughout.  The whole battery stays well under a
minute.
"""

import contextlib
import io
import itertools
import random

import graphmonoid as gm

from conftest import corpus, make_abcd, make_bouquet, make_parallel_pair

ABCD = make_abcd()


def _verdict_line(num: int, label: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    line = f"[{status}] criterion {num:02d}: {label}"
    if detail:
        line += f"  ({detail})"
    print(line)
    assert ok, line


def _random_element(g, rng, max_size=3):
    order = g.vertex_order
    size = rng.randint(1, max_size)
    counts = {}
    for _ in range(size):
        v = rng.choice(order)
        counts[v] = counts.get(v, 0) + 1
    return gm.from_counts(g, counts)


def _random_split(x, rng):
    left = {}
    right = {}
    for v in x.support:
        k = x.count(v)
        take = rng.randint(0, k)
        if take:
            left[v] = take
        if k - take:
            right[v] = k - take
    return gm.from_counts(x.graph, left), gm.from_counts(x.graph, right)


# ----------------------------------------------------------------------


def test_01_group_invariants():
    pres = gm.grothendieck_group(ABCD)
    img = {v: gm.group_image(gm.vertex_element(ABCD, v)) for v in "abcd"}
    ok = (
        pres.free_rank == 1
        and pres.invariant_factors == ()
        and img["a"] == (0,)
        and img["b"] == img["c"]
        and img["d"] == (-img["c"][0],)
        and abs(img["c"][0]) == 1
    )
    gen = img["c"]
    anti = (-gen[0],)
    hit = gm.positive_cone_probe(ABCD, gen, 3)
    hit2 = gm.positive_cone_probe(ABCD, anti, 3)
    ok = ok and hit is not None and hit2 is not None
    ok = ok and gm.group_image(hit) == gen and gm.group_image(hit2) == anti
    _verdict_line(1, "group of the four-vertex graph", ok, "free rank 1, cone full")


def test_02_composition_chain():
    chain = [{"d"}, {"c", "d"}, {"a", "b", "c", "d"}]
    ok = gm.validate_series(ABCD, chain)
    lowers = [frozenset(), frozenset({"d"}), frozenset({"c", "d"})]
    expect = [
        (("d",), ()),
        (("c",), (("c", "c"), ("c", "c"))),
        (("a", "b"), (("a", "a"), ("a", "a"), ("b", "a"))),
    ]
    kinds = ["SinkType", "LoopsWithExitType", "LoopsWithExitType"]
    for lower, upper, (verts, edges), kind in zip(lowers, chain, expect, kinds):
        restr = gm.restriction_graph(ABCD, gm.HSatSet(ABCD, frozenset(upper)))
        step = gm.quotient_graph(restr, gm.HSatSet(restr, lower))
        ok = ok and step.vertices == verts and tuple(sorted(step.edges)) == edges
        ok = ok and gm.classify_simple(step).kind == kind
    _verdict_line(2, "composition chain and its simple steps", ok)


def test_03_confluence_suite():
    rng = random.Random(20260823)
    graphs = corpus()
    failures = 0
    for _ in range(500):
        g = rng.choice(graphs)
        seed = _random_element(g, rng)
        sides = [seed, seed]
        for _ in range(rng.randint(0, 6)):
            pick = rng.randrange(2)
            cur = sides[pick]
            opts = [v for v in g.vertex_order if cur.count(v) and not g.is_sink(v)]
            if not opts:
                continue
            sides[pick] = gm.apply_rewrite(cur, rng.choice(opts))
        res = gm.decide_eq(sides[0], sides[1])
        good = (
            res.verdict == "equal"
            and gm.validate_trace(res.lhs_trace)
            and gm.validate_trace(res.rhs_trace)
            and res.lhs_trace.end == res.rhs_trace.end == res.reduct
        )
        if not good:
            failures += 1
    _verdict_line(3, "confluence on 500 random zig-zags", failures == 0,
                  f"{500 - failures}/500 equal")


def test_04_refinement_tables():
    g = make_parallel_pair()
    v, w = gm.vertex_element(g, "v"), gm.vertex_element(g, "w")
    out = gm.refine(v, v, w, 3 * w)
    t = out.table
    ok = (
        gm.decide_eq(t[0][0] + t[0][1], v).verdict == "equal"
        and gm.decide_eq(t[1][0] + t[1][1], v).verdict == "equal"
        and gm.decide_eq(t[0][0] + t[1][0], w).verdict == "equal"
        and gm.decide_eq(t[0][1] + t[1][1], 3 * w).verdict == "equal"
    )
    rng = random.Random(424242)
    graphs = corpus()
    failures = 0
    for _ in range(200):
        gg = rng.choice(graphs)
        c = _random_element(gg, rng)
        pair = []
        for _ in range(2):
            cur = c
            for _ in range(rng.randint(0, 3)):
                opts = [
                    u for u in gg.vertex_order if cur.count(u) and not gg.is_sink(u)
                ]
                if not opts:
                    break
                cur = gm.apply_rewrite(cur, rng.choice(opts))
            pair.append(cur)
        a1, a2 = _random_split(pair[0], rng)
        b1, b2 = _random_split(pair[1], rng)
        res = gm.refine(a1, a2, b1, b2)
        good = isinstance(res, gm.Refinement)
        if good:
            tt = res.table
            good = (
                gm.decide_eq(tt[0][0] + tt[0][1], a1).verdict == "equal"
                and gm.decide_eq(tt[1][0] + tt[1][1], a2).verdict == "equal"
                and gm.decide_eq(tt[0][0] + tt[1][0], b1).verdict == "equal"
                and gm.decide_eq(tt[0][1] + tt[1][1], b2).verdict == "equal"
            )
        if not good:
            failures += 1
    _verdict_line(4, "refinement tables verify", ok and failures == 0,
                  f"{200 - failures}/200 quadruples")


def test_05_no_property_counterexamples():
    bad = 0
    unknown = 0
    for g in corpus():
        for rep in (gm.check_separativity(g), gm.check_unperforation(g)):
            if rep.verdict == "counterexample":
                bad += 1
            elif rep.verdict == "unknown":
                unknown += 1
    _verdict_line(
        5,
        "separativity and unperforation sweeps",
        bad == 0,
        f"0 counterexamples, {unknown} unknown verdicts",
    )


def test_06_lattice_and_roundtrip():
    sets = gm.enumerate_hsat(ABCD)
    ok = [sorted(s.members) for s in sets] == [
        [],
        ["a"],
        ["d"],
        ["a", "d"],
        ["c", "d"],
        ["a", "b", "c", "d"],
    ]
    failures = sum(0 if gm.phi_psi_roundtrip(g) else 1 for g in corpus())
    _verdict_line(6, "subset lattice and order-ideal correspondence",
                  ok and failures == 0, f"{len(corpus())} graphs round-trip")


def test_07_quotient_counting():
    mismatches = 0
    inexact_acyclic = 0
    checked = 0
    for g in corpus():
        for h in gm.enumerate_hsat(g):
            members = tuple(sorted(h.members))
            got = gm.quotient_bounded_class_count(g, members, 4)
            if set(members) == set(g.vertices):
                expect = (1, 1)
                acyclic = True
            else:
                q = gm.quotient_graph(g, h)
                expect = gm.bounded_class_count(q, 4)
                acyclic = gm.is_acyclic(q)
            checked += 1
            if got != expect:
                mismatches += 1
            if acyclic and got[0] != got[1]:
                inexact_acyclic += 1
    _verdict_line(
        7,
        "quotient class counts follow the quotient graph",
        mismatches == 0 and inexact_acyclic == 0,
        f"{checked} subset quotients, acyclic ones exact",
    )


def test_08_acyclic_normal_forms():
    rng = random.Random(777)
    failures = 0
    acyclic = [g for g in corpus() if gm.is_acyclic(g)]
    for g in acyclic:
        for x in gm.elements_up_to(g, 3):
            want = gm.normal_form(x)
            for _ in range(100):
                cur = x
                while True:
                    opts = [
                        v
                        for v in g.vertex_order
                        if cur.count(v) and not g.is_sink(v)
                    ]
                    if not opts:
                        break
                    cur = gm.apply_rewrite(cur, rng.choice(opts))
                if cur != want:
                    failures += 1
        model = gm.class_model(g)
        roots = model.roots_up_to(4)
        nfs = {root: gm.normal_form(model.rep(root)) for root in roots}
        if len(set(nfs.values())) != len(roots):
            failures += 1
        sink_names = sorted(gm.sinks(g))
        for total in range(5):
            for combo in itertools.combinations_with_replacement(sink_names, total):
                counts = {}
                for s in combo:
                    counts[s] = counts.get(s, 0) + 1
                ms = gm.from_counts(g, counts)
                if nfs[model.class_of(ms)] != ms:
                    failures += 1
    _verdict_line(
        8,
        "acyclic normal forms are order-independent and sink-supported",
        failures == 0,
        f"{len(acyclic)} acyclic graphs",
    )


def test_09_filtration_recursion():
    failures = 0
    for g in corpus():
        for n in range(9):
            now = gm.path_counts(g, n)
            nxt = gm.path_counts(g, n + 1)
            for w in g.vertices:
                total = sum(now[v] * g.adjacency(v, w) for v in g.vertices)
                if nxt[w] != total:
                    failures += 1
        lvl = gm.matricial_filtration(g, 0)
        if any(b.size != 1 for b in lvl.blocks):
            failures += 1
    two = make_bouquet(2)
    for n in range(9):
        lvl = gm.matricial_filtration(two, n)
        if [(b.vertex, b.size) for b in lvl.blocks] != [("v", 2**n)]:
            failures += 1
    _verdict_line(9, "path-count recursion and doubling tower", failures == 0)


def test_10_smith_normal_form():
    rng = random.Random(31337)
    failures = 0
    for _ in range(1000):
        rows = rng.randint(1, 6)
        cols = rng.randint(1, 6)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        u, d, v = gm.smith_normal_form(m)
        if not gm.verify_smith(m, u, d, v):
            failures += 1
    _verdict_line(10, "Smith form on 1000 random integer matrices",
                  failures == 0)


def test_11_cli_roundtrip_determinism(tmp_path):
    failures = 0
    for g in corpus():
        if gm.parse_graph_text(gm.format_graph_text(g)) != g:
            failures += 1
    path = tmp_path / "g.graph"
    path.write_text(gm.format_graph_text(ABCD))
    from graphmonoid.cli import main

    def capture(argv):
        buf = io.StringIO()
        with contextlib.redirect_stdout(buf):
            code = main(argv)
        return code, buf.getvalue()

    commands = [
        ["eq", str(path), "b", "a+c"],
        ["eq", str(path), "--format", "json", "d", "c"],
        ["lattice", str(path), "--format", "json"],
        ["series", str(path)],
        ["k0", str(path), "--format", "json"],
        ["filtration", str(path), "--level", "3", "--format", "json"],
        ["check", str(path), "--format", "json"],
    ]
    for argv in commands:
        if capture(argv) != capture(argv):
            failures += 1
    _verdict_line(11, "text round-trip and byte-identical reruns",
                  failures == 0, f"{len(corpus())} graphs, {len(commands)} commands")
