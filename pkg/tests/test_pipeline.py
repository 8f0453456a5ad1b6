import random
from fractions import Fraction

import pytest

from toughham.certificates import (ForbiddenWitness, HamiltonCycle, OracleLimit,
                                   RunConfig, certificate_from_record,
                                   certificate_kind, certificate_to_record,
                                   check_certificate, parse_record)
from toughham.generators import case1_synthetic, complete_split_join, random_graph
from toughham.graph import Graph, GraphError, bits, mask_of
from toughham.hamilton import CycleCert
from toughham.metrics import ToughnessWitness, scattering
from toughham.pipeline import (Decomposition, PathCover, _case1_edge, build_path_cover,
                               case1_decompose, case1_finish, case2_run,
                               expected_cover_size, min_degree_gate, run_theorem)
from toughham.recognition import InducedWitness


def petersen():
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def run_and_check(g, cfg=None):
    cfg = cfg or RunConfig()
    cert, trace = run_theorem(g, cfg)
    ok, reason = check_certificate(g, cert, cfg)
    assert ok or isinstance(cert, OracleLimit), (certificate_kind(cert), reason)
    return cert, trace


def test_run_theorem_acceptance_instance():
    g = complete_split_join(22, 2)
    cert, trace = run_theorem(g)
    assert isinstance(cert, HamiltonCycle)
    assert check_certificate(g, cert, RunConfig())[0]
    assert any("gate" in line and "dirac" in line for line in trace)


def test_run_theorem_petersen():
    g = petersen()
    cert, _ = run_theorem(g)
    # freeness runs first, so the induced-pattern witness wins
    assert isinstance(cert, ForbiddenWitness)
    assert check_certificate(g, cert, RunConfig())[0]


def test_run_theorem_disconnected():
    g = Graph.from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    cert, _ = run_theorem(g)
    assert isinstance(cert, ToughnessWitness) and cert.cutset == 0
    assert check_certificate(g, cert, RunConfig())[0]


def test_run_theorem_needs_three_vertices():
    with pytest.raises(GraphError):
        run_theorem(Graph.complete(2))


def test_gate_fires_oracle_route():
    # min degree 2 exceeds 6/12 - 1 but stays below n/2: oracle route
    g = Graph.cycle(6)
    cert = min_degree_gate(g, RunConfig(), None)
    assert isinstance(cert, HamiltonCycle)


def test_gate_low_degree_witness():
    # gate passes through (delta = 1 is under 30/12 - 1) and the derived
    # fact delta >= 2t fails, yielding a neighborhood cutset immediately
    g = Graph.from_edges(30, [(i, (i + 1) % 28) for i in range(28)]
                         + [(0, 28), (14, 29)])
    cfg = RunConfig()
    cert = min_degree_gate(g, cfg, None)
    assert isinstance(cert, ToughnessWitness)
    assert check_certificate(g, cert, cfg)[0]


def test_case1_edge_selection():
    g = case1_synthetic([2, 1, 2], 6, [2] * 8)
    assert _case1_edge(g) == (0, 2)
    # the acceptance join has no qualifying edge: unions are everything
    assert _case1_edge(complete_split_join(22, 2)) is None


def test_case1_precondition_enforced():
    g = complete_split_join(22, 2)
    with pytest.raises(GraphError):
        case1_decompose(g, (0, 1), RunConfig())


def test_case1_decomposition_invariants():
    g = case1_synthetic([2, 1, 2], 6, [2] * 8)
    dec = case1_decompose(g, _case1_edge(g), RunConfig())
    assert isinstance(dec, Decomposition)
    assert dec.violations(g) == []
    assert dec.s1_mask == mask_of([1, 3, 4])  # G1 block minus u,v
    assert dec.s2_mask.bit_count() == 6
    assert dec.d2_mask.bit_count() == 16


def test_split_check_failure_into_pattern():
    # D2 split into two pieces: a second nontrivial component appears and a
    # third component completes the forbidden pattern
    g = case1_synthetic([2, 1, 2], 6, [2] * 8)
    dec = case1_decompose(g, _case1_edge(g), RunConfig())
    drop = []
    d2 = sorted(bits(dec.d2_mask))
    half = mask_of(d2[:8])
    edges = [(u, v) for u, v in g.edges()
             if not (half >> u & 1 and dec.d2_mask >> v & 1 and not half >> v & 1)
             and not (half >> v & 1 and dec.d2_mask >> u & 1 and not half >> u & 1)]
    split = Graph.from_edges(g.n, edges)
    cfg = RunConfig()
    got = case1_decompose(split, _case1_edge(g), cfg)
    assert isinstance(got, ForbiddenWitness)
    assert check_certificate(split, got, cfg)[0]


def test_split_check_all_trivial_gives_cutset():
    # u,v plus two cut vertices, everything else pendant on the cut: the
    # punctured union neighborhood shatters the graph into singletons
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    edges += [(2, v) for v in range(4, 12)]
    edges += [(3, v) for v in range(4, 12)]
    g = Graph.from_edges(12, edges)
    cfg = RunConfig()
    assert _case1_edge(g) == (0, 1)
    got = case1_decompose(g, (0, 1), cfg)
    assert isinstance(got, ToughnessWitness)
    assert got.cutset == mask_of([2, 3])
    assert check_certificate(g, got, cfg)[0]


def _block_structure_instance(star_leaves=13):
    # G1 = {0,1,2,3} carries an induced edge-plus-vertex; D2 is a star whose
    # center is vertex 2's only far neighbor
    bridge = range(4, 10)
    center = 10
    leaves = range(11, 11 + star_leaves)
    n = 11 + star_leaves
    edges = [(0, 1), (0, 2), (1, 3)]
    edges += [(b, x) for b in bridge for x in range(n) if x != b]
    edges = [(u, v) for u, v in edges]
    edges += [(center, leaf) for leaf in leaves]
    edges += [(2, center)]
    return Graph.from_edges(n, list({tuple(sorted(e)) for e in edges}))


def test_block_structure_failure_independent_remainder():
    g = _block_structure_instance()
    cfg = RunConfig()
    got = case1_decompose(g, (0, 1), cfg)
    assert isinstance(got, ToughnessWitness)
    assert check_certificate(g, got, cfg)[0]


def test_block_structure_failure_pattern_completion():
    # same trick but the far block has an edge in the missed region
    bridge = range(4, 10)
    far = list(range(10, 24))
    n = 24
    edges = [(0, 1), (0, 2), (1, 3)]
    edges += [(b, x) for b in bridge for x in range(n) if x != b]
    # far block: complete bipartite between two halves
    edges += [(a, b) for a in far[:7] for b in far[7:]]
    g = Graph.from_edges(n, list({tuple(sorted(e)) for e in edges}))
    cfg = RunConfig()
    got = case1_decompose(g, (0, 1), cfg)
    assert isinstance(got, ForbiddenWitness)
    assert check_certificate(g, got, cfg)[0]


COVER_VARIANTS = [
    ("hamiltonian-connected", [2, 1, 2], 6, [2] * 8),
    ("one-extra-star", [3, 1, 1], 6, [2] * 8),
    ("two-extra-stars", [4, 1, 1], 6, [2] * 9),
    ("balanced-small", [2, 2], 6, [2] * 8),
    ("complete-g1", [1, 1], 6, [2] * 8),
]


@pytest.mark.parametrize("label,g1p,s2,d2p", COVER_VARIANTS)
def test_path_cover_variants(label, g1p, s2, d2p):
    g = case1_synthetic(g1p, s2, d2p)
    cfg = RunConfig(cap_oracle=64)
    dec = case1_decompose(g, _case1_edge(g), cfg)
    assert isinstance(dec, Decomposition)
    cover = build_path_cover(g, dec, cfg)
    assert isinstance(cover, PathCover), label
    g1, _ = g.induced(dec.g1_mask)
    s_value, _ = scattering(g1)
    assert cover.violations(g, dec.g1_mask, dec.g2_mask,
                            expected_cover_size(s_value)) == []
    cert = case1_finish(g, dec, cover, cfg)
    assert isinstance(cert, HamiltonCycle), label
    assert check_certificate(g, cert, cfg)[0]
    assert sorted(cert.cycle.order) == list(range(g.n))


@pytest.mark.parametrize("label,g1p,s2,d2p", [
    ("balanced-big-edged", [11, 9, 2], 24, [9] * 7 + [2]),
    ("balanced-big-independent", [11, 11], 24, [9] * 7 + [2]),
])
def test_path_cover_large_balanced(label, g1p, s2, d2p):
    g = case1_synthetic(g1p, s2, d2p)
    cfg = RunConfig(cap_oracle=128, cap_independence=128)
    dec = case1_decompose(g, _case1_edge(g), cfg)
    cover = build_path_cover(g, dec, cfg)
    assert isinstance(cover, PathCover), label
    assert len(cover.paths) == 1
    cert = case1_finish(g, dec, cover, cfg)
    assert isinstance(cert, HamiltonCycle)
    assert check_certificate(g, cert, cfg)[0]


def test_case2_split_join_direct():
    g = complete_split_join(22, 2)
    cfg = RunConfig()
    cert = case2_run(g, cfg)
    assert isinstance(cert, HamiltonCycle)
    assert check_certificate(g, cert, cfg)[0]


def blob_with_attachments(parts, attachments):
    """Complete multipartite blob plus low-degree vertices glued to it."""
    base = Graph.complete_multipartite(parts)
    n = base.n + len(attachments)
    edges = list(base.edges())
    for i, targets in enumerate(attachments):
        edges += [(base.n + i, t) for t in targets]
    return Graph.from_edges(n, edges)


def test_case2_splice_single_star():
    g = blob_with_attachments([2] * 12, [[0, 2]])
    cfg = RunConfig(cap_oracle=64)
    cert = case2_run(g, cfg)
    assert isinstance(cert, HamiltonCycle)
    assert check_certificate(g, cert, cfg)[0]
    assert g.n - 1 in cert.cycle.order


def test_case2_with_insertion():
    g = blob_with_attachments([2] * 24, [[0, 2, 4], [6, 8, 10, 12, 14, 16]])
    cfg = RunConfig(cap_oracle=64)
    trace_holder = []

    from toughham.certificates import Trace
    trace = Trace()
    cert = case2_run(g, cfg, trace)
    assert isinstance(cert, HamiltonCycle)
    assert check_certificate(g, cert, cfg)[0]
    assert any(line.startswith("insertion") for line in trace.lines)


def test_case2_rejects_case1_edges():
    g = case1_synthetic([2, 1, 2], 6, [2] * 8)
    with pytest.raises(GraphError):
        case2_run(g, RunConfig())


def test_case1_fuzz_soundness():
    rng = random.Random(314)
    cfg = RunConfig()
    outcomes = set()
    for i in range(300):
        n = rng.randrange(10, 19)
        g = random_graph(n, rng.choice([0.15, 0.25, 0.35]), seed=9000 + i)
        pick = _case1_edge(g)
        if pick is None:
            continue
        got = case1_decompose(g, pick, cfg)
        outcomes.add(type(got).__name__)
        if isinstance(got, Decomposition):
            cover = build_path_cover(g, got, cfg)
            outcomes.add(type(cover).__name__)
            if isinstance(cover, PathCover):
                cert = case1_finish(g, got, cover, cfg)
                outcomes.add(certificate_kind(cert))
                if not isinstance(cert, OracleLimit):
                    assert check_certificate(g, cert, cfg)[0]
        elif not isinstance(got, OracleLimit):
            assert check_certificate(g, got, cfg)[0]
    assert "Decomposition" in outcomes or "ToughnessWitness" in outcomes


def test_case2_fuzz_soundness():
    rng = random.Random(2718)
    cfg = RunConfig()
    for i in range(150):
        n = rng.randrange(8, 20)
        g = random_graph(n, rng.choice([0.75, 0.85, 0.95]), seed=31000 + i)
        if any(12 * (g.adj[a] | g.adj[b]).bit_count() <= 5 * n for a, b in g.edges()):
            continue
        cert = case2_run(g, cfg)
        if not isinstance(cert, OracleLimit):
            assert check_certificate(g, cert, cfg)[0]


def test_below_regime_runs_stay_sound():
    cfg = RunConfig(t=Fraction(9, 4))
    rng = random.Random(55)
    kinds = set()
    for i in range(120):
        n = rng.randrange(6, 13)
        g = random_graph(n, 0.5, seed=777 + i)
        if g.n < 3:
            continue
        cert, _ = run_theorem(g, cfg)
        kinds.add(certificate_kind(cert))
        if not isinstance(cert, OracleLimit):
            assert check_certificate(g, cert, cfg)[0]
    assert "hamilton-cycle" in kinds


def tough_free_corpus():
    """Graphs that are 11-tough and pattern-free: the theorem's hypothesis."""
    yield complete_split_join(22, 2)
    yield complete_split_join(23, 2)
    yield Graph.complete(23)
    yield Graph.complete(24)
    # complete graph minus a perfect matching: complement is 12 disjoint
    # edges, toughness (24-2)/2 = 11
    yield Graph.complete_multipartite([2] * 12)
    yield Graph.complete_multipartite([1] * 33 + [3])
    yield Graph.complete_multipartite([1] * 24 + [2, 2])


def test_theorem_conformance_on_tough_free_instances():
    from toughham.metrics import verify_tough
    from toughham.recognition import find_induced

    cfg = RunConfig()
    for g in tough_free_corpus():
        assert verify_tough(g, Fraction(11)) is None
        assert find_induced(g, "2p2+p1") is None
        cert, _ = run_theorem(g, cfg)
        assert isinstance(cert, HamiltonCycle), g
        assert check_certificate(g, cert, cfg)[0]


def test_check_certificate_rejects_bad_cycle():
    c5 = Graph.cycle(5)
    ok, _ = check_certificate(c5, HamiltonCycle(CycleCert((0, 1, 2, 3, 4))), RunConfig())
    assert ok
    ok, reason = check_certificate(c5, HamiltonCycle(CycleCert((0, 2, 4, 1, 3))),
                                   RunConfig())
    assert not ok and "0-2" in reason


def test_check_certificate_toughness_and_limit():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    cfg = RunConfig()
    assert check_certificate(g, ToughnessWitness(0, 2), cfg)[0]
    assert not check_certificate(g, ToughnessWitness(0, 3), cfg)[0]
    assert not check_certificate(g, OracleLimit("anywhere"), cfg)[0]
    wrong = ToughnessWitness(mask_of([0, 1, 2]), 1)
    assert not check_certificate(g, wrong, cfg)[0]


def test_certificate_record_round_trip():
    certs = [
        HamiltonCycle(CycleCert((0, 1, 2, 3))),
        ToughnessWitness(mask_of([1, 4]), 3),
        ForbiddenWitness(InducedWitness((0, 1, 2, 3, 4), "2p2+p1")),
        OracleLimit("case2.insert"),
    ]
    for cert in certs:
        line = certificate_to_record(cert)
        assert certificate_from_record(line) == cert
    name, fields, ids = parse_record("probe kappa_g2=5 need=4/1 -- 0 2 7")
    assert name == "probe" and fields["need"] == "4/1" and ids == (0, 2, 7)


def test_trace_mentions_thresholds_as_rationals():
    g = complete_split_join(22, 2)
    _, trace = run_theorem(g, RunConfig())
    assert any("threshold=1/1" in line for line in trace)
    assert any("t=11/1" in line for line in trace)
