from __future__ import annotations

import random

import pytest

from conftest import rand_graph
from oddsolve import dp
from oddsolve.certificates import (
    Certificate,
    CertificateError,
    parse_certificate,
    verify,
    write_certificate,
)
from oddsolve.graph import Graph, gen_family
from oddsolve.oracle import oracle_odd_ds
from oddsolve.parity import even_two_coloring, gallai_odd_even, odd_orientation
from oddsolve.rankdec import caterpillar, heuristic_order


def tree(g: Graph):
    return caterpillar(g, heuristic_order(g))


def test_payload_shape_validation():
    with pytest.raises(CertificateError):
        Certificate("mos", 2, coloring=(0, 1))  # set problems carry a set
    with pytest.raises(CertificateError):
        Certificate("chi-odd", 2, vertex_set=0b11)
    with pytest.raises(CertificateError):
        Certificate("odd-orient", 1, vertex_set=1)
    with pytest.raises(CertificateError):
        Certificate("nosuch", 1, vertex_set=1)


def test_roundtrip_all_payload_kinds():
    g = gen_family("cycle", 6)
    t = tree(g)
    val, mask = dp.solve_mos(g, t)
    certs = [Certificate("mos", val, vertex_set=mask)]
    q, colors = dp.chi_odd(g, t)
    certs.append(Certificate("chi-odd", q, coloring=colors))
    certs.append(Certificate("odd-orient", g.m, arcs=odd_orientation(g).arcs))
    for cert in certs:
        text = write_certificate(cert)
        assert parse_certificate(text) == cert
        ok, detail = verify(g, cert)
        assert ok, detail


def test_certificates_are_one_indexed_on_disk():
    cert = Certificate("mos", 2, vertex_set=0b101)
    text = write_certificate(cert)
    assert "set 1 3" in text
    cert2 = Certificate("odd2col", 2, coloring=(0, 1))
    assert "color 1 1" in write_certificate(cert2)
    assert "color 2 2" in write_certificate(cert2)


def test_parse_errors():
    with pytest.raises(CertificateError):
        parse_certificate("value 2\nset 1 2\n")  # missing problem
    with pytest.raises(CertificateError):
        parse_certificate("problem mos\nset 1 2\n")  # missing value
    with pytest.raises(CertificateError):
        parse_certificate("problem mos\nvalue 2\nset 1\nset 2\n")
    with pytest.raises(CertificateError):
        parse_certificate("problem odd2col\nvalue 2\ncolor 1 1\ncolor 1 2\n")
    with pytest.raises(CertificateError):
        parse_certificate("problem mos\nvalue 2\nfoo 1\n")
    with pytest.raises(CertificateError):
        parse_certificate("problem chi-odd\nvalue 1\ncolor 1 1\ncolor 3 1\n")


def test_verify_set_problems():
    g = gen_family("cycle", 6)
    ok, _ = verify(g, Certificate("mos", 2, vertex_set=0b011))
    assert ok
    # wrong order claimed
    ok, detail = verify(g, Certificate("mos", 3, vertex_set=0b011))
    assert not ok and "claimed value 3" in detail
    # even-degree vertex inside
    ok, detail = verify(g, Certificate("mos", 2, vertex_set=0b101))
    assert not ok and "vertex 1" in detail
    # vertices beyond the graph
    ok, detail = verify(g, Certificate("mos", 1, vertex_set=1 << 9))
    assert not ok


def test_verify_domination():
    g = gen_family("cycle", 4)
    val, mask = oracle_odd_ds(g)
    ok, _ = verify(g, Certificate("odd-ds", val, vertex_set=mask))
    assert ok
    ok, detail = verify(g, Certificate("odd-ds", 1, vertex_set=0b0001))
    assert not ok and "vertex" in detail


def test_verify_coloring_budgets():
    g = gen_family("cycle", 6)
    colors = dp.chi_odd(g, tree(g))[1]
    ok, _ = verify(g, Certificate("chi-odd", 3, coloring=colors))
    assert ok
    # odd2col certificates may never use three classes
    ok, detail = verify(g, Certificate("odd2col", 2, coloring=colors))
    assert not ok and "class" in detail
    # length mismatch
    ok, detail = verify(g, Certificate("chi-odd", 3, coloring=colors[:-1]))
    assert not ok


def test_verify_gallai_and_even_colorings():
    rng = random.Random(81)
    for _ in range(15):
        g = rand_graph(rng, 7)
        a, b = gallai_odd_even(g)
        coloring = tuple(0 if a >> v & 1 else 1 for v in range(g.n))
        ok, detail = verify(g, Certificate("gallai-oe", a.bit_count(), coloring=coloring))
        assert ok, detail
        # swapping the parts must fail unless both happen to qualify
        swapped = tuple(1 - c for c in coloring)
        ok_sw, _ = verify(g, Certificate("gallai-oe", b.bit_count(), coloring=swapped))
        tc = even_two_coloring(g)
        ok, detail = verify(g, Certificate("even2col", 2, coloring=tc.colors))
        assert ok, detail


def test_verify_orientation():
    g = gen_family("cycle", 4)
    arcs = odd_orientation(g).arcs
    ok, _ = verify(g, Certificate("odd-orient", 4, arcs=arcs))
    assert ok
    flipped = ((arcs[0][1], arcs[0][0]),) + arcs[1:]
    ok, detail = verify(g, Certificate("odd-orient", 4, arcs=flipped))
    assert not ok and "in-degree" in detail
    # arcs must biject onto the edge set
    ok, detail = verify(g, Certificate("odd-orient", 4, arcs=arcs[:-1] + ((0, 2),)))
    assert not ok


def test_verify_reports_first_offending_vertex():
    g = gen_family("path", 6)  # 0-1-2-3-4-5
    # vertices {0,1,2} induce a path: vertex 2 (1-indexed) has degree 2
    ok, detail = verify(g, Certificate("mos", 3, vertex_set=0b111))
    assert not ok
    assert "order" in detail or "vertex 2" in detail
    ok, detail = verify(g, Certificate("mes", 3, vertex_set=0b111))
    assert not ok and "vertex 1" in detail
