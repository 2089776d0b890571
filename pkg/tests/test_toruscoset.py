"""Coset enumeration, position invariants, and the certified brackets."""

from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from wpstrata.hyp2 import GeodesicH2, INF, compose_many, translate_geodesic, translation_length, u_value
from wpstrata.toruscoset import (
    CosetWord,
    RectTorusPoint,
    delta11_bracket,
    enumerate_cosets,
    grad_sq_bracket,
    holonomy,
    identity_coset,
    u_of_coset,
)

T0 = 2.0 * math.asinh(1.0)

AA_COUNTS = [2, 2, 10, 26, 82, 242, 730, 2186]
AB_COUNTS = [0, 4, 8, 28, 80, 244, 728, 2188]

_INVERSE = {0: 1, 1: 0, 2: 3, 3: 2}


def _reduced_words(maxlen: int) -> list[tuple[int, ...]]:
    # every freely reduced word over A, A^-1, B, B^-1 up to maxlen
    out: list[tuple[int, ...]] = []
    frontier: list[tuple[int, ...]] = [()]
    for _ in range(maxlen):
        nxt = []
        for w in frontier:
            for letter in range(4):
                if w and _INVERSE[w[-1]] == letter:
                    continue
                nxt.append(w + (letter,))
        out.extend(nxt)
        frontier = nxt
    return out


def _strip(word: tuple[int, ...], kind: str) -> tuple[int, ...]:
    # shortest element of the double coset containing the word
    i, j = 0, len(word)
    while i < j and word[i] in (0, 1):
        i += 1
    tail = (0, 1) if kind == "AA" else (2, 3)
    while j > i and word[j - 1] in tail:
        j -= 1
    return word[i:j]


class TestEnumeration:
    def test_frozen_level_counts(self):
        for kind, counts in (("AA", AA_COUNTS), ("AB", AB_COUNTS)):
            words = enumerate_cosets(kind, 8)
            got = [0] * 8
            for w in words:
                got[len(w) - 1] += 1
            assert got == counts
            assert len(words) == sum(counts)

    def test_brute_force_agreement(self):
        # independent route: strip coset factors off every reduced word
        for kind in ("AA", "AB"):
            brute = set()
            for w in _reduced_words(9):
                s = _strip(w, kind)
                if s and len(s) <= 5:
                    brute.add(s)
            canon = {w.letters for w in enumerate_cosets(kind, 5)}
            assert brute == canon

    def test_sorted_by_length_then_lex(self):
        words = enumerate_cosets("AA", 4)
        keys = [(len(w), w.letters) for w in words]
        assert keys == sorted(keys)

    def test_no_duplicates(self):
        words = enumerate_cosets("AB", 6)
        assert len({w.letters for w in words}) == len(words)

    def test_validation(self):
        with pytest.raises(ValueError):
            enumerate_cosets("BB", 3)
        with pytest.raises(ValueError):
            enumerate_cosets("AA", 0)
        with pytest.raises(TypeError):
            enumerate_cosets("AA", True)
        with pytest.raises(TypeError):
            enumerate_cosets("AA", 2.0)


class TestCosetWord:
    def test_str_forms(self):
        assert str(identity_coset()) == "e"
        assert str(CosetWord((2, 0), "AB")) == "BA"
        assert str(CosetWord((3, 1, 2), "AA")) == "baB"

    def test_identity_flag(self):
        assert identity_coset().is_identity
        assert not CosetWord((2,), "AA").is_identity

    def test_len(self):
        assert len(CosetWord((2, 0, 2), "AA")) == 3

    def test_rejects_unreduced(self):
        with pytest.raises(ValueError):
            CosetWord((2, 3), "AA")
        with pytest.raises(ValueError):
            CosetWord((2, 0, 1, 2), "AA")

    def test_rejects_wrong_ends(self):
        with pytest.raises(ValueError):
            CosetWord((0, 2), "AA")  # starts with an A letter
        with pytest.raises(ValueError):
            CosetWord((2, 0), "AA")  # AA must end with a B letter
        with pytest.raises(ValueError):
            CosetWord((2, 3), "AB")
        with pytest.raises(ValueError):
            CosetWord((2,), "AB")  # AB must end with an A letter

    def test_rejects_bad_kind_and_letters(self):
        with pytest.raises(ValueError):
            CosetWord((2,), "BA")
        with pytest.raises(ValueError):
            CosetWord((2, 5), "AA")
        with pytest.raises(ValueError):
            CosetWord((), "AA")  # only the AB identity may be empty


class TestHolonomy:
    def test_defining_relation_grid(self):
        for t in np.linspace(0.05, 10.0, 50):
            p = holonomy(float(t))
            assert abs(math.sinh(0.5 * p.t) * math.sinh(0.5 * p.s) - 1.0) < 1e-12
            comm = p.A @ p.B @ p.A.inverse() @ p.B.inverse()
            assert abs(comm.trace() + 2.0) < 1e-8

    def test_translation_lengths(self):
        p = holonomy(1.7)
        assert math.isclose(translation_length(p.A), 1.7, rel_tol=1e-12)
        assert math.isclose(translation_length(p.B), p.s, rel_tol=1e-12)

    def test_square_point(self):
        p = holonomy(T0)
        assert math.isclose(p.s, p.t, rel_tol=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            holonomy(0.0)
        with pytest.raises(ValueError):
            holonomy(math.inf)

    def test_point_validation(self):
        good = holonomy(1.0)
        with pytest.raises(ValueError):
            RectTorusPoint(t=1.0, s=1.0, A=good.A, B=good.B)
        # consistent lengths but aligned axes break the commutator
        from wpstrata.hyp2 import MoebiusMap

        e = math.exp(0.5 * good.s)
        with pytest.raises(ValueError):
            RectTorusPoint(t=1.0, s=good.s, A=good.A, B=MoebiusMap(e, 0.0, 0.0, 1.0 / e))


class TestPositionInvariant:
    def test_identity_crossing(self):
        p = holonomy(1.0)
        u = u_of_coset(p, identity_coset())
        assert u.crossing and u.value == 0.0

    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_power_words(self, n):
        p = holonomy(0.9)
        word = CosetWord((2,) * n, "AA")
        u = u_of_coset(p, word)
        assert not u.crossing
        assert math.isclose(u.value, math.cosh(n * p.s), rel_tol=1e-12)

    @pytest.mark.parametrize("letters", [(2, 0), (2, 1), (3, 0), (3, 1)])
    def test_mixed_words(self, letters):
        p = holonomy(1.4)
        u = u_of_coset(p, CosetWord(letters, "AB"))
        assert not u.crossing
        assert math.isclose(u.value, math.sinh(p.t) * math.sinh(p.s), rel_tol=1e-12)

    def test_matrix_route_agreement(self):
        # the determinant-free closed forms against the geometric route
        p = holonomy(1.3)
        table = (p.A, p.A.inverse(), p.B, p.B.inverse())
        for kind in ("AA", "AB"):
            for word in enumerate_cosets(kind, 4):
                m = compose_many(table[l] for l in word.letters)
                if kind == "AA":
                    direct = abs(1.0 + 2.0 * m.b * m.c)
                else:
                    direct = abs(m.b * m.d - m.a * m.c)
                geo = u_of_coset(p, word)
                assert math.isclose(geo.value, direct, rel_tol=1e-10)

    def test_crossing_census(self):
        # no nonidentity coset crosses the first axis
        p = holonomy(1.0)
        for kind in ("AA", "AB"):
            for word in enumerate_cosets(kind, 5):
                assert not u_of_coset(p, word).crossing

    def test_square_symmetry(self):
        # at the square point, swapping the two curves permutes the
        # AA geometry onto the B-axis version of itself
        p = holonomy(T0)
        table = (p.A, p.A.inverse(), p.B, p.B.inverse())
        swap = {0: 2, 1: 3, 2: 0, 3: 1}
        b_axis = GeodesicH2(-1.0, 1.0)
        original = []
        swapped = []
        for word in enumerate_cosets("AA", 4):
            original.append(u_of_coset(p, word).value)
            m = compose_many(table[swap[l]] for l in word.letters)
            swapped.append(u_value(b_axis, translate_geodesic(m, b_axis)).value)
        for a, b in zip(sorted(original), sorted(swapped)):
            assert math.isclose(a, b, rel_tol=1e-9)


class TestGradBracket:
    def test_level_zero_analytic(self):
        t = 1.3
        br = grad_sq_bracket(t, 0)
        assert br.lo == (2.0 / math.pi) * t
        assert br.hi == (4.0 / math.pi) * math.sinh(0.5 * t)

    def test_frozen_length_one(self):
        br = grad_sq_bracket(1.0, 8)
        assert math.isclose(br.lo, 0.650705003195924, abs_tol=1e-12)
        assert math.isclose(br.hi, 0.6509377388487443, abs_tol=1e-12)

    def test_nesting_in_word_length(self):
        t = 1.0
        brs = [grad_sq_bracket(t, L) for L in (0, 2, 4, 6)]
        for prev, nxt in zip(brs, brs[1:]):
            assert nxt.lo >= prev.lo
            assert nxt.hi <= prev.hi
            assert nxt.width < prev.width

    def test_universal_floors(self):
        for t in (0.2, 1.0, T0, 4.0):
            br = grad_sq_bracket(t, 4)
            assert br.lo >= (2.0 / math.pi) * t
            assert br.hi <= (4.0 / math.pi) * math.sinh(0.5 * t)

    def test_square_point_upper(self):
        assert grad_sq_bracket(T0, 4).hi < 4.0 / math.pi

    def test_budget_keys(self):
        br = grad_sq_bracket(1.0, 6)
        assert set(br.error_budget) == {"pruned_terms", "pruned_kernel_bound"}

    def test_validation(self):
        with pytest.raises(ValueError):
            grad_sq_bracket(0.0, 4)
        with pytest.raises(ValueError):
            grad_sq_bracket(1.0, -1)
        with pytest.raises(TypeError):
            grad_sq_bracket(1.0, True)


class TestDistanceBracket:
    def test_level_zero_frozen(self):
        br = delta11_bracket(0, 1e-9)
        assert math.isclose(br.lo, 6.572523603041586, abs_tol=5e-10)
        assert math.isclose(br.hi, 6.656024983184699, abs_tol=5e-10)

    def test_level_zero_digits(self):
        br = delta11_bracket(0, 1e-9)
        assert f"{br.lo:.13f}"[:7] == "6.57252"
        assert f"{math.floor(br.hi * 1e5) / 1e5 + 1e-5:.5f}" == "6.65603"

    def test_refined_frozen(self):
        br = delta11_bracket(8, 1e-6)
        assert math.isclose(br.lo, 6.603960552668015, abs_tol=1e-9)
        assert math.isclose(br.hi, 6.604620951235697, abs_tol=1e-9)
        assert br.width < 0.0007

    def test_nesting_in_word_length(self):
        brs = [delta11_bracket(L, 1e-7) for L in (0, 2, 4)]
        for prev, nxt in zip(brs, brs[1:]):
            assert prev.lo <= nxt.lo <= nxt.hi <= prev.hi
            assert nxt.width < prev.width

    def test_refined_inside_elementary(self):
        outer = delta11_bracket(0, 1e-9)
        inner = delta11_bracket(6, 1e-7)
        assert inner.within(outer.lo - 1e-5, outer.hi + 1e-5)

    def test_budget_keys(self):
        br = delta11_bracket(2, 1e-6)
        assert set(br.error_budget) == {
            "quadrature",
            "pruned_terms",
            "pruned_kernel_bound",
            "evals",
        }

    def test_validation(self):
        with pytest.raises(ValueError):
            delta11_bracket(-1)
        with pytest.raises(TypeError):
            delta11_bracket(True)
        with pytest.raises(ValueError):
            delta11_bracket(2, 0.0)
