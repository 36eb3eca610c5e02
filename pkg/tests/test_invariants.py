"""Unit tests for colorings and the invariants built from them."""
import pytest

from app.config.settings import settings
from app.core.exceptions import ModuleContextException, ResourceCapException, ValidationException
from app.services.invariants import (
    compute_invariants,
    counting_invariant,
    enumerate_colorings,
    naive_colorings,
    phi_e,
    phi_e_decomposed,
    phi_sqp,
    submodule_span,
    surjective_hom_count,
)
from app.services.link_model import arcs_and_relations, parse_gauss
from app.services.quandle_core import (
    ModuleContext,
    alexander_quandle,
    cyclic_quandle,
    trivial_quandle,
)
from app.services.ring_algebra import make_ring
from app.services.symplectic import SymplecticSpace, build_symplectic, space_from_text, standard_gram


def satisfies(coloring, presentation, table):
    """Direct table lookups, no propagation."""
    for rel in presentation.relations:
        a, b, c = coloring[rel.a - 1], coloring[rel.b - 1], coloring[rel.c - 1]
        if rel.sign > 0 and table.op(a, b) != c:
            return False
        if rel.sign < 0 and table.op(c, b) != a:
            return False
    return True


class TestColorings:
    """Test the backtracking enumeration."""

    def test_unknot_constant(self, unknot):
        """The unknot is colored by every element, once."""
        assert enumerate_colorings(unknot, cyclic_quandle(5)) == [(i,) for i in range(1, 6)]

    def test_trefoil_by_cyclic_three(self, trefoil):
        """Nine colorings: three constant and six onto."""
        colorings = enumerate_colorings(trefoil, cyclic_quandle(3))
        assert len(colorings) == 9
        assert sum(1 for c in colorings if len(set(c)) == 3) == 6
        assert colorings == sorted(colorings)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_trefoil_by_trivial(self, trefoil, n):
        """Only constant colorings survive a trivial target."""
        assert counting_invariant(trefoil, trivial_quandle(n)) == n

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_hopf_by_trivial(self, hopf, n):
        """Both components are colored independently."""
        assert counting_invariant(hopf, trivial_quandle(n)) == n * n

    def test_hopf_by_cyclic_three(self, hopf):
        """x ▷ y = x in R_3 forces x = y."""
        assert counting_invariant(hopf, cyclic_quandle(3)) == 3

    def test_every_coloring_is_valid(self, trefoil, hopf, m_v_double_prime):
        """Each returned assignment satisfies every relation."""
        for presentation in (trefoil, hopf):
            for table in (m_v_double_prime, alexander_quandle(5, 2)):
                for coloring in enumerate_colorings(presentation, table):
                    assert satisfies(coloring, presentation, table)

    def test_restricted_values(self, trefoil):
        """Restricting the values to {1} leaves the constant coloring."""
        assert enumerate_colorings(trefoil, cyclic_quandle(3), values=[1]) == [(1, 1, 1)]

    def test_workers_do_not_change_output(self, trefoil, m_v):
        """A process pool gives the same sorted list."""
        assert enumerate_colorings(trefoil, m_v, workers=2) == enumerate_colorings(trefoil, m_v, workers=1)


class TestNaiveOracle:
    """Backtracking agrees with checking every assignment."""

    @pytest.mark.parametrize("gauss", ["", "O1+U2+O3+U1+O2+U3+", "O1+U2+,O2+U1+", "O1-U2-O3-U1-O2-U3-"])
    @pytest.mark.parametrize("table", [cyclic_quandle(3), alexander_quandle(5, 2), trivial_quandle(2)])
    def test_small_targets(self, gauss, table):
        """Identical lists for small links and targets."""
        presentation = arcs_and_relations(parse_gauss(gauss))
        assert enumerate_colorings(presentation, table) == naive_colorings(presentation, table)

    def test_symplectic_targets(self, trefoil, hopf, m_v, m_v_prime, m_v_double_prime):
        """Identical lists over the 16-element symplectic quandles."""
        for table in (m_v, m_v_prime, m_v_double_prime):
            for presentation in (trefoil, hopf):
                assert enumerate_colorings(presentation, table) == naive_colorings(presentation, table)

    def test_eighty_one_elements(self, trefoil):
        """The trefoil over Z_3^4 agrees with all 81^3 assignments."""
        ring = make_ring("Z3")
        table = build_symplectic(SymplecticSpace(ring, standard_gram(ring, [1, 1])))
        assert counting_invariant(trefoil, table) == len(naive_colorings(trefoil, table))

    def test_cap(self, trefoil, monkeypatch):
        """Too many assignments are refused."""
        monkeypatch.setattr(settings, "NAIVE_ORACLE_CAP", 10)
        with pytest.raises(ResourceCapException):
            naive_colorings(trefoil, cyclic_quandle(3))


class TestPhiE:
    """Test the image-size polynomial and its decomposition."""

    def test_trefoil_by_cyclic_three(self, trefoil):
        """3q + 6q^3."""
        assert phi_e(trefoil, cyclic_quandle(3)).to_text() == "3q + 6q^3"

    @pytest.mark.parametrize("link", ["trefoil", "hopf", "unknot"])
    @pytest.mark.parametrize("target", ["cyclic_three", "m_v", "m_v_prime", "m_v_double_prime"])
    def test_specializes_to_count(self, request, link, target):
        """q = 1 gives the counting invariant."""
        presentation = request.getfixturevalue(link)
        table = cyclic_quandle(3) if target == "cyclic_three" else request.getfixturevalue(target)
        assert phi_e(presentation, table).specialize(q=1) == counting_invariant(presentation, table)

    def test_surjective_counts(self, trefoil):
        """Onto colorings of each subquandle of R_3."""
        table = cyclic_quandle(3)
        assert surjective_hom_count(trefoil, table, (1, 2, 3)) == 6
        assert surjective_hom_count(trefoil, table, (2,)) == 1

    def test_surjective_needs_subquandle(self, trefoil):
        """Two elements of R_3 generate all of it."""
        with pytest.raises(ValidationException):
            surjective_hom_count(trefoil, cyclic_quandle(3), (1, 2))

    @pytest.mark.parametrize("link", ["trefoil", "hopf"])
    def test_decomposition_matches(self, request, link, m_v):
        """Summing onto counts over subquandles gives phi_E back."""
        presentation = request.getfixturevalue(link)
        for table in (cyclic_quandle(3), alexander_quandle(5, 2), m_v):
            assert phi_e_decomposed(presentation, table) == phi_e(presentation, table)


class TestSubmoduleSpan:
    """Test the size of spans."""

    def test_zero_and_empty(self, z4):
        """{0} and the empty set span one vector."""
        context = ModuleContext(z4, 2)
        assert submodule_span([1], context) == 1
        assert submodule_span([], context) == 1

    def test_line_over_gf4(self, gf4):
        """A nonzero vector spans a line of 4 vectors."""
        assert submodule_span([9], ModuleContext(gf4, 2)) == 4

    def test_non_free_span(self, z4):
        """(1,0) and (0,2) span 8 vectors of Z_4^2."""
        assert submodule_span([2, 9], ModuleContext(z4, 2)) == 8


class TestPhiSqp:
    """Test the symplectic quandle polynomial."""

    @pytest.mark.parametrize("ring_text, gram_text, expected", [
        ("Z2", "0,1;1,0", "qz + 3qz^2"),
        ("Z3", "0,1;2,0", "qz + 8qz^3"),
        ("GF(2^2)", "0,1;1,0", "qz + 15qz^4"),
    ])
    def test_unknot(self, unknot, ring_text, gram_text, expected):
        """qz + (p^{2nm} - 1) q z^{p^m} over a nondegenerate plane."""
        table = build_symplectic(space_from_text(ring_text, 2, gram_text))
        assert phi_sqp(unknot, table).to_text() == expected

    def test_trefoil_over_z3_plane(self, trefoil):
        """Only the constant colorings survive; zero spans 1, the others span 3."""
        table = build_symplectic(space_from_text("Z3", 2, "0,1;2,0"))
        poly = phi_sqp(trefoil, table)
        assert poly.to_text() == "qz + 8qz^3"
        assert poly.specialize(q=1, z=1) == len(naive_colorings(trefoil, table))

    def test_specializations(self, trefoil, hopf, m_v, m_v_double_prime):
        """z = 1 gives phi_E; q = z = 1 gives the count."""
        for presentation in (trefoil, hopf):
            for table in (m_v, m_v_double_prime):
                poly = phi_sqp(presentation, table)
                assert poly.specialize(z=1) == phi_e(presentation, table)
                assert poly.specialize(q=1, z=1) == counting_invariant(presentation, table)

    def test_spans_divide_module_size(self, trefoil, hopf, m_v_double_prime):
        """Every span is an additive subgroup of Z_4^2."""
        for presentation in (trefoil, hopf):
            for (_, rho) in phi_sqp(presentation, m_v_double_prime).terms:
                assert rho >= 1
                assert 16 % rho == 0

    @pytest.mark.parametrize("target", ["m_v_double_prime", "m_v_prime"])
    def test_image_lies_in_its_span(self, request, trefoil, hopf, target):
        """Every image vector is in the span that rho measures, and the span is closed."""
        table = request.getfixturevalue(target)
        module = table.context.module
        for presentation in (trefoil, hopf):
            for coloring in enumerate_colorings(presentation, table):
                image = sorted(set(coloring))
                vectors = [module.vector_of(i) for i in image]
                span = module.span(vectors)
                assert set(vectors) <= span
                assert len(span) == submodule_span(image, table.context)
                for u in span:
                    for v in vectors:
                        assert module.add(u, v) in span

    def test_needs_module(self, trefoil):
        """Targets without a module structure are refused."""
        with pytest.raises(ModuleContextException):
            phi_sqp(trefoil, cyclic_quandle(3))


class TestComputeInvariants:
    """Test the combined result."""

    def test_unknot_over_gf4(self, unknot, m_v_prime):
        """Count, phi_E and phi_sqp in one record."""
        result = compute_invariants("", unknot, m_v_prime, "GF(2^2)")
        assert result.count == 16
        assert result.phi_e == "16q"
        assert result.phi_sqp == "qz + 15qz^4"

    def test_without_module(self, trefoil):
        """phi_sqp is left empty for plain tables."""
        result = compute_invariants("trefoil", trefoil, cyclic_quandle(3), "R3")
        assert result.count == 9
        assert result.phi_e == "3q + 6q^3"
        assert result.phi_sqp is None
