import pytest

from omlie.algebra import OmegaLieAlgebra, OmegaLsaAlgebra
from omlie.catalog import instantiate, list_entries
from omlie.errors import AlgebraLoadError
from omlie.fields import QALPHA, QQ
from omlie.fileformat import emit_algebra_text, parse_algebra_text

A_ALPHA_FILE = """
# three dimensional example over the rational function field
kind = lie
field = Q(alpha)
dim = 3
basis = x, y, z

[brackets]
x,y = x
x,z = x + y
y,z = z + alpha*x

[omega]
y,z = -1
"""


class TestParse:
    def test_parametric_lie_file(self):
        L = parse_algebra_text(A_ALPHA_FILE)
        assert isinstance(L, OmegaLieAlgebra)
        assert L.field is QALPHA
        assert L.basis_names == ("x", "y", "z")
        assert L.bracket.pair(0, 1) == (QALPHA.one, QALPHA.zero, QALPHA.zero)
        assert L.bracket.pair(1, 2) == (QALPHA.alpha, QALPHA.zero, QALPHA.one)
        assert L.omega.entry(1, 2) == -QALPHA.one
        assert L == instantiate("A_alpha", {}, QALPHA)

    def test_abelian_file_with_empty_sections(self):
        text = "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[brackets]\n\n[omega]\n"
        L = parse_algebra_text(text)
        assert L.dim == 2
        assert all(not c for blk in L.bracket.coeffs for vec in blk for c in vec)

    def test_sections_optional_entirely(self):
        L = parse_algebra_text("kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n")
        assert L.dim == 2

    def test_lsa_file(self):
        text = emit_algebra_text(instantiate("LSA3-2", {"a1": "1/4"}, QQ))
        A = parse_algebra_text(text)
        assert isinstance(A, OmegaLsaAlgebra)
        assert A == instantiate("LSA3-2", {"a1": "1/4"}, QQ)


class TestParseErrors:
    def err(self, text):
        with pytest.raises(AlgebraLoadError) as exc:
            parse_algebra_text(text)
        return str(exc.value)

    def test_both_orders_rejected_for_lie(self):
        msg = self.err(
            "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[brackets]\nu,v = u\nv,u = v\n"
        )
        assert "antisymmetry" in msg and "line 8" in msg

    def test_self_bracket_rejected(self):
        assert "omit" in self.err(
            "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[brackets]\nu,u = v\n"
        )

    def test_unknown_basis_name(self):
        assert "unknown basis name" in self.err(
            "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[brackets]\nu,w = u\n"
        )

    def test_dim_mismatch(self):
        assert "basis lists" in self.err("kind = lie\nfield = Q\ndim = 3\nbasis = u, v\n")

    def test_missing_header(self):
        assert "missing header" in self.err("kind = lie\nfield = Q\ndim = 2\n")

    def test_bad_scalar(self):
        assert "column" in self.err(
            "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[omega]\nu,v = (1 + 2\n"
        )

    def test_alpha_over_q_rejected(self):
        assert "alpha" in self.err(
            "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[omega]\nu,v = alpha\n"
        )

    def test_wrong_section_for_kind(self):
        assert "not allowed" in self.err(
            "kind = lie\nfield = Q\ndim = 2\nbasis = u, v\n\n[products]\nu,v = u\n"
        )

    def test_axiom_failure_carries_report(self):
        text = (
            "kind = lie\nfield = Q\ndim = 3\nbasis = x, y, z\n\n[brackets]\n"
            "x,y = x\nx,z = x + y\ny,z = z + 2*x\n\n[omega]\ny,z = 1\n"
        )
        with pytest.raises(AlgebraLoadError) as exc:
            parse_algebra_text(text)
        assert exc.value.report is not None
        assert not exc.value.report.ok
        # same file loads for inspection when checking is deferred
        L = parse_algebra_text(text, check=False)
        assert L.dim == 3

    def test_duplicate_product_rejected(self):
        assert "duplicate" in self.err(
            "kind = lsa\nfield = Q\ndim = 2\nbasis = u, v\n\n[products]\nu,v = u\nu,v = v\n"
        )

    def test_unknown_field(self):
        assert "unknown field" in self.err("kind = lie\nfield = R\ndim = 1\nbasis = u\n")


class TestRoundTrip:
    def _instances(self):
        out = []
        for entry in list_entries():
            parametric = any(s.name == "alpha" for s in entry.slots)
            if entry.kind == "lie":
                field = QALPHA if parametric else QQ
                out.append(instantiate(entry.name, {}, field))
                if parametric:
                    out.append(instantiate(entry.name, {"alpha": "1/2"}, QQ))
            else:
                out.append(instantiate(entry.name, {"a1": "-3", "a2": "1/6", "a3": "2"}, QQ))
                out.append(instantiate(entry.name, {"a1": "alpha"}, QALPHA))
        return out

    def test_parse_emit_round_trip_for_all_catalog_instances(self):
        for algebra in self._instances():
            text = emit_algebra_text(algebra)
            again = parse_algebra_text(text)
            assert again == algebra, algebra

    def test_emission_is_deterministic(self):
        a = instantiate("P2", {}, QQ)
        assert emit_algebra_text(a) == emit_algebra_text(a)
