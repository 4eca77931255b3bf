from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fourfold_lab.fourfold import (
    AbelianizationBlocked,
    ComplementSpec,
    FourManifoldModel,
    GenusMismatch,
    GluingSpec,
    MarkedSurface,
    MissingBundleData,
    MissingImages,
    ModelError,
    NonzeroSquare,
    char_numbers,
    fiber_complement_presentation,
    fiber_sum,
    mv_h1_cokernel,
    product_with_circle,
    verify_model,
)
from fourfold_lab.intlinalg import IntegerMatrix, hyperbolic_form
from fourfold_lab.knotforge import (
    ThreeManifoldModel,
    Trefoil,
    standard_knot,
    torus_knot_group,
    twist_knot_model,
    unknot,
    zero_surgery,
)
from fourfold_lab.presentations import Presentation, abelianize
from fourfold_lab.words import Word


def free_model(name, euler, sigma, ngens=2):
    """Synthetic model with a free group and an untracked empty form."""
    pres = Presentation([f"s{i}" for i in range(ngens)])
    g = ngens // 2
    surf = MarkedSurface(
        "S", g, 0, None, tuple(Word.gen(i) for i in range(2 * g))
    )
    return FourManifoldModel(
        name=name,
        euler=euler,
        signature=sigma,
        b1=ngens,
        form=IntegerMatrix.zero(0, 0),
        basis=(),
        pi1=pres,
        surfaces=(surf,),
        form_complete=False,
    )


def plain_glue(g, **kw):
    ids = tuple((Word.gen(i), Word.gen(i)) for i in range(2 * g))
    defaults = dict(
        identifications=ids,
        boundary_relation=(Word(), Word()),
        new_pairs=(),
        side_x=ComplementSpec(meridian=Word(), exact=True),
        side_y=ComplementSpec(meridian=Word(), exact=True),
    )
    defaults.update(kw)
    return GluingSpec(**defaults)


class TestCharNumbers:
    def test_examples(self):
        assert char_numbers(free_model("a", 4, 0)) == (8, Fraction(1))
        assert char_numbers(free_model("b", 0, 0)) == (0, Fraction(0))
        assert char_numbers(free_model("c", 12, 0)) == (24, Fraction(3))

    def test_non_integral_chi_flagged_by_fraction(self):
        _, chi = char_numbers(free_model("d", 1, 0))
        assert chi == Fraction(1, 4) and chi.denominator != 1


class TestProductWithCircle:
    def test_trefoil_presentation(self):
        m = zero_surgery(standard_knot(Trefoil()))
        p = product_with_circle(m)
        pres = p.pi1
        assert pres.generators == ("a", "b", "x")
        x, a, b = pres.gen("x"), pres.gen("a"), pres.gen("b")
        assert x * a * x**-1 * a**-1 in pres.relators
        assert x * b * x**-1 * b**-1 in pres.relators
        assert p.euler == 0 and p.signature == 0 and p.b1 == 2
        assert p.symplectic
        assert p.form == hyperbolic_form(1)
        assert verify_model(p).all_pass

    def test_surfaces(self):
        k = standard_knot(Trefoil())
        p = product_with_circle(zero_surgery(k))
        f = p.surface("F")
        t = p.surface("T_m")
        assert f.genus == 1 and f.self_intersection == 0
        assert f.pi1_images == k.fiber.embedding
        assert t.genus == 1
        assert t.pi1_images == (k.meridian, p.pi1.gen("x"))

    def test_unknot_gives_sphere_bundle_numbers(self):
        p = product_with_circle(zero_surgery(unknot()))
        assert (p.euler, p.signature, p.b1) == (0, 0, 2)
        assert not p.symplectic
        assert not p.form_complete
        assert verify_model(p).all_pass

    def test_torus_knot_records_fiber_genus(self):
        p = product_with_circle(zero_surgery(torus_knot_group(2, 5)))
        assert p.surface("F").genus == 2
        assert len(p.surface("F").pi1_images) == 4
        assert p.surface("T_m").genus == 1
        assert p.symplectic

    def test_missing_bundle_data(self):
        m = zero_surgery(twist_knot_model(2))
        assert m.fiber is None
        with pytest.raises(MissingBundleData):
            product_with_circle(m)

    def test_circle_name_collision_avoided(self):
        base = Presentation(["x"])
        m = ThreeManifoldModel("toy", base, base.gen("x"), 1, ())
        m = ThreeManifoldModel(
            "toy", base, base.gen("x"), 1, (),
            fiber=standard_knot(Trefoil()).fiber,
        )
        p = product_with_circle(m)
        assert p.pi1.generators == ("x", "x1")


class TestFiberComplement:
    def test_trefoil_complement_homology(self):
        k = standard_knot(Trefoil())
        rep, mu = fiber_complement_presentation(k.fiber, ["c1", "c2"])
        assert len(rep.relators) == 5
        assert mu == rep.parse_word("d y D Y")
        ab = abelianize(rep)
        assert ab.free_rank == 2 and ab.torsion == ()

    def test_killing_meridian_restores_mapping_torus(self):
        k = standard_knot(Trefoil())
        rep, mu = fiber_complement_presentation(k.fiber, ["c1", "c2"])
        closed = rep.with_relators(tuple(rep.relators) + (mu,))
        ab = abelianize(closed)
        # M_K x S^1 has H_1 = Z^2 as well; the meridian was already a commutator
        assert ab.free_rank == 2

    def test_needs_monodromy(self):
        fiber = torus_knot_group(2, 5).fiber
        with pytest.raises(MissingBundleData):
            fiber_complement_presentation(fiber, ["c%d" % i for i in range(4)])


def build_yk():
    """Twisted sum of two trefoil products: section torus to fiber torus."""
    k = standard_knot(Trefoil())
    m = zero_surgery(k)
    p1 = product_with_circle(m)
    p2 = product_with_circle(m)
    rep, mu2 = fiber_complement_presentation(k.fiber, ["c1", "c2"])

    px_space = p1.pi1
    x = px_space.gen("x")
    b = px_space.gen("b")
    c1, c2 = Word.gen(0), Word.gen(1)

    final = Presentation(["a", "b", "x", "d", "y"])
    s2_images = tuple(
        final.parse_word(w) for w in ("A b", "B a b A", "d", "y")
    )
    surfaces = (
        MarkedSurface("S2", 2, 0, (0, 1), s2_images),
        MarkedSurface("T", 1, 0, (1, 0), (final.gen("b"), final.gen("x"))),
    )
    glue = GluingSpec(
        identifications=((x, c1), (b, c2)),
        boundary_relation=(k.longitude, mu2),
        new_pairs=(("T", "S2", 1, 2),),
        side_x=ComplementSpec(
            meridian=k.longitude, kill=(1,), consumed=("F", "T_m"), exact=True
        ),
        side_y=ComplementSpec(
            meridian=mu2, consumed=("F", "T_m"), replacement=rep
        ),
        surfaces=surfaces,
        simplify_keep=("a", "b", "x", "d", "y"),
        name="Y_K(trefoil)",
    )
    return fiber_sum(p1, "T_m", p2, "F", glue)


class TestFiberSum:
    def test_yk_numbers(self):
        yk = build_yk()
        assert (yk.euler, yk.signature, yk.b1) == (0, 0, 2)
        assert char_numbers(yk) == (0, Fraction(0))
        assert yk.b2 == 2
        assert yk.form == hyperbolic_form(1)
        assert yk.symplectic

    def test_yk_group(self):
        yk = build_yk()
        assert yk.pi1.generators == ("a", "b", "x", "d", "y")
        assert len(yk.pi1.relators) == 8
        ab = abelianize(yk.pi1)
        assert ab.free_rank == 2 and ab.torsion == ()
        # the knot generators all die in homology
        for gen in ("a", "b", "x"):
            free, tor = ab.image_of(yk.pi1.gen(gen))
            assert free == (0, 0) and tor == ()

    def test_yk_verifies(self):
        rep = verify_model(build_yk())
        assert rep.all_pass, rep.describe()
        assert rep.spin is True

    def test_unsimplified_snapshot_kept(self):
        yk = build_yk()
        assert yk.pi1_unsimplified is not None
        assert yk.pi1_unsimplified.ngens == 7

    def test_genus_one_self_sum_of_torus_bundle(self):
        # two copies of the T^2 x S^2 model along the torus, identity gluing
        pres = Presentation(["p", "q"])
        pres = pres.with_relators([pres.parse_word("p q P Q")])
        t2s2 = FourManifoldModel(
            name="T2xS2",
            euler=0,
            signature=0,
            b1=2,
            form=hyperbolic_form(1),
            basis=("T", "F"),
            pi1=pres,
            surfaces=(
                MarkedSurface("T", 1, 0, (1, 0), (pres.gen("p"), pres.gen("q"))),
            ),
        )
        glue = GluingSpec(
            identifications=((pres.gen("p"), pres.gen("p")), (pres.gen("q"), pres.gen("q"))),
            boundary_relation=(Word(), Word()),
            new_pairs=(("T2", "F2", 1, 0),),
            side_x=ComplementSpec(meridian=Word(), consumed=("T", "F"), exact=True),
            side_y=ComplementSpec(meridian=Word(), consumed=("T", "F"), exact=True),
        )
        out = fiber_sum(t2s2, "T", t2s2, "T", glue)
        assert (out.euler, out.signature) == (0, 0)
        assert out.b1 == 2
        assert out.b2 == 2

    def test_errors(self):
        a = free_model("A", 0, 0, ngens=2)
        b = free_model("B", 0, 0, ngens=4)
        with pytest.raises(GenusMismatch):
            fiber_sum(a, "S", b, "S", plain_glue(1))
        bad_sq = free_model("C", 0, 0)
        bad_sq = FourManifoldModel(
            **{
                **bad_sq.__dict__,
                "surfaces": (
                    MarkedSurface("S", 1, 1, None, bad_sq.surfaces[0].pi1_images),
                ),
            }
        )
        with pytest.raises(NonzeroSquare):
            fiber_sum(bad_sq, "S", bad_sq, "S", plain_glue(1))
        no_im = free_model("D", 0, 0)
        no_im = FourManifoldModel(
            **{**no_im.__dict__, "surfaces": (MarkedSurface("S", 1, 0, None, None),)}
        )
        with pytest.raises(MissingImages):
            fiber_sum(no_im, "S", no_im, "S", plain_glue(1))

    def test_abelianization_blocked_by_bad_meridian(self):
        a = free_model("A", 0, 0, ngens=2)
        # a shadow family is only created when relators are killed; force one
        pres = Presentation(["s0", "s1"]).with_relators([Word.gen(0) ** 3])
        withrel = FourManifoldModel(**{**a.__dict__, "pi1": pres})
        glue = plain_glue(
            1,
            side_x=ComplementSpec(meridian=Word.gen(0), kill=(0,), exact=False),
            side_y=ComplementSpec(meridian=Word(), exact=True),
        )
        with pytest.raises(AbelianizationBlocked):
            fiber_sum(withrel, "S", a, "S", glue)

    def test_sum_is_symmetric_in_invariants(self):
        k = standard_knot(Trefoil())
        m = zero_surgery(k)
        p1 = product_with_circle(m)
        p2 = product_with_circle(m)
        rep, mu2 = fiber_complement_presentation(k.fiber, ["c1", "c2"])
        x, b = p1.pi1.gen("x"), p1.pi1.gen("b")
        c1, c2 = Word.gen(0), Word.gen(1)
        fwd = GluingSpec(
            identifications=((x, c1), (b, c2)),
            boundary_relation=(k.longitude, mu2),
            new_pairs=(("T", "S2", 1, 2),),
            side_x=ComplementSpec(meridian=k.longitude, kill=(1,), consumed=("F", "T_m"), exact=True),
            side_y=ComplementSpec(meridian=mu2, consumed=("F", "T_m"), replacement=rep),
        )
        rev = GluingSpec(
            identifications=((c1, x), (c2, b)),
            boundary_relation=(mu2, k.longitude),
            new_pairs=(("T", "S2", 1, 2),),
            side_x=ComplementSpec(meridian=mu2, consumed=("F", "T_m"), replacement=rep),
            side_y=ComplementSpec(meridian=k.longitude, kill=(1,), consumed=("F", "T_m"), exact=True),
        )
        one = fiber_sum(p1, "T_m", p2, "F", fwd)
        two = fiber_sum(p2, "F", p1, "T_m", rev)
        assert (one.euler, one.signature) == (two.euler, two.signature)
        assert one.form.rows == two.form.rows
        ab1, ab2 = abelianize(one.pi1), abelianize(two.pi1)
        assert (ab1.free_rank, ab1.torsion) == (ab2.free_rank, ab2.torsion)


@settings(max_examples=120)
@given(
    st.integers(-30, 30),
    st.integers(-10, 10),
    st.integers(-30, 30),
    st.integers(-10, 10),
    st.integers(1, 5),
)
def test_fiber_sum_characteristic_identities(e1, s1, e2, s2, g):
    a = free_model("A", e1, s1, ngens=2 * g)
    b = free_model("B", e2, s2, ngens=2 * g)
    out = fiber_sum(a, "S", b, "S", plain_glue(g))
    assert out.euler == e1 + e2 + 4 * (g - 1)
    assert out.signature == s1 + s2
    c1, chi = char_numbers(out)
    c1a, chia = char_numbers(a)
    c1b, chib = char_numbers(b)
    assert c1 == c1a + c1b + 8 * (g - 1)
    assert chi == chia + chib + (g - 1)


class TestMayerVietoris:
    def test_identity_map(self):
        out = mv_h1_cokernel(IntegerMatrix.identity(2))
        assert out.is_trivial()

    def test_zero_map(self):
        out = mv_h1_cokernel(IntegerMatrix([[0], [0]]))
        assert out.free_rank == 2 and out.torsion == ()

    def test_torsion(self):
        out = mv_h1_cokernel(IntegerMatrix([[2, 0], [0, 1]]))
        assert out.free_rank == 0 and out.torsion == (2,)

    def test_xk_inclusion_matrix(self):
        # columns: circle factor, section handle (2), fiber handle (2);
        # rows: the two surviving H_1 generators on each side
        mat = IntegerMatrix(
            [
                [0, 1, 0, 0, 0],
                [0, 0, 1, 0, 0],
                [0, 0, 0, 1, 0],
                [0, 0, 0, 0, 1],
            ]
        )
        assert mv_h1_cokernel(mat).is_trivial()


class TestVerifyModel:
    def test_detects_wrong_signature(self):
        pres = Presentation(["p", "q"]).with_relators([Word.gen(0) * Word.gen(1) * Word.gen(0) ** -1 * Word.gen(1) ** -1])
        bad = FourManifoldModel(
            name="tampered",
            euler=0,
            signature=1,
            b1=2,
            form=hyperbolic_form(1),
            basis=("A", "B"),
            pi1=pres,
        )
        rep = verify_model(bad)
        assert not rep.all_pass
        assert any(c.name == "signature" for c in rep.failures())

    def test_canonical_class_checks(self):
        pres = Presentation(["p"])
        model = FourManifoldModel(
            name="toy",
            euler=4,
            signature=0,
            b1=0,
            form=hyperbolic_form(1),
            basis=("S", "T"),
            pi1=pres.with_relators([Word.gen(0)]),
            canonical_class=(2, 2),
        )
        rep = verify_model(model)
        names = {c.name: c.ok for c in rep.checks}
        assert names["canonical-square"] is True
        assert names["canonical-characteristic"] is True
        assert rep.spin is True

    def test_b1_check_skipped_on_unknown_count(self):
        from fourfold_lab.presentations import ShadowFamily

        pres = Presentation(["p"])
        pres = Presentation(
            ["p"], [], [ShadowFamily("mystery", "generators", basis=(), count_known=False)]
        )
        model = FourManifoldModel(
            name="toy",
            euler=2,
            signature=0,
            b1=1,
            form=IntegerMatrix.zero(0, 0),
            basis=(),
            pi1=pres,
            form_complete=False,
        )
        rep = verify_model(model)
        check = next(c for c in rep.checks if c.name == "b1-abelianization")
        assert check.ok is None

    def test_assumption_flag_recorded(self):
        rep = verify_model(free_model("A", 0, 0))
        assert "no-h2-torsion" in rep.assumptions


class TestModelJson:
    def test_roundtrip(self):
        yk = build_yk()
        again = FourManifoldModel.loads(yk.dumps())
        assert again.name == yk.name
        assert again.form == yk.form
        assert again.basis == yk.basis
        assert again.pi1 == yk.pi1
        assert again.surfaces == yk.surfaces
        assert again.canonical_class == yk.canonical_class
