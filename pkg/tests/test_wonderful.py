"""Tests for building sets, nested sets and meridian classes."""

from itertools import combinations

import pytest
from arrduality import corpus
from arrduality.arrangement import FlatPoset, build_flat_poset
from arrduality.exceptions import BuildingSetError, NotNestedError
from arrduality.wonderful import (
    Flavor,
    all_gamma_classes,
    brute_force_nested_sets,
    building_set,
    custom_building_set,
    irreducible_factors,
    is_irreducible,
    is_nested,
    local_torus_data,
    maximal_building_set,
    meridian_class,
    minimal_building_set,
    nested_set_complex,
    projective_gamma_classes,
)


class TestIrreducibility:
    """Test irreducible flats and factorization."""

    def test_normal_crossing_is_reducible(self):
        """Test that two crossing lines factor into the lines."""
        a = corpus.boolean(2)
        origin = build_flat_poset(a).of_rank(2)[0]

        assert not is_irreducible(a, origin)
        assert [sorted(f.indices) for f in irreducible_factors(a, origin)] == [[0], [1]]

    def test_triple_point_is_irreducible(self):
        """Test that a triple point does not factor."""
        a = corpus.concurrent3()
        assert is_irreducible(a, build_flat_poset(a).of_rank(2)[0])

    def test_hyperplanes_are_irreducible(self):
        """Test that every hyperplane is irreducible."""
        a = corpus.generic3()
        assert all(is_irreducible(a, x) for x in build_flat_poset(a).of_rank(1))


class TestBuildingSets:
    """Test the minimal and maximal building sets."""

    def test_minimal_boolean(self):
        """Test the minimal building set of the coordinate planes."""
        g = minimal_building_set(corpus.boolean(3))

        assert len(g) == 3
        assert g.flavor is Flavor.MINIMAL
        assert g.problems() == []

    def test_maximal_holds_every_flat(self):
        """Test that the maximal building set holds every proper flat."""
        a = corpus.concurrent3()
        g = maximal_building_set(a)
        assert len(g) == len(build_flat_poset(a).flats) - 1

    def test_minimal_concurrent_keeps_origin(self):
        """Test that the minimal building set keeps an irreducible point."""
        a = corpus.concurrent3()
        g = minimal_building_set(a)
        assert build_flat_poset(a).of_rank(2)[0] in g

    def test_factors(self):
        """Test the factors of a normal-crossing point."""
        a = corpus.boolean(2)
        g = minimal_building_set(a)
        origin = build_flat_poset(a).of_rank(2)[0]
        assert len(g.factors(origin)) == 2

    def test_custom_without_generators_rejected(self):
        """A family missing a hyperplane cannot decompose every flat."""
        a = corpus.boolean(2)
        poset = build_flat_poset(a)
        with pytest.raises(BuildingSetError):
            custom_building_set(a, poset.of_rank(1)[:1], poset)

    def test_custom_bottom_rejected(self):
        """Test that the ambient space cannot be a member."""
        a = corpus.boolean(2)
        poset = build_flat_poset(a)
        with pytest.raises(BuildingSetError, match="positive rank"):
            custom_building_set(a, [poset.bottom], poset)

    def test_custom_flavor_needs_flats(self):
        """Test that the custom flavor needs explicit flats."""
        with pytest.raises(BuildingSetError):
            building_set(corpus.boolean(2), "custom")

    def test_unknown_flavor(self):
        """Test that an unknown flavor is rejected."""
        with pytest.raises(ValueError):
            building_set(corpus.boolean(2), "medium")


class TestNestedSets:
    """Test nested set complexes."""

    def test_boolean_minimal(self):
        """Test the nested set complex of two lines and the minimal building set."""
        complex_ = nested_set_complex(minimal_building_set(corpus.boolean(2)))

        assert complex_.f_vector == (2, 1)
        assert complex_.facets == [(0, 1)]

    def test_boolean_maximal_is_chains(self):
        """Test the nested set complex of two lines and the maximal building set."""
        complex_ = nested_set_complex(maximal_building_set(corpus.boolean(2)))
        assert complex_.f_vector == (3, 2)

    def test_concurrent_minimal(self):
        """Two of the three lines are never nested: their join is a member."""
        complex_ = nested_set_complex(minimal_building_set(corpus.concurrent3()))

        assert complex_.f_vector == (4, 3)
        assert complex_.max_face_size == 2

    @pytest.mark.parametrize("name", ["generic3", "concurrent3", "deconed_braid"])
    @pytest.mark.parametrize("flavor", ["minimal", "maximal"])
    def test_incremental_matches_brute_force(self, name, flavor):
        """Test the incremental complex against subset enumeration."""
        g = building_set(corpus.CORPUS[name](), flavor)
        assert nested_set_complex(g).faces == brute_force_nested_sets(g)

    @pytest.mark.slow
    @pytest.mark.parametrize("name", sorted(corpus.CORPUS))
    @pytest.mark.parametrize("flavor", ["minimal", "maximal"])
    def test_brute_force_across_corpus(self, name, flavor):
        """Test the incremental complex against subset enumeration on every reference arrangement."""
        g = building_set(corpus.CORPUS[name](), flavor)
        assert nested_set_complex(g).faces == brute_force_nested_sets(g)

    @pytest.mark.parametrize("name", ["boolean3", "generic4", "concurrent3", "deconed_braid", "parallels_transversal"])
    def test_maximal_nested_sets_are_chains(self, name):
        """Test that the maximal building set has the chains as nested sets."""
        g = maximal_building_set(corpus.CORPUS[name]())
        members = g.members
        chains = [
            face
            for size in range(1, len(members) + 1)
            for face in combinations(range(len(members)), size)
            if all(
                FlatPoset.leq(members[i], members[j]) or FlatPoset.leq(members[j], members[i])
                for i, j in combinations(face, 2)
            )
        ]

        assert set(nested_set_complex(g).faces) == set(chains)

    def test_faces_are_nested(self):
        """Test that every face passes the nested-set definition."""
        g = minimal_building_set(corpus.deconed_braid())
        complex_ = nested_set_complex(g)
        for face in complex_.faces:
            assert is_nested(g, complex_.face_flats(face))
            assert complex_.face_flats(face) in complex_

    def test_parallel_lines_not_nested(self):
        """Antichains whose join is empty are never nested."""
        a = corpus.two_parallels()
        g = minimal_building_set(a)
        assert not is_nested(g, g.members)


class TestMeridians:
    """Test meridian classes and local tori."""

    def test_meridian_class(self):
        """Test the meridian class of a triple point."""
        a = corpus.concurrent3()
        origin = build_flat_poset(a).of_rank(2)[0]
        assert meridian_class(a, origin) == (1, 1, 1)

    def test_minimal_gamma_classes(self):
        """Test the classes of the minimal building set."""
        assert all_gamma_classes(corpus.concurrent3()) == ((1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1))
        assert all_gamma_classes(corpus.generic3()) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))

    def test_maximal_gamma_classes_include_crossings(self):
        """Test that the maximal building set adds crossing classes."""
        classes = all_gamma_classes(corpus.boolean(2), "maximal")
        assert (1, 1) in classes

    def test_local_torus(self):
        """Test the local torus of a normal-crossing point."""
        a = corpus.boolean(2)
        poset = build_flat_poset(a)
        origin = poset.of_rank(2)[0]

        data = local_torus_data(a, origin, poset.of_rank(1), poset=poset)

        assert data.rank == 2
        assert data.generators == ((1, 0), (0, 1))
        assert data.to_dict()["flat"] == [0, 1]

    def test_local_torus_not_nested(self):
        """Test that a non-nested set is rejected."""
        a = corpus.concurrent3()
        poset = build_flat_poset(a)
        with pytest.raises(NotNestedError):
            local_torus_data(a, poset.of_rank(2)[0], poset.of_rank(1)[:2], poset=poset)

    def test_local_torus_outside_local_building_set(self):
        """Test that members outside the local building set are rejected."""
        a = corpus.generic3()
        poset = build_flat_poset(a)
        with pytest.raises(NotNestedError, match="not in the building set"):
            local_torus_data(a, poset.of_rank(1)[0], poset.of_rank(1)[1:2], poset=poset)

    def test_classes_at_infinity(self):
        """Three generic lines: only the line at infinity is added, never the apex."""
        classes = projective_gamma_classes(corpus.generic3())
        assert classes == ((-1, -1, -1),)
        assert all(len(v) == 3 for v in classes)
