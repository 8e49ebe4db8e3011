import json

import pytest

from depknap import (
    Element,
    Instance,
    InstanceFormatError,
    Quality,
    Vdg,
    explicit_edges,
    generate_instance,
    instance_from_json,
    instance_to_json,
    validate,
)
from _oracles import micro_instance, mk_instance


class TestQuality:
    def test_combine_sign_product(self):
        assert Quality.POSITIVE.combine(Quality.POSITIVE) is Quality.POSITIVE
        assert Quality.POSITIVE.combine(Quality.NEGATIVE) is Quality.NEGATIVE
        assert Quality.NEGATIVE.combine(Quality.NEGATIVE) is Quality.POSITIVE

    def test_combine_non_specified_absorbs(self):
        assert Quality.NON_SPECIFIED.combine(Quality.POSITIVE) is Quality.NON_SPECIFIED


class TestVdgConstruction:
    def test_from_edges_rejects_out_of_range(self):
        with pytest.raises(ValueError, match="outside node range"):
            Vdg.from_edges(3, [(0, 5, Quality.POSITIVE, 0.5)])

    def test_from_edges_rejects_duplicate_pair(self):
        with pytest.raises(ValueError, match="duplicate"):
            Vdg.from_edges(
                3,
                [(0, 1, Quality.POSITIVE, 0.5), (0, 1, Quality.NEGATIVE, 0.3)],
            )

    def test_empty_graph_has_no_edges(self):
        assert explicit_edges(Vdg.empty(4)) == []


class TestValidate:
    def test_well_formed_instance_is_valid(self):
        assert validate(micro_instance()) == []

    def test_strength_with_non_specified_quality(self):
        vdg = Vdg.from_edges(3, [(0, 2, Quality.NON_SPECIFIED, 0.5)])
        inst = Instance(
            elements=tuple(Element(f"e{i}", 1.0, 1.0) for i in range(3)),
            capacity=1.0,
            vdg=vdg,
        )
        problems = validate(inst)
        assert len(problems) == 1
        assert "(0, 2)" in problems[0] and "non-specified" in problems[0]

    def test_strength_out_of_range(self):
        vdg = Vdg.from_edges(3, [(0, 2, Quality.POSITIVE, 1.2)])
        inst = Instance(
            elements=tuple(Element(f"e{i}", 1.0, 1.0) for i in range(3)),
            capacity=1.0,
            vdg=vdg,
        )
        problems = validate(inst)
        assert len(problems) == 1
        assert "outside [0, 1]" in problems[0]

    def test_zero_strength_with_sign(self):
        vdg = Vdg.from_edges(2, [(0, 1, Quality.POSITIVE, 0.0)])
        inst = Instance(
            elements=(Element("a", 1.0, 1.0), Element("b", 1.0, 1.0)),
            capacity=1.0,
            vdg=vdg,
        )
        assert any("zero strength" in p for p in validate(inst))

    def test_self_dependency(self):
        vdg = Vdg.from_edges(2, [(1, 1, Quality.NEGATIVE, 0.4)])
        inst = Instance(
            elements=(Element("a", 1.0, 1.0), Element("b", 1.0, 1.0)),
            capacity=1.0,
            vdg=vdg,
        )
        assert any("self-dependency" in p for p in validate(inst))

    def test_negative_scalars_and_duplicate_ids(self):
        inst = Instance(
            elements=(Element("a", -1.0, 2.0), Element("a", 3.0, -4.0)),
            capacity=-1.0,
            vdg=Vdg.empty(2),
        )
        problems = validate(inst)
        assert any("negative value" in p for p in problems)
        assert any("negative weight" in p for p in problems)
        assert any("negative capacity" in p for p in problems)
        assert any("duplicate id" in p for p in problems)

    def test_graph_size_mismatch(self):
        inst = Instance(
            elements=(Element("a", 1.0, 1.0),),
            capacity=1.0,
            vdg=Vdg.empty(3),
        )
        assert any("3 nodes" in p for p in validate(inst))

    def test_no_elements(self):
        inst = Instance(elements=(), capacity=0.0, vdg=Vdg.empty(0))
        assert any("no elements" in p for p in validate(inst))

    def test_non_finite_scalars(self):
        inst = Instance(
            elements=(Element("a", float("nan"), 1.0),),
            capacity=float("inf"),
            vdg=Vdg.empty(1),
        )
        problems = validate(inst)
        assert any("value is not finite" in p for p in problems)
        assert any("capacity is not finite" in p for p in problems)


class TestExplicitEdges:
    def test_single_edge(self):
        vdg = Vdg.from_edges(3, [(0, 2, Quality.POSITIVE, 0.9)])
        assert explicit_edges(vdg) == [(0, 2, Quality.POSITIVE, 0.9)]

    def test_ordering_ascending_i_then_j(self):
        vdg = Vdg.from_edges(
            2,
            [(1, 0, Quality.NEGATIVE, 0.3), (0, 1, Quality.POSITIVE, 0.8)],
        )
        assert explicit_edges(vdg) == [
            (0, 1, Quality.POSITIVE, 0.8),
            (1, 0, Quality.NEGATIVE, 0.3),
        ]

    def test_valid_instances_never_yield_non_specified_or_zero(self):
        for seed in range(25):
            inst = generate_instance(6, 0.5, 0.5, seed)
            assert validate(inst) == []
            for _, _, quality, strength in explicit_edges(inst.vdg):
                assert quality is not Quality.NON_SPECIFIED
                assert strength != 0.0


class TestJsonRoundTrip:
    def test_round_trip_micro(self):
        inst = micro_instance()
        assert instance_from_json(instance_to_json(inst)) == inst

    def test_round_trip_generated(self):
        for seed in range(20):
            inst = generate_instance(7, 0.4, 0.5, seed)
            assert instance_from_json(instance_to_json(inst)) == inst

    def test_serialized_shape(self):
        data = json.loads(instance_to_json(micro_instance()))
        assert set(data) == {"elements", "capacity", "dependencies"}
        assert data["dependencies"] == [
            {"from": "e1", "to": "e3", "quality": "+", "strength": 0.9}
        ]


class TestJsonParsing:
    def _base(self):
        return {
            "elements": [
                {"id": "e1", "value": 10.0, "weight": 5.0},
                {"id": "e2", "value": 8.0, "weight": 5.0},
            ],
            "capacity": 10.0,
            "dependencies": [
                {"from": "e1", "to": "e2", "quality": "+", "strength": 0.9}
            ],
        }

    def test_parses_base(self):
        inst = instance_from_json(json.dumps(self._base()))
        assert inst.n == 2
        assert inst.vdg.rho[0][1] == 0.9

    def test_unicode_minus_accepted(self):
        data = self._base()
        data["dependencies"][0]["quality"] = "−"
        inst = instance_from_json(json.dumps(data))
        assert inst.vdg.sigma[0][1] is Quality.NEGATIVE

    def test_unknown_top_level_field(self):
        data = self._base()
        data["comment"] = "nope"
        with pytest.raises(InstanceFormatError, match="comment"):
            instance_from_json(json.dumps(data))

    def test_unknown_element_field(self):
        data = self._base()
        data["elements"][0]["cost"] = 1
        with pytest.raises(InstanceFormatError, match="cost"):
            instance_from_json(json.dumps(data))

    def test_unknown_dependency_field(self):
        data = self._base()
        data["dependencies"][0]["note"] = "x"
        with pytest.raises(InstanceFormatError, match="note"):
            instance_from_json(json.dumps(data))

    @pytest.mark.parametrize("strength", [0, 0.0, 1.5, -0.2])
    def test_strength_outside_unit_interval(self, strength):
        data = self._base()
        data["dependencies"][0]["strength"] = strength
        with pytest.raises(InstanceFormatError, match="outside"):
            instance_from_json(json.dumps(data))

    def test_strength_exactly_one_accepted(self):
        data = self._base()
        data["dependencies"][0]["strength"] = 1.0
        assert instance_from_json(json.dumps(data)).vdg.rho[0][1] == 1.0

    def test_bad_quality(self):
        data = self._base()
        data["dependencies"][0]["quality"] = "?"
        with pytest.raises(InstanceFormatError, match="quality"):
            instance_from_json(json.dumps(data))

    def test_unknown_id(self):
        data = self._base()
        data["dependencies"][0]["to"] = "zzz"
        with pytest.raises(InstanceFormatError, match="zzz"):
            instance_from_json(json.dumps(data))

    def test_self_dependency_rejected(self):
        data = self._base()
        data["dependencies"][0]["to"] = "e1"
        with pytest.raises(InstanceFormatError, match="self-dependency"):
            instance_from_json(json.dumps(data))

    def test_duplicate_pair_rejected(self):
        data = self._base()
        data["dependencies"].append(
            {"from": "e1", "to": "e2", "quality": "-", "strength": 0.5}
        )
        with pytest.raises(InstanceFormatError, match="duplicate pair"):
            instance_from_json(json.dumps(data))

    def test_duplicated_id_referenced_by_dependency(self):
        data = self._base()
        data["elements"].append({"id": "e1", "value": 1.0, "weight": 1.0})
        with pytest.raises(InstanceFormatError, match="duplicated"):
            instance_from_json(json.dumps(data))

    def test_duplicated_id_unreferenced_parses_then_fails_validation(self):
        data = self._base()
        data["dependencies"] = []
        data["elements"].append({"id": "e2", "value": 1.0, "weight": 1.0})
        inst = instance_from_json(json.dumps(data))
        assert any("duplicate id" in p for p in validate(inst))

    def test_negative_value_parses_then_fails_validation(self):
        data = self._base()
        data["elements"][0]["value"] = -3
        inst = instance_from_json(json.dumps(data))
        assert any("negative value" in p for p in validate(inst))

    def test_boolean_is_not_a_number(self):
        data = self._base()
        data["capacity"] = True
        with pytest.raises(InstanceFormatError, match="number"):
            instance_from_json(json.dumps(data))

    def test_non_finite_constant_rejected(self):
        text = '{"elements": [], "capacity": Infinity, "dependencies": []}'
        with pytest.raises(InstanceFormatError, match="non-finite"):
            instance_from_json(text)

    def test_top_level_must_be_object(self):
        with pytest.raises(InstanceFormatError, match="object"):
            instance_from_json("[1, 2]")

    def test_invalid_json(self):
        with pytest.raises(InstanceFormatError, match="invalid JSON"):
            instance_from_json("{")

    def test_missing_capacity(self):
        data = self._base()
        del data["capacity"]
        with pytest.raises(InstanceFormatError, match="capacity"):
            instance_from_json(json.dumps(data))

    def test_missing_dependencies_defaults_to_none(self):
        data = self._base()
        del data["dependencies"]
        inst = instance_from_json(json.dumps(data))
        assert explicit_edges(inst.vdg) == []


class TestInstanceHelpers:
    def test_index_of(self):
        inst = micro_instance()
        assert inst.index_of("e2") == 1
        with pytest.raises(ValueError, match="unknown element id 'nope'"):
            inst.index_of("nope")

    def test_index_of_ambiguous(self):
        inst = mk_instance([("a", 1, 1), ("a", 2, 2)], 3)
        with pytest.raises(ValueError, match="ambiguous"):
            inst.index_of("a")
