import json
from fractions import Fraction
from pathlib import Path

from rest_framework import serializers
from rest_framework.exceptions import ValidationError

from weyl_torus.exact_linalg import abelian_type


class RationalField(serializers.Field):
    """Exact rationals as "num/den" strings."""

    def to_representation(self, value):
        value = Fraction(value)
        return f"{value.numerator}/{value.denominator}"

    def to_internal_value(self, data):
        try:
            return Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            raise ValidationError(f"{data!r} is not a rational number")


class MatrixField(serializers.Field):
    def to_representation(self, value):
        return [[int(entry) for entry in row] for row in value]

    def to_internal_value(self, data):
        if not isinstance(data, list) or not all(
            isinstance(row, list) for row in data
        ):
            raise ValidationError("expected a list of rows")
        try:
            return [[int(entry) for entry in row] for row in data]
        except (TypeError, ValueError):
            raise ValidationError("matrix entries must be integers")


class TorusPointField(serializers.Field):
    def to_representation(self, value):
        field = RationalField()
        return [field.to_representation(x) for x in value.coords]


class ConjugacyClassSerializer(serializers.Serializer):
    label = serializers.CharField()
    word = serializers.CharField()
    eigenvalue_orders = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField())
    )
    size = serializers.IntegerField()
    centraliser_order = serializers.IntegerField()
    element_order = serializers.IntegerField()
    reflection_length = serializers.IntegerField()
    representative = MatrixField(source="representative.matrix")
    notes = serializers.CharField()


class FixedSetReportSerializer(serializers.Serializer):
    label = serializers.CharField()
    side = serializers.CharField()
    torus_dim = serializers.IntegerField()
    invariant_factors = serializers.ListField(
        child=serializers.IntegerField()
    )
    abelian_type = serializers.SerializerMethodField()
    component_reps = serializers.ListField(child=TorusPointField())
    generator_words = serializers.ListField(child=serializers.CharField())
    permutations = serializers.ListField(
        child=serializers.ListField(child=serializers.IntegerField())
    )
    orbit_count = serializers.IntegerField()
    ramification = serializers.CharField(allow_null=True)
    lifted_points = serializers.ListField(
        child=serializers.ListField(child=RationalField())
    )
    lifted_components = serializers.IntegerField(allow_null=True)

    def get_abelian_type(self, report):
        return list(abelian_type(report.invariant_factors))


class PairingReportSerializer(serializers.Serializer):
    label = serializers.CharField()
    mu = serializers.IntegerField(allow_null=True)
    matrix = MatrixField()
    weight_factors = serializers.ListField(child=serializers.IntegerField())
    root_factors = serializers.ListField(child=serializers.IntegerField())
    well_defined = serializers.BooleanField(allow_null=True)
    nondegenerate = serializers.BooleanField(allow_null=True)
    equivariant = serializers.BooleanField(allow_null=True)
    projection_identity = serializers.BooleanField(allow_null=True)
    vacuous = serializers.BooleanField()


class SectorReportSerializer(serializers.Serializer):
    label = serializers.CharField()
    side = serializers.CharField()
    betti = serializers.ListField(child=serializers.IntegerField())
    euler = serializers.IntegerField()
    torus_dim = serializers.IntegerField()
    components = serializers.IntegerField()
    centraliser_order = serializers.IntegerField()
    even = serializers.IntegerField()
    odd = serializers.IntegerField()


class KTheoryReportSerializer(serializers.Serializer):
    side = serializers.CharField()
    k0 = serializers.IntegerField()
    k1 = serializers.IntegerField()


class FormComparisonRowSerializer(serializers.Serializer):
    label = serializers.CharField()
    betti_equal = serializers.BooleanField()
    orbit_counts_equal = serializers.BooleanField()
    fixed_set_types_equal = serializers.BooleanField()
    passed = serializers.BooleanField()


class PowerEdgeSerializer(serializers.Serializer):
    source = serializers.CharField()
    exponent = serializers.IntegerField()
    target = serializers.CharField()
    literal = serializers.BooleanField()
    centraliser_inclusion = serializers.BooleanField()


class MismatchSerializer(serializers.Serializer):
    suite = serializers.CharField()
    row = serializers.CharField()
    field = serializers.CharField()
    expected = serializers.CharField()
    actual = serializers.CharField()


class SuiteResultSerializer(serializers.Serializer):
    name = serializers.CharField()
    title = serializers.CharField()
    passed = serializers.BooleanField()
    summary = serializers.DictField()
    rows = serializers.ListField(child=serializers.DictField())
    mismatches = MismatchSerializer(many=True)
    notes = serializers.ListField(child=serializers.CharField())


class CartanFileSerializer(serializers.Serializer):
    name = serializers.CharField(required=False, default="custom")
    cartan = MatrixField()

    def validate_cartan(self, value):
        if not value or any(len(row) != len(value) for row in value):
            raise ValidationError("Cartan matrix must be square and nonempty")
        return value


class RunConfigSerializer(serializers.Serializer):
    command = serializers.CharField()
    side = serializers.ChoiceField(
        choices=["root", "weight", "both"], default="both"
    )
    format = serializers.ChoiceField(
        choices=["json", "md", "csv"], default="md"
    )
    out = serializers.CharField(required=False, allow_null=True)
    jobs = serializers.IntegerField(min_value=1)
    sample = serializers.IntegerField(min_value=1)
    cache = serializers.CharField(required=False, allow_null=True)
    cartan = serializers.CharField(required=False, allow_null=True)

    def validate_cartan(self, value):
        if value is None:
            return None
        try:
            with open(value) as source:
                data = json.load(source)
        except (OSError, ValueError) as error:
            raise ValidationError(f"cannot read {value}: {error}")
        system = CartanFileSerializer(data=data)
        system.is_valid(raise_exception=True)
        return dict(system.validated_data)

    def validate(self, attrs):
        out = attrs.get("out")
        if out and not Path(out).resolve().parent.is_dir():
            raise ValidationError(
                {"out": f"directory of {out} does not exist"}
            )
        cache = attrs.get("cache")
        if cache and Path(cache).is_file():
            raise ValidationError(
                {"cache": f"{cache} is a file, expected a directory"}
            )
        return attrs
