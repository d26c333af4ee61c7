"""
Unit tests per i modelli core e le utilità numeriche
"""

import json
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.risonanza_accelerata.core.models import (
    Alignment,
    DipolePair,
    EnergyBreakdown,
    ImageDistances,
    OracleReport,
    PairGeometry,
    ScalarParams,
    SusceptibilityTensor,
    SweepOutput,
    SweepParameter,
    SweepScale,
    SweepSpec,
    TensorCase,
)
from src.risonanza_accelerata.core.utils import (
    all_finite,
    format_significant,
    half_asinh_length,
    half_sinh_length,
    lorentz_factor,
    max_matrix_error,
    relative_error,
)


@pytest.mark.unit
class TestPairGeometry:
    """Test per la geometria della coppia"""

    def test_defaults(self):
        g = PairGeometry(alignment=Alignment.PARALLEL, separation=1.0, z=0.5)
        assert g.a == 0.0

    @pytest.mark.parametrize("alignment", list(Alignment))
    def test_mirror_contact_accepted(self, alignment):
        g = PairGeometry(alignment=alignment, separation=1.0, z=0.0)
        assert g.z == 0.0

    @pytest.mark.parametrize(
        "kwargs",
        [
            {"separation": 0.0, "z": 1.0},
            {"separation": -1.0, "z": 1.0},
            {"separation": 1.0, "z": -0.1},
            {"separation": 1.0, "z": 1.0, "a": -1.0},
            {"separation": math.inf, "z": 1.0},
            {"separation": 1.0, "z": math.nan},
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(ValidationError):
            PairGeometry(alignment=Alignment.PERPENDICULAR, **kwargs)

    def test_frozen(self, figure3_perp):
        with pytest.raises(ValidationError):
            figure3_perp.z = 1.0

    def test_with_acceleration(self, figure3_perp):
        accelerated = figure3_perp.with_acceleration(3.0)
        assert accelerated.a == 3.0
        assert accelerated.separation == figure3_perp.separation
        assert figure3_perp.a == 0.0


@pytest.mark.unit
class TestValueObjects:
    """Test per i record dei risultati"""

    def test_energy_from_terms(self):
        energy = EnergyBreakdown.from_terms(-0.25, 0.15)
        assert energy.total == -0.25 + 0.15

    def test_energy_total_must_be_sum(self):
        with pytest.raises(ValidationError):
            EnergyBreakdown(free_term=1.0, boundary_term=1.0, total=3.0)

    def test_image_not_shorter(self):
        with pytest.raises(ValidationError):
            ImageDistances(direct=2.0, image=1.0)

    def test_scalar_params_positive_frequency(self, figure3_perp):
        with pytest.raises(ValidationError):
            ScalarParams(geometry=figure3_perp, omega0=0.0)

    def test_dipole_scaling(self):
        dipoles = DipolePair(mu_a=(1.0, 2.0, 3.0), mu_b=(0.0, -1.0, 0.5)).scaled(2.0, -1.0)
        mu_a, mu_b = dipoles.arrays()
        np.testing.assert_array_equal(mu_a, [2.0, 4.0, 6.0])
        np.testing.assert_array_equal(mu_b, [0.0, 1.0, -0.5])

    def test_report_record(self):
        report = OracleReport(
            case_id="scalar/perp/x",
            model_value=1.0,
            oracle_value=1.0,
            rel_error=0.0,
            tolerance=1e-6,
            passed=True,
        )
        assert report.to_record() == {
            "case_id": "scalar/perp/x",
            "model": 1.0,
            "oracle": 1.0,
            "rel_error": 0.0,
            "tolerance": 1e-6,
            "pass": True,
        }
        assert report.informational is False

    def test_report_accepts_non_finite(self):
        report = OracleReport(
            case_id="scalar/error",
            model_value=math.nan,
            oracle_value=math.nan,
            rel_error=math.inf,
            tolerance=0.0,
            passed=False,
        )
        assert math.isinf(report.rel_error)

    def test_non_finite_record_is_strict_json(self):
        report = OracleReport(
            case_id="em/error",
            model_value=math.nan,
            oracle_value=math.nan,
            rel_error=math.inf,
            tolerance=1e-9,
            passed=False,
        )
        line = json.dumps(report.to_record(), allow_nan=False)
        assert json.loads(line) == {
            "case_id": "em/error",
            "model": None,
            "oracle": None,
            "rel_error": None,
            "tolerance": 1e-9,
            "pass": False,
        }


@pytest.mark.unit
class TestSusceptibilityTensor:
    """Test per il contenitore delle funzioni f/h"""

    def test_components_and_symmetry(self):
        tensor = SusceptibilityTensor(
            case=TensorCase.PERP_FREE,
            f={"xx": 1.0, "xz": 2.0},
            h={"xx": 3.0, "xz": 4.0},
            symmetry={"xz": -1},
        )
        assert tensor.f_ij("z", "x") == -2.0
        assert tensor.h_ij("x", "z") == 4.0
        assert tensor.f_ij("y", "y") == 0.0
        np.testing.assert_array_equal(
            tensor.h_matrix(), [[3.0, 0.0, 4.0], [0.0, 0.0, 0.0], [-4.0, 0.0, 0.0]]
        )

    def test_mismatched_keys(self):
        with pytest.raises(ValidationError):
            SusceptibilityTensor(case=TensorCase.PERP_FREE, f={"xx": 1.0}, h={"yy": 1.0})

    def test_non_canonical_pair(self):
        with pytest.raises(ValidationError):
            SusceptibilityTensor(
                case=TensorCase.PERP_FREE, f={"zx": 1.0}, h={"zx": 1.0}, symmetry={"zx": 1}
            )

    def test_missing_symmetry(self):
        with pytest.raises(ValidationError):
            SusceptibilityTensor(case=TensorCase.PERP_FREE, f={"xz": 1.0}, h={"xz": 1.0})


@pytest.mark.unit
class TestSweepSpec:
    """Test per la specifica degli sweep"""

    def test_linear_grid(self, scalar_perp):
        spec = SweepSpec(
            swept_parameter=SweepParameter.Z, start=0.0, stop=1.0, points=5, fixed=scalar_perp
        )
        np.testing.assert_allclose(spec.grid(), [0.0, 0.25, 0.5, 0.75, 1.0])
        assert spec.outputs == list(SweepOutput)

    def test_log_grid(self, scalar_perp):
        spec = SweepSpec(
            swept_parameter=SweepParameter.A,
            start=1e-3,
            stop=1e1,
            points=5,
            scale=SweepScale.LOG,
            fixed=scalar_perp,
        )
        np.testing.assert_allclose(spec.grid(), [1e-3, 1e-2, 1e-1, 1.0, 1e1], rtol=1e-12)

    @pytest.mark.parametrize(
        "start,stop,points,scale",
        [
            (1.0, 1.0, 5, SweepScale.LINEAR),
            (2.0, 1.0, 5, SweepScale.LINEAR),
            (0.0, 1.0, 5, SweepScale.LOG),
            (0.0, 1.0, 1, SweepScale.LINEAR),
        ],
    )
    def test_invalid(self, scalar_perp, start, stop, points, scale):
        with pytest.raises(ValidationError):
            SweepSpec(
                swept_parameter=SweepParameter.A,
                start=start,
                stop=stop,
                points=points,
                scale=scale,
                fixed=scalar_perp,
            )


@pytest.mark.unit
class TestNumericUtils:
    """Test per le utilità numeriche"""

    def test_lorentz_factor(self):
        assert lorentz_factor(0.0, 5.0) == 1.0
        assert lorentz_factor(2.0, 1.0) == pytest.approx(math.sqrt(2.0), rel=1e-15)

    def test_series_branches_exact_at_zero(self):
        assert half_asinh_length(0.0, 3.0) == 3.0
        assert half_sinh_length(0.0, 3.0) == 3.0

    @pytest.mark.parametrize("x", [1e-8, 5e-5, 9.99e-5])
    def test_series_branches_accurate(self, x):
        assert half_asinh_length(1.0, x) == pytest.approx(2.0 * math.asinh(0.5 * x), rel=1e-15)
        assert half_sinh_length(1.0, x) == pytest.approx(2.0 * math.sinh(0.5 * x), rel=1e-15)

    def test_relative_error_modes(self):
        assert relative_error(1.0 + 1e-9, 1.0) == (pytest.approx(1e-9, rel=1e-6), "relative")
        assert relative_error(0.0, 0.0) == (0.0, "zero")
        error, mode = relative_error(1e-6, 2e-6, envelope=1.0)
        assert mode == "envelope"
        assert error == pytest.approx(1e-6)
        assert relative_error(1.0, 0.0) == (math.inf, "relative")

    def test_max_matrix_error(self):
        oracle = np.eye(3)
        model = oracle.copy()
        model[1, 1] += 1e-6
        assert max_matrix_error(model, oracle, envelope=1.0) == pytest.approx(1e-6, rel=1e-6)

    def test_format_significant(self):
        assert format_significant(-0.0989101234567) == "-0.0989101235"
        assert format_significant(1.0, digits=3) == "1"

    def test_all_finite(self):
        assert all_finite(1.0, -2.0)
        assert not all_finite(1.0, math.nan)
