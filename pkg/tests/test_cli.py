import json
import random
import subprocess
import sys
from fractions import Fraction

import pytest

from pathlift import canonical_rv, dirac, lift_polygonal, validate_space
from pathlift import gen
from pathlift.cli import main
from pathlift.lifting import PolygonalPath
from pathlift.serialize import (
    blocks_to_obj,
    dumps,
    lift_to_obj,
    measure_to_obj,
    polygonal_to_obj,
    sampled_to_obj,
    space_to_obj,
)

F = Fraction
Z = F(0)


def write(path, obj):
    path.write_text(dumps(obj))
    return str(path)


@pytest.fixture
def crossing_pair(tmp_path):
    space = validate_space(["a", "b"], [[Z, F(1)], [F(1), Z]])
    from pathlift import Measure

    mu = Measure(space, (F(3, 4), F(1, 4)))
    nu = Measure(space, (F(1, 4), F(3, 4)))
    mu_file = write(tmp_path / "mu.json", measure_to_obj(mu))
    nu_file = write(tmp_path / "nu.json", measure_to_obj(nu))
    return space, mu, nu, mu_file, nu_file


class TestProkhorovCommand:
    def test_identical_measures(self, tmp_path, crossing_pair, capsys):
        _, mu, _, mu_file, _ = crossing_pair
        assert main(["prokhorov", mu_file, mu_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["q_coupling"] == "0/1"
        assert doc["q_subsets"] == "0/1"
        assert doc["equal"] is True

    def test_hand_instance(self, crossing_pair, capsys):
        _, _, _, mu_file, nu_file = crossing_pair
        assert main(["prokhorov", mu_file, nu_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["q_coupling"] == "1/2"
        assert doc["q_subsets"] == "1/2"
        assert doc["equal"] is True

    def test_oracle_disabled_above_sixteen_points(self, tmp_path, capsys):
        names = [f"p{i:02d}" for i in range(17)]
        d = [[Z if i == j else F(1) for j in range(17)] for i in range(17)]
        space = validate_space(names, d)
        mu = dirac(space, "p00")
        mu_file = write(tmp_path / "big.json", measure_to_obj(mu))
        assert main(["prokhorov", mu_file, mu_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["q_subsets"] is None
        assert "disabled" in doc["subsets_note"]

    def test_parse_error_points_to_line(self, tmp_path, capsys):
        bad = tmp_path / "bad.json"
        bad.write_text('{\n  "space": ,\n}\n')
        assert main(["prokhorov", str(bad), str(bad)]) == 2
        err = capsys.readouterr().err
        assert "bad.json:2" in err

    def test_space_mismatch_is_precondition(self, tmp_path, crossing_pair, capsys):
        _, mu, _, mu_file, _ = crossing_pair
        other_space = validate_space(["a", "b"], [[Z, F(1, 2)], [F(1, 2), Z]])
        other = write(tmp_path / "other.json", measure_to_obj(dirac(other_space, "a")))
        assert main(["prokhorov", mu_file, other]) == 2


class TestKyfanAndMatch:
    def test_kyfan(self, tmp_path, capsys):
        space = validate_space(["a", "b"], [[Z, F(1, 2)], [F(1, 2), Z]])
        x = canonical_rv(dirac(space, "a"))
        y = canonical_rv(dirac(space, "b"))
        xf = write(tmp_path / "x.json", {"space": space_to_obj(space), "blocks": blocks_to_obj(x)})
        yf = write(tmp_path / "y.json", {"space": space_to_obj(space), "blocks": blocks_to_obj(y)})
        assert main(["kyfan", xf, yf]) == 0
        assert json.loads(capsys.readouterr().out)["rho"] == "1/2"

    def test_match(self, tmp_path, crossing_pair, capsys):
        space, mu, nu, _, nu_file = crossing_pair
        x = canonical_rv(mu)
        xf = write(tmp_path / "x.json", {"space": space_to_obj(space), "blocks": blocks_to_obj(x)})
        assert main(["match", xf, nu_file]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["rho"] == "1/2"
        assert doc["law_matched"] is True


class TestSegmentCommand:
    def test_certificate_zero_gap(self, tmp_path, capsys):
        space = validate_space(["a", "b"], [[Z, F(1)], [F(1), Z]])
        x = canonical_rv(dirac(space, "a"))
        y = canonical_rv(dirac(space, "b"))
        xf = write(tmp_path / "x.json", {"space": space_to_obj(space), "blocks": blocks_to_obj(x)})
        yf = write(tmp_path / "y.json", {"space": space_to_obj(space), "blocks": blocks_to_obj(y)})
        assert main(["segment", xf, yf, "--grid", "9"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["certificate"]["max_law_gap"] == "0/1"
        assert doc["certificate"]["endpoint_ok"] == [True, True]


class TestLiftCommand:
    def _endpoint_file(self, tmp_path, space, start, end):
        return write(
            tmp_path / "ends.json",
            {
                "space": space_to_obj(space),
                "start": blocks_to_obj(start),
                "end": blocks_to_obj(end),
            },
        )

    def test_polygonal_lift_exact(self, tmp_path, capsys):
        rng = random.Random(61)
        space = gen.rand_space(rng, 3)
        beta = gen.rand_polygonal(rng, space, 4)
        start = canonical_rv(beta.vertices[0])
        end = canonical_rv(beta.vertices[-1])
        pf = write(tmp_path / "path.json", polygonal_to_obj(beta))
        ef = self._endpoint_file(tmp_path, space, start, end)
        out = tmp_path / "lift.json"
        assert main(["lift", pf, ef, "--grid", "17", "--out", str(out)]) == 0
        doc = json.loads(out.read_text())
        assert doc["certificate"]["max_law_gap"] == "0/1"
        assert doc["certificate"]["endpoint_ok"] == [True, True]

    def test_sampled_lift_with_budgets(self, tmp_path, capsys):
        rng = random.Random(62)
        space = gen.rand_space(rng, 3)
        alpha = gen.rand_sampled(rng, space)
        pf = write(tmp_path / "path.json", sampled_to_obj(alpha))
        start = canonical_rv(alpha.eval(Z))
        end = canonical_rv(alpha.eval(F(1)))
        ef = self._endpoint_file(tmp_path, space, start, end)
        out = tmp_path / "lift.json"
        code = main(
            ["lift", pf, ef, "--tol", "1/25", "--iters", "3", "--grid", "17", "--out", str(out)]
        )
        assert code == 0
        doc = json.loads(out.read_text())
        cert = doc["certificate"]
        assert len(cert["decay_table"]) == 2
        assert cert["endpoint_ok"] == [True, True]

    def test_endpoint_mismatch_exit_two(self, tmp_path, capsys):
        space = validate_space(["a", "b"], [[Z, F(1)], [F(1), Z]])
        beta = PolygonalPath(space, (Z, F(1)), (dirac(space, "a"), dirac(space, "b")))
        x = canonical_rv(dirac(space, "a"))
        pf = write(tmp_path / "path.json", polygonal_to_obj(beta))
        ef = self._endpoint_file(tmp_path, space, x, x)
        assert main(["lift", pf, ef]) == 2
        assert "endpoint law" in capsys.readouterr().err

    def test_lipschitz_too_small_exit_two(self, tmp_path, capsys):
        space = validate_space(["a", "b"], [[Z, F(1)], [F(1), Z]])
        beta = PolygonalPath(space, (Z, F(1)), (dirac(space, "a"), dirac(space, "b")))
        doc = polygonal_to_obj(beta)
        doc["kind"] = "sampled"
        doc["lipschitz"] = "1/10"
        pf = write(tmp_path / "path.json", doc)
        start = canonical_rv(dirac(space, "a"))
        end = canonical_rv(dirac(space, "b"))
        ef = self._endpoint_file(tmp_path, space, start, end)
        assert main(["lift", pf, ef, "--tol", "1/4", "--iters", "2"]) == 2
        assert "Lipschitz" in capsys.readouterr().err


class TestVerifyAndRelift:
    def test_verify_round_trip_idempotent(self, tmp_path, capsys):
        rng = random.Random(63)
        space = gen.rand_space(rng, 3)
        beta = gen.rand_polygonal(rng, space, 3)
        lift = lift_polygonal(
            beta, canonical_rv(beta.vertices[0]), canonical_rv(beta.vertices[-1])
        )
        lf = write(tmp_path / "lift.json", lift_to_obj(lift))
        pf = write(tmp_path / "path.json", polygonal_to_obj(beta))
        assert main(["verify", lf, pf, "--grid", "9"]) == 0
        first = capsys.readouterr().out
        assert main(["verify", lf, pf, "--grid", "9"]) == 0
        assert capsys.readouterr().out == first

    def test_relift_within_budget(self, tmp_path, capsys):
        rng = random.Random(64)
        space = gen.rand_space(rng, 3)
        beta = gen.rand_polygonal(rng, space, 3)
        lift = lift_polygonal(
            beta, canonical_rv(beta.vertices[0]), canonical_rv(beta.vertices[-1])
        )
        lf = write(tmp_path / "lift.json", lift_to_obj(lift))
        pf = write(tmp_path / "path.json", polygonal_to_obj(beta))
        assert main(["relift", lf, pf, "--tol", "1/4", "--grid", "9"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["certificate"]["max_law_gap"] == "0/1"


class TestCubeCommand:
    def test_base_case_reduces_to_segment(self, tmp_path, capsys):
        from pathlift.serialize import weights_to_obj

        rng = random.Random(65)
        space = gen.rand_space(rng, 3)
        mu, nu = gen.rand_measure(rng, space), gen.rand_measure(rng, space)
        cf = write(
            tmp_path / "corners.json",
            {
                "space": space_to_obj(space),
                "corners": [weights_to_obj(mu), weights_to_obj(nu)],
            },
        )
        assert main(["cube", cf, "--grid", "5"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["dimension"] == 1
        assert all(g == "0/1" for g in doc["law_gap"])
        assert len(doc["adjacent_rho"]) == 4

    def test_dimension_cap(self, tmp_path, capsys):
        rng = random.Random(66)
        space = gen.rand_space(rng, 2)
        weights = [["1/2", "1/2"]] * 6
        cf = write(
            tmp_path / "corners.json",
            {"space": space_to_obj(space), "corners": weights},
        )
        assert main(["cube", cf]) == 2
        assert "dimension" in capsys.readouterr().err


class TestSelftestCommand:
    def test_passes_and_prints_suites(self, capsys):
        assert main(["selftest", "--seed", "0"]) == 0
        out = capsys.readouterr().out
        assert "result: PASS" in out
        assert "prokhorov-two-routes" in out

    def test_deterministic_across_processes(self):
        cmd = [sys.executable, "-m", "pathlift", "selftest", "--seed", "0"]
        first = subprocess.run(cmd, capture_output=True, text=True)
        second = subprocess.run(cmd, capture_output=True, text=True)
        assert first.returncode == 0 and second.returncode == 0
        assert first.stdout == second.stdout
