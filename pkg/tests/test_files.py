import pytest

from femtosleep import files
from femtosleep.coverage import SweepRow
from femtosleep.files import ConfigError


def test_layout_round_trip(tmp_path, layout):
    p = tmp_path / "layout.toml"
    p.write_text(files.dump_layout(layout))
    assert files.load_layout(p) == layout


def test_ring_placement(tmp_path):
    p = tmp_path / "l.toml"
    p.write_text(
        """
free_space_factor = 0.05
[macro]
radius_m = 500
[[station]]
name = "Depot"
ring = 2
angle_deg = 90
fap_count = 2
factor = 0.9
"""
    )
    L = files.load_layout(p)
    s = L.station("Depot")
    assert (round(s.position.x, 9), round(s.position.y, 9)) == (0.0, 200.0)
    assert (s.fap_count, s.fap_radius, s.factor) == (2, 15.0, 0.9)
    assert L.free_space_factor == 0.05


@pytest.mark.parametrize(
    "text",
    [
        "[[station]]\nring = 1\n",
        '[[station]]\nname = "a"\n',
        '[[station]]\nname = "a"\nring = 9\n',
        '[[station]]\nname = "a"\nring = 1\nx_m = 3\ny_m = 4\n',
        '[[station]]\nname = "a"\nring = 1\nfactor = "high"\n',
        "[macro]\nradius = 3\n",
        "not toml [",
    ],
)
def test_malformed_layout(tmp_path, text):
    p = tmp_path / "bad.toml"
    p.write_text(text)
    with pytest.raises(ConfigError):
        files.load_layout(p)


def test_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        files.load_layout(tmp_path / "nope.toml")


def test_scenario(tmp_path):
    p = tmp_path / "s.toml"
    p.write_text("seed = 9\nhorizon_h = 2\nstep_min = 30\nhourly_mean_users = [" + ", ".join(["1"] * 24) + "]\n")
    s = files.load_scenario(p)
    assert (s.seed, s.n_steps, s.hourly_mean_users[0]) == (9, 4, 1.0)


def test_scenario_bad_profile(tmp_path):
    p = tmp_path / "s.toml"
    p.write_text("hourly_mean_users = [1, 2]\n")
    with pytest.raises(ConfigError):
        files.load_scenario(p)


def test_csv_formats(tmp_path):
    p = files.write_sweep_csv(tmp_path / "s.csv", [SweepRow(0, 1, 0.0), SweepRow(3, 5, 1 / 3)])
    assert p.read_text() == "fap_count,n_users,p_off\n0,1,0.000000\n3,5,0.333333\n"
    p = files.write_energy_csv(tmp_path / "e.csv", [(0.0, 0.0, 0.0)])
    assert p.read_text() == "hours,energy_kwh_traditional,energy_kwh_proposed\n0.000000,0.000000,0.000000\n"


def test_summary_round_trip(tmp_path):
    values = dict.fromkeys(files.SUMMARY_KEYS, 0.25)
    p = files.write_summary(tmp_path / "summary.txt", values)
    assert p.read_text().splitlines()[0] == "bs_off_fraction=0.250000"
    assert files.read_summary(p) == values
