import shutil
from pathlib import Path

import pytest

from wanplan.costing import default_schedule
from wanplan.dataset import (
    ParseError,
    ValidationError,
    format_capacity,
    load_dataset,
    parse_capacity,
    write_dataset,
)

EDGES = {
    ("SK", "TE"): 30, ("SK", "KU"): 25, ("SK", "VE"): 42, ("TE", "GV"): 25, ("GV", "KI"): 32,
    ("GV", "DE"): 43, ("KI", "DE"): 35, ("KI", "ST"): 45, ("KI", "KS"): 31, ("OH", "ST"): 13,
    ("ST", "DE"): 40, ("BT", "OH"): 46, ("BT", "KS"): 38, ("BT", "PP"): 40, ("PP", "KI"): 53,
    ("PP", "KS"): 25, ("PP", "KV"): 38, ("KV", "NG"): 9, ("KV", "GE"): 53, ("VE", "NG"): 37,
    ("SHT", "VE"): 33, ("KO", "SHT"): 27, ("SHT", "RA"): 25, ("SHT", "SN"): 25, ("VE", "SN"): 22,
    ("SN", "KU"): 35, ("KU", "KP"): 52, ("RA", "NG"): 35, ("RA", "SU"): 28, ("SU", "GE"): 35,
}


@pytest.fixture
def workdir(tmp_path, bundled_dir):
    target = tmp_path / "data"
    shutil.copytree(bundled_dir, target)
    return target


def test_bundled_dataset(dataset):
    assert len(dataset.cities) == 21
    assert len(dataset.topology.edges) == 30
    assert dataset.total_population == 1492410
    assert dataset.topology.connected
    pops = {c.name: c.population for c in dataset.cities}
    assert (pops["Struga"], pops["Skopje"], pops["Gevgelija"]) == (63376, 506926, 22988)
    seis = {c.name: c.sei_override for c in dataset.cities}
    assert (seis["Struga"], seis["Skopje"]) == (0.545661, 0.58482)
    assert {(e.a, e.b): e.length_km for e in dataset.topology.edges} == EDGES
    assert dataset.schedule == default_schedule()
    assert dataset.params.persons_per_household == 3.5


def test_bundled_warnings_name_long_links(dataset):
    assert any("KU-KP" in w for w in dataset.warnings)


def test_round_trip(dataset, tmp_path):
    write_dataset(dataset, tmp_path)
    again = load_dataset(tmp_path)
    assert again == dataset
    write_dataset(again, tmp_path / "second")
    for name in ("cities.csv", "edges.csv", "params.csv", "tariffs.csv"):
        assert (tmp_path / name).read_bytes() == (tmp_path / "second" / name).read_bytes()


def test_round_trip_with_activity_counts(dataset, tmp_path, workdir):
    (workdir / "cities.csv").write_text(
        "id,name,population,sei,i1,i2,i3,i4,i5,i6\n"
        "A,Alpha,1000,,100,200,300,100,200,100\n"
        "B,Beta,500,0.5,,,,,,\n",
        encoding="utf-8",
    )
    (workdir / "edges.csv").write_text("a,b,length_km\nA,B,12.5\n", encoding="utf-8")
    loaded = load_dataset(workdir)
    assert loaded.cities[0].activity.as_tuple() == (100, 200, 300, 100, 200, 100)
    write_dataset(loaded, tmp_path / "out")
    assert load_dataset(tmp_path / "out") == loaded


def test_tariffs_optional(workdir, dataset):
    (workdir / "tariffs.csv").unlink()
    assert load_dataset(workdir).schedule == dataset.schedule


def test_empty_cities(workdir):
    (workdir / "cities.csv").write_text("id,name,population,sei,i1,i2,i3,i4,i5,i6\n", encoding="utf-8")
    with pytest.raises(ValidationError, match="no cities"):
        load_dataset(workdir)


def test_unknown_edge_endpoint_names_row(workdir):
    with (workdir / "edges.csv").open("a", encoding="utf-8") as fh:
        fh.write("SK,ZZ,10\n")
    with pytest.raises(ValidationError) as err:
        load_dataset(workdir)
    assert err.value.file == "edges.csv" and err.value.row == 32
    assert "ZZ" in str(err.value)


@pytest.mark.parametrize(
    "file, content, error, row",
    [
        ("cities.csv", "id,name,population\nA,A,10\n", ParseError, 1),
        ("cities.csv", "id,name,population,sei\nA,A,ten,0.5\n", ParseError, 2),
        ("cities.csv", "id,name,population,sei\nA,A,10,0.5\nA,B,10,0.5\n", ValidationError, 3),
        ("cities.csv", "id,name,population,sei\nA,A,10,\n", ValidationError, 2),
        ("cities.csv", "id,name,population,sei\nA,A,10,1.5\n", ValidationError, 2),
        ("cities.csv", "id,name,population,sei,i1,i2,i3,i4,i5,i6\nA,A,10,,1,2,3,,5,6\n", ParseError, 2),
        ("cities.csv", "id,name,population,sei\nA,A,10\n", ParseError, 2),
        ("edges.csv", "a,b,length_km\nSK,TE,0\n", ValidationError, 2),
        ("edges.csv", "a,b,length_km\nSK,SK,5\n", ValidationError, 2),
        ("edges.csv", "a,b,length_km\nSK,TE,5\nTE,SK,6\n", ValidationError, 3),
        ("edges.csv", "a,b,len\nSK,TE,5\n", ParseError, 1),
        ("params.csv", "key,value\nN,3.5\nbogus,1\n", ParseError, 3),
        ("params.csv", "key,value\nN,abc\n", ParseError, 2),
        ("params.csv", "key,value\nN,3.5\n", ValidationError, None),
        ("tariffs.csv", "capacity,distance_km_max,price_mkd\n64 kbit/s,2,3733.001\n", ParseError, 2),
        ("tariffs.csv", "capacity,distance_km_max,price_mkd\n64 kbit/s,2,3733\n2 Mbit/s,5,10\n", ValidationError, None),
        ("tariffs.csv", "capacity,distance_km_max,price_mkd\nfast,2,3733\n", ParseError, 2),
        ("cities.csv", "", ParseError, None),
    ],
)
def test_malformed_inputs(workdir, file, content, error, row):
    (workdir / file).write_text(content, encoding="utf-8")
    with pytest.raises(error) as err:
        load_dataset(workdir)
    assert err.value.file == file
    assert err.value.row == row


def test_missing_file(workdir):
    (workdir / "edges.csv").unlink()
    with pytest.raises(ParseError, match="edges.csv"):
        load_dataset(workdir)
    with pytest.raises(ParseError):
        load_dataset(workdir / "nope")


def test_invalid_utf8(workdir):
    (workdir / "cities.csv").write_bytes(b"id,name,population,sei\nA,\xff\xfe,10,0.5\n")
    with pytest.raises(ParseError):
        load_dataset(workdir)


def test_disconnected_is_a_warning(workdir):
    lines = (workdir / "edges.csv").read_text(encoding="utf-8").splitlines()
    kept = [l for l in lines if not l.startswith("KU,KP")]
    (workdir / "edges.csv").write_text("\n".join(kept) + "\n", encoding="utf-8")
    loaded = load_dataset(workdir)
    assert not loaded.topology.connected
    assert any("disconnected" in w for w in loaded.warnings)


def test_population_mismatch_warning(workdir):
    (workdir / "cities.csv").write_text(
        "id,name,population,sei,i1,i2,i3,i4,i5,i6\nA,A,1000,,100,100,100,100,100,100\nB,B,10,0.5,,,,,,\n",
        encoding="utf-8",
    )
    (workdir / "edges.csv").write_text("a,b,length_km\nA,B,3\n", encoding="utf-8")
    assert any("activity counts" in w for w in load_dataset(workdir).warnings)


@pytest.mark.parametrize("text, bps", [("64 kbit/s", 64_000), ("2 Mbit/s", 2_000_000), ("155Mbps", 155_000_000), ("9600", 9600)])
def test_parse_capacity(text, bps):
    assert parse_capacity(text) == bps


def test_format_capacity():
    assert [format_capacity(b) for b in (64_000, 2_000_000, 1_500)] == ["64 kbit/s", "2 Mbit/s", "1500 bit/s"]
